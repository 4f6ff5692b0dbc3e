#pragma once

#include "fanova/grid.hpp"
#include "fanova/matrix.hpp"

#include <span>
#include <string>
#include <vector>

namespace fanova {

// One labeled group of curves, n_i x M (one row per curve).
struct GroupData {
    std::string label;
    Matrix curves;
};

// k labeled groups of curves discretized on one shared grid. Immutable
// after construction; every test statistic consumes this type.
//
// Invariants enforced at construction: k >= 2, every n_i >= 2, n > k,
// every curve has exactly M finite values.
class FunctionalSample {
public:
    FunctionalSample(Grid grid, std::vector<GroupData> groups);

    const Grid& grid() const { return grid_; }
    std::span<const GroupData> groups() const { return groups_; }
    const GroupData& group(std::size_t i) const { return groups_[i]; }

    std::size_t group_count() const { return groups_.size(); } // k
    std::size_t grid_size() const { return grid_.size(); }     // M
    std::size_t total_curves() const { return total_; }        // n
    std::size_t group_size(std::size_t i) const { return groups_[i].curves.rows(); }

private:
    Grid grid_;
    std::vector<GroupData> groups_;
    std::size_t total_ = 0;
};

// Per-group and grand mean functions evaluated on the grid.
struct SampleStats {
    Matrix group_means;             // k x M
    std::vector<double> grand_mean; // M
};

SampleStats sample_stats(const FunctionalSample& s);

} // namespace fanova
