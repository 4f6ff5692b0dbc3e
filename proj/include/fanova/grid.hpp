#pragma once

#include <cstddef>
#include <vector>

namespace fanova {

// Discretization grid t_1 < ... < t_M of the observation interval [a, b].
// The grid may be non-uniform; a = t_1 and b = t_M.
class Grid {
public:
    Grid() = default;
    explicit Grid(std::vector<double> points);

    // M points t_l = l/(M+1), l = 1..M, on the open unit interval.
    static Grid uniform_open_unit(std::size_t m);
    // M equally spaced points including both endpoints.
    static Grid linspace(double a, double b, std::size_t m);

    const std::vector<double>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t l) const { return points_[l]; }

    double a() const { return points_.front(); }
    double b() const { return points_.back(); }
    double span() const { return b() - a(); }

    // Largest spacing between consecutive points.
    double mesh() const;

    bool operator==(const Grid&) const = default;

private:
    std::vector<double> points_;
};

} // namespace fanova
