#include "fanova/sample.hpp"

#include <cmath>
#include <stdexcept>

namespace fanova {

FunctionalSample::FunctionalSample(Grid grid, std::vector<GroupData> groups)
    : grid_(std::move(grid)), groups_(std::move(groups)) {
    if (groups_.size() < 2) {
        throw std::invalid_argument("need at least 2 groups");
    }
    const std::size_t m = grid_.size();
    for (const auto& g : groups_) {
        if (g.curves.rows() < 2) {
            throw std::invalid_argument("group '" + g.label + "' needs at least 2 curves");
        }
        if (g.curves.cols() != m) {
            throw std::invalid_argument("group '" + g.label + "' has curves of length " +
                                        std::to_string(g.curves.cols()) + ", grid has " +
                                        std::to_string(m) + " points");
        }
        for (double v : g.curves.data()) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("group '" + g.label + "' contains a non-finite value");
            }
        }
        total_ += g.curves.rows();
    }
    if (total_ <= groups_.size()) {
        throw std::invalid_argument("total curve count must exceed group count");
    }
}

SampleStats sample_stats(const FunctionalSample& s) {
    const std::size_t k = s.group_count();
    const std::size_t m = s.grid_size();
    const double n = static_cast<double>(s.total_curves());

    SampleStats out;
    out.group_means = Matrix(k, m);
    out.grand_mean.assign(m, 0.0);

    for (std::size_t i = 0; i < k; ++i) {
        const Matrix& curves = s.group(i).curves;
        const std::size_t ni = curves.rows();
        double* mean_i = out.group_means.row(i);
        for (std::size_t j = 0; j < ni; ++j) {
            const double* y = curves.row(j);
            for (std::size_t l = 0; l < m; ++l) {
                mean_i[l] += y[l];
            }
        }
        const double inv_ni = 1.0 / static_cast<double>(ni);
        for (std::size_t l = 0; l < m; ++l) {
            out.grand_mean[l] += mean_i[l]; // running group sums; divide by n below
            mean_i[l] *= inv_ni;
        }
    }
    for (std::size_t l = 0; l < m; ++l) {
        out.grand_mean[l] /= n;
    }
    return out;
}

} // namespace fanova
