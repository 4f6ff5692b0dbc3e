#include "fanova/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace fanova {

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw std::invalid_argument("grid needs at least 2 points");
    }
    for (std::size_t l = 0; l < points_.size(); ++l) {
        if (!std::isfinite(points_[l])) {
            throw std::invalid_argument("grid point is not finite");
        }
        if (l > 0 && points_[l] <= points_[l - 1]) {
            throw std::invalid_argument("grid points must be strictly increasing");
        }
    }
}

Grid Grid::uniform_open_unit(std::size_t m) {
    std::vector<double> pts(m);
    for (std::size_t j = 0; j < m; ++j) {
        pts[j] = static_cast<double>(j + 1) / static_cast<double>(m + 1);
    }
    return Grid(std::move(pts));
}

Grid Grid::linspace(double a, double b, std::size_t m) {
    std::vector<double> pts(m);
    for (std::size_t j = 0; j < m; ++j) {
        pts[j] = a + (b - a) * static_cast<double>(j) / static_cast<double>(m - 1);
    }
    return Grid(std::move(pts));
}

double Grid::mesh() const {
    double h = 0.0;
    for (std::size_t l = 1; l < points_.size(); ++l) {
        h = std::max(h, points_[l] - points_[l - 1]);
    }
    return h;
}

} // namespace fanova
