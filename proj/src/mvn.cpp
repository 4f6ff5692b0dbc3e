#include "fanova/mvn.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace fanova {

MvnSampler mvn_factorize(const Matrix& cov) {
    if (cov.rows() != cov.cols() || cov.rows() == 0) {
        throw std::invalid_argument("covariance must be square and non-empty");
    }
    const std::size_t m = cov.rows();
    for (double v : cov.data()) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("covariance contains a non-finite entry");
        }
    }

    Eigen::MatrixXd a(m, m);
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < m; ++q) {
            a(p, q) = 0.5 * (cov(p, q) + cov(q, p));
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    const Eigen::VectorXd& lambda = solver.eigenvalues();
    const Eigen::MatrixXd& vectors = solver.eigenvectors();

    double lambda_max = 0.0;
    double abs_sum = 0.0;
    double neg_sum = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
        lambda_max = std::max(lambda_max, lambda(static_cast<Eigen::Index>(r)));
        abs_sum += std::abs(lambda(static_cast<Eigen::Index>(r)));
        if (lambda(static_cast<Eigen::Index>(r)) < 0.0) {
            neg_sum += -lambda(static_cast<Eigen::Index>(r));
        }
    }
    const double clamp_below = 1e-12 * lambda_max;

    MvnSampler out;
    out.dim = m;
    out.dropped_mass = abs_sum > 0.0 ? neg_sum / abs_sum : 0.0;
    out.factor = Matrix(m, m);
    for (std::size_t c = 0; c < m; ++c) {
        const double lv = lambda(static_cast<Eigen::Index>(c));
        const double scale = lv > clamp_below ? std::sqrt(lv) : 0.0;
        for (std::size_t r = 0; r < m; ++r) {
            out.factor(r, c) = vectors(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * scale;
        }
    }
    return out;
}

void mvn_sample_into(const MvnSampler& sampler, RngStream& rng,
                     std::vector<double>& z_buf, std::vector<double>& out) {
    const std::size_t m = sampler.dim;
    z_buf.resize(m);
    out.assign(m, 0.0);
    for (std::size_t c = 0; c < m; ++c) {
        z_buf[c] = rng.next_normal();
    }
    for (std::size_t r = 0; r < m; ++r) {
        const double* frow = sampler.factor.row(r);
        double acc = 0.0;
        for (std::size_t c = 0; c < m; ++c) {
            acc += frow[c] * z_buf[c];
        }
        out[r] = acc;
    }
}

std::vector<double> mvn_sample(const MvnSampler& sampler, RngStream& rng) {
    std::vector<double> z, out;
    mvn_sample_into(sampler, rng, z, out);
    return out;
}

} // namespace fanova
