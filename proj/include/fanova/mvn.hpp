#pragma once

#include "fanova/matrix.hpp"
#include "fanova/rng.hpp"

#include <vector>

namespace fanova {

// Factorized multivariate normal sampler. The covariance is symmetrized,
// eigendecomposed, and repaired: eigenvalues below 1e-12 * lambda_max
// (including negatives) are clamped to zero. factor * factor^T equals the
// repaired covariance. dropped_mass is the clamped negative eigenvalue
// mass, sum(|lambda_i < 0|) / sum(|lambda_i|); values >= 0.05 mean the
// input was far from PSD and samples should be treated with suspicion.
struct MvnSampler {
    std::size_t dim = 0;
    Matrix factor;
    double dropped_mass = 0.0;
};

// Eigendecomposition is used instead of Cholesky because the pooled
// correlation estimate is rank-deficient whenever n - k < M, the common
// regime.
MvnSampler mvn_factorize(const Matrix& cov);

// factor * z with z i.i.d. standard normal from rng.
std::vector<double> mvn_sample(const MvnSampler& sampler, RngStream& rng);
void mvn_sample_into(const MvnSampler& sampler, RngStream& rng,
                     std::vector<double>& z_buf, std::vector<double>& out);

} // namespace fanova
