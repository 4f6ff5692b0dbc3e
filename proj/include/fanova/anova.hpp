#pragma once

#include "fanova/sample.hpp"

#include <span>
#include <vector>

namespace fanova {

// Pointwise ANOVA decomposition on the grid: between-group variation
// SSR(t_l), within-group variation SSE(t_l), and the F ratio
//   F(t_l) = (SSR(t_l)/(k-1)) / (SSE(t_l)/(n-k)).
// Degenerate points are encoded in-band: SSE = 0 with SSR > 0 gives
// F = +inf, SSE = 0 with SSR = 0 gives F = 0.
struct PointwiseStats {
    std::vector<double> ssr;
    std::vector<double> sse;
    std::vector<double> f;
    std::size_t df1 = 0; // k - 1
    std::size_t df2 = 0; // n - k
};

// Pooled residual covariance gamma_hat(t_p, t_q) and its correlation
// version gamma_w_hat; 0/0 correlation entries are set to 0.
struct CovarianceEstimate {
    Matrix gamma_hat;
    Matrix gamma_w_hat;
};

PointwiseStats pointwise_stats(const FunctionalSample& s);

// Trapezoidal integral of F over [a, b]. Throws if F has an infinite
// entry (the integral is undefined at a degenerate point).
double gpf_statistic(const PointwiseStats& ps, const Grid& grid);

// Grid maximum of F; +inf propagates.
double fmax_statistic(const PointwiseStats& ps);

CovarianceEstimate pooled_covariance(const FunctionalSample& s);

// Subject residuals y_ij - group mean, stacked in group order (n x M).
// Per-group column sums are zero by construction.
Matrix residual_curves(const FunctionalSample& s);

namespace detail {

// Kernels on raw group matrices. The bootstrap engine calls these on its
// resampled work buffers so replicate statistics go through the exact
// code path used for the observed statistic.
void group_means_into(std::span<const GroupData> groups, Matrix& means);
PointwiseStats pointwise_stats_groups(std::span<const GroupData> groups);
double gpf_from_f(std::span<const double> f, const Grid& grid);
double fmax_from_f(std::span<const double> f);

} // namespace detail

} // namespace fanova
