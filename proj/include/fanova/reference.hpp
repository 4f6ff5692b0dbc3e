#pragma once

#include "fanova/anova.hpp"
#include "fanova/sample.hpp"

namespace fanova::ref {

// Straight-line serial implementations of the test statistics, kept as
// the comparison baseline for the parallel kernels. Summation order per
// grid point matches the production kernels, so results are expected to
// agree bitwise; tests and the benchmark target rely on that.

PointwiseStats pointwise_stats(const FunctionalSample& s);
double gpf_statistic(const PointwiseStats& ps, const Grid& grid);
double fmax_statistic(const PointwiseStats& ps);
CovarianceEstimate pooled_covariance(const FunctionalSample& s);

} // namespace fanova::ref
