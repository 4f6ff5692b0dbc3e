#pragma once

#include "fanova/anova.hpp"
#include "fanova/rng.hpp"
#include "fanova/sample.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace fanova {

enum class Statistic { fmax, gpf };
enum class Method { npb, pb };

std::string to_string(Statistic s);
std::string to_string(Method m);
Statistic statistic_from_string(const std::string& s);
Method method_from_string(const std::string& s);

struct BootstrapConfig {
    std::int64_t replicate_count = 10000; // B
    Method method = Method::npb;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    // Eq-level choice: resample residuals from one pooled urn (default) or
    // within each group. Pooled matches the i.i.d.-from-pooled-covariance
    // reading used by the consistency argument.
    bool resample_within_group = false;
    int threads = 0; // 0 = current OpenMP setting

    void validate() const;
};

struct TestReport {
    Statistic statistic = Statistic::fmax;
    double observed = 0.0;
    double p_value = 1.0;
    double critical_value = 0.0;
    std::vector<double> replicates;
    double alpha = 0.05;
    std::int64_t replicate_count = 0;
    Method method = Method::npb;
    std::uint64_t seed = 0;
    bool degenerate = false;
    double dropped_mass = 0.0; // pb only

    nlohmann::json to_json(bool include_replicates = false) const;
};

// Add-one estimator: (1 + #{replicates >= observed}) / (B + 1).
double bootstrap_p_value(double observed, const std::vector<double>& replicates);

// ceil((1-alpha)(B+1))-th order statistic of the replicates, clamped to B.
double bootstrap_critical_value(std::vector<double> replicates, double alpha);

// One bootstrap resample: n curves drawn with replacement from the pooled
// residual set, the first n_1 assigned to group 1, the next n_2 to group
// 2, and so on. The bootstrap sample always satisfies the null.
FunctionalSample npb_resample(const FunctionalSample& s, RngStream& rng);
FunctionalSample npb_resample(const FunctionalSample& s, RngStream& rng, bool within_group);

// Nonparametric bootstrap calibration of the fmax or gpf statistic.
// Replicate r draws from RngStream(seed, r); replicates are embarrassingly
// parallel and the result is bit-identical for any thread count.
TestReport npb_calibrate(const FunctionalSample& s, Statistic stat, const BootstrapConfig& cfg);

// Both statistics calibrated from one shared set of bootstrap resamples.
// This is what the simulation harness runs: one resampling pass, both
// test statistics evaluated through the ordinary anova path.
struct PairedReports {
    TestReport fmax;
    TestReport gpf;
};
PairedReports npb_calibrate_pair(const FunctionalSample& s, const BootstrapConfig& cfg);

// Parametric bootstrap for fmax only: replicates of the limit expression
// max_l (k-1)^{-1} sum_i w_i(l)^2 with w_i ~ N_M(0, gamma_w_hat).
TestReport pb_calibrate(const FunctionalSample& s, const BootstrapConfig& cfg);

namespace detail {

// Substream discipline: top-level calibrations use substream 0; the
// simulation harness passes substream = outer replication index + 1 so
// nested bootstrap streams never collide with data-generation streams.
PairedReports npb_calibrate_at(const FunctionalSample& s, const BootstrapConfig& cfg,
                               std::uint64_t substream, bool want_fmax, bool want_gpf);
TestReport pb_calibrate_at(const FunctionalSample& s, const BootstrapConfig& cfg,
                           std::uint64_t substream);

} // namespace detail

} // namespace fanova
