#include "fanova/boot.hpp"

#include "fanova/mvn.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <iostream>
#include <stdexcept>

namespace fanova {

std::string to_string(Statistic s) { return s == Statistic::fmax ? "fmax" : "gpf"; }
std::string to_string(Method m) { return m == Method::npb ? "npb" : "pb"; }

Statistic statistic_from_string(const std::string& s) {
    if (s == "fmax") return Statistic::fmax;
    if (s == "gpf") return Statistic::gpf;
    throw std::invalid_argument("unknown statistic: " + s);
}

Method method_from_string(const std::string& s) {
    if (s == "npb") return Method::npb;
    if (s == "pb") return Method::pb;
    throw std::invalid_argument("unknown method: " + s);
}

void BootstrapConfig::validate() const {
    if (replicate_count < 1) {
        throw std::invalid_argument("replicate count B must be >= 1");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must be in (0, 1)");
    }
    if (threads < 0) {
        throw std::invalid_argument("threads must be >= 1 (or 0 for the current setting)");
    }
}

nlohmann::json TestReport::to_json(bool include_replicates) const {
    nlohmann::json j;
    j["statistic"] = to_string(statistic);
    j["observed"] = observed;
    j["p_value"] = p_value;
    j["critical_value"] = critical_value;
    j["alpha"] = alpha;
    j["B"] = replicate_count;
    j["method"] = to_string(method);
    j["seed"] = seed;
    j["degenerate"] = degenerate;
    if (method == Method::pb) {
        j["dropped_mass"] = dropped_mass;
    }
    if (include_replicates) {
        j["replicates"] = replicates;
    }
    return j;
}

double bootstrap_p_value(double observed, const std::vector<double>& replicates) {
    std::size_t count = 0;
    for (double r : replicates) {
        if (r >= observed) ++count;
    }
    return static_cast<double>(1 + count) / static_cast<double>(replicates.size() + 1);
}

double bootstrap_critical_value(std::vector<double> replicates, double alpha) {
    const std::size_t b = replicates.size();
    std::sort(replicates.begin(), replicates.end());
    double pos = std::ceil((1.0 - alpha) * static_cast<double>(b + 1));
    std::size_t rank = static_cast<std::size_t>(std::max(1.0, std::min(pos, static_cast<double>(b))));
    return replicates[rank - 1];
}

namespace {

int resolve_threads(int requested) {
    return requested >= 1 ? requested : omp_get_max_threads();
}

struct ResampleLayout {
    std::vector<std::size_t> group_sizes;
    std::vector<std::size_t> group_offsets; // row offsets into the pooled residual matrix
    std::size_t total = 0;
};

ResampleLayout layout_of(const FunctionalSample& s) {
    ResampleLayout lay;
    std::size_t off = 0;
    for (std::size_t i = 0; i < s.group_count(); ++i) {
        lay.group_sizes.push_back(s.group_size(i));
        lay.group_offsets.push_back(off);
        off += s.group_size(i);
    }
    lay.total = off;
    return lay;
}

// Draw the resampled rows for one replicate into the workspace groups.
void fill_resample(const Matrix& pool, const ResampleLayout& lay, bool within_group,
                   RngStream& rng, std::vector<GroupData>& work) {
    const std::size_t m = pool.cols();
    for (std::size_t i = 0; i < lay.group_sizes.size(); ++i) {
        Matrix& dst = work[i].curves;
        for (std::size_t j = 0; j < lay.group_sizes[i]; ++j) {
            std::size_t src;
            if (within_group) {
                src = lay.group_offsets[i] + rng.next_below(lay.group_sizes[i]);
            } else {
                src = rng.next_below(lay.total);
            }
            std::memcpy(dst.row(j), pool.row(src), m * sizeof(double));
        }
    }
}

std::vector<GroupData> make_workspace(const FunctionalSample& s) {
    std::vector<GroupData> work;
    work.reserve(s.group_count());
    for (std::size_t i = 0; i < s.group_count(); ++i) {
        work.push_back({s.group(i).label, Matrix(s.group_size(i), s.grid_size())});
    }
    return work;
}

} // namespace

FunctionalSample npb_resample(const FunctionalSample& s, RngStream& rng) {
    return npb_resample(s, rng, false);
}

FunctionalSample npb_resample(const FunctionalSample& s, RngStream& rng, bool within_group) {
    const Matrix pool = residual_curves(s);
    const ResampleLayout lay = layout_of(s);
    auto work = make_workspace(s);
    fill_resample(pool, lay, within_group, rng, work);
    return FunctionalSample(s.grid(), std::move(work));
}

namespace detail {

PairedReports npb_calibrate_at(const FunctionalSample& s, const BootstrapConfig& cfg,
                               std::uint64_t substream, bool want_fmax, bool want_gpf) {
    cfg.validate();
    const std::int64_t b = cfg.replicate_count;
    const Matrix pool = residual_curves(s);
    const ResampleLayout lay = layout_of(s);

    const PointwiseStats observed_ps = pointwise_stats(s);
    const double observed_fmax = fmax_statistic(observed_ps);
    const bool degenerate = std::isinf(observed_fmax);
    // GPF refuses a degenerate observed statistic outright
    const double observed_gpf = want_gpf ? gpf_statistic(observed_ps, s.grid()) : 0.0;

    std::vector<double> reps_fmax(want_fmax ? b : 0);
    std::vector<double> reps_gpf(want_gpf ? b : 0);

    // Exceptions must not escape the parallel region; the first one is
    // rethrown after the join. A degenerate GPF replicate lands here.
    std::exception_ptr failure = nullptr;
    std::atomic<bool> failed{false};

    const int threads = resolve_threads(cfg.threads);
#pragma omp parallel num_threads(threads)
    {
        auto work = make_workspace(s);
#pragma omp for schedule(static)
        for (std::int64_t r = 0; r < b; ++r) {
            if (failed.load(std::memory_order_relaxed)) continue;
            try {
                RngStream rng =
                    RngStream(cfg.seed, static_cast<std::uint64_t>(r)).substream(substream);
                fill_resample(pool, lay, cfg.resample_within_group, rng, work);
                const PointwiseStats ps = fanova::detail::pointwise_stats_groups(work);
                if (want_fmax) {
                    reps_fmax[static_cast<std::size_t>(r)] = fanova::detail::fmax_from_f(ps.f);
                }
                if (want_gpf) {
                    reps_gpf[static_cast<std::size_t>(r)] = fanova::detail::gpf_from_f(ps.f, s.grid());
                }
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        }
    }
    if (failure) std::rethrow_exception(failure);

    auto assemble = [&](Statistic stat, double observed, std::vector<double>&& reps) {
        TestReport rep;
        rep.statistic = stat;
        rep.observed = observed;
        rep.degenerate = stat == Statistic::fmax && degenerate;
        rep.p_value = rep.degenerate ? 1.0 / static_cast<double>(b + 1)
                                     : bootstrap_p_value(observed, reps);
        rep.critical_value = bootstrap_critical_value(reps, cfg.alpha);
        rep.replicates = std::move(reps);
        rep.alpha = cfg.alpha;
        rep.replicate_count = b;
        rep.method = Method::npb;
        rep.seed = cfg.seed;
        return rep;
    };

    PairedReports out;
    if (want_fmax) {
        out.fmax = assemble(Statistic::fmax, observed_fmax, std::move(reps_fmax));
    }
    if (want_gpf) {
        out.gpf = assemble(Statistic::gpf, observed_gpf, std::move(reps_gpf));
    }
    return out;
}

TestReport pb_calibrate_at(const FunctionalSample& s, const BootstrapConfig& cfg,
                           std::uint64_t substream) {
    cfg.validate();
    const std::int64_t b = cfg.replicate_count;
    const std::size_t k = s.group_count();
    const std::size_t m = s.grid_size();

    const PointwiseStats observed_ps = pointwise_stats(s);
    const double observed = fmax_statistic(observed_ps);

    const CovarianceEstimate cov = pooled_covariance(s);
    const MvnSampler sampler = mvn_factorize(cov.gamma_w_hat);
    if (sampler.dropped_mass >= 0.05) {
        std::cerr << "warning: PSD repair dropped " << sampler.dropped_mass
                  << " of the correlation eigenvalue mass; PB replicates may be unreliable\n";
    }

    std::vector<double> reps(b);
    const int threads = resolve_threads(cfg.threads);
#pragma omp parallel num_threads(threads)
    {
        std::vector<double> z_buf, w, acc(m);
#pragma omp for schedule(static)
        for (std::int64_t r = 0; r < b; ++r) {
            RngStream rng = RngStream(cfg.seed, static_cast<std::uint64_t>(r)).substream(substream);
            std::fill(acc.begin(), acc.end(), 0.0);
            for (std::size_t i = 0; i + 1 < k; ++i) {
                mvn_sample_into(sampler, rng, z_buf, w);
                for (std::size_t l = 0; l < m; ++l) {
                    acc[l] += w[l] * w[l];
                }
            }
            double best = acc[0];
            for (std::size_t l = 1; l < m; ++l) {
                if (acc[l] > best) best = acc[l];
            }
            reps[static_cast<std::size_t>(r)] = best / static_cast<double>(k - 1);
        }
    }

    TestReport rep;
    rep.statistic = Statistic::fmax;
    rep.observed = observed;
    rep.degenerate = std::isinf(observed);
    rep.p_value = rep.degenerate ? 1.0 / static_cast<double>(b + 1)
                                 : bootstrap_p_value(observed, reps);
    rep.critical_value = bootstrap_critical_value(reps, cfg.alpha);
    rep.replicates = std::move(reps);
    rep.alpha = cfg.alpha;
    rep.replicate_count = b;
    rep.method = Method::pb;
    rep.seed = cfg.seed;
    rep.dropped_mass = sampler.dropped_mass;
    return rep;
}

} // namespace detail

TestReport npb_calibrate(const FunctionalSample& s, Statistic stat, const BootstrapConfig& cfg) {
    PairedReports pair = detail::npb_calibrate_at(s, cfg, 0, stat == Statistic::fmax,
                                                  stat == Statistic::gpf);
    return stat == Statistic::fmax ? std::move(pair.fmax) : std::move(pair.gpf);
}

PairedReports npb_calibrate_pair(const FunctionalSample& s, const BootstrapConfig& cfg) {
    return detail::npb_calibrate_at(s, cfg, 0, true, true);
}

TestReport pb_calibrate(const FunctionalSample& s, const BootstrapConfig& cfg) {
    return detail::pb_calibrate_at(s, cfg, 0);
}

} // namespace fanova
