#include "fanova/anova.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fanova {

namespace detail {

void group_means_into(std::span<const GroupData> groups, Matrix& means) {
    const std::size_t k = groups.size();
    const std::size_t m = groups[0].curves.cols();
    if (means.rows() != k || means.cols() != m) {
        means = Matrix(k, m);
    }
    for (std::size_t i = 0; i < k; ++i) {
        const Matrix& curves = groups[i].curves;
        const std::size_t ni = curves.rows();
        double* mean_i = means.row(i);
        for (std::size_t l = 0; l < m; ++l) mean_i[l] = 0.0;
        for (std::size_t j = 0; j < ni; ++j) {
            const double* y = curves.row(j);
            for (std::size_t l = 0; l < m; ++l) {
                mean_i[l] += y[l];
            }
        }
        const double inv_ni = 1.0 / static_cast<double>(ni);
        for (std::size_t l = 0; l < m; ++l) {
            mean_i[l] *= inv_ni;
        }
    }
}

PointwiseStats pointwise_stats_groups(std::span<const GroupData> groups) {
    const std::size_t k = groups.size();
    const std::size_t m = groups[0].curves.cols();
    std::size_t n = 0;
    for (const auto& g : groups) n += g.curves.rows();

    PointwiseStats out;
    out.df1 = k - 1;
    out.df2 = n - k;
    out.ssr.assign(m, 0.0);
    out.sse.assign(m, 0.0);
    out.f.assign(m, 0.0);

    Matrix means;
    group_means_into(groups, means);

    std::vector<double> grand(m, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        const double w = static_cast<double>(groups[i].curves.rows());
        const double* mean_i = means.row(i);
        for (std::size_t l = 0; l < m; ++l) {
            grand[l] += w * mean_i[l];
        }
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t l = 0; l < m; ++l) {
        grand[l] *= inv_n;
    }

    for (std::size_t i = 0; i < k; ++i) {
        const Matrix& curves = groups[i].curves;
        const double ni = static_cast<double>(curves.rows());
        const double* mean_i = means.row(i);
        for (std::size_t l = 0; l < m; ++l) {
            const double d = mean_i[l] - grand[l];
            out.ssr[l] += ni * d * d;
        }
        for (std::size_t j = 0; j < curves.rows(); ++j) {
            const double* y = curves.row(j);
            for (std::size_t l = 0; l < m; ++l) {
                const double r = y[l] - mean_i[l];
                out.sse[l] += r * r;
            }
        }
    }

    const double df1 = static_cast<double>(out.df1);
    const double df2 = static_cast<double>(out.df2);
    for (std::size_t l = 0; l < m; ++l) {
        if (out.sse[l] > 0.0) {
            out.f[l] = (out.ssr[l] / df1) / (out.sse[l] / df2);
        } else if (out.ssr[l] > 0.0) {
            out.f[l] = std::numeric_limits<double>::infinity();
        } else {
            out.f[l] = 0.0; // all curves equal at t_l: no evidence either way
        }
    }
    return out;
}

double gpf_from_f(std::span<const double> f, const Grid& grid) {
    const std::size_t m = f.size();
    double acc = 0.0;
    for (std::size_t l = 0; l + 1 < m; ++l) {
        if (std::isinf(f[l]) || std::isinf(f[l + 1])) {
            throw std::runtime_error("degenerate SSE: pointwise F is infinite, GPF undefined");
        }
        acc += 0.5 * (f[l] + f[l + 1]) * (grid[l + 1] - grid[l]);
    }
    if (std::isinf(f[m - 1])) {
        throw std::runtime_error("degenerate SSE: pointwise F is infinite, GPF undefined");
    }
    return acc;
}

double fmax_from_f(std::span<const double> f) {
    double best = f[0];
    for (std::size_t l = 1; l < f.size(); ++l) {
        if (f[l] > best) best = f[l];
    }
    return best;
}

} // namespace detail

PointwiseStats pointwise_stats(const FunctionalSample& s) {
    return detail::pointwise_stats_groups(s.groups());
}

double gpf_statistic(const PointwiseStats& ps, const Grid& grid) {
    if (ps.f.size() != grid.size()) {
        throw std::invalid_argument("pointwise stats and grid sizes differ");
    }
    return detail::gpf_from_f(ps.f, grid);
}

double fmax_statistic(const PointwiseStats& ps) {
    return detail::fmax_from_f(ps.f);
}

Matrix residual_curves(const FunctionalSample& s) {
    const std::size_t m = s.grid_size();
    Matrix out(s.total_curves(), m);
    Matrix means;
    detail::group_means_into(s.groups(), means);
    std::size_t row = 0;
    for (std::size_t i = 0; i < s.group_count(); ++i) {
        const Matrix& curves = s.group(i).curves;
        const double* mean_i = means.row(i);
        for (std::size_t j = 0; j < curves.rows(); ++j, ++row) {
            const double* y = curves.row(j);
            double* v = out.row(row);
            for (std::size_t l = 0; l < m; ++l) {
                v[l] = y[l] - mean_i[l];
            }
        }
    }
    return out;
}

CovarianceEstimate pooled_covariance(const FunctionalSample& s) {
    const std::size_t m = s.grid_size();
    const Matrix resid = residual_curves(s);
    const std::size_t n = resid.rows();
    const double inv_df = 1.0 / static_cast<double>(n - s.group_count());

    CovarianceEstimate out;
    out.gamma_hat = Matrix(m, m);
    out.gamma_w_hat = Matrix(m, m);

    // gamma_hat(p,q) = inv_df * sum_j resid(j,p) resid(j,q); symmetric, so
    // fill the upper triangle and mirror. Row-parallel: each p independent.
#pragma omp parallel for schedule(static) if (m >= 128)
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = p; q < m; ++q) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double* v = resid.row(j);
                acc += v[p] * v[q];
            }
            out.gamma_hat(p, q) = acc * inv_df;
        }
    }
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < p; ++q) {
            out.gamma_hat(p, q) = out.gamma_hat(q, p);
        }
    }

    std::vector<double> sd(m);
    for (std::size_t p = 0; p < m; ++p) {
        sd[p] = std::sqrt(out.gamma_hat(p, p));
    }
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < m; ++q) {
            const double denom = sd[p] * sd[q];
            out.gamma_w_hat(p, q) = denom > 0.0 ? out.gamma_hat(p, q) / denom : 0.0;
        }
    }
    return out;
}

} // namespace fanova
