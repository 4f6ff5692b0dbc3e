#include "fanova/reference.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fanova::ref {

PointwiseStats pointwise_stats(const FunctionalSample& s) {
    const std::size_t k = s.group_count();
    const std::size_t m = s.grid_size();
    const std::size_t n = s.total_curves();

    PointwiseStats out;
    out.df1 = k - 1;
    out.df2 = n - k;
    out.ssr.assign(m, 0.0);
    out.sse.assign(m, 0.0);
    out.f.assign(m, 0.0);

    Matrix means(k, m);
    for (std::size_t i = 0; i < k; ++i) {
        const Matrix& curves = s.group(i).curves;
        for (std::size_t j = 0; j < curves.rows(); ++j) {
            for (std::size_t l = 0; l < m; ++l) {
                means(i, l) += curves(j, l);
            }
        }
        for (std::size_t l = 0; l < m; ++l) {
            means(i, l) *= 1.0 / static_cast<double>(curves.rows());
        }
    }

    std::vector<double> grand(m, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t l = 0; l < m; ++l) {
            grand[l] += static_cast<double>(s.group_size(i)) * means(i, l);
        }
    }
    for (std::size_t l = 0; l < m; ++l) {
        grand[l] *= 1.0 / static_cast<double>(n);
    }

    for (std::size_t i = 0; i < k; ++i) {
        const Matrix& curves = s.group(i).curves;
        for (std::size_t l = 0; l < m; ++l) {
            const double d = means(i, l) - grand[l];
            out.ssr[l] += static_cast<double>(curves.rows()) * d * d;
        }
        for (std::size_t j = 0; j < curves.rows(); ++j) {
            for (std::size_t l = 0; l < m; ++l) {
                const double r = curves(j, l) - means(i, l);
                out.sse[l] += r * r;
            }
        }
    }

    for (std::size_t l = 0; l < m; ++l) {
        if (out.sse[l] > 0.0) {
            out.f[l] = (out.ssr[l] / static_cast<double>(out.df1)) /
                       (out.sse[l] / static_cast<double>(out.df2));
        } else if (out.ssr[l] > 0.0) {
            out.f[l] = std::numeric_limits<double>::infinity();
        } else {
            out.f[l] = 0.0;
        }
    }
    return out;
}

double gpf_statistic(const PointwiseStats& ps, const Grid& grid) {
    double acc = 0.0;
    for (std::size_t l = 0; l < ps.f.size(); ++l) {
        if (std::isinf(ps.f[l])) {
            throw std::runtime_error("degenerate SSE: pointwise F is infinite, GPF undefined");
        }
    }
    for (std::size_t l = 0; l + 1 < ps.f.size(); ++l) {
        acc += 0.5 * (ps.f[l] + ps.f[l + 1]) * (grid[l + 1] - grid[l]);
    }
    return acc;
}

double fmax_statistic(const PointwiseStats& ps) {
    double best = ps.f[0];
    for (double v : ps.f) {
        if (v > best) best = v;
    }
    return best;
}

CovarianceEstimate pooled_covariance(const FunctionalSample& s) {
    const std::size_t m = s.grid_size();
    const Matrix resid = residual_curves(s);
    const double inv_df = 1.0 / static_cast<double>(resid.rows() - s.group_count());

    CovarianceEstimate out;
    out.gamma_hat = Matrix(m, m);
    out.gamma_w_hat = Matrix(m, m);
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = p; q < m; ++q) {
            double acc = 0.0;
            for (std::size_t j = 0; j < resid.rows(); ++j) {
                acc += resid(j, p) * resid(j, q);
            }
            out.gamma_hat(p, q) = acc * inv_df;
            out.gamma_hat(q, p) = out.gamma_hat(p, q);
        }
    }
    for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < m; ++q) {
            const double denom = std::sqrt(out.gamma_hat(p, p)) * std::sqrt(out.gamma_hat(q, q));
            out.gamma_w_hat(p, q) = denom > 0.0 ? out.gamma_hat(p, q) / denom : 0.0;
        }
    }
    return out;
}

} // namespace fanova::ref
