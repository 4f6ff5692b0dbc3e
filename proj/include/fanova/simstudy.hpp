#pragma once

#include "fanova/boot.hpp"
#include "fanova/rng.hpp"
#include "fanova/sample.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace fanova {

// One cell of the size/power study. Data model:
//   y_ij(t) = mu_i(t) + sum_r sqrt(lambda_r) z_ijr psi_r(t),  t in (0,1)
// with cubic-polynomial group means mu_i(t) = c_i . (1,t,t^2,t^3),
// c_i = c1 + (i-1) delta u, eigenvalues lambda_r = a rho^(r-1), Fourier
// basis psi, and unit-variance innovations z (gaussian or scaled t4).
// Grid: t_j = j/(M+1), j = 1..M.
struct SimConfig {
    int group_count = 3;                       // k
    std::vector<int> group_sizes = {20, 30, 30};
    int grid_points = 80;                      // M
    int basis_count = 11;                      // q, odd
    double eigen_scale = 1.5;                  // a
    double eigen_decay = 0.5;                  // rho
    std::array<double, 4> mean_coeffs = {1.0, 2.3, 3.4, 1.5};         // c1
    std::array<double, 4> shift_direction = {1.0 / std::sqrt(30.0),   // u, unit norm
                                             2.0 / std::sqrt(30.0),
                                             3.0 / std::sqrt(30.0),
                                             4.0 / std::sqrt(30.0)};
    double delta = 0.0;
    Innovation dist = Innovation::gauss;
    std::int64_t outer_reps = 500;             // N
    std::int64_t boot_reps = 500;              // B
    double alpha = 0.05;
    std::uint64_t seed = 0;
    bool resample_within_group = false;
    int threads = 0;

    void validate() const;
    nlohmann::json to_json() const;
    static SimConfig from_json(const nlohmann::json& j);
};

struct SimResult {
    double gpf_rate = 0.0;
    double gpf_se = 0.0;
    double fmax_rate = 0.0;
    double fmax_se = 0.0;
    double wall_seconds = 0.0;
    SimConfig config;

    nlohmann::json to_json() const;
    std::string tsv_row() const;
    static std::string tsv_header();
};

// Rows evaluate psi_1..psi_q at the grid points:
// psi_1 = 1, psi_2r = sqrt(2) sin(2 pi r t), psi_2r+1 = sqrt(2) cos(2 pi r t).
Matrix fourier_basis(int q, const Grid& grid);

FunctionalSample generate_sample(const SimConfig& cfg, RngStream& rng);

// Runs N independent replications: generate a sample, calibrate fmax and
// gpf with the shared nonparametric bootstrap, reject when p <= alpha.
// Replication j draws data from RngStream(seed, j); its bootstrap uses
// substream j+1, so no stream is reused anywhere in a cell.
SimResult run_cell(const SimConfig& cfg);

// Gaussian KDE with Silverman bandwidth 0.9 min(sd, IQR/1.34) m^(-1/5).
std::vector<double> kde_pdf(const std::vector<double>& values,
                            const std::vector<double>& eval_points);

} // namespace fanova
