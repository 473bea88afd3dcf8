#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stochtrend/ar_model.hpp"
#include "stochtrend/asymptotics.hpp"
#include "stochtrend/types.hpp"

namespace stochtrend {

enum class GammaProcess { iid, ar1 };

struct TrendGenSpec {
    std::size_t n = 100;
    DiffOrder d{1};
    double sigma_gamma2 = 1.0;
    Vector beta;  // coefficients of (t/n)^j, j = 0, 1, ...
    GammaProcess process = GammaProcess::iid;
    double rho_gamma = 0.0;
    std::uint64_t seed = 0;
};

/// mu = S_d gamma + sum_j beta_j (t/n)^j. The AR(1) gamma process is
/// stationary and scaled to variance sigma_gamma2.
Vector generate_trend(const TrendGenSpec& spec);

/// Stationary AR errors; same stream as ARModel::generate with substream 1.
Vector generate_errors(const ARModel& model, std::size_t n, std::uint64_t seed);

/// sum_{t=1..n} sum_{l<t} w_l^2, so that E|S_d gamma|^2 = sigma_gamma2 times this.
double summation_energy(DiffOrder d, std::size_t n);

/// sigma_gamma2 giving E|mu|^2 / (n sigma_eps2) = target.
double calibrate_snr(std::size_t n, DiffOrder d, double target, double sigma_eps2);

enum class Selector {
    first_difference,  // criterion with white g = first-difference variance
    oracle,            // true loss minimizer
};

struct RatioOutcome {
    double ratio = 1.0;
    int d_hat = 1;
    double nu_hat = 0.0;
    double oracle_loss = 0.0;
    double selected_loss = 0.0;
};

/// R = min over d_set x grid of |mu_hat - mu| divided by the loss at the
/// selected pair. R = 1 when both losses are zero.
RatioOutcome performance_ratio(std::span<const double> y, std::span<const double> mu,
                               std::span<const int> d_set, std::span<const double> nu_grid,
                               Selector selector);

struct Table1Config {
    std::vector<std::size_t> n{100, 300};
    std::vector<int> d_true{1, 2};
    std::vector<double> snr{2.0, 5.0, 9.0};
    std::size_t repeats = 400;
    std::uint64_t base_seed = 20240601;
    std::vector<int> d_set{1, 2};
    Vector nu_grid;  // empty: default grid for each n
    unsigned threads = 0;  // 0: hardware concurrency
};

struct ExperimentResult {
    std::size_t n = 0;
    int d_true = 1;
    double snr = 0.0;
    std::uint32_t cell_id = 0;
    Vector ratios;
    std::vector<std::uint64_t> seeds;
    std::vector<int> d_hat;
    Vector nu_hat;
    double mean = 0.0;
    double sd = 0.0;
    double median = 0.0;
};

/// One result per (n, d_true, snr) cell, in that nesting order. Each repeat
/// uses repeat_seed(base_seed, cell_id, repeat) and is independent of the
/// thread schedule.
std::vector<ExperimentResult> run_table1(const Table1Config& config);

/// Published reference values for the twelve default cells, for side-by-side
/// output. NaN if unknown.
struct PublishedCell {
    double mean;
    double sd;
    double median;
};
PublishedCell published_table1(std::size_t n, int d, double snr);

struct RateExperimentConfig {
    DiffOrder d{1};
    DiffOrder d_true{1};
    std::vector<std::size_t> n_list{256, 512, 1024, 2048};
    ARModel err = ARModel::white_noise(1.0);
    double tau2 = 1.0;
    std::size_t repeats = 20;
    std::uint64_t seed = 7;
    std::size_t grid_points = 40;
    unsigned threads = 0;
};

struct RateReport {
    std::vector<std::size_t> n;
    Vector min_mse;
    Vector best_nu;
    RateFit fit;
};

/// For each n: mean over repeats of |mu_hat - mu|^2/n on a grid around the
/// theoretical optimum, minimized over the grid, then the log-log slope.
RateReport run_rate_experiment(const RateExperimentConfig& config);

}  // namespace stochtrend
