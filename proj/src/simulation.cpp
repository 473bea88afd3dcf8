#include "stochtrend/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "stochtrend/estimators.hpp"
#include "stochtrend/operators.hpp"
#include "stochtrend/random.hpp"
#include "stochtrend/selection.hpp"
#include "stochtrend/stats.hpp"

namespace stochtrend {

namespace {

constexpr std::uint64_t kTrendStream = 0;
constexpr std::uint64_t kErrorStream = 1;

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
    unsigned t = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
    t = static_cast<unsigned>(std::min<std::size_t>(t, count));
    if (t <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned k = 0; k < t; ++k)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

Vector generate_trend(const TrendGenSpec& spec) {
    if (!(spec.sigma_gamma2 >= 0.0)) throw DomainError("sigma_gamma2 must be >= 0");
    const std::size_t n = spec.n;
    Vector mu(n, 0.0);
    if (spec.sigma_gamma2 > 0.0) {
        CounterRng rng(spec.seed, kTrendStream);
        const double sd = std::sqrt(spec.sigma_gamma2);
        Vector gamma(n);
        if (spec.process == GammaProcess::iid) {
            for (double& g : gamma) g = sd * rng.normal();
        } else {
            const double rho = spec.rho_gamma;
            if (!(std::abs(rho) < 1.0)) throw ModelError("AR(1) gamma process needs |rho| < 1");
            const double innov = sd * std::sqrt(1.0 - rho * rho);
            for (std::size_t t = 0; t < n; ++t)
                gamma[t] = t == 0 ? sd * rng.normal() : rho * gamma[t - 1] + innov * rng.normal();
        }
        mu = apply_summation(spec.d, gamma);
    }
    if (!spec.beta.empty()) {
        for (std::size_t t = 0; t < n; ++t) {
            const double u = static_cast<double>(t + 1) / static_cast<double>(n);
            double p = 1.0, s = 0.0;
            for (double b : spec.beta) {
                s += b * p;
                p *= u;
            }
            mu[t] += s;
        }
    }
    return mu;
}

Vector generate_errors(const ARModel& model, std::size_t n, std::uint64_t seed) {
    return model.generate(n, seed, kErrorStream);
}

double summation_energy(DiffOrder d, std::size_t n) {
    const Vector w = summation_weights(d, n);
    double s = 0.0;
    for (std::size_t l = 0; l < n; ++l) s += static_cast<double>(n - l) * w[l] * w[l];
    return s;
}

double calibrate_snr(std::size_t n, DiffOrder d, double target, double sigma_eps2) {
    if (!(target > 0.0)) throw DomainError("target SNR must be > 0");
    return target * static_cast<double>(n) * sigma_eps2 / summation_energy(d, n);
}

RatioOutcome performance_ratio(std::span<const double> y, std::span<const double> mu,
                               std::span<const int> d_set, std::span<const double> nu_grid,
                               Selector selector) {
    const std::size_t n = y.size();
    if (mu.size() != n) throw DimensionError("truth and data lengths differ");
    if (d_set.empty() || nu_grid.empty()) throw DomainError("empty search grid");

    double sigma2 = 0.0;
    if (selector == Selector::first_difference) sigma2 = noise_variance_first_diff(TimeSeries(Vector(y.begin(), y.end())));

    Vector cosu(n);
    for (std::size_t j = 1; j <= n; ++j)
        cosu[j - 1] = 2.0 - 2.0 * std::cos(std::numbers::pi * static_cast<double>(j) / static_cast<double>(n));

    const double inf = std::numeric_limits<double>::infinity();
    double best_loss = inf, best_crit = inf, sel_loss = inf;
    RatioOutcome out;
    for (int d : d_set) {
        Vector sd(n);
        for (std::size_t j = 0; j < n; ++j) sd[j] = std::pow(cosu[j], d);
        for (double nu : nu_grid) {
            if (nu * std::pow(4.0, d) > kMaxConditioning) continue;
            Vector fit;
            try {
                fit = smooth(y, PenaltySpec(DiffOrder(d), nu));
            } catch (const NotPositiveDefiniteError&) {
                continue;
            }
            double loss = 0.0, sse = 0.0;
            for (std::size_t t = 0; t < n; ++t) {
                loss += (fit[t] - mu[t]) * (fit[t] - mu[t]);
                sse += (y[t] - fit[t]) * (y[t] - fit[t]);
            }
            double crit = loss;
            if (selector == Selector::first_difference) {
                double pen = 0.0;
                for (std::size_t j = 0; j < n; ++j) pen += 1.0 / (1.0 + nu * sd[j]);
                crit = sse / static_cast<double>(n) + 2.0 * sigma2 * pen / static_cast<double>(n);
            }
            best_loss = std::min(best_loss, loss);
            if (crit < best_crit) {
                best_crit = crit;
                sel_loss = loss;
                out.d_hat = d;
                out.nu_hat = nu;
            }
        }
    }
    if (!std::isfinite(best_crit)) throw ConvergenceError("no admissible grid point");
    out.oracle_loss = std::sqrt(best_loss);
    out.selected_loss = std::sqrt(sel_loss);
    out.ratio = out.selected_loss == 0.0 ? 1.0 : out.oracle_loss / out.selected_loss;
    return out;
}

std::vector<ExperimentResult> run_table1(const Table1Config& config) {
    if (config.repeats == 0) throw DomainError("repeats must be >= 1");
    std::vector<ExperimentResult> cells;
    for (std::size_t n : config.n)
        for (int d : config.d_true)
            for (double snr : config.snr) {
                ExperimentResult r;
                r.n = n;
                r.d_true = d;
                r.snr = snr;
                r.cell_id = static_cast<std::uint32_t>(cells.size());
                r.ratios.assign(config.repeats, 0.0);
                r.seeds.assign(config.repeats, 0);
                r.d_hat.assign(config.repeats, 0);
                r.nu_hat.assign(config.repeats, 0.0);
                cells.push_back(std::move(r));
            }

    std::vector<Vector> grids(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const int dmax = *std::max_element(config.d_set.begin(), config.d_set.end());
        grids[c] = config.nu_grid.empty() ? default_nu_grid(cells[c].n, dmax) : config.nu_grid;
    }

    const std::size_t total = cells.size() * config.repeats;
    parallel_for(total, config.threads, [&](std::size_t task) {
        ExperimentResult& cell = cells[task / config.repeats];
        const std::size_t rep = task % config.repeats;
        const std::uint64_t seed = repeat_seed(config.base_seed, cell.cell_id, static_cast<std::uint32_t>(rep));
        TrendGenSpec spec;
        spec.n = cell.n;
        spec.d = DiffOrder(cell.d_true);
        spec.sigma_gamma2 = calibrate_snr(cell.n, spec.d, cell.snr, 1.0);
        spec.seed = seed;
        const Vector mu = generate_trend(spec);
        const Vector eps = generate_errors(ARModel::white_noise(1.0), cell.n, seed);
        Vector y(cell.n);
        for (std::size_t t = 0; t < cell.n; ++t) y[t] = mu[t] + eps[t];
        const RatioOutcome o = performance_ratio(y, mu, config.d_set, grids[task / config.repeats],
                                                 Selector::first_difference);
        cell.ratios[rep] = o.ratio;
        cell.seeds[rep] = seed;
        cell.d_hat[rep] = o.d_hat;
        cell.nu_hat[rep] = o.nu_hat;
    });

    for (auto& c : cells) {
        c.mean = mean(c.ratios);
        c.sd = sample_sd(c.ratios);
        c.median = median(c.ratios);
    }
    return cells;
}

PublishedCell published_table1(std::size_t n, int d, double snr) {
    struct Row {
        std::size_t n;
        int d;
        double snr;
        PublishedCell v;
    };
    static const Row rows[] = {
        {100, 1, 2, {0.9381, 0.0603, 0.9532}}, {300, 1, 2, {0.9599, 0.0387, 0.9698}},
        {100, 1, 5, {0.9411, 0.0488, 0.9511}}, {300, 1, 5, {0.9726, 0.0306, 0.9830}},
        {100, 1, 9, {0.9367, 0.0460, 0.9435}}, {300, 1, 9, {0.9728, 0.0285, 0.9830}},
        {100, 2, 2, {0.7833, 0.1839, 0.8231}}, {300, 2, 2, {0.8343, 0.1582, 0.8768}},
        {100, 2, 5, {0.8175, 0.1531, 0.8502}}, {300, 2, 5, {0.8424, 0.1548, 0.8923}},
        {100, 2, 9, {0.8377, 0.1451, 0.8735}}, {300, 2, 9, {0.8696, 0.1335, 0.9142}},
    };
    for (const Row& r : rows)
        if (r.n == n && r.d == d && r.snr == snr) return r.v;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan, nan};
}

RateReport run_rate_experiment(const RateExperimentConfig& cfg) {
    if (cfg.n_list.size() < 3) throw DimensionError("rate experiment needs at least three sample sizes");
    if (cfg.repeats == 0 || cfg.grid_points < 2) throw DomainError("need repeats >= 1 and >= 2 grid points");
    RateReport rep;
    const double g0 = cfg.err.spectral_density_at_zero();
    for (std::size_t n : cfg.n_list) {
        const double nn = static_cast<double>(n);
        const double sigma_gamma2 = cfg.tau2 / std::pow(nn, 2.0 * cfg.d_true.value() - 1.0);
        double centre = std::pow(nn, 2.0 * cfg.d.value() - 1.0);
        if (g0 > 0.0 && cfg.tau2 > 0.0) {
            centre = cfg.d_true < cfg.d ? optimal_nu_misspecified(n, cfg.d, cfg.d_true, g0, cfg.tau2)
                                        : optimal_nu(n, constants(cfg.d, g0, cfg.tau2));
        }
        Vector grid(cfg.grid_points);
        for (std::size_t i = 0; i < grid.size(); ++i)
            grid[i] = centre * std::pow(10.0, -2.0 + 4.0 * static_cast<double>(i) /
                                                         static_cast<double>(grid.size() - 1));

        std::vector<Vector> losses(cfg.repeats, Vector(grid.size(), 0.0));
        parallel_for(cfg.repeats, cfg.threads, [&](std::size_t r) {
            const std::uint64_t seed = repeat_seed(cfg.seed, static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(r));
            TrendGenSpec spec;
            spec.n = n;
            spec.d = cfg.d_true;
            spec.sigma_gamma2 = sigma_gamma2;
            spec.seed = seed;
            const Vector mu = generate_trend(spec);
            const Vector eps = generate_errors(cfg.err, n, seed);
            Vector y(n);
            for (std::size_t t = 0; t < n; ++t) y[t] = mu[t] + eps[t];
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const Vector fit = smooth(y, PenaltySpec(cfg.d, grid[i]));
                double s = 0.0;
                for (std::size_t t = 0; t < n; ++t) s += (fit[t] - mu[t]) * (fit[t] - mu[t]);
                losses[r][i] = s / nn;
            }
        });
        double best = std::numeric_limits<double>::infinity(), best_nu = grid.front();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double s = 0.0;
            for (const auto& l : losses) s += l[i];
            s /= static_cast<double>(cfg.repeats);
            if (s < best) {
                best = s;
                best_nu = grid[i];
            }
        }
        rep.n.push_back(n);
        rep.min_mse.push_back(best);
        rep.best_nu.push_back(best_nu);
    }
    Vector ns(rep.n.begin(), rep.n.end());
    rep.fit = mse_rate_exponent(ns, rep.min_mse);
    return rep;
}

}  // namespace stochtrend
