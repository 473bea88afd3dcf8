#include "stochtrend/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "stochtrend/asymptotics.hpp"
#include "stochtrend/estimators.hpp"

namespace stochtrend {

std::size_t local_linear_halfwidth(std::size_t n) {
    return static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(n)) / 2.0));
}

Vector local_linear_preliminary(const TimeSeries& y) {
    if (!y.fully_observed()) throw DimensionError("preliminary fit needs a fully observed series");
    const std::size_t n = y.size();
    if (n < 9) throw DimensionError("preliminary fit needs n >= 9");
    const std::size_t k = std::max<std::size_t>(1, local_linear_halfwidth(n));
    Vector out(n);
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t lo = t > k ? t - k : 0;
        const std::size_t hi = std::min(n - 1, t + k);
        double s0 = 0, s1 = 0, s2 = 0, t0 = 0, t1 = 0;
        for (std::size_t s = lo; s <= hi; ++s) {
            const double x = static_cast<double>(s) - static_cast<double>(t);
            s0 += 1.0;
            s1 += x;
            s2 += x * x;
            t0 += y.values[s];
            t1 += x * y.values[s];
        }
        // intercept of the line in centred coordinates
        out[t] = (s2 * t0 - s1 * t1) / (s0 * s2 - s1 * s1);
    }
    return out;
}

ARModel fit_ar_with_order(std::span<const double> x, std::size_t p_max, OrderCriterion criterion) {
    const std::size_t n = x.size();
    if (n < std::max<std::size_t>(10 * p_max, 2))
        throw DimensionError("AR order search needs at least 10 * p_max observations");
    double xbar = 0.0;
    for (double v : x) xbar += v;
    xbar /= static_cast<double>(n);
    Vector c(p_max + 1, 0.0);
    for (std::size_t k = 0; k <= p_max; ++k) {
        double s = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) s += (x[t] - xbar) * (x[t + k] - xbar);
        c[k] = s / static_cast<double>(n);
    }
    if (!(c[0] > 0.0) || !std::isfinite(c[0]))
        throw DegenerateInputError("residuals have zero variance");

    const double nn = static_cast<double>(n);
    auto penalty = [&](std::size_t p) {
        return criterion == OrderCriterion::aic ? 2.0 * static_cast<double>(p)
                                                : static_cast<double>(p) * std::log(nn);
    };
    Vector a;
    double s2 = c[0];
    Vector best_a;
    double best_s2 = s2;
    double best_crit = nn * std::log(s2) + penalty(0);
    for (std::size_t m = 1; m <= p_max; ++m) {
        double num = c[m];
        for (std::size_t j = 1; j < m; ++j) num -= a[j - 1] * c[m - j];
        const double kappa = num / s2;
        if (!(std::abs(kappa) < 1.0)) break;
        Vector next(m);
        for (std::size_t j = 1; j < m; ++j) next[j - 1] = a[j - 1] - kappa * a[m - j - 1];
        next[m - 1] = kappa;
        a = std::move(next);
        s2 *= (1.0 - kappa * kappa);
        if (!(s2 > 0.0)) break;
        const double crit = nn * std::log(s2) + penalty(m);
        if (crit < best_crit) {
            best_crit = crit;
            best_a = a;
            best_s2 = s2;
        }
    }
    return ARModel(best_a, best_s2);
}

double spectral_density_at(const ARModel& model, double u) { return model.spectral_density(u); }

double noise_variance_first_diff(const TimeSeries& y) {
    if (!y.fully_observed()) throw DimensionError("first-difference variance needs a fully observed series");
    const std::size_t n = y.size();
    if (n < 2) throw DimensionError("first-difference variance needs n >= 2");
    double s = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        const double d = y.values[t] - y.values[t - 1];
        s += d * d;
    }
    return s / (2.0 * static_cast<double>(n - 1));
}

double spectral_penalty(std::size_t n, PenaltySpec spec, const SpectralDensity& g) {
    const double nn = static_cast<double>(n);
    double s = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
        const double u = std::numbers::pi * static_cast<double>(j) / nn;
        const double sd = std::pow(2.0 - 2.0 * std::cos(u), spec.d.value());
        s += g(u) / (1.0 + spec.nu * sd);
    }
    return 2.0 * s / nn;
}

namespace {

double sse_of(std::span<const double> y, PenaltySpec spec) {
    const Vector mu = smooth(y, spec);
    double s = 0.0;
    for (std::size_t t = 0; t < y.size(); ++t) s += (y[t] - mu[t]) * (y[t] - mu[t]);
    return s;
}

}  // namespace

double criterion_phi(const TimeSeries& y, PenaltySpec spec, const SpectralDensity& g) {
    if (!y.fully_observed()) throw DimensionError("criterion needs a fully observed series");
    const double n = static_cast<double>(y.size());
    return sse_of(y.values, spec) / n + spectral_penalty(y.size(), spec, g);
}

double criterion_phi_asymptotic(const TimeSeries& y, PenaltySpec spec, double g0) {
    if (!y.fully_observed()) throw DimensionError("criterion needs a fully observed series");
    const double n = static_cast<double>(y.size());
    double pen = 0.0;
    if (g0 != 0.0) {
        if (!(spec.nu > 0.0)) throw DomainError("asymptotic criterion needs nu > 0");
        pen = 2.0 * std::pow(spec.nu, -1.0 / (2.0 * spec.d.value())) * g0 * c6(spec.d);
    }
    return sse_of(y.values, spec) / n + pen;
}

Vector default_nu_grid(std::size_t n, int d_max, std::size_t points) {
    if (points < 2) throw DomainError("grid needs at least two points");
    const double lo = std::log10(1e-2);
    const double hi = std::log10(1e2) + (2.0 * d_max - 1.0) * std::log10(static_cast<double>(n));
    Vector g(points);
    for (std::size_t i = 0; i < points; ++i)
        g[i] = std::pow(10.0, lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1));
    return g;
}

std::vector<Vector> criterion_surface(std::span<const double> y, std::span<const int> d_set,
                                      std::span<const double> grid,
                                      const std::function<double(std::size_t, PenaltySpec)>& penalty) {
    const double n = static_cast<double>(y.size());
    std::vector<Vector> out;
    out.reserve(d_set.size());
    for (int d : d_set) {
        Vector row(grid.size(), std::numeric_limits<double>::quiet_NaN());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (grid[i] * std::pow(4.0, d) > kMaxConditioning) continue;
            const PenaltySpec spec(DiffOrder(d), grid[i]);
            try {
                row[i] = sse_of(y, spec) / n + penalty(y.size(), spec);
            } catch (const NotPositiveDefiniteError&) {
            }
        }
        out.push_back(std::move(row));
    }
    return out;
}

GridArgmin surface_argmin(const std::vector<Vector>& surface) {
    GridArgmin best;
    for (std::size_t a = 0; a < surface.size(); ++a)
        for (std::size_t b = 0; b < surface[a].size(); ++b) {
            const double v = surface[a][b];
            if (!std::isfinite(v)) continue;
            if (!best.found || v < best.value) {
                best = {a, b, v, true};
            }
        }
    return best;
}

SelectionResult select(const TimeSeries& y, const SelectOptions& options) {
    if (!y.fully_observed()) throw DimensionError("selection needs a fully observed series");
    const std::size_t n = y.size();
    if (n < 20) throw DimensionError("selection needs n >= 20");
    if (options.d_set.empty()) throw DomainError("empty set of difference orders");
    std::vector<int> d_set = options.d_set;
    std::sort(d_set.begin(), d_set.end());
    d_set.erase(std::unique(d_set.begin(), d_set.end()), d_set.end());
    for (int d : d_set) {
        const DiffOrder check(d);
        if (n < 2 * check.size() + 1) throw DimensionError("series too short for d=" + std::to_string(d));
    }

    SelectionResult res;
    res.d_set = d_set;
    res.nu_grid = options.nu_grid.empty() ? default_nu_grid(n, d_set.back()) : options.nu_grid;
    res.sigma2_first_diff = noise_variance_first_diff(y);

    const Vector prelim = local_linear_preliminary(y);
    Vector resid(n);
    double ms = 0.0, rv = 0.0, rm = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        resid[t] = y.values[t] - prelim[t];
        ms += y.values[t] * y.values[t];
        rm += resid[t];
    }
    rm /= static_cast<double>(n);
    for (double r : resid) rv += (r - rm) * (r - rm);
    ms /= static_cast<double>(n);
    rv /= static_cast<double>(n);

    if (rv <= 1e-24 * ms || rv == 0.0) {
        res.degenerate_residuals = true;
        res.ar = ARModel::white_noise(0.0);
    } else {
        const std::size_t p_max = std::min(options.p_max, n / 10);
        res.ar = fit_ar_with_order(resid, p_max, options.order_criterion);
    }
    res.g0 = res.ar.spectral_density_at_zero();

    const SpectralDensity g(res.ar);
    std::function<double(std::size_t, PenaltySpec)> penalty;
    if (options.asymptotic_criterion) {
        const double g0 = res.g0;
        penalty = [g0](std::size_t, PenaltySpec s) {
            return g0 == 0.0 ? 0.0 : 2.0 * std::pow(s.nu, -1.0 / (2.0 * s.d.value())) * g0 * c6(s.d);
        };
    } else {
        // g(pi j / n) does not depend on (nu, d)
        Vector gv(n), u(n);
        for (std::size_t j = 1; j <= n; ++j) {
            u[j - 1] = std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
            gv[j - 1] = g(u[j - 1]);
        }
        penalty = [gv, u](std::size_t nn, PenaltySpec s) {
            double acc = 0.0;
            for (std::size_t j = 0; j < nn; ++j)
                acc += gv[j] / (1.0 + s.nu * std::pow(2.0 - 2.0 * std::cos(u[j]), s.d.value()));
            return 2.0 * acc / static_cast<double>(nn);
        };
    }
    res.surface = criterion_surface(y.values, res.d_set, res.nu_grid, penalty);
    for (const auto& row : res.surface)
        for (double v : row) res.excluded_points += std::isfinite(v) ? 0 : 1;
    const GridArgmin best = surface_argmin(res.surface);
    if (!best.found) throw ConvergenceError("criterion is not finite anywhere on the grid");
    res.d_hat = res.d_set[best.d_index];
    res.nu_hat = res.nu_grid[best.nu_index];
    res.phi_min = best.value;
    return res;
}

}  // namespace stochtrend
