#include "stochtrend/estimators.hpp"

#include <cmath>
#include <string>

#include "stochtrend/banded.hpp"
#include "stochtrend/operators.hpp"
#include "stochtrend/stats.hpp"

namespace stochtrend {

namespace {

void require_length(std::size_t n, DiffOrder d) {
    if (n < 2 * d.size() + 1)
        throw DimensionError("series of length " + std::to_string(n) + " is too short for d=" +
                             std::to_string(d.value()) + " (need n >= 2d+1)");
}

double sum_sq_diff(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

BandedSymMatrix ols_system(DiffOrder d, std::size_t n, double nu) {
    BandedSymMatrix A = penalty_matrix(d, n);
    A *= nu;
    const Vector ones(n, 1.0);
    A.add_to_diagonal(ones);
    return A;
}

}  // namespace

Vector smooth(std::span<const double> y, PenaltySpec spec) {
    require_length(y.size(), spec.d);
    if (spec.nu == 0.0) return Vector(y.begin(), y.end());
    const BandedCholesky F(ols_system(spec.d, y.size(), spec.nu));
    return F.solve(y);
}

TrendFit fit_ols(const TimeSeries& y, PenaltySpec spec) {
    if (!y.fully_observed()) throw DimensionError("fit_ols needs a fully observed series");
    const std::size_t n = y.size();
    require_length(n, spec.d);
    TrendFit fit(spec);
    if (spec.nu == 0.0) {
        fit.mu_hat = y.values;
        fit.dof = static_cast<double>(n);
        return fit;
    }
    const BandedCholesky F(ols_system(spec.d, n, spec.nu));
    fit.mu_hat = F.solve(y.values);
    fit.sse = sum_sq_diff(y.values, fit.mu_hat);
    const BandedSymMatrix Z = inverse_band(F);
    for (std::size_t t = 0; t < n; ++t) fit.dof += Z(t, t);
    return fit;
}

TrendFit fit_missing(const TimeSeries& y, PenaltySpec spec) {
    const std::size_t n = y.size();
    require_length(n, spec.d);
    const std::size_t obs = y.observed_count();
    if (obs < spec.d.size())
        throw UnidentifiableTrendError(
            "only " + std::to_string(obs) + " observed points: a polynomial of degree <= " +
            std::to_string(spec.d.value() - 1) +
            " can vanish at every observed index, so the trend is not identified");
    if (spec.nu == 0.0 && obs < n)
        throw UnidentifiableTrendError("nu = 0 leaves unobserved points undetermined");

    Vector mask(n), rhs(n);
    for (std::size_t t = 0; t < n; ++t) {
        mask[t] = y.observed[t] ? 1.0 : 0.0;
        rhs[t] = y.observed[t] ? y.values[t] : 0.0;
    }
    TrendFit fit(spec);
    if (spec.nu == 0.0) {
        fit.mu_hat = y.values;
        fit.dof = static_cast<double>(n);
        return fit;
    }
    BandedSymMatrix A = penalty_matrix(spec.d, n);
    A *= spec.nu;
    A.add_to_diagonal(mask);
    std::optional<BandedCholesky> F;
    try {
        F.emplace(A);
    } catch (const NotPositiveDefiniteError& e) {
        throw UnidentifiableTrendError(
            "observed points do not pin down the degree <= " + std::to_string(spec.d.value() - 1) +
            " polynomial component (pivot " + std::to_string(e.pivot()) + ")");
    }
    fit.mu_hat = F->solve(rhs);
    const BandedSymMatrix Z = inverse_band(*F);
    for (std::size_t t = 0; t < n; ++t) {
        if (!y.observed[t]) continue;
        const double r = y.values[t] - fit.mu_hat[t];
        fit.sse += r * r;
        fit.dof += Z(t, t);
    }
    return fit;
}

TrendFit fit_wls(const TimeSeries& y, PenaltySpec spec, const ARModel& err) {
    if (!y.fully_observed()) throw DimensionError("fit_wls needs a fully observed series");
    const std::size_t n = y.size();
    require_length(n, spec.d);
    TrendFit fit(spec);
    if (spec.nu == 0.0) {
        fit.mu_hat = y.values;
        fit.dof = static_cast<double>(n);
        return fit;
    }
    const BandedSymMatrix Rinv = err.inverse_covariance(n);
    BandedSymMatrix U = penalty_matrix(spec.d, n);
    const BandedSymMatrix A = combine(1.0, Rinv, spec.nu, U);
    const BandedCholesky F(A);
    fit.mu_hat = F.solve(Rinv.multiply(y.values));
    fit.sse = sum_sq_diff(y.values, fit.mu_hat);
    fit.dof = trace_product(F, Rinv);
    return fit;
}

Vector prediction_variances(DiffOrder d, std::size_t n, double sigma2, double nu_star) {
    if (!(nu_star > 0.0)) throw DomainError("prediction band needs nu* > 0");
    if (!(sigma2 >= 0.0)) throw DomainError("error variance must be >= 0");
    BandedSymMatrix A = full_difference_gram(d, n);
    A *= nu_star;
    A.add_to_diagonal(Vector(n, 1.0));
    Vector D = inverse_diagonal(BandedCholesky(A));
    for (double& v : D) v *= sigma2;
    return D;
}

TrendFit prediction_band(TrendFit fit, double sigma_eps2, double nu_star, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
    const std::size_t n = fit.mu_hat.size();
    const Vector D = prediction_variances(fit.spec.d, n, sigma_eps2, nu_star);
    const double z = normal_quantile(1.0 - alpha / 2.0);
    Vector lo(n), hi(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double h = z * std::sqrt(D[t]);
        lo[t] = fit.mu_hat[t] - h;
        hi[t] = fit.mu_hat[t] + h;
    }
    fit.lower = std::move(lo);
    fit.upper = std::move(hi);
    return fit;
}

}  // namespace stochtrend
