#include "stochtrend/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "stochtrend/banded.hpp"
#include "stochtrend/operators.hpp"
#include "stochtrend/stats.hpp"

namespace stochtrend {

double beta_fn(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("Beta needs positive arguments");
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double c6(DiffOrder d) {
    const double dd = d.value();
    return beta_fn(1.0 / (2.0 * dd), 1.0 - 1.0 / (2.0 * dd)) / (2.0 * dd * std::numbers::pi);
}

AsymptoticConstants constants(DiffOrder d, double g0, double tau2) {
    if (!(g0 > 0.0)) throw DomainError("g0 must be > 0");
    if (!(tau2 > 0.0)) throw DomainError("tau2 must be > 0");
    const double dd = d.value();
    const double q = 1.0 / (2.0 * dd);
    const double norm = 2.0 * dd * std::numbers::pi;
    AsymptoticConstants k;
    k.d = d.value();
    k.g0 = g0;
    k.tau2 = tau2;
    k.c1 = g0 * beta_fn(q, 2.0 - q) / norm;
    k.c2 = tau2 * beta_fn(1.0 + q, 1.0 - q) / norm;
    k.c3 = k.c1 * std::pow(k.c2 / k.c1, q) * 2.0 * dd * std::pow(2.0 * dd - 1.0, -1.0 + q);
    k.c6 = c6(d);
    return k;
}

double effective_bandwidth(double nu, std::size_t n, DiffOrder d) {
    return std::pow(nu, 1.0 / (2.0 * d.value())) / static_cast<double>(n);
}

double optimal_nu(std::size_t n, const AsymptoticConstants& k) {
    return std::pow(static_cast<double>(n), 2.0 * k.d - 1.0) * (k.c1 / k.c2) / (2.0 * k.d - 1.0);
}

double predicted_variance(double nu, const AsymptoticConstants& k) {
    return k.c1 * std::pow(nu, -1.0 / (2.0 * k.d));
}

double predicted_bias(double nu, std::size_t n, const AsymptoticConstants& k, double g_gamma0) {
    return k.c2 * g_gamma0 * std::pow(effective_bandwidth(nu, n, DiffOrder(k.d)), 2.0 * k.d - 1.0);
}

double predicted_optimal_mse(std::size_t n, const AsymptoticConstants& k) {
    return k.c3 * std::pow(static_cast<double>(n), -(2.0 * k.d - 1.0) / (2.0 * k.d));
}

double misspecified_bias_constant(DiffOrder d, DiffOrder d0, double tau2) {
    const double dd = d.value();
    const double a = (2.0 * d0.value() - 1.0) / (2.0 * dd);
    return tau2 * beta_fn(a, 2.0 - a) / (2.0 * dd * std::numbers::pi);
}

MisspecifiedBias predicted_bias_misspecified(double nu, DiffOrder d, std::size_t n, DiffOrder d0,
                                             double tau2) {
    MisspecifiedBias out;
    if (d < d0) {
        out.value = std::pow(nu / static_cast<double>(n), 2.0 * d.value());
        out.order_only = true;
    } else {
        out.value = misspecified_bias_constant(d, d0, tau2) *
                    std::pow(effective_bandwidth(nu, n, d), 2.0 * d0.value() - 1.0);
    }
    return out;
}

double composite_constant(DiffOrder d, DiffOrder d0, double g0, double tau2) {
    if (d < d0) throw DomainError("composite constant needs d >= d0");
    const double a = 2.0 * d0.value() - 1.0;
    const double c1 = constants(d, g0, tau2).c1;
    const double c4 = misspecified_bias_constant(d, d0, tau2);
    return (2.0 * d0.value() / a) * std::pow(std::pow(c1, a) * a * c4, 1.0 / (2.0 * d0.value()));
}

double optimal_nu_misspecified(std::size_t n, DiffOrder d, DiffOrder d0, double g0, double tau2) {
    if (d < d0) throw DomainError("misspecified optimum needs d >= d0");
    const double a = 2.0 * d0.value() - 1.0;
    const double c1 = constants(d, g0, tau2).c1;
    const double c4 = misspecified_bias_constant(d, d0, tau2);
    const double h = std::pow(c1 * std::pow(static_cast<double>(n), a) / (a * c4), 1.0 / (2.0 * d0.value()));
    return std::pow(h, 2.0 * d.value());
}

double composite_constant_unnormalized(DiffOrder d, DiffOrder d0, double g0, double tau2) {
    if (d < d0) throw DomainError("composite constant needs d >= d0");
    const double dd = d.value();
    const double a = 2.0 * d0.value() - 1.0;
    const double q = 1.0 / (2.0 * dd);
    const double inner = std::pow(g0, a) * tau2 * a * std::pow(beta_fn(q, 2.0 - q), a) *
                         beta_fn(a / (2.0 * dd), 2.0 - a / (2.0 * dd));
    return std::pow(inner, 1.0 / (2.0 * d0.value()));
}

namespace {

BandedCholesky ols_factor(double nu, DiffOrder d, std::size_t n) {
    BandedSymMatrix A = penalty_matrix(d, n);
    A *= nu;
    A.add_to_diagonal(Vector(n, 1.0));
    return BandedCholesky(A);
}

}  // namespace

double exact_variance(double nu, DiffOrder d, std::size_t n, const ARModel& err) {
    if (!(nu >= 0.0)) throw DomainError("nu must be >= 0");
    const ToeplitzBand R(err.autocovariances_until(1e-14, n - 1));
    if (nu == 0.0) return R.autocovariances()[0];
    return trace_quadratic(ols_factor(nu, d, n), R) / static_cast<double>(n);
}

double exact_bias(double nu, DiffOrder d, std::size_t n, double sigma_gamma2) {
    if (!(nu >= 0.0)) throw DomainError("nu must be >= 0");
    if (nu == 0.0) return 0.0;
    const BandedSymMatrix U = penalty_matrix(d, n);
    return nu * nu * sigma_gamma2 * trace_quadratic(ols_factor(nu, d, n), U) / static_cast<double>(n);
}

double exact_bias_general(double nu, DiffOrder d, std::size_t n, DiffOrder d0, double sigma_gamma2,
                          std::span<const double> rho_gamma) {
    if (!(nu >= 0.0)) throw DomainError("nu must be >= 0");
    if (nu == 0.0) return 0.0;
    Vector rho(rho_gamma.begin(), rho_gamma.end());
    if (rho.empty()) rho = {1.0};
    for (double& r : rho) r *= sigma_gamma2;
    const ToeplitzBand cov(rho);
    const BandedSymMatrix U = penalty_matrix(d, n);
    double s = 0.0;
    for_each_inverse_column(ols_factor(nu, d, n), [&](std::size_t, std::span<const double> x) {
        const Vector z = apply_summation_adjoint(d0, U.multiply(x));
        s += cov.quadratic_form(z);
    });
    return nu * nu * s / static_cast<double>(n);
}

double exact_wls_mse(double nu, DiffOrder d, std::size_t n, const ARModel& err, double sigma_gamma2) {
    if (!(nu > 0.0)) throw DomainError("nu must be > 0");
    const BandedSymMatrix Rinv = err.inverse_covariance(n);
    const BandedSymMatrix U = penalty_matrix(d, n);
    const BandedCholesky F(combine(1.0, Rinv, nu, U));
    const double var = trace_quadratic(F, Rinv);
    const double bias = nu * nu * sigma_gamma2 * trace_quadratic(F, U);
    return (var + bias) / static_cast<double>(n);
}

RateFit mse_rate_exponent(std::span<const double> n, std::span<const double> mse) {
    if (n.size() != mse.size() || n.size() < 3)
        throw DimensionError("rate fit needs at least three (n, mse) pairs");
    RateFit out;
    Vector x(n.size()), y(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (!(mse[i] > 0.0) || !std::isfinite(mse[i]) || !(n[i] > 0.0)) return out;
        x[i] = std::log(n[i]);
        y[i] = std::log(mse[i]);
    }
    const LineFit f = least_squares_line(x, y);
    out.slope = f.slope;
    out.intercept = f.intercept;
    out.defined = true;
    return out;
}

}  // namespace stochtrend
