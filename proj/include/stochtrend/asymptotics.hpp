#pragma once

#include <cstddef>
#include <span>

#include "stochtrend/ar_model.hpp"
#include "stochtrend/types.hpp"

namespace stochtrend {

/// Beta(a, b) from log-gamma. Throws DomainError unless a, b > 0.
double beta_fn(double a, double b);

/// c6(d) = Beta(1/(2d), 1 - 1/(2d)) / (2 d pi) = (1/pi) int_0^inf du / (1 + u^{2d}).
double c6(DiffOrder d);

struct AsymptoticConstants {
    int d = 1;
    double g0 = 0.0;
    double tau2 = 0.0;
    double c1 = 0.0;  // variance
    double c2 = 0.0;  // bias
    double c3 = 0.0;  // optimal mse
    double c6 = 0.0;
};

/// Throws DomainError unless g0 > 0 and tau2 > 0.
AsymptoticConstants constants(DiffOrder d, double g0, double tau2);

/// nu^{1/(2d)} / n.
double effective_bandwidth(double nu, std::size_t n, DiffOrder d);

/// n^{2d-1} (c1/c2) / (2d-1).
double optimal_nu(std::size_t n, const AsymptoticConstants& k);

/// c1 nu^{-1/(2d)}.
double predicted_variance(double nu, const AsymptoticConstants& k);

/// c2 g_gamma(0) b^{2d-1}.
double predicted_bias(double nu, std::size_t n, const AsymptoticConstants& k, double g_gamma0 = 1.0);

/// c3 n^{-(2d-1)/(2d)}.
double predicted_optimal_mse(std::size_t n, const AsymptoticConstants& k);

/// tau2 Beta((2d0-1)/(2d), 2 - (2d0-1)/(2d)) / (2 d pi).
double misspecified_bias_constant(DiffOrder d, DiffOrder d0, double tau2);

struct MisspecifiedBias {
    double value = 0.0;
    /// true when value is only the order of an upper bound (d < d0).
    bool order_only = false;
};
MisspecifiedBias predicted_bias_misspecified(double nu, DiffOrder d, std::size_t n, DiffOrder d0,
                                             double tau2);

/// Leading constant of the optimal mse n^{-(2d0-1)/(2d0)} when estimating a
/// d0 trend with order d >= d0: minimizing c1 nu^{-1/(2d)} + c4 b^{2d0-1}
/// over nu gives (2d0/(2d0-1)) [c1^{2d0-1} (2d0-1) c4]^{1/(2d0)}.
double composite_constant(DiffOrder d, DiffOrder d0, double g0, double tau2);

/// The nu attaining that minimum: h = nu^{1/(2d)} solves
/// h^{2d0} = c1 n^{2d0-1} / ((2d0-1) c4), so nu grows like n^{d(2d0-1)/d0}.
double optimal_nu_misspecified(std::size_t n, DiffOrder d, DiffOrder d0, double g0, double tau2);

/// The same constant without the 1/(2 d pi) normalizers and the leading
/// factor, as it is usually printed.
double composite_constant_unnormalized(DiffOrder d, DiffOrder d0, double g0, double tau2);

/// tr((I + nu U)^{-2} T_n(g)) / n for AR errors.
double exact_variance(double nu, DiffOrder d, std::size_t n, const ARModel& err);

/// nu^2 sigma_gamma2 tr((I + nu U)^{-2} U) / n.
double exact_bias(double nu, DiffOrder d, std::size_t n, double sigma_gamma2);

/// E|bias|^2/n for a trend S_{d0} gamma with Cov(gamma) = sigma_gamma2 *
/// Toeplitz(rho_gamma), estimated with order d. Computed column by column as
/// nu^2 sum_t z_t' Cov(gamma) z_t with z_t = S_{d0}' U (I + nu U)^{-1} e_t.
double exact_bias_general(double nu, DiffOrder d, std::size_t n, DiffOrder d0, double sigma_gamma2,
                          std::span<const double> rho_gamma = {});

/// Exact Euclidean mse/n of the weighted estimator with known AR covariance.
double exact_wls_mse(double nu, DiffOrder d, std::size_t n, const ARModel& err, double sigma_gamma2);

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    bool defined = false;
};

/// Least-squares slope of log mse against log n. Undefined (flagged) when
/// any mse is not strictly positive and finite.
RateFit mse_rate_exponent(std::span<const double> n, std::span<const double> mse);

}  // namespace stochtrend
