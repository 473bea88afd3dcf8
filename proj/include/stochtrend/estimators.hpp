#pragma once

#include <optional>
#include <span>

#include "stochtrend/ar_model.hpp"
#include "stochtrend/types.hpp"

namespace stochtrend {

struct TrendFit {
    explicit TrendFit(PenaltySpec s) : spec(s) {}

    Vector mu_hat;
    std::optional<Vector> lower;
    std::optional<Vector> upper;
    PenaltySpec spec;
    double sse = 0.0;
    /// tr of the smoother matrix, e.g. tr((I + nu U)^{-1}).
    double dof = 0.0;
    std::optional<double> criterion;
};

/// Solves (I + nu U) mu = Y. Needs a fully observed series with n >= 2d+1.
TrendFit fit_ols(const TimeSeries& y, PenaltySpec spec);

/// Solves (I~ + nu U) mu = I~ Y, with I~ the observation mask. Throws
/// UnidentifiableTrendError when fewer than d points are observed, or when
/// nu == 0 and some point is missing.
TrendFit fit_missing(const TimeSeries& y, PenaltySpec spec);

/// Solves (R^{-1} + nu U) mu = R^{-1} Y with R the AR error covariance.
TrendFit fit_wls(const TimeSeries& y, PenaltySpec spec, const ARModel& err);

/// mu_hat only, without the d.o.f. diagnostics. Used on hot paths.
Vector smooth(std::span<const double> y, PenaltySpec spec);

/// D_tt = sigma2 [(I + nu* S'_{-d} S_{-d})^{-1}]_tt over the full difference.
Vector prediction_variances(DiffOrder d, std::size_t n, double sigma2, double nu_star);

/// Fills lower/upper with mu_hat -/+ z sqrt(D_tt), z the two-sided normal
/// quantile at level alpha.
TrendFit prediction_band(TrendFit fit, double sigma_eps2, double nu_star, double alpha);

}  // namespace stochtrend
