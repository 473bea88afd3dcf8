#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "stochtrend/ar_model.hpp"
#include "stochtrend/types.hpp"

namespace stochtrend {

/// Half-width k = round(sqrt(n)/2) of the local linear window.
std::size_t local_linear_halfwidth(std::size_t n);

/// Local linear trend: at each t, an OLS line over [t-k, t+k] clipped to the
/// series, evaluated at t. Needs n >= 9.
Vector local_linear_preliminary(const TimeSeries& y);

enum class OrderCriterion { aic, bic };

/// Yule-Walker AR fit (biased autocovariances, Levinson recursion) with the
/// order minimizing n log sigma_p^2 + penalty over p <= p_max. Throws
/// DegenerateInputError for zero-variance input and DimensionError when the
/// input is shorter than 10 * p_max.
ARModel fit_ar_with_order(std::span<const double> residuals, std::size_t p_max,
                          OrderCriterion criterion = OrderCriterion::bic);

/// Spectral density in the total-variance convention, g(0) = sum_j rho(j).
class SpectralDensity {
public:
    explicit SpectralDensity(ARModel model) : model_(std::move(model)) {}
    static SpectralDensity white(double sigma2) { return SpectralDensity(ARModel::white_noise(sigma2)); }
    double operator()(double u) const { return model_.spectral_density(u); }
    double at_zero() const { return model_.spectral_density_at_zero(); }
    const ARModel& model() const noexcept { return model_; }

private:
    ARModel model_;
};

double spectral_density_at(const ARModel& model, double u);

/// Half the mean squared first difference.
double noise_variance_first_diff(const TimeSeries& y);

/// (2/n) sum_{j=1..n} g(pi j/n) / (1 + nu s(pi j/n)^d).
double spectral_penalty(std::size_t n, PenaltySpec spec, const SpectralDensity& g);

/// SSE/n + spectral_penalty.
double criterion_phi(const TimeSeries& y, PenaltySpec spec, const SpectralDensity& g);

/// SSE/n + 2 nu^{-1/(2d)} g0 c6(d).
double criterion_phi_asymptotic(const TimeSeries& y, PenaltySpec spec, double g0);

/// 60 points log-spaced on [1e-2, 1e2 n^{2 d_max - 1}].
Vector default_nu_grid(std::size_t n, int d_max, std::size_t points = 60);

/// Penalty weights beyond which nu 4^d exceeds this bound are left out of the
/// search: the linear system loses all significant digits there.
inline constexpr double kMaxConditioning = 1e13;

/// phi over d_set x grid. Entries are NaN where the system is too ill
/// conditioned to solve. Rows follow d_set, columns follow grid.
std::vector<Vector> criterion_surface(std::span<const double> y, std::span<const int> d_set,
                                      std::span<const double> grid,
                                      const std::function<double(std::size_t, PenaltySpec)>& penalty);

struct GridArgmin {
    std::size_t d_index = 0;
    std::size_t nu_index = 0;
    double value = 0.0;
    bool found = false;
};
/// Smallest finite entry; ties go to the smaller d, then the smaller nu.
GridArgmin surface_argmin(const std::vector<Vector>& surface);

struct SelectOptions {
    std::vector<int> d_set{1, 2};
    Vector nu_grid;  // empty: default_nu_grid
    std::size_t p_max = 10;
    OrderCriterion order_criterion = OrderCriterion::bic;
    bool asymptotic_criterion = false;
};

struct SelectionResult {
    int d_hat = 1;
    double nu_hat = 0.0;
    double phi_min = 0.0;
    std::vector<int> d_set;
    Vector nu_grid;
    std::vector<Vector> surface;
    double g0 = 0.0;
    ARModel ar = ARModel::white_noise(0.0);
    double sigma2_first_diff = 0.0;
    /// Residuals had no variation at the scale of Y; white noise with zero
    /// variance was used.
    bool degenerate_residuals = false;
    std::size_t excluded_points = 0;
};

/// Preliminary fit, residual AR model, then the grid minimum of the criterion.
SelectionResult select(const TimeSeries& y, const SelectOptions& options = {});

}  // namespace stochtrend
