#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "stochtrend/banded.hpp"
#include "stochtrend/types.hpp"

namespace stochtrend {

/// Partial autocorrelations by the step-down recursion. Throws ModelError if
/// some |kappa| >= 1 on the way down.
Vector partial_autocorrelations(std::span<const double> phi);
bool is_stationary(std::span<const double> phi);

/// Causal AR(p): eps_t = sum_k phi_k eps_{t-k} + delta_t, Var(delta) = sigma2.
class ARModel {
public:
    /// Throws ModelError for a non-stationary phi and DomainError for
    /// sigma2 < 0. sigma2 == 0 is allowed and gives identically zero noise.
    ARModel(Vector phi, double sigma2);

    static ARModel white_noise(double sigma2) { return ARModel({}, sigma2); }

    std::size_t order() const noexcept { return phi_.size(); }
    const Vector& phi() const noexcept { return phi_; }
    double innovation_variance() const noexcept { return sigma2_; }

    /// rho(0..max_lag).
    Vector autocovariances(std::size_t max_lag) const;

    /// Autocovariances up to the last lag above rel_cutoff * rho(0), capped at
    /// max_lag.
    Vector autocovariances_until(double rel_cutoff, std::size_t max_lag) const;

    /// g(u) = sigma2 / |1 - sum_k phi_k e^{iku}|^2.
    double spectral_density(double u) const;
    double spectral_density_at_zero() const;

    /// Banded R^{-1} for a length-n segment; bandwidth = order. Needs sigma2 > 0.
    BandedSymMatrix inverse_covariance(std::size_t n) const;

    /// Stationary sample path from a normal stream with the given seed.
    Vector generate(std::size_t n, std::uint64_t seed, std::uint64_t substream = 0) const;

private:
    Vector phi_;
    double sigma2_;
};

}  // namespace stochtrend
