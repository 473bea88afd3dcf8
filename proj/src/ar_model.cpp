#include "stochtrend/ar_model.hpp"

#include <cmath>
#include <complex>

#include "stochtrend/dense.hpp"
#include "stochtrend/random.hpp"

namespace stochtrend {

Vector partial_autocorrelations(std::span<const double> phi) {
    const std::size_t p = phi.size();
    Vector a(phi.begin(), phi.end()), kappa(p, 0.0);
    for (std::size_t m = p; m >= 1; --m) {
        const double k = a[m - 1];
        if (!(std::abs(k) < 1.0)) throw ModelError("AR coefficients are not stationary");
        kappa[m - 1] = k;
        Vector prev(m - 1);
        const double den = 1.0 - k * k;
        for (std::size_t j = 1; j < m; ++j) prev[j - 1] = (a[j - 1] + k * a[m - j - 1]) / den;
        a = std::move(prev);
    }
    return kappa;
}

bool is_stationary(std::span<const double> phi) {
    for (double v : phi)
        if (!std::isfinite(v)) return false;
    try {
        partial_autocorrelations(phi);
        return true;
    } catch (const ModelError&) {
        return false;
    }
}

ARModel::ARModel(Vector phi, double sigma2) : phi_(std::move(phi)), sigma2_(sigma2) {
    if (!(sigma2 >= 0.0) || !std::isfinite(sigma2))
        throw DomainError("innovation variance must be finite and >= 0");
    if (!is_stationary(phi_)) throw ModelError("AR coefficients are not stationary");
}

Vector ARModel::autocovariances(std::size_t max_lag) const {
    const std::size_t p = order();
    Vector rho(max_lag + 1, 0.0);
    if (p == 0) {
        rho[0] = sigma2_;
        return rho;
    }
    // rho_k - sum_j phi_j rho_|k-j| = sigma2 [k == 0], k = 0..p
    DenseMatrix M(p + 1, p + 1);
    Vector rhs(p + 1, 0.0);
    rhs[0] = sigma2_;
    for (std::size_t k = 0; k <= p; ++k) {
        M(k, k) += 1.0;
        for (std::size_t j = 1; j <= p; ++j) {
            const std::size_t lag = k > j ? k - j : j - k;
            M(k, lag) -= phi_[j - 1];
        }
    }
    const Vector head = dense_solve(M, rhs);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        if (k <= p) {
            rho[k] = head[k];
        } else {
            double s = 0.0;
            for (std::size_t j = 1; j <= p; ++j) s += phi_[j - 1] * rho[k - j];
            rho[k] = s;
        }
    }
    return rho;
}

Vector ARModel::autocovariances_until(double rel_cutoff, std::size_t max_lag) const {
    Vector rho = autocovariances(max_lag);
    const double scale = std::abs(rho[0]);
    std::size_t last = 0;
    for (std::size_t k = 0; k < rho.size(); ++k)
        if (std::abs(rho[k]) >= rel_cutoff * scale) last = k;
    rho.resize(last + 1);
    return rho;
}

double ARModel::spectral_density(double u) const {
    std::complex<double> a(1.0, 0.0);
    for (std::size_t k = 0; k < phi_.size(); ++k)
        a -= phi_[k] * std::polar(1.0, static_cast<double>(k + 1) * u);
    return sigma2_ / std::norm(a);
}

double ARModel::spectral_density_at_zero() const {
    double s = 1.0;
    for (double v : phi_) s -= v;
    return sigma2_ / (s * s);
}

BandedSymMatrix ARModel::inverse_covariance(std::size_t n) const {
    if (!(sigma2_ > 0.0)) throw DomainError("inverse covariance needs sigma2 > 0");
    const std::size_t p = order();
    const std::size_t m = std::min(p, n);
    BandedSymMatrix Rinv(n, std::min(p, n ? n - 1 : 0));

    // R^{-1} = W'W with W the whitening map: the first m rows are L^{-1} for
    // the Cholesky factor of the m x m stationary covariance, the rest are
    // the innovation recursion scaled by 1/sigma.
    if (m > 0) {
        const Vector rho = autocovariances(m);
        BandedSymMatrix Gb(m, m - 1);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j <= i; ++j) Gb.set(i, j, rho[i - j]);
        const BandedCholesky L(Gb);
        DenseMatrix Linv(m, m);  // column c = L^{-1} e_c
        for (std::size_t c = 0; c < m; ++c) {
            Vector e(m, 0.0);
            L.forward_unit(c, e);
            for (std::size_t r = 0; r < m; ++r) Linv(r, c) = e[r];
        }
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t i = 0; i <= r; ++i)
                for (std::size_t j = 0; j <= i; ++j) Rinv.add(i, j, Linv(r, i) * Linv(r, j));
    }
    const double inv_s2 = 1.0 / sigma2_;
    Vector w(p + 1);
    for (std::size_t t = m; t < n; ++t) {
        // entries at columns t, t-1, ..., t-p
        w[0] = 1.0;
        for (std::size_t k = 1; k <= p; ++k) w[k] = -phi_[k - 1];
        for (std::size_t a = 0; a <= p; ++a)
            for (std::size_t b = a; b <= p; ++b) Rinv.add(t - a, t - b, inv_s2 * w[a] * w[b]);
    }
    return Rinv;
}

Vector ARModel::generate(std::size_t n, std::uint64_t seed, std::uint64_t substream) const {
    Vector eps(n, 0.0);
    if (n == 0 || sigma2_ == 0.0) return eps;
    CounterRng rng(seed, substream);
    const std::size_t p = order();
    const std::size_t m = std::min(p, n);
    if (m > 0) {
        const Vector rho = autocovariances(m);
        BandedSymMatrix G(m, m - 1);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j <= i; ++j) G.set(i, j, rho[i - j]);
        const BandedCholesky L(G);
        Vector z(m);
        for (double& v : z) v = rng.normal();
        for (std::size_t i = 0; i < m; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j <= i; ++j) s += L.factor(i, j) * z[j];
            eps[i] = s;
        }
    }
    const double sd = std::sqrt(sigma2_);
    for (std::size_t t = m; t < n; ++t) {
        double s = sd * rng.normal();
        for (std::size_t k = 1; k <= p; ++k) s += phi_[k - 1] * eps[t - k];
        eps[t] = s;
    }
    return eps;
}

}  // namespace stochtrend
