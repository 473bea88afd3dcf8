#include "stochtrend/operators.hpp"

#include <algorithm>
#include <cmath>

namespace stochtrend {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

Vector summation_weights(DiffOrder d, std::size_t length) {
    Vector w(length);
    if (length == 0) return w;
    w[0] = 1.0;
    for (std::size_t l = 1; l < length; ++l)
        w[l] = w[l - 1] * static_cast<double>(d.size() + l - 1) / static_cast<double>(l);
    return w;
}

Vector difference_coefficients(DiffOrder d) {
    Vector c(d.size() + 1);
    for (int k = 0; k <= d.value(); ++k) c[k] = (k % 2 ? -1.0 : 1.0) * binomial(d.value(), k);
    return c;
}

Vector apply_summation(DiffOrder d, std::span<const double> x) {
    Vector y(x.begin(), x.end());
    for (int pass = 0; pass < d.value(); ++pass)
        for (std::size_t t = 1; t < y.size(); ++t) y[t] += y[t - 1];
    return y;
}

Vector apply_summation_adjoint(DiffOrder d, std::span<const double> x) {
    Vector y(x.begin(), x.end());
    for (int pass = 0; pass < d.value(); ++pass)
        for (std::size_t t = y.size(); t-- > 1;) y[t - 1] += y[t];
    return y;
}

Vector apply_difference(DiffOrder d, std::span<const double> x) {
    const Vector c = difference_coefficients(d);
    const std::size_t n = x.size();
    Vector y(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t kmax = std::min(d.size(), t);
        double s = 0.0;
        for (std::size_t k = 0; k <= kmax; ++k) s += c[k] * x[t - k];
        y[t] = s;
    }
    return y;
}

Vector apply_truncated_difference(DiffOrder d, std::span<const double> x) {
    if (x.size() <= d.size()) throw DimensionError("series shorter than d+1");
    const Vector full = apply_difference(d, x);
    return Vector(full.begin() + static_cast<std::ptrdiff_t>(d.size()), full.end());
}

Vector apply_truncated_difference_adjoint(DiffOrder d, std::span<const double> y, std::size_t n) {
    if (n <= d.size() || y.size() != n - d.size())
        throw DimensionError("adjoint input length must be n - d");
    const Vector c = difference_coefficients(d);
    Vector x(n, 0.0);
    for (std::size_t r = 0; r < y.size(); ++r) {
        const std::size_t t = r + d.size();
        for (std::size_t k = 0; k <= d.size(); ++k) x[t - k] += c[k] * y[r];
    }
    return x;
}

namespace {

// Gram matrix of the difference rows first_row..n-1. The interior follows
// the closed form (-1)^m C(2d, d-m); rows whose stencil is clipped by either
// end are summed explicitly.
BandedSymMatrix difference_gram(DiffOrder d, std::size_t n, std::size_t first_row) {
    const Vector c = difference_coefficients(d);
    const std::size_t dd = d.size();
    const std::size_t b = std::min(dd, n ? n - 1 : 0);
    BandedSymMatrix G(n, b);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t m = 0; m <= b && m <= j; ++m) {
            const std::size_t k = j - m;
            // row t contributes c[t-j] c[t-k]; needs t >= j, t <= k + d
            const std::size_t t_hi_full = k + dd;
            double v;
            if (j >= first_row && t_hi_full <= n - 1) {
                v = (m % 2 ? -1.0 : 1.0) * binomial(2 * d.value(), d.value() - static_cast<int>(m));
            } else {
                v = 0.0;
                const std::size_t lo = std::max(j, first_row);
                const std::size_t hi = std::min(n - 1, t_hi_full);
                for (std::size_t t = lo; t <= hi; ++t)
                    if (t >= j) v += c[t - j] * c[t - k];
            }
            G.set(j, k, v);
        }
    }
    return G;
}

}  // namespace

BandedSymMatrix penalty_matrix(DiffOrder d, std::size_t n) {
    if (n < d.size() + 1) throw DimensionError("penalty matrix needs n >= d+1");
    return difference_gram(d, n, d.size());
}

BandedSymMatrix full_difference_gram(DiffOrder d, std::size_t n) {
    if (n == 0) throw DimensionError("empty series");
    return difference_gram(d, n, 0);
}

DenseMatrix vandermonde_nullspace(DiffOrder d, std::size_t n) {
    if (n == 0) throw DimensionError("empty series");
    DenseMatrix V(n, d.size());
    for (std::size_t t = 0; t < n; ++t) {
        const double u = static_cast<double>(t + 1) / static_cast<double>(n);
        double p = 1.0;
        for (std::size_t j = 0; j < d.size(); ++j) {
            V(t, j) = p;
            p *= u;
        }
    }
    return V;
}

DenseMatrix summation_matrix(DiffOrder d, std::size_t n) {
    const Vector w = summation_weights(d, n);
    DenseMatrix S(n, n);
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t s = 0; s <= t; ++s) S(t, s) = w[t - s];
    return S;
}

DenseMatrix difference_matrix(DiffOrder d, std::size_t n) {
    const Vector c = difference_coefficients(d);
    DenseMatrix D(n, n);
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t k = 0; k <= d.size() && k <= t; ++k) D(t, t - k) = c[k];
    return D;
}

}  // namespace stochtrend
