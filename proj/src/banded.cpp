#include "stochtrend/banded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stochtrend/dense.hpp"

namespace stochtrend {

BandedSymMatrix::BandedSymMatrix(std::size_t n, std::size_t bandwidth)
    : n_(n), b_(bandwidth), data_(n * (bandwidth + 1), 0.0) {}

BandedSymMatrix BandedSymMatrix::identity(std::size_t n) {
    BandedSymMatrix I(n, 0);
    for (std::size_t i = 0; i < n; ++i) I.data_[i] = 1.0;
    return I;
}

BandedSymMatrix BandedSymMatrix::diagonal(std::span<const double> diag) {
    BandedSymMatrix D(diag.size(), 0);
    std::copy(diag.begin(), diag.end(), D.data_.begin());
    return D;
}

double BandedSymMatrix::operator()(std::size_t i, std::size_t j) const noexcept {
    if (i < j) std::swap(i, j);
    if (i - j > b_) return 0.0;
    return data_[i * (b_ + 1) + (j + b_ - i)];
}

void BandedSymMatrix::set(std::size_t i, std::size_t j, double v) {
    if (i < j) std::swap(i, j);
    if (i >= n_ || i - j > b_) throw DimensionError("entry outside the band");
    data_[i * (b_ + 1) + (j + b_ - i)] = v;
}

void BandedSymMatrix::add(std::size_t i, std::size_t j, double v) {
    if (i < j) std::swap(i, j);
    if (i >= n_ || i - j > b_) throw DimensionError("entry outside the band");
    data_[i * (b_ + 1) + (j + b_ - i)] += v;
}

Vector BandedSymMatrix::subdiagonal(std::size_t k) const {
    if (k > b_ || k >= n_) return Vector(k < n_ ? n_ - k : 0, 0.0);
    Vector out(n_ - k);
    for (std::size_t i = k; i < n_; ++i) out[i - k] = (*this)(i, i - k);
    return out;
}

Vector BandedSymMatrix::multiply(std::span<const double> x) const {
    if (x.size() != n_) throw DimensionError("vector length differs from matrix size");
    Vector y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        const double* r = row(i);
        const std::size_t j0 = i > b_ ? i - b_ : 0;
        double acc = r[b_] * x[i];
        for (std::size_t j = j0; j < i; ++j) {
            const double a = r[j + b_ - i];
            acc += a * x[j];
            y[j] += a * x[i];
        }
        y[i] += acc;
    }
    return y;
}

double BandedSymMatrix::quadratic_form(std::span<const double> x) const {
    if (x.size() != n_) throw DimensionError("vector length differs from matrix size");
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        const double* r = row(i);
        const std::size_t j0 = i > b_ ? i - b_ : 0;
        double off = 0.0;
        for (std::size_t j = j0; j < i; ++j) off += r[j + b_ - i] * x[j];
        s += x[i] * (r[b_] * x[i] + 2.0 * off);
    }
    return s;
}

double BandedSymMatrix::norm_inf() const {
    double best = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        const std::size_t lo = i > b_ ? i - b_ : 0;
        const std::size_t hi = std::min(n_ - 1, i + b_);
        for (std::size_t j = lo; j <= hi; ++j) s += std::abs((*this)(i, j));
        best = std::max(best, s);
    }
    return best;
}

DenseMatrix BandedSymMatrix::to_dense() const {
    DenseMatrix M(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t j0 = i > b_ ? i - b_ : 0;
        for (std::size_t j = j0; j <= i; ++j) {
            const double v = (*this)(i, j);
            M(i, j) = v;
            M(j, i) = v;
        }
    }
    return M;
}

BandedSymMatrix combine(double a, const BandedSymMatrix& A, double b, const BandedSymMatrix& B) {
    if (A.size() != B.size()) throw DimensionError("matrix sizes differ");
    const std::size_t n = A.size();
    BandedSymMatrix C(n, std::max(A.bandwidth(), B.bandwidth()));
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j0 = i > C.b_ ? i - C.b_ : 0;
        for (std::size_t j = j0; j <= i; ++j)
            C.data_[i * (C.b_ + 1) + (j + C.b_ - i)] = a * A(i, j) + b * B(i, j);
    }
    return C;
}

BandedSymMatrix& BandedSymMatrix::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

BandedSymMatrix& BandedSymMatrix::add_to_diagonal(std::span<const double> diag) {
    if (diag.size() != n_) throw DimensionError("diagonal length differs from matrix size");
    for (std::size_t i = 0; i < n_; ++i) data_[i * (b_ + 1) + b_] += diag[i];
    return *this;
}

// ---------------------------------------------------------------------------

BandedCholesky::BandedCholesky(const BandedSymMatrix& A)
    : n_(A.size()), b_(A.bandwidth()), data_(A.size() * (A.bandwidth() + 1), 0.0) {
    const std::size_t w = b_ + 1;
    // Pivots smaller than this fraction of the original diagonal are treated
    // as lost to cancellation.
    const double rel_tol = std::numeric_limits<double>::epsilon() * static_cast<double>(n_) *
                           static_cast<double>(w);
    for (std::size_t i = 0; i < n_; ++i) {
        const std::size_t j0 = i > b_ ? i - b_ : 0;
        double* Li = data_.data() + i * w;
        for (std::size_t j = j0; j <= i; ++j) {
            const double* Lj = data_.data() + j * w;
            double s = A(i, j);
            for (std::size_t k = j0; k < j; ++k) s -= Li[k + b_ - i] * Lj[k + b_ - j];
            if (j == i) {
                const double aii = A(i, i);
                if (!(s > rel_tol * std::abs(aii)) || !std::isfinite(s))
                    throw NotPositiveDefiniteError(
                        "matrix is not positive definite (pivot " + std::to_string(i) + ")", i);
                Li[b_] = std::sqrt(s);
            } else {
                Li[j + b_ - i] = s / Lj[b_];
            }
        }
    }
}

double BandedCholesky::factor(std::size_t i, std::size_t j) const noexcept {
    if (j > i || i - j > b_) return 0.0;
    return data_[i * (b_ + 1) + (j + b_ - i)];
}

void BandedCholesky::forward_in_place(std::span<double> y, std::size_t start) const {
    const std::size_t w = b_ + 1;
    for (std::size_t i = start; i < n_; ++i) {
        const double* Li = data_.data() + i * w;
        const std::size_t j0 = std::max(i > b_ ? i - b_ : std::size_t{0}, start);
        double s = y[i];
        for (std::size_t j = j0; j < i; ++j) s -= Li[j + b_ - i] * y[j];
        y[i] = s / Li[b_];
    }
}

void BandedCholesky::forward_unit(std::size_t t, std::span<double> y) const {
    y[t] = 1.0;
    forward_in_place(y, t);
}

void BandedCholesky::backward_in_place(std::span<double> y) const {
    const std::size_t w = b_ + 1;
    for (std::size_t ii = n_; ii-- > 0;) {
        const double* Li = data_.data() + ii * w;
        y[ii] /= Li[b_];
        const double yi = y[ii];
        const std::size_t j0 = ii > b_ ? ii - b_ : 0;
        for (std::size_t j = j0; j < ii; ++j) y[j] -= Li[j + b_ - ii] * yi;
    }
}

void BandedCholesky::solve_in_place(std::span<double> x) const {
    if (x.size() != n_) throw DimensionError("right-hand side length differs from matrix size");
    forward_in_place(x);
    backward_in_place(x);
}

Vector BandedCholesky::solve(std::span<const double> rhs) const {
    Vector x(rhs.begin(), rhs.end());
    solve_in_place(x);
    return x;
}

double BandedCholesky::log_determinant() const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i) s += 2.0 * std::log(data_[i * (b_ + 1) + b_]);
    return s;
}

BandedCholesky band_cholesky(const BandedSymMatrix& A) { return BandedCholesky(A); }

Vector band_solve(const BandedCholesky& F, std::span<const double> rhs) { return F.solve(rhs); }

Vector inverse_diagonal(const BandedCholesky& F) {
    // (A^{-1})_tt = |L^{-1} e_t|^2, and L^{-1} e_t vanishes above t.
    const std::size_t n = F.size();
    Vector out(n), y(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        std::fill(y.begin() + static_cast<std::ptrdiff_t>(t), y.end(), 0.0);
        F.forward_unit(t, y);
        double s = 0.0;
        for (std::size_t i = t; i < n; ++i) s += y[i] * y[i];
        out[t] = s;
    }
    return out;
}

BandedSymMatrix inverse_band(const BandedCholesky& F) {
    const std::size_t n = F.size();
    const std::size_t b = F.bandwidth();
    BandedSymMatrix Z(n, b);
    for (std::size_t i = n; i-- > 0;) {
        const double lii = F.factor(i, i);
        const std::size_t kmax = std::min(n - 1, i + b);
        for (std::size_t j = kmax; j > i; --j) {
            double s = 0.0;
            for (std::size_t k = i + 1; k <= kmax; ++k) s += F.factor(k, i) * Z(k, j);
            Z.set(i, j, -s / lii);
        }
        double s = 0.0;
        for (std::size_t k = i + 1; k <= kmax; ++k) s += F.factor(k, i) * Z(k, i);
        Z.set(i, i, (1.0 / lii - s) / lii);
    }
    return Z;
}

void for_each_inverse_column(const BandedCholesky& F,
                             const std::function<void(std::size_t, std::span<const double>)>& f) {
    const std::size_t n = F.size();
    Vector x(n);
    for (std::size_t t = 0; t < n; ++t) {
        std::fill(x.begin(), x.end(), 0.0);
        F.forward_unit(t, x);
        F.backward_in_place(x);
        f(t, x);
    }
}

ToeplitzBand::ToeplitzBand(Vector autocov, double rel_cutoff) : acov_(std::move(autocov)) {
    if (acov_.empty()) throw DimensionError("Toeplitz matrix needs at least lag 0");
    const double scale = std::abs(acov_[0]);
    while (acov_.size() > 1 && std::abs(acov_.back()) < rel_cutoff * scale) acov_.pop_back();
}

double ToeplitzBand::quadratic_form(std::span<const double> x) const {
    const std::size_t n = x.size();
    const std::size_t m = std::min(bandwidth(), n ? n - 1 : 0);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double off = 0.0;
        const std::size_t hi = std::min(m, n - 1 - i);
        for (std::size_t k = 1; k <= hi; ++k) off += acov_[k] * x[i + k];
        s += x[i] * (acov_[0] * x[i] + 2.0 * off);
    }
    return s;
}

double ToeplitzBand::column_dot(std::span<const double> x, std::size_t t) const {
    const std::size_t n = x.size();
    const std::size_t m = bandwidth();
    const std::size_t lo = t > m ? t - m : 0;
    const std::size_t hi = std::min(n - 1, t + m);
    double s = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) s += x[i] * acov_[i > t ? i - t : t - i];
    return s;
}

double trace_quadratic(const BandedCholesky& F, const BandedSymMatrix& M) {
    if (M.size() != F.size()) throw DimensionError("matrix sizes differ");
    double s = 0.0;
    for_each_inverse_column(F, [&](std::size_t, std::span<const double> x) {
        s += M.quadratic_form(x);
    });
    return s;
}

double trace_quadratic(const BandedCholesky& F, const ToeplitzBand& M) {
    double s = 0.0;
    for_each_inverse_column(F, [&](std::size_t, std::span<const double> x) {
        s += M.quadratic_form(x);
    });
    return s;
}

double trace_product(const BandedCholesky& F, const BandedSymMatrix& M) {
    if (M.size() != F.size()) throw DimensionError("matrix sizes differ");
    const std::size_t n = F.size();
    if (M.bandwidth() <= F.bandwidth()) {
        const BandedSymMatrix Z = inverse_band(F);
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s += Z(i, i) * M(i, i);
            const std::size_t j0 = i > M.bandwidth() ? i - M.bandwidth() : 0;
            for (std::size_t j = j0; j < i; ++j) s += 2.0 * Z(i, j) * M(i, j);
        }
        return s;
    }
    double s = 0.0;
    for_each_inverse_column(F, [&](std::size_t t, std::span<const double> x) {
        const std::size_t b = M.bandwidth();
        const std::size_t lo = t > b ? t - b : 0;
        const std::size_t hi = std::min(n - 1, t + b);
        for (std::size_t i = lo; i <= hi; ++i) s += x[i] * M(i, t);
    });
    return s;
}

double trace_product(const BandedCholesky& F, const ToeplitzBand& M) {
    double s = 0.0;
    for_each_inverse_column(F, [&](std::size_t t, std::span<const double> x) {
        s += M.column_dot(x, t);
    });
    return s;
}

}  // namespace stochtrend
