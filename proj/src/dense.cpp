#include "stochtrend/dense.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace stochtrend {

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix T(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) T(j, i) = (*this)(i, j);
    return T;
}

Vector DenseMatrix::multiply(std::span<const double> x) const {
    if (x.size() != c_) throw DimensionError("vector length differs from column count");
    Vector y(r_, 0.0);
    for (std::size_t i = 0; i < r_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < c_; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Vector DenseMatrix::column(std::size_t j) const {
    Vector v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

double DenseMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

bool DenseMatrix::is_symmetric(double rel_tol) const {
    if (!is_square()) return false;
    const double scale = std::max(max_abs(), 1e-300);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs((*this)(i, j) - (*this)(j, i)) > rel_tol * scale) return false;
    return true;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& o) {
    if (o.r_ != r_ || o.c_ != c_) throw DimensionError("matrix shapes differ");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& o) {
    if (o.r_ != r_ || o.c_ != c_) throw DimensionError("matrix shapes differ");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
    for (double& v : a_) v *= s;
    return *this;
}

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("inner dimensions differ");
    DenseMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

namespace {

double off_diagonal_norm(const DenseMatrix& A) {
    double s = 0.0;
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            if (i != j) s += A(i, j) * A(i, j);
    return std::sqrt(s);
}

}  // namespace

SymmetricEigen symmetric_eigen(const DenseMatrix& A0) {
    if (!A0.is_square()) throw ShapeError("eigen-decomposition needs a square matrix");
    if (!A0.is_symmetric(1e-10)) throw SymmetryError("matrix is not symmetric");
    const std::size_t n = A0.rows();
    DenseMatrix A = A0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) A(i, j) = A(j, i) = 0.5 * (A(i, j) + A(j, i));
    DenseMatrix V = DenseMatrix::identity(n);
    const double norm = A.frobenius_norm();

    constexpr int kMaxSweeps = 60;
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        const double off = off_diagonal_norm(A);
        if (off <= 1e-15 * norm || off == 0.0) break;
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (apq == 0.0) continue;
                const double app = A(p, p), aqq = A(q, q);
                // skip rotations that cannot change the diagonal in floating point
                if (std::abs(apq) < 1e-300 ||
                    (sweep > 3 && std::abs(apq) * 1e18 < std::abs(app) &&
                     std::abs(apq) * 1e18 < std::abs(aqq))) {
                    A(p, q) = A(q, p) = 0.0;
                    continue;
                }
                rotated = true;
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                A(p, q) = A(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
        }
        if (!rotated) break;
    }
    if (off_diagonal_norm(A) > 1e-12 * norm)
        throw ConvergenceError("Jacobi iteration did not converge in 60 sweeps");

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return A(a, a) < A(b, b); });
    SymmetricEigen out{Vector(n), DenseMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = A(idx[k], idx[k]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = V(i, idx[k]);
    }
    return out;
}

Vector singular_values(const DenseMatrix& A) {
    Vector sv;
    if (A.is_symmetric(1e-12)) {
        sv = symmetric_eigen(A).values;
        for (double& v : sv) v = std::abs(v);
    } else {
        const DenseMatrix G = A.rows() >= A.cols() ? A.transpose() * A : A * A.transpose();
        sv = symmetric_eigen(G).values;
        for (double& v : sv) v = std::sqrt(std::max(v, 0.0));
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

std::size_t numerical_rank(std::span<const double> sv, double rel_tol) {
    if (sv.empty()) return 0;
    const double top = *std::max_element(sv.begin(), sv.end());
    if (top <= 0.0) return 0;
    return static_cast<std::size_t>(
        std::count_if(sv.begin(), sv.end(), [&](double s) { return s > rel_tol * top; }));
}

Vector dense_solve(DenseMatrix A, Vector b) {
    const std::size_t n = A.rows();
    if (!A.is_square() || b.size() != n) throw DimensionError("system dimensions differ");
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(A(i, k)) > std::abs(A(piv, k))) piv = i;
        if (A(piv, k) == 0.0) throw DomainError("matrix is singular");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = A(i, k) / A(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k; j < n; ++j) A(i, j) -= f * A(k, j);
            b[i] -= f * b[k];
        }
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= A(ii, j) * b[j];
        b[ii] = s / A(ii, ii);
    }
    return b;
}

DenseMatrix dense_inverse(const DenseMatrix& A0) {
    const std::size_t n = A0.rows();
    if (!A0.is_square()) throw DimensionError("inverse needs a square matrix");
    DenseMatrix A = A0, X = DenseMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(A(i, k)) > std::abs(A(piv, k))) piv = i;
        if (A(piv, k) == 0.0) throw DomainError("matrix is singular");
        if (piv != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(A(k, j), A(piv, j));
                std::swap(X(k, j), X(piv, j));
            }
        const double inv = 1.0 / A(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            A(k, j) *= inv;
            X(k, j) *= inv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const double f = A(i, k);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                A(i, j) -= f * A(k, j);
                X(i, j) -= f * X(k, j);
            }
        }
    }
    return X;
}

}  // namespace stochtrend
