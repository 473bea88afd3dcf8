#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stochtrend/types.hpp"

namespace stochtrend {

/// Small row-major dense matrix. Used for oracles and the structured-matrix
/// checks, never on the O(n) estimation path.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : r_(rows), c_(cols), a_(rows * cols, fill) {}

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return r_; }
    std::size_t cols() const noexcept { return c_; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * c_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * c_ + j]; }

    DenseMatrix transpose() const;
    Vector multiply(std::span<const double> x) const;
    Vector column(std::size_t j) const;

    double frobenius_norm() const;
    double max_abs() const;
    bool is_square() const noexcept { return r_ == c_; }
    bool is_symmetric(double rel_tol = 1e-12) const;

    DenseMatrix& operator+=(const DenseMatrix& o);
    DenseMatrix& operator-=(const DenseMatrix& o);
    DenseMatrix& operator*=(double s);

private:
    std::size_t r_ = 0, c_ = 0;
    Vector a_;
};

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b);
DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator*(double s, DenseMatrix a);

struct SymmetricEigen {
    Vector values;         // ascending
    DenseMatrix vectors;   // column k pairs with values[k]
};

/// Cyclic Jacobi. Throws SymmetryError if A is not symmetric to 1e-10
/// relative, ConvergenceError after 60 sweeps.
SymmetricEigen symmetric_eigen(const DenseMatrix& A);

/// Descending singular values. Symmetric input uses |eigenvalues|.
Vector singular_values(const DenseMatrix& A);

/// Count of singular values above rel_tol * sigma_max.
std::size_t numerical_rank(std::span<const double> sv, double rel_tol = 1e-8);

/// Gaussian elimination with partial pivoting.
Vector dense_solve(DenseMatrix A, Vector b);
DenseMatrix dense_inverse(const DenseMatrix& A);

}  // namespace stochtrend
