#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "stochtrend/types.hpp"

namespace stochtrend {

class DenseMatrix;

/// Symmetric matrix stored by its main diagonal and `bandwidth` sub-diagonals.
/// Entries farther than `bandwidth` from the diagonal are exactly zero.
class BandedSymMatrix {
public:
    BandedSymMatrix() = default;
    BandedSymMatrix(std::size_t n, std::size_t bandwidth);

    static BandedSymMatrix identity(std::size_t n);
    static BandedSymMatrix diagonal(std::span<const double> diag);

    std::size_t size() const noexcept { return n_; }
    std::size_t bandwidth() const noexcept { return b_; }

    /// Element (i, j), zero outside the band.
    double operator()(std::size_t i, std::size_t j) const noexcept;

    /// Sets (i, j) and (j, i). Throws DimensionError outside the band.
    void set(std::size_t i, std::size_t j, double v);
    void add(std::size_t i, std::size_t j, double v);

    /// The k-th sub-diagonal, length n - k.
    Vector subdiagonal(std::size_t k) const;

    Vector multiply(std::span<const double> x) const;
    double quadratic_form(std::span<const double> x) const;
    double norm_inf() const;
    DenseMatrix to_dense() const;

    /// a*A + b*B; bandwidth is the larger of the two.
    friend BandedSymMatrix combine(double a, const BandedSymMatrix& A, double b,
                                   const BandedSymMatrix& B);

    BandedSymMatrix& operator*=(double s);
    BandedSymMatrix& add_to_diagonal(std::span<const double> diag);

    // Row-major lower band: row i holds columns i-b .. i.
    const double* row(std::size_t i) const noexcept { return data_.data() + i * (b_ + 1); }

private:
    std::size_t n_ = 0;
    std::size_t b_ = 0;
    Vector data_;
};

/// Lower band Cholesky factor L with L L' = A.
class BandedCholesky {
public:
    /// Factorizes A. Throws NotPositiveDefiniteError on the first pivot that
    /// is not safely positive relative to its diagonal entry.
    explicit BandedCholesky(const BandedSymMatrix& A);

    std::size_t size() const noexcept { return n_; }
    std::size_t bandwidth() const noexcept { return b_; }

    double factor(std::size_t i, std::size_t j) const noexcept;

    void solve_in_place(std::span<double> x) const;
    Vector solve(std::span<const double> rhs) const;

    /// Solves L y = e_t in place; y must be zero on entry. Only entries
    /// t..n-1 are touched.
    void forward_unit(std::size_t t, std::span<double> y) const;
    void forward_in_place(std::span<double> y, std::size_t start = 0) const;
    void backward_in_place(std::span<double> y) const;

    double log_determinant() const;

private:
    std::size_t n_ = 0;
    std::size_t b_ = 0;
    Vector data_;
};

BandedCholesky band_cholesky(const BandedSymMatrix& A);
Vector band_solve(const BandedCholesky& F, std::span<const double> rhs);

/// diag(A^{-1}) via one triangular solve per index.
Vector inverse_diagonal(const BandedCholesky& F);

/// The band of A^{-1} (same bandwidth as the factor), computed by the
/// Takahashi recurrence in O(n b^2).
BandedSymMatrix inverse_band(const BandedCholesky& F);

/// Calls f(t, x) with x = A^{-1} e_t for t = 0..n-1.
void for_each_inverse_column(const BandedCholesky& F,
                             const std::function<void(std::size_t, std::span<const double>)>& f);

/// Symmetric Toeplitz matrix described by its first column. Trailing lags
/// below 1e-14 relative to lag 0 are dropped on construction.
class ToeplitzBand {
public:
    explicit ToeplitzBand(Vector autocov, double rel_cutoff = 1e-14);
    std::size_t bandwidth() const noexcept { return acov_.empty() ? 0 : acov_.size() - 1; }
    const Vector& autocovariances() const noexcept { return acov_; }
    double quadratic_form(std::span<const double> x) const;
    /// Sum_s x[s] * M[s, t].
    double column_dot(std::span<const double> x, std::size_t t) const;

private:
    Vector acov_;
};

/// tr(A^{-1} M A^{-1}) for banded or Toeplitz M.
double trace_quadratic(const BandedCholesky& F, const BandedSymMatrix& M);
double trace_quadratic(const BandedCholesky& F, const ToeplitzBand& M);

/// tr(A^{-1} M).
double trace_product(const BandedCholesky& F, const BandedSymMatrix& M);
double trace_product(const BandedCholesky& F, const ToeplitzBand& M);

}  // namespace stochtrend
