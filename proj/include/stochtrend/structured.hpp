#pragma once

// Toeplitz, Hankel and circulant matrices generated by a trigonometric
// symbol f(u) = sum_{|j|<=N} b_j e^{iju}, and executable checks of the
// spectral bounds relating them. Dense and meant for n up to a few hundred.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stochtrend/dense.hpp"
#include "stochtrend/types.hpp"

namespace stochtrend {

class Symbol {
public:
    /// Coefficients b_{-N}, ..., b_N (odd length).
    explicit Symbol(Vector coefficients);
    /// b_0..b_N with b_{-j} = b_j.
    static Symbol symmetric(std::span<const double> half);
    /// s(u)^d with s(u) = 2 - 2 cos u: b_m = (-1)^m C(2d, d - |m|).
    static Symbol difference_power(DiffOrder d);

    int half_width() const noexcept { return N_; }
    double coeff(int j) const noexcept;
    bool is_symmetric() const noexcept;
    std::complex<double> operator()(double u) const;
    /// Real part of f(u); the whole value when the symbol is symmetric.
    double real_value(double u) const;
    double sup_abs_on_grid(std::size_t points) const;

private:
    int N_;
    Vector b_;
};

DenseMatrix toeplitz(const Symbol& f, std::size_t n);

/// H[j,k] = b[j+k] in 1-based indices; b must hold entries 0..2n (b[0], b[1]
/// never appear in H).
DenseMatrix hankel(std::span<const double> b, std::size_t n);

/// Hankel companion of a symbol, H[j,k] = b_{j+k-1} (1-based). With it,
/// C_n(f) - T_n(f) is the clockwise quarter turn of H + W H W.
DenseMatrix symbol_hankel(const Symbol& f, std::size_t n);

/// Throws SymbolTooWideError when 2N >= n.
DenseMatrix circulant(const Symbol& f, std::size_t n);

DenseMatrix flip_matrix(std::size_t n);
/// P_0: ones on the first sub-diagonal and in the top-right corner.
DenseMatrix cyclic_permutation(std::size_t n);
/// R[r][c] = M[n-1-c][r]; the image of M under a 90 degree clockwise turn.
DenseMatrix rotate_clockwise(const DenseMatrix& M);

/// Real orthonormal eigenbasis of every symmetric circulant: constant,
/// cosine/sine pairs and, for even n, the alternating vector. Column k pairs
/// with frequency 2 pi j_k / n.
struct CirculantBasis {
    DenseMatrix Q;
    Vector frequencies;
};
CirculantBasis circulant_real_eigenbasis(std::size_t n);

/// Inequalities evaluated as lhs <= rhs + tolerance, one entry each.
struct BoundReport {
    std::string name;
    std::vector<std::string> labels;
    Vector lhs;
    Vector rhs;
    double tolerance = 0.0;

    void add(std::string label, double l, double r);
    double worst_margin() const;
    bool holds() const;
    std::size_t violations() const;
};

/// sigma_j(H) <= sum_{t>=j+1} |b_t| and ||H||_1 <= 2 sum_l l |b_l|. Throws
/// ShapeError unless H[j,k] == b[j+k].
BoundReport check_lemma1(const DenseMatrix& H, std::span<const double> b);

/// rank(C - T) <= 2N and ||C - T||_1 <= 2 sum_{1<=j<=N} (j+1)|b_j|.
BoundReport check_lemma2(const Symbol& f, std::size_t n);

/// Ascending eigenvalues: lambda_j(A) <= lambda_{j+r}(B) and the reverse,
/// r = numerical rank of A - B.
BoundReport check_weyl_interlacing(const DenseMatrix& A, const DenseMatrix& B);

/// Descending singular values: sigma_{j+r}(A) <= sigma_j(B) and the reverse.
BoundReport check_singular_interlacing(const DenseMatrix& A, const DenseMatrix& B);

/// |sum sigma_j(A)^2 - sum sigma_j(B)^2| <= r (sigma_1(A)^2 + sigma_1(B)^2).
BoundReport check_finite_rank_energy(const DenseMatrix& A, const DenseMatrix& B);

/// Penalty matrix equals T_n(s^d) away from the leading and trailing d x d
/// corners, exactly.
BoundReport check_penalty_interior(DiffOrder d, std::size_t n);

/// sum_{0<=t<=l} C(d,t) C(d,l-t) == C(2d,l) in 64-bit integers.
BoundReport check_binomial_convolution(int d_max);

/// C_n(f) against sum_j f(2 pi j/n) e_j e_j^* and against the real basis.
BoundReport check_circulant_reconstruction(const Symbol& f, std::size_t n);

/// C_n(f) - T_n(f) against the quarter turn of H + W H W.
BoundReport check_hankel_rotation(const Symbol& f, std::size_t n);

/// Every structured-matrix check over fixed randomized corpora.
std::vector<BoundReport> run_lemma_suites(std::uint64_t seed);

}  // namespace stochtrend
