#pragma once

// Summation and difference operators of order d on series of length n.
//
// Indexing is 0-based throughout: element t here is time t+1. The summation
// operator S_d is lower triangular Toeplitz with weights C(d+l-1, l); the
// difference operator S_{-d} is its inverse, banded with (-1)^k C(d, k).
// The truncated difference drops the first d rows, whose stencils would
// reach before the start of the series.

#include <cstddef>
#include <span>

#include "stochtrend/banded.hpp"
#include "stochtrend/dense.hpp"
#include "stochtrend/types.hpp"

namespace stochtrend {

/// C(n, k) as a double; exact while the value fits in 53 bits.
double binomial(int n, int k);

/// C(d + l - 1, l) for l = 0..length-1, by the ratio recurrence.
Vector summation_weights(DiffOrder d, std::size_t length);

/// (-1)^k C(d, k), k = 0..d.
Vector difference_coefficients(DiffOrder d);

/// S_d x, computed as d passes of cumulative summation.
Vector apply_summation(DiffOrder d, std::span<const double> x);

/// S_d' x: d passes of reverse cumulative summation.
Vector apply_summation_adjoint(DiffOrder d, std::span<const double> x);

/// S_{-d} x, all n rows (the first d use the truncated stencil).
Vector apply_difference(DiffOrder d, std::span<const double> x);

/// Rows d..n-1 of S_{-d} x; length n - d.
Vector apply_truncated_difference(DiffOrder d, std::span<const double> x);

/// Adjoint of the truncated difference: maps length n-d back to length n.
Vector apply_truncated_difference_adjoint(DiffOrder d, std::span<const double> y, std::size_t n);

/// U = S'S over the truncated difference rows. Bandwidth d; requires n >= d+1.
BandedSymMatrix penalty_matrix(DiffOrder d, std::size_t n);

/// S_{-d}' S_{-d} over all n rows. Positive definite for every n >= 1.
BandedSymMatrix full_difference_gram(DiffOrder d, std::size_t n);

/// n x d matrix with columns (t/n)^j, t = 1..n, j = 0..d-1. Spans the null
/// space of the truncated difference.
DenseMatrix vandermonde_nullspace(DiffOrder d, std::size_t n);

/// Dense copies for tests and small-matrix checks.
DenseMatrix summation_matrix(DiffOrder d, std::size_t n);
DenseMatrix difference_matrix(DiffOrder d, std::size_t n);

}  // namespace stochtrend
