#include "doctest.h"

#include <numbers>
#include <random>

#include "oracle.hpp"
#include "stochtrend/dense.hpp"
#include "stochtrend/operators.hpp"
#include "stochtrend/structured.hpp"

using namespace stochtrend;

namespace {

DenseMatrix random_symmetric(std::mt19937_64& g, std::size_t n) {
    std::normal_distribution<double> z;
    DenseMatrix A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) A(i, j) = A(j, i) = z(g);
    return A;
}

double reconstruction_error(const DenseMatrix& A, const SymmetricEigen& e) {
    const std::size_t n = A.rows();
    DenseMatrix L(n, n);
    for (std::size_t i = 0; i < n; ++i) L(i, i) = e.values[i];
    const DenseMatrix R = e.vectors * L * e.vectors.transpose();
    return (R - A).frobenius_norm();
}

Symbol random_symbol(std::mt19937_64& g, int N) {
    std::normal_distribution<double> z;
    Vector half(N + 1);
    for (auto& v : half) v = z(g);
    return Symbol::symmetric(half);
}

}  // namespace

TEST_CASE("eigenvalues of small matrices") {
    DenseMatrix D(3, 3);
    D(0, 0) = 1;
    D(1, 1) = 2;
    D(2, 2) = 3;
    const SymmetricEigen e = symmetric_eigen(D);
    CHECK(e.values[0] == doctest::Approx(1.0));
    CHECK(e.values[1] == doctest::Approx(2.0));
    CHECK(e.values[2] == doctest::Approx(3.0));

    DenseMatrix X(2, 2);
    X(0, 1) = X(1, 0) = 1.0;
    const SymmetricEigen f = symmetric_eigen(X);
    CHECK(f.values[0] == doctest::Approx(-1.0));
    CHECK(f.values[1] == doctest::Approx(1.0));
}

TEST_CASE("Jacobi reconstructs random symmetric matrices") {
    std::mt19937_64 g(10);
    for (std::size_t n : {1u, 2u, 5u, 20u, 64u}) {
        const DenseMatrix A = random_symmetric(g, n);
        const SymmetricEigen e = symmetric_eigen(A);
        CHECK(reconstruction_error(A, e) <= 1e-10 * A.frobenius_norm());
        const DenseMatrix QtQ = e.vectors.transpose() * e.vectors;
        CHECK((QtQ - DenseMatrix::identity(n)).max_abs() < 1e-12);
        for (std::size_t k = 1; k < n; ++k) CHECK(e.values[k - 1] <= e.values[k]);
    }
}

TEST_CASE("asymmetric input is rejected") {
    DenseMatrix A(2, 2);
    A(0, 1) = 1.0;
    CHECK_THROWS_AS(symmetric_eigen(A), SymmetryError);
}

TEST_CASE("tridiagonal Toeplitz eigenvalues follow the closed form") {
    const std::size_t n = 20;
    const DenseMatrix T = toeplitz(Symbol::difference_power(DiffOrder(1)), n);
    const SymmetricEigen e = symmetric_eigen(T);
    for (std::size_t k = 1; k <= n; ++k) {
        const double ref = 2.0 - 2.0 * std::cos(std::numbers::pi * k / (n + 1.0));
        CHECK(e.values[k - 1] == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("penalty eigenvalues for d=1 are a rank-2 perturbation of the circulant") {
    const std::size_t n = 20;
    const DenseMatrix U = penalty_matrix(DiffOrder(1), n).to_dense();
    const SymmetricEigen e = symmetric_eigen(U);
    // U for d=1 is the path Laplacian: 2 - 2 cos(pi k / n)
    for (std::size_t k = 0; k < n; ++k)
        CHECK(e.values[k] == doctest::Approx(2.0 - 2.0 * std::cos(std::numbers::pi * k / n)).epsilon(1e-12));
    const DenseMatrix C = circulant(Symbol::difference_power(DiffOrder(1)), n);
    const BoundReport r = check_weyl_interlacing(U, C);
    CHECK(r.holds());
    CHECK(!r.lhs.empty());
}

TEST_CASE("singular values and rank") {
    DenseMatrix A(2, 3);
    A(0, 0) = 3.0;
    A(1, 1) = -4.0;
    const Vector s = singular_values(A);
    REQUIRE(s.size() >= 2);
    CHECK(s[0] == doctest::Approx(4.0));
    CHECK(s[1] == doctest::Approx(3.0));
    CHECK(numerical_rank(s) == 2);

    std::mt19937_64 g(3);
    const DenseMatrix S = random_symmetric(g, 12);
    const Vector sv = singular_values(S);
    const SymmetricEigen e = symmetric_eigen(S * S);
    for (std::size_t k = 0; k < 12; ++k)
        CHECK(sv[k] == doctest::Approx(std::sqrt(std::max(0.0, e.values[11 - k]))).epsilon(1e-8));
}

TEST_CASE("dense solve and inverse") {
    std::mt19937_64 g(6);
    std::normal_distribution<double> z;
    const std::size_t n = 15;
    DenseMatrix A(n, n);
    oracle::Mat B = oracle::zeros(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) B[i][j] = A(i, j) = z(g);
    const Vector b = oracle::random_vec(g, n);
    CHECK(oracle::max_abs_diff(dense_solve(A, b), oracle::solve(B, b)) < 1e-9);
    CHECK(((A * dense_inverse(A)) - DenseMatrix::identity(n)).max_abs() < 1e-10);
}

TEST_CASE("symbol placement") {
    const Symbol s = Symbol::difference_power(DiffOrder(1));
    const DenseMatrix T = toeplitz(s, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const double expect = i == j ? 2.0 : (i + 1 == j || j + 1 == i ? -1.0 : 0.0);
            CHECK(T(i, j) == expect);
        }
    const DenseMatrix T2 = toeplitz(Symbol::difference_power(DiffOrder(2)), 6);
    CHECK(T2(3, 1) == 1.0);
    CHECK(T2(3, 2) == -4.0);
    CHECK(T2(3, 3) == 6.0);
    CHECK(T2(3, 4) == -4.0);
    CHECK(T2(3, 5) == 1.0);
    CHECK(T2(5, 0) == 0.0);
    CHECK(s.real_value(0.7) == doctest::Approx(2.0 - 2.0 * std::cos(0.7)));
    CHECK(std::abs(s(0.7).imag()) < 1e-15);
    CHECK_THROWS_AS(Symbol(Vector{1.0, 2.0}), DimensionError);
}

TEST_CASE("Toeplitz norm is bounded by the symbol sup") {
    std::mt19937_64 g(12);
    for (int rep = 0; rep < 10; ++rep) {
        const Symbol f = random_symbol(g, 1 + rep % 4);
        const DenseMatrix T = toeplitz(f, 30);
        CHECK(singular_values(T)[0] <= f.sup_abs_on_grid(4096) * (1.0 + 1e-6));
    }
}

TEST_CASE("hankel placement") {
    const Vector zero(9, 0.0);
    CHECK(hankel(zero, 4).max_abs() == 0.0);
    Vector b(5, 0.0);
    b[2] = 1.0;
    const DenseMatrix H = hankel(b, 2);
    CHECK(H(0, 0) == 1.0);
    CHECK(H(0, 1) == 0.0);
    CHECK(H(1, 1) == 0.0);
    CHECK_THROWS_AS(hankel(Vector(3, 0.0), 2), DimensionError);
}

TEST_CASE("Hankel singular-value and trace-norm bounds") {
    std::size_t n = 16;
    Vector b(2 * n + 1, 0.0);
    for (std::size_t t = 2; t <= 2 * n; ++t) b[t] = std::pow(2.0, -static_cast<double>(t));
    BoundReport r = check_lemma1(hankel(b, n), b);
    CHECK(r.holds());
    CHECK(r.worst_margin() > 0.0);

    n = 32;
    b.assign(2 * n + 1, 0.0);
    for (std::size_t t = 1; t <= 2 * n; ++t) b[t] = 1.0 / static_cast<double>(t * t);
    CHECK(check_lemma1(hankel(b, n), b).holds());

    n = 6;
    b.assign(2 * n + 1, 0.0);
    r = check_lemma1(hankel(b, n), b);
    CHECK(r.holds());
    CHECK(r.violations() == 0);
    for (std::size_t i = 0; i < r.lhs.size(); ++i) {
        CHECK(r.lhs[i] == 0.0);
        CHECK(r.rhs[i] == 0.0);
    }

    DenseMatrix notH(3, 3);
    notH(0, 1) = 1.0;
    CHECK_THROWS_AS(check_lemma1(notH, Vector(7, 0.0)), ShapeError);
}

TEST_CASE("circulant basics") {
    const Symbol id = Symbol::symmetric(Vector{1.0});
    CHECK((circulant(id, 5) - DenseMatrix::identity(5)).max_abs() == 0.0);
    const SymmetricEigen e = symmetric_eigen(circulant(Symbol::difference_power(DiffOrder(1)), 4));
    CHECK(e.values[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(2.0));
    CHECK(e.values[2] == doctest::Approx(2.0));
    CHECK(e.values[3] == doctest::Approx(4.0));
    CHECK_THROWS_AS(circulant(Symbol::difference_power(DiffOrder(3)), 6), SymbolTooWideError);
}

TEST_CASE("circulant equals the sum of cyclic shifts") {
    std::mt19937_64 g(21);
    const Symbol f = random_symbol(g, 3);
    const std::size_t n = 11;
    const DenseMatrix P = cyclic_permutation(n);
    DenseMatrix sum(n, n);
    DenseMatrix Pj = DenseMatrix::identity(n);
    // powers 0..N, then negative powers via the transpose
    for (int j = 0; j <= 3; ++j) {
        DenseMatrix term = f.coeff(j) * Pj;
        sum += term;
        if (j > 0) sum += f.coeff(-j) * Pj.transpose();
        Pj = Pj * P;
    }
    CHECK((sum - circulant(f, n)).max_abs() < 1e-14);
}

TEST_CASE("flip and cycle are involution and full cycle") {
    for (std::size_t n : {1u, 4u, 7u}) {
        const DenseMatrix W = flip_matrix(n);
        CHECK(((W * W) - DenseMatrix::identity(n)).max_abs() == 0.0);
        const DenseMatrix P = cyclic_permutation(n);
        DenseMatrix Q = DenseMatrix::identity(n);
        for (std::size_t k = 0; k < n; ++k) Q = Q * P;
        CHECK((Q - DenseMatrix::identity(n)).max_abs() == 0.0);
    }
}

TEST_CASE("rotation convention") {
    DenseMatrix M(2, 2);
    M(0, 0) = 1;
    M(0, 1) = 2;
    M(1, 0) = 3;
    M(1, 1) = 4;
    const DenseMatrix R = rotate_clockwise(M);
    CHECK(R(0, 0) == 3);
    CHECK(R(0, 1) == 1);
    CHECK(R(1, 0) == 4);
    CHECK(R(1, 1) == 2);
}

TEST_CASE("circulant minus Toeplitz lives in the corners") {
    std::mt19937_64 g(31);
    for (int N = 1; N <= 4; ++N) {
        const Symbol f = random_symbol(g, N);
        const std::size_t n = 20;
        const DenseMatrix D = circulant(f, n) - toeplitz(f, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const bool corner = (i < static_cast<std::size_t>(N) && j >= n - N) ||
                                    (j < static_cast<std::size_t>(N) && i >= n - N);
                if (!corner) CHECK(D(i, j) == 0.0);
            }
        CHECK(check_hankel_rotation(f, n).holds());
    }
}

TEST_CASE("circulant minus Toeplitz rank and trace norm") {
    const BoundReport a = check_lemma2(Symbol::difference_power(DiffOrder(1)), 8);
    CHECK(a.holds());
    CHECK(numerical_rank(singular_values(circulant(Symbol::difference_power(DiffOrder(1)), 8) -
                                         toeplitz(Symbol::difference_power(DiffOrder(1)), 8))) == 2);
    CHECK(check_lemma2(Symbol::difference_power(DiffOrder(2)), 12).holds());
    std::mt19937_64 g(41);
    CHECK(check_lemma2(random_symbol(g, 3), 32).holds());
}

TEST_CASE("circulant reconstruction from its spectrum") {
    std::mt19937_64 g(51);
    CHECK(check_circulant_reconstruction(Symbol::difference_power(DiffOrder(2)), 16).holds());
    CHECK(check_circulant_reconstruction(random_symbol(g, 2), 9).holds());
    const CirculantBasis B = circulant_real_eigenbasis(10);
    CHECK(((B.Q.transpose() * B.Q) - DenseMatrix::identity(10)).max_abs() < 1e-12);
}

TEST_CASE("interlacing between T, C and U") {
    for (int d = 1; d <= 3; ++d)
        for (std::size_t n : {16u, 33u, 64u}) {
            const Symbol f = Symbol::difference_power(DiffOrder(d));
            const DenseMatrix T = toeplitz(f, n), C = circulant(f, n);
            const DenseMatrix U = penalty_matrix(DiffOrder(d), n).to_dense();
            CHECK(check_weyl_interlacing(T, C).holds());
            CHECK(check_singular_interlacing(U, C).holds());
            CHECK(check_finite_rank_energy(U, C).holds());
        }
}

TEST_CASE("penalty interior and binomial convolution") {
    for (int d = 1; d <= 4; ++d) CHECK(check_penalty_interior(DiffOrder(d), 30).holds());
    const BoundReport r = check_binomial_convolution(6);
    CHECK(r.holds());
    CHECK(r.lhs.size() > 0);
}

TEST_CASE("bound report bookkeeping") {
    BoundReport r;
    r.tolerance = 0.0;
    r.add("a", 1.0, 2.0);
    r.add("b", 3.0, 2.5);
    CHECK(r.violations() == 1);
    CHECK(!r.holds());
    CHECK(r.worst_margin() == doctest::Approx(-0.5));
}

TEST_CASE("full structured-matrix suite has no violations") {
    const auto reports = run_lemma_suites(20240601);
    CHECK(reports.size() > 50);
    for (const auto& r : reports) {
        INFO(r.name);
        CHECK(r.holds());
    }
}
