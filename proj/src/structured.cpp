#include "stochtrend/structured.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "stochtrend/operators.hpp"
#include "stochtrend/random.hpp"

namespace stochtrend {

Symbol::Symbol(Vector coefficients) : N_(0), b_(std::move(coefficients)) {
    if (b_.empty() || b_.size() % 2 == 0)
        throw DimensionError("symbol needs an odd number of coefficients b_{-N}..b_N");
    N_ = static_cast<int>(b_.size() / 2);
}

Symbol Symbol::symmetric(std::span<const double> half) {
    if (half.empty()) throw DimensionError("symbol needs b_0");
    const std::size_t N = half.size() - 1;
    Vector b(2 * N + 1);
    for (std::size_t j = 0; j <= N; ++j) b[N + j] = b[N - j] = half[j];
    return Symbol(std::move(b));
}

Symbol Symbol::difference_power(DiffOrder d) {
    Vector half(d.size() + 1);
    for (int m = 0; m <= d.value(); ++m)
        half[m] = (m % 2 ? -1.0 : 1.0) * binomial(2 * d.value(), d.value() - m);
    return symmetric(half);
}

double Symbol::coeff(int j) const noexcept {
    if (j < -N_ || j > N_) return 0.0;
    return b_[static_cast<std::size_t>(j + N_)];
}

bool Symbol::is_symmetric() const noexcept {
    for (int j = 1; j <= N_; ++j)
        if (coeff(j) != coeff(-j)) return false;
    return true;
}

std::complex<double> Symbol::operator()(double u) const {
    std::complex<double> s = 0.0;
    for (int j = -N_; j <= N_; ++j) s += coeff(j) * std::polar(1.0, j * u);
    return s;
}

double Symbol::real_value(double u) const {
    double s = 0.0;
    for (int j = -N_; j <= N_; ++j) s += coeff(j) * std::cos(j * u);
    return s;
}

double Symbol::sup_abs_on_grid(std::size_t points) const {
    double best = 0.0;
    for (std::size_t k = 0; k < points; ++k) {
        const double u = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(k) /
                                                 static_cast<double>(points);
        best = std::max(best, std::abs((*this)(u)));
    }
    return best;
}

DenseMatrix toeplitz(const Symbol& f, std::size_t n) {
    DenseMatrix T(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            T(j, k) = f.coeff(static_cast<int>(j) - static_cast<int>(k));
    return T;
}

DenseMatrix hankel(std::span<const double> b, std::size_t n) {
    if (b.size() < 2 * n + 1) throw DimensionError("Hankel matrix needs coefficients b_0..b_{2n}");
    DenseMatrix H(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) H(j, k) = b[j + k + 2];
    return H;
}

DenseMatrix symbol_hankel(const Symbol& f, std::size_t n) {
    DenseMatrix H(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) H(j, k) = f.coeff(static_cast<int>(j + k + 1));
    return H;
}

DenseMatrix circulant(const Symbol& f, std::size_t n) {
    if (2 * static_cast<std::size_t>(f.half_width()) >= n)
        throw SymbolTooWideError("circulant needs 2N < n");
    const int nn = static_cast<int>(n);
    DenseMatrix C(n, n);
    for (int r = 0; r < nn; ++r)
        for (int c = 0; c < nn; ++c) {
            int m = ((r - c) % nn + nn) % nn;
            if (m > nn / 2) m -= nn;
            // for even n the lag n/2 is beyond N anyway
            C(r, c) = f.coeff(m);
        }
    return C;
}

DenseMatrix flip_matrix(std::size_t n) {
    DenseMatrix W(n, n);
    for (std::size_t i = 0; i < n; ++i) W(i, n - 1 - i) = 1.0;
    return W;
}

DenseMatrix cyclic_permutation(std::size_t n) {
    DenseMatrix P(n, n);
    if (n == 0) return P;
    for (std::size_t i = 1; i < n; ++i) P(i, i - 1) = 1.0;
    P(0, n - 1) = 1.0;
    return P;
}

DenseMatrix rotate_clockwise(const DenseMatrix& M) {
    if (!M.is_square()) throw ShapeError("rotation needs a square matrix");
    const std::size_t n = M.rows();
    DenseMatrix R(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) R(r, c) = M(n - 1 - c, r);
    return R;
}

CirculantBasis circulant_real_eigenbasis(std::size_t n) {
    CirculantBasis out{DenseMatrix(n, n), Vector(n)};
    const double two_pi = 2.0 * std::numbers::pi;
    std::size_t col = 0;
    for (std::size_t t = 0; t < n; ++t) out.Q(t, col) = 1.0 / std::sqrt(static_cast<double>(n));
    out.frequencies[col++] = 0.0;
    const double s2n = std::sqrt(2.0 / static_cast<double>(n));
    for (std::size_t j = 1; 2 * j < n; ++j) {
        const double w = two_pi * static_cast<double>(j) / static_cast<double>(n);
        for (std::size_t t = 0; t < n; ++t) {
            out.Q(t, col) = s2n * std::cos(w * static_cast<double>(t + 1));
            out.Q(t, col + 1) = s2n * std::sin(w * static_cast<double>(t + 1));
        }
        out.frequencies[col] = out.frequencies[col + 1] = w;
        col += 2;
    }
    if (n % 2 == 0 && n > 0) {
        for (std::size_t t = 0; t < n; ++t)
            out.Q(t, col) = ((t + 1) % 2 ? -1.0 : 1.0) / std::sqrt(static_cast<double>(n));
        out.frequencies[col] = std::numbers::pi;
    }
    return out;
}

// ---------------------------------------------------------------------------

void BoundReport::add(std::string label, double l, double r) {
    labels.push_back(std::move(label));
    lhs.push_back(l);
    rhs.push_back(r);
}

double BoundReport::worst_margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lhs.size(); ++i) m = std::min(m, rhs[i] - lhs[i]);
    return m;
}

std::size_t BoundReport::violations() const {
    std::size_t v = 0;
    for (std::size_t i = 0; i < lhs.size(); ++i)
        if (!(lhs[i] <= rhs[i] + tolerance)) ++v;
    return v;
}

bool BoundReport::holds() const { return violations() == 0; }

namespace {

std::size_t rank_of(const DenseMatrix& M) {
    const Vector sv = singular_values(M);
    if (sv.empty() || sv.front() == 0.0) return 0;
    return numerical_rank(sv, 1e-8);
}

double trace_norm(const DenseMatrix& M) {
    double s = 0.0;
    for (double v : singular_values(M)) s += v;
    return s;
}

}  // namespace

BoundReport check_lemma1(const DenseMatrix& H, std::span<const double> b) {
    const std::size_t n = H.rows();
    if (!H.is_square()) throw ShapeError("Hankel matrix must be square");
    if (b.size() < 2 * n + 1) throw DimensionError("need coefficients b_0..b_{2n}");
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (H(j, k) != b[j + k + 2]) throw ShapeError("matrix is not the Hankel matrix of b");

    BoundReport rep;
    rep.name = "hankel singular value bounds";
    double scale = 0.0;
    for (double v : b) scale += std::abs(v);
    rep.tolerance = 1e-10 * std::max(scale, 1.0);

    const Vector sv = singular_values(H);
    for (std::size_t j = 1; j <= n; ++j) {
        double tail = 0.0;
        for (std::size_t t = j + 1; t <= 2 * n; ++t) tail += std::abs(b[t]);
        rep.add("sigma_" + std::to_string(j), sv[j - 1], tail);
    }
    double tn = 0.0, weighted = 0.0;
    for (double v : sv) tn += v;
    for (std::size_t l = 1; l <= 2 * n; ++l) weighted += static_cast<double>(l) * std::abs(b[l]);
    rep.add("trace_norm", tn, 2.0 * weighted);
    return rep;
}

BoundReport check_lemma2(const Symbol& f, std::size_t n) {
    const DenseMatrix D = circulant(f, n) - toeplitz(f, n);
    const int N = f.half_width();
    BoundReport rep;
    rep.name = "circulant minus toeplitz rank and trace norm";
    double scale = 0.0;
    for (int j = -N; j <= N; ++j) scale += std::abs(f.coeff(j));
    rep.tolerance = 1e-10 * std::max(scale, 1.0);
    rep.add("rank", static_cast<double>(rank_of(D)), 2.0 * N);
    double bound = 0.0;
    for (int j = 1; j <= N; ++j) bound += (j + 1) * std::abs(f.coeff(j));
    rep.add("trace_norm", trace_norm(D), 2.0 * bound);
    return rep;
}

BoundReport check_weyl_interlacing(const DenseMatrix& A, const DenseMatrix& B) {
    const std::size_t n = A.rows();
    const std::size_t r = rank_of(A - B);
    const Vector la = symmetric_eigen(A).values, lb = symmetric_eigen(B).values;
    BoundReport rep;
    rep.name = "eigenvalue interlacing, rank " + std::to_string(r);
    rep.tolerance = 1e-10 * std::max({A.max_abs(), B.max_abs(), 1.0}) * static_cast<double>(n);
    for (std::size_t j = 0; j + r < n; ++j) {
        rep.add("A_" + std::to_string(j + 1), la[j], lb[j + r]);
        rep.add("B_" + std::to_string(j + 1), lb[j], la[j + r]);
    }
    return rep;
}

BoundReport check_singular_interlacing(const DenseMatrix& A, const DenseMatrix& B) {
    const std::size_t n = A.rows();
    const std::size_t r = rank_of(A - B);
    const Vector sa = singular_values(A), sb = singular_values(B);
    BoundReport rep;
    rep.name = "singular value interlacing, rank " + std::to_string(r);
    rep.tolerance = 1e-10 * std::max({sa.front(), sb.front(), 1.0}) * static_cast<double>(n);
    for (std::size_t j = 0; j + r < n; ++j) {
        rep.add("A_" + std::to_string(j + r + 1), sa[j + r], sb[j]);
        rep.add("B_" + std::to_string(j + r + 1), sb[j + r], sa[j]);
    }
    return rep;
}

BoundReport check_finite_rank_energy(const DenseMatrix& A, const DenseMatrix& B) {
    const std::size_t r = rank_of(A - B);
    const Vector sa = singular_values(A), sb = singular_values(B);
    double ea = 0.0, eb = 0.0;
    for (double v : sa) ea += v * v;
    for (double v : sb) eb += v * v;
    BoundReport rep;
    rep.name = "finite rank energy difference, rank " + std::to_string(r);
    const double top = sa.front() * sa.front() + sb.front() * sb.front();
    rep.tolerance = 1e-10 * std::max({ea, eb, 1.0});
    rep.add("energy", std::abs(ea - eb), static_cast<double>(r) * top);
    return rep;
}

BoundReport check_penalty_interior(DiffOrder d, std::size_t n) {
    const BandedSymMatrix U = penalty_matrix(d, n);
    const DenseMatrix T = toeplitz(Symbol::difference_power(d), n);
    const std::size_t dd = d.size();
    double interior = 0.0, outside = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            const double diff = std::abs(U(j, k) - T(j, k));
            const bool lead = j < dd && k < dd;
            const bool trail = j >= n - dd && k >= n - dd;
            if (lead || trail) continue;
            const bool inner = j >= dd && k >= dd && j < n - dd && k < n - dd;
            if (inner) interior = std::max(interior, diff);
            else outside = std::max(outside, diff);
        }
    BoundReport rep;
    rep.name = "penalty matrix interior, d=" + std::to_string(d.value()) + " n=" + std::to_string(n);
    rep.add("interior", interior, 0.0);
    rep.add("off_corner", outside, 0.0);
    return rep;
}

BoundReport check_binomial_convolution(int d_max) {
    auto choose = [](std::int64_t n, std::int64_t k) -> std::int64_t {
        if (k < 0 || k > n) return 0;
        std::int64_t r = 1;
        for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    BoundReport rep;
    rep.name = "binomial convolution identity";
    for (int d = 1; d <= d_max; ++d)
        for (int l = 0; l <= 2 * d; ++l) {
            std::int64_t s = 0;
            for (int t = 0; t <= l; ++t) s += choose(d, t) * choose(d, l - t);
            const std::int64_t want = choose(2 * d, l);
            rep.add("d=" + std::to_string(d) + " l=" + std::to_string(l),
                    static_cast<double>(s > want ? s - want : want - s), 0.0);
        }
    return rep;
}

BoundReport check_circulant_reconstruction(const Symbol& f, std::size_t n) {
    const DenseMatrix C = circulant(f, n);
    const double two_pi = 2.0 * std::numbers::pi;
    const double nn = static_cast<double>(n);

    // sum_j f(w_j) e_j e_j^*, entry (t, s) = (1/n) sum_j f(w_j) e^{-i w_j (t - s)}
    double err_complex = 0.0;
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t s = 0; s < n; ++s) {
            std::complex<double> acc = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double w = two_pi * static_cast<double>(j) / nn;
                acc += f(w) * std::polar(1.0, -w * (static_cast<double>(t) - static_cast<double>(s)));
            }
            acc /= nn;
            err_complex = std::max(err_complex, std::abs(acc - C(t, s)));
        }

    double err_real = 0.0;
    if (f.is_symmetric()) {
        const CirculantBasis basis = circulant_real_eigenbasis(n);
        DenseMatrix L(n, n);
        for (std::size_t k = 0; k < n; ++k) L(k, k) = f.real_value(basis.frequencies[k]);
        const DenseMatrix R = basis.Q * L * basis.Q.transpose();
        err_real = (R - C).max_abs();
        const DenseMatrix QtQ = basis.Q.transpose() * basis.Q - DenseMatrix::identity(n);
        err_real = std::max(err_real, QtQ.max_abs());
    }
    BoundReport rep;
    rep.name = "circulant spectral reconstruction, n=" + std::to_string(n);
    rep.add("complex", err_complex, 1e-10);
    rep.add("real_basis", err_real, 1e-10);
    return rep;
}

BoundReport check_hankel_rotation(const Symbol& f, std::size_t n) {
    const DenseMatrix D = circulant(f, n) - toeplitz(f, n);
    const DenseMatrix H = symbol_hankel(f, n);
    const DenseMatrix W = flip_matrix(n);
    const DenseMatrix R = rotate_clockwise(H + W * H * W);
    BoundReport rep;
    rep.name = "circulant correction as rotated hankel, n=" + std::to_string(n);
    rep.add("max_abs_diff", (D - R).max_abs(), 0.0);
    rep.tolerance = 1e-12;
    return rep;
}

namespace {

Symbol random_symmetric_symbol(CounterRng& rng, int N) {
    Vector half(static_cast<std::size_t>(N) + 1);
    for (auto& v : half) v = rng.normal();
    return Symbol::symmetric(half);
}

}  // namespace

std::vector<BoundReport> run_lemma_suites(std::uint64_t seed) {
    std::vector<BoundReport> out;
    CounterRng rng(seed, 7);

    // Hankel bounds: deterministic decays plus random signed decays.
    {
        std::size_t n = 16;
        Vector b(2 * n + 1, 0.0);
        for (std::size_t t = 2; t <= 2 * n; ++t) b[t] = std::pow(2.0, -static_cast<double>(t));
        out.push_back(check_lemma1(hankel(b, n), b));
        n = 32;
        b.assign(2 * n + 1, 0.0);
        for (std::size_t t = 1; t <= 2 * n; ++t) b[t] = 1.0 / static_cast<double>(t * t);
        out.push_back(check_lemma1(hankel(b, n), b));
        for (int rep = 0; rep < 20; ++rep) {
            n = 4 + static_cast<std::size_t>(rng.uniform() * 36);
            const double alpha = 0.5 + 2.0 * rng.uniform();
            b.assign(2 * n + 1, 0.0);
            for (std::size_t t = 1; t <= 2 * n; ++t)
                b[t] = rng.normal() * std::pow(static_cast<double>(t), -alpha);
            out.push_back(check_lemma1(hankel(b, n), b));
        }
    }

    // Circulant versus Toeplitz.
    out.push_back(check_lemma2(Symbol::difference_power(DiffOrder(1)), 8));
    out.push_back(check_lemma2(Symbol::difference_power(DiffOrder(2)), 12));
    for (int rep = 0; rep < 20; ++rep) {
        const int N = 1 + static_cast<int>(rng.uniform() * 5);
        const std::size_t n = static_cast<std::size_t>(2 * N + 1) +
                              static_cast<std::size_t>(rng.uniform() * (64 - 2 * N - 1));
        const Symbol f = random_symmetric_symbol(rng, N);
        out.push_back(check_lemma2(f, n));
        out.push_back(check_hankel_rotation(f, n));
    }
    for (int rep = 0; rep < 5; ++rep) {
        const int N = 1 + static_cast<int>(rng.uniform() * 4);
        const Symbol f = random_symmetric_symbol(rng, N);
        out.push_back(check_circulant_reconstruction(f, 2 * N + 1 + static_cast<std::size_t>(rng.uniform() * 20)));
    }
    out.push_back(check_circulant_reconstruction(Symbol::difference_power(DiffOrder(1)), 4));
    out.push_back(check_circulant_reconstruction(Symbol::difference_power(DiffOrder(2)), 17));

    // Interlacing between T_n(s^d), C_n(s^d) and U.
    for (int d = 1; d <= 3; ++d)
        for (std::size_t n : {16u, 32u, 64u}) {
            const DiffOrder dd(d);
            const Symbol f = Symbol::difference_power(dd);
            const DenseMatrix T = toeplitz(f, n), C = circulant(f, n);
            const DenseMatrix U = penalty_matrix(dd, n).to_dense();
            out.push_back(check_weyl_interlacing(T, C));
            out.push_back(check_singular_interlacing(U, C));
            out.push_back(check_finite_rank_energy(U, C));
            out.push_back(check_finite_rank_energy(T, C));
        }

    for (int d = 1; d <= 4; ++d)
        for (std::size_t n = static_cast<std::size_t>(2 * d + 1); n <= 40; n += 3)
            out.push_back(check_penalty_interior(DiffOrder(d), n));
    out.push_back(check_binomial_convolution(6));

    // S_d S_{-d} = I in dense arithmetic.
    {
        BoundReport rep;
        rep.name = "summation inverts difference";
        for (int d = 1; d <= 4; ++d) {
            const DenseMatrix P = summation_matrix(DiffOrder(d), 30) * difference_matrix(DiffOrder(d), 30);
            rep.add("d=" + std::to_string(d), (P - DenseMatrix::identity(30)).max_abs(), 0.0);
        }
        out.push_back(rep);
    }
    return out;
}

}  // namespace stochtrend
