#include <doctest.h>

#include <moments/linalg.hpp>
#include <moments/random.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

using namespace moments;

namespace {

/* independent eigenvalue oracle for Hermitian matrices: Faddeev-LeVerrier
   characteristic polynomial, then all-real root isolation by recursive
   derivative bisection. Shares no code with the Jacobi path. */
std::vector<double> charpoly_real_coeffs(const ComplexMatrix& a) {
    const int n = a.n();
    ComplexMatrix b = a;
    std::vector<cplx> c(n + 1, cplx{0, 0});
    c[n] = 1;
    for (int k = 1; k <= n; ++k) {
        if (k > 1) {
            for (int i = 0; i < n; ++i) b.at(i, i) += c[n - k + 1];
            b = a * b;
        }
        c[n - k] = -trace(b) / static_cast<double>(k);
    }
    std::vector<double> real(n + 1);
    for (int i = 0; i <= n; ++i) {
        CHECK(std::abs(c[i].imag()) < 1e-8 * (1 + std::abs(c[i])));
        real[i] = c[i].real();
    }
    return real;  // ascending powers
}

double poly_eval(const std::vector<double>& p, double x) {
    long double acc = 0;
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return static_cast<double>(acc);
}

std::vector<double> poly_derivative(const std::vector<double>& p) {
    std::vector<double> d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<double>(i));
    return d;
}

double bisect_root(const std::vector<double>& p, double lo, double hi) {
    double flo = poly_eval(p, lo);
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = poly_eval(p, mid);
        if ((flo <= 0 && fm <= 0) || (flo > 0 && fm > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/* roots of a real polynomial that is known to have only real roots: the
   critical points of degree d come from the derivative cascade, and each sign
   change between consecutive critical points brackets one root */
std::vector<double> real_roots(const std::vector<double>& p, double bound) {
    if (p.size() <= 1) return {};
    if (p.size() == 2) return {-p[0] / p[1]};
    std::vector<double> crit = real_roots(poly_derivative(p), bound);
    std::vector<double> grid{-bound};
    grid.insert(grid.end(), crit.begin(), crit.end());
    grid.push_back(bound);
    std::sort(grid.begin(), grid.end());
    std::vector<double> roots;
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        double fa = poly_eval(p, grid[i]), fb = poly_eval(p, grid[i + 1]);
        if (fa == 0) roots.push_back(grid[i]);
        if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) roots.push_back(bisect_root(p, grid[i], grid[i + 1]));
    }
    if (!roots.empty() && poly_eval(p, grid.back()) == 0) roots.push_back(grid.back());
    return roots;
}

ComplexMatrix conjugate_by_unitary(const std::vector<cplx>& diag, const ComplexMatrix& u) {
    ComplexMatrix d = ComplexMatrix::diagonal(diag);
    return u * d * adjoint(u);
}

double max_offdiag(const ComplexMatrix& m, const ComplexMatrix& ref) {
    double worst = 0;
    for (int i = 0; i < m.n(); ++i)
        for (int j = 0; j < m.n(); ++j) worst = std::max(worst, std::abs(m.at(i, j) - ref.at(i, j)));
    return worst;
}

}  // namespace

TEST_CASE("constructors validate shape and entries") {
    CHECK_NOTHROW(ComplexMatrix(1));
    CHECK_NOTHROW(ComplexMatrix(64));
    CHECK_THROWS_AS(ComplexMatrix(0), Error);
    CHECK_THROWS_AS(ComplexMatrix(65), Error);
    CHECK_THROWS_AS(ComplexMatrix(2, std::vector<cplx>(3)), Error);
    try {
        ComplexMatrix(2, std::vector<cplx>(3));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonSquare);
    }
    std::vector<cplx> bad(4, cplx{0, 0});
    bad[2] = cplx{std::nan(""), 0};
    try {
        ComplexMatrix(2, bad);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonFiniteEntry);
    }
}

TEST_CASE("arithmetic, adjoint, trace agree with hand values") {
    ComplexMatrix x(2, {cplx{1, 2}, {0, 1}, {3, 0}, {-1, -1}});
    ComplexMatrix y = adjoint(x);
    CHECK(y.at(0, 0) == cplx{1, -2});
    CHECK(y.at(0, 1) == cplx{3, 0});
    CHECK(y.at(1, 0) == cplx{0, -1});
    CHECK(trace(x) == cplx{0, 1});
    ComplexMatrix s = x + x - x;
    CHECK(max_offdiag(s, x) == 0);
    ComplexMatrix p = x * ComplexMatrix::identity(2);
    CHECK(max_offdiag(p, x) == 0);
    CHECK(frobenius_norm(x) == doctest::Approx(std::sqrt(1 + 4 + 1 + 9 + 2)).epsilon(1e-14));
}

TEST_CASE("classify separates the three input classes") {
    CHECK(classify(ComplexMatrix::diagonal({cplx{1, 0}, {2, 0}})) == MatrixClass::Hermitian);
    CHECK(classify(ComplexMatrix::diagonal({cplx{1, 0}, {0, 1}})) == MatrixClass::NormalNonHermitian);
    ComplexMatrix j(2, {cplx{0, 0}, {1, 0}, {0, 0}, {0, 0}});
    CHECK(classify(j) == MatrixClass::General);
    /* tiny Hermiticity violations stay within the default tolerance */
    ComplexMatrix h(2, {cplx{1, 0}, {0.5, 1e-13}, {0.5, -1e-13 + 2e-13}, {2, 0}});
    CHECK(classify(h) == MatrixClass::Hermitian);
}

TEST_CASE("hermitian eigensolver matches the characteristic polynomial oracle") {
    std::mt19937_64 rng(101);
    for (int n : {1, 2, 3, 5, 8}) {
        ComplexMatrix a = random_hermitian(n, rng);
        Spectrum s = eig_hermitian(a);
        REQUIRE(static_cast<int>(s.eigenvalues.size()) == n);

        std::vector<double> coeffs = charpoly_real_coeffs(a);
        double bound = 1;
        for (double c : coeffs) bound = std::max(bound, 1 + std::abs(c));
        std::vector<double> roots = real_roots(coeffs, bound);
        REQUIRE(roots.size() == static_cast<size_t>(n));
        std::sort(roots.begin(), roots.end());
        for (int i = 0; i < n; ++i) {
            CHECK(std::abs(s.eigenvalues[i].imag()) == 0);
            CHECK(s.eigenvalues[i].real() == doctest::Approx(roots[i]).epsilon(1e-8));
        }
    }
}

TEST_CASE("hermitian eigensolver reconstructs and returns a unitary basis") {
    std::mt19937_64 rng(212);
    for (int n : {2, 4, 7}) {
        ComplexMatrix a = random_hermitian(n, rng);
        Spectrum s = eig_hermitian(a);
        ComplexMatrix rebuilt = conjugate_by_unitary(s.eigenvalues, s.basis);
        CHECK(max_offdiag(rebuilt, a) < 1e-9 * (1 + frobenius_norm(a)));
        ComplexMatrix gram = adjoint(s.basis) * s.basis;
        CHECK(max_offdiag(gram, ComplexMatrix::identity(n)) < 1e-10);
        /* eigenvalues ascend */
        for (int i = 0; i + 1 < n; ++i) CHECK(s.eigenvalues[i].real() <= s.eigenvalues[i + 1].real());
    }
    ComplexMatrix j(2, {cplx{0, 0}, {1, 0}, {0, 0}, {0, 0}});
    CHECK_THROWS_AS(eig_hermitian(j), Error);
}

TEST_CASE("normal eigensolver recovers planted spectra") {
    std::mt19937_64 rng(313);
    for (int n : {2, 3, 6}) {
        std::vector<cplx> planted;
        for (int i = 0; i < n; ++i) planted.push_back(gaussian(rng));
        ComplexMatrix u = random_unitary(n, rng);
        ComplexMatrix a = conjugate_by_unitary(planted, u);
        Spectrum s = eig_normal(a);
        ComplexMatrix rebuilt = conjugate_by_unitary(s.eigenvalues, s.basis);
        CHECK(max_offdiag(rebuilt, a) < 1e-8 * (1 + frobenius_norm(a)));

        auto lex = [](cplx x, cplx y) {
            return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
        };
        std::sort(planted.begin(), planted.end(), lex);
        std::vector<cplx> got = s.eigenvalues;
        std::sort(got.begin(), got.end(), lex);
        for (int i = 0; i < n; ++i) CHECK(std::abs(got[i] - planted[i]) < 1e-7 * (1 + std::abs(planted[i])));
    }
    ComplexMatrix j(2, {cplx{0, 0}, {1, 0}, {0, 0}, {0, 0}});
    CHECK_THROWS_AS(eig_normal(j), Error);
}

TEST_CASE("doubled matrix stacks the adjoint block and mirrors the spectrum") {
    ComplexMatrix a = ComplexMatrix::diagonal({cplx{1, 0}, {0, 1}, {0, 0}});
    ComplexMatrix d = direct_sum_conjugate(a);
    REQUIRE(d.n() == 6);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(d.at(i, j) == a.at(i, j));
            CHECK(d.at(i + 3, j + 3) == std::conj(a.at(j, i)));
            CHECK(d.at(i, j + 3) == cplx{0, 0});
            CHECK(d.at(i + 3, j) == cplx{0, 0});
        }
    Spectrum s = eig_normal(d);
    std::vector<cplx> expect{{0, -1}, {0, 0}, {0, 0}, {0, 1}, {1, 0}, {1, 0}};
    auto lex = [](cplx x, cplx y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); };
    std::vector<cplx> got = s.eigenvalues;
    std::sort(got.begin(), got.end(), lex);
    std::sort(expect.begin(), expect.end(), lex);
    for (int i = 0; i < 6; ++i) CHECK(std::abs(got[i] - expect[i]) < 1e-10);
}

TEST_CASE("central powers match direct products") {
    ComplexMatrix j(2, {cplx{0, 0}, {1, 0}, {0, 0}, {0, 0}});
    cplx mu{0.3, -0.2};
    ComplexMatrix shifted = j - mu * ComplexMatrix::identity(2);

    ComplexMatrix plain = central_power(j, mu, 3, false);
    ComplexMatrix ref = shifted * shifted * shifted;
    CHECK(max_offdiag(plain, ref) < 1e-14);

    ComplexMatrix abs2 = central_power(j, mu, 2, true);
    ComplexMatrix ref2 = adjoint(shifted) * shifted;
    CHECK(max_offdiag(abs2, ref2) < 1e-14);

    /* odd absolute power on a diagonal matrix: |z - mu|^3 entrywise */
    ComplexMatrix a = ComplexMatrix::diagonal({cplx{1, 0}, {0, 1}, {0, 0}});
    ComplexMatrix abs3 = central_power(a, mu, 3, true);
    for (int i = 0; i < 3; ++i) {
        double expect = std::pow(std::abs(a.at(i, i) - mu), 3.0);
        CHECK(abs3.at(i, i).real() == doctest::Approx(expect).epsilon(1e-12));
        CHECK(std::abs(abs3.at(i, i).imag()) < 1e-12);
    }
}

TEST_CASE("operator norm on closed-form cases") {
    ComplexMatrix j(2, {cplx{0, 0}, {1, 0}, {0, 0}, {0, 0}});
    CHECK(operator_norm(j) == doctest::Approx(1.0).epsilon(1e-12));
    ComplexMatrix shear(2, {cplx{1, 0}, {1, 0}, {0, 0}, {1, 0}});
    CHECK(operator_norm(shear) == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-12));
    ComplexMatrix d = ComplexMatrix::diagonal({cplx{3, 4}, {-1, 0}});
    CHECK(operator_norm(d) == doctest::Approx(5.0).epsilon(1e-12));
    std::mt19937_64 rng(414);
    ComplexMatrix g = random_ginibre(3, rng);
    CHECK(operator_norm(2.0 * g) == doctest::Approx(2 * operator_norm(g)).epsilon(1e-10));
}
