#include "packlab/lorentz.hpp"
#include "packlab/matrix.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace packlab;

TEST_CASE("rational parsing") {
    CHECK(parse_rational("7") == 7);
    CHECK(parse_rational("-13/2") == Rational(-13, 2));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("1e5") == 100000);
    CHECK(parse_rational("2.5e-3") == Rational(1, 400));
    CHECK(parse_rational("\xE2\x88\x92" "3") == -3);
    CHECK(parse_rational_list("-10, 18,23,27") == std::vector<Rational>{-10, 18, 23, 27});
    CHECK_THROWS_AS(parse_rational("1/0"), ConfigError);
    CHECK_THROWS_AS(parse_rational("abc"), ConfigError);
    CHECK_THROWS_AS(parse_rational(""), ConfigError);
}

TEST_CASE("exact square roots and ordering") {
    Rational r;
    CHECK(rational_sqrt(Rational(9, 4), r));
    CHECK(r == Rational(3, 2));
    CHECK_FALSE(rational_sqrt(Rational(2), r));
    CHECK(lex_less({1, 2}, {1, 3}));
    CHECK(lex_less({5}, {1, 1}));
    CHECK_FALSE(lex_less({1, 3}, {1, 3}));
    CHECK(hash_value(ExactVector{Rational(1, 2), 3}) == hash_value(ExactVector{Rational(2) / 4, 3}));
}

namespace {

Rational cofactor_det(const RationalMatrix& m) {
    std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    Rational d = 0;
    for (std::size_t j = 0; j < n; ++j) {
        RationalMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t c = 0, cc = 0; c < n; ++c)
                if (c != j) minor(r - 1, cc++) = m(r, c);
        Rational t = m(0, j) * cofactor_det(minor);
        d += (j % 2 ? -t : t);
    }
    return d;
}

RationalMatrix random_matrix(std::mt19937& rng, std::size_t n, bool sym) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = sym ? i : 0; j < n; ++j) {
            m(i, j) = Rational(num(rng), den(rng));
            m(i, j).canonicalize();
            if (sym) m(j, i) = m(i, j);
        }
    return m;
}

// Jacobi eigenvalue iteration in double precision.
std::vector<double> eigenvalues(const RationalMatrix& m) {
    std::size_t n = m.rows();
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j).get_d();
    for (int sweep = 0; sweep < 100; ++sweep) {
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-15) continue;
                double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
                double t = (theta >= 0 ? 1 : -1) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
    return ev;
}

}  // namespace

TEST_CASE("determinant and inverse against cofactor expansion") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 1 + trial % 5;
        RationalMatrix m = random_matrix(rng, n, false);
        Rational d = determinant(m);
        CHECK(d == cofactor_det(m));
        if (d != 0) CHECK(m * inverse(m) == RationalMatrix::identity(n));
        else CHECK_THROWS_AS(inverse(m), PreconditionError);
    }
}

TEST_CASE("inertia agrees with eigenvalue signs") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 2 + trial % 5;
        RationalMatrix m = random_matrix(rng, n, true);
        if (trial % 7 == 0) {
            // force a kernel
            for (std::size_t j = 0; j < n; ++j) m(n - 1, j) = m(0, j);
            for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = m(i, 0);
            m(n - 1, n - 1) = m(0, 0);
        }
        Inertia in = inertia(m);
        std::vector<double> ev = eigenvalues(m);
        std::size_t pos = 0, neg = 0;
        for (double e : ev) {
            if (e > 1e-9) ++pos;
            else if (e < -1e-9) ++neg;
        }
        std::size_t zero = n - pos - neg;
        CHECK(in.positive == pos);
        CHECK(in.negative == neg);
        CHECK(in.zero == zero);
    }
}

TEST_CASE("signature and the fundamental form") {
    QuadraticSpace f = QuadraticSpace::fundamental(2);
    CHECK(f.signature() == Signature{3, 1});
    CHECK(f.gram()(0, 3) == 1);
    CHECK(f.gram()(1, 1) == 1);
    CHECK_THROWS_AS(QuadraticSpace(RationalMatrix::identity(3)), PreconditionError);
    CHECK_THROWS_AS(signature(RationalMatrix{{1, 1}, {1, 1}}), PreconditionError);
    CHECK(signature(circulant({1, -1, -1, -1})) == Signature{3, 1});
}

TEST_CASE("positive semidefinite") {
    CHECK(positive_semidefinite(RationalMatrix{{1, -1}, {-1, 1}}));
    CHECK_FALSE(positive_semidefinite(RationalMatrix{{1, -2}, {-2, 1}}));
    CHECK(positive_semidefinite(RationalMatrix{{0, 0}, {0, 0}}));
}

TEST_CASE("hyperbolic distances") {
    QuadraticSpace q(RationalMatrix{{-1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(hyperbolic_distance({1, 0, 0}, {1, 0, 0}, q) == doctest::Approx(0));
    // (5/4, 3/4, 0): cosh d = 5/4
    CHECK(hyperbolic_distance({1, 0, 0}, {Rational(5, 4), Rational(3, 4), 0}, q) == doctest::Approx(std::acosh(1.25)));
    CHECK(hyperplane_distance({0, 1, 0}, {0, -1, 0}, q) == doctest::Approx(0));
}
