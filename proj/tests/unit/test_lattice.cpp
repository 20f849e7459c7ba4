#include "../support/oracles.hpp"
#include "packlab/lattice.hpp"

#include <doctest.h>

#include <random>

using namespace packlab;

namespace {

std::vector<Integer> nontrivial(const std::vector<Integer>& d) {
    std::vector<Integer> out;
    for (const auto& x : d) {
        Integer a = abs(x);
        if (a != 1) out.push_back(a);
    }
    return out;
}

}  // namespace

TEST_CASE("Smith diagonal matches determinantal divisors") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> entry(-9, 9);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 1 + trial % 5;
        IntegerMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = entry(rng);
        std::vector<Integer> d = smith_diagonal(m);
        std::vector<Integer> expect = oracle::determinantal_divisors_snf(m);
        REQUIRE(d.size() == expect.size());
        for (std::size_t i = 0; i < n; ++i) CHECK(abs(d[i]) == expect[i]);
    }
}

TEST_CASE("discriminant groups of the Apollonian lattices") {
    for (std::size_t n = 2; n <= 5; ++n) {
        IntegralLattice l(apollonian_lattice_gram(n));
        std::vector<Integer> expect(n, Integer(2));
        expect.push_back(Integer(2 * static_cast<long>(n)));
        CHECK(discriminant_group(l).invariant_factors == expect);
        CHECK(nontrivial(oracle::determinantal_divisors_snf(l.gram())) == expect);
        CHECK_FALSE(l.even());
        // the even sublattice adds a Z/4
        IntegralLattice ev = even_sublattice(l);
        CHECK(ev.even());
        CHECK(abs(ev.det()) == 4 * abs(l.det()));
        IntegerMatrix sum(n + 2, n + 2);
        for (std::size_t i = 0; i < n; ++i) sum(i, i) = 2;
        sum(n, n) = 4;
        sum(n + 1, n + 1) = 2 * static_cast<long>(n);
        CHECK(discriminant_group(ev).invariant_factors == nontrivial(oracle::determinantal_divisors_snf(sum)));
    }
    CHECK(discriminant_group(catalog_lattice("Ap2")).to_string() == "Z/2 + Z/2 + Z/4");
}

TEST_CASE("catalog lattices") {
    CHECK(discriminant_group(catalog_lattice("U")).invariant_factors.empty());
    CHECK(discriminant_group(catalog_lattice("U")).exponent() == 1);
    IntegralLattice e8 = catalog_lattice("E8");
    CHECK(e8.det() == 1);
    CHECK(e8.even());
    CHECK(catalog_lattice("A3").det() == 4);
    CHECK(discriminant_group(catalog_lattice("A4")).invariant_factors == std::vector<Integer>{5});
    CHECK(catalog_lattice("U(2)").gram() == IntegerMatrix{{0, 2}, {2, 0}});
    CHECK(catalog_lattice("<6>").gram() == IntegerMatrix{{6}});
    ScaledLattice dual = catalog_gram("A2^v");
    CHECK_FALSE(dual.integral);
    CHECK_THROWS_AS(dual.lattice(), PreconditionError);
    CHECK(catalog_gram("A2^v(3)").integral);
    CHECK_THROWS_AS(catalog_gram("Q7"), ConfigError);
    CHECK_THROWS_AS(IntegralLattice(IntegerMatrix{{1, 1}, {1, 1}}), PreconditionError);
}

TEST_CASE("dual of the Apollonian lattice and its exponent") {
    for (std::size_t n = 2; n <= 5; ++n) {
        IntegralLattice l(apollonian_lattice_gram(n));
        RationalMatrix d = dual_gram(l);
        CHECK(d == inverse(to_rational(l.gram())));
        long nn = static_cast<long>(n);
        // int(Ap(n)^v) = Ap(n)^v(2n) = Ap(n)^perp
        CHECK(Rational(2 * nn) * d == to_rational(apollonian_perp_gram(n)));
        CHECK(discriminant_group(l).exponent() == 2 * nn);
    }
}

TEST_CASE("f-basis block form of Ap(n)") {
    for (std::size_t n = 2; n <= 6; ++n) {
        IntegralLattice l(apollonian_lattice_gram(n));
        IntegerMatrix b = apollonian_f_basis(n);
        CHECK(abs(determinant(b)) == 1);
        IntegerMatrix g = gram_in_basis(l, b);
        std::size_t d = n + 2;
        IntegerMatrix want(d, d);
        want(0, 0) = 1;
        want(1, 2) = want(2, 1) = 2;
        for (std::size_t i = 3; i < d; ++i) {
            want(i, i) = 4;
            if (i + 1 < d) want(i, i + 1) = want(i + 1, i) = -2;
        }
        CHECK(g == want);
    }
}

TEST_CASE("dual root lattice in the basis omega_2..omega_{n-1}, beta") {
    for (std::size_t n = 3; n <= 6; ++n) {
        long nn = static_cast<long>(n);
        std::size_t m = n - 1;
        RationalMatrix cartan = to_rational(root_lattice_gram(m));
        RationalMatrix g = transform_gram(Rational(nn) * cartan, dual_root_basis(n));
        RationalMatrix want(m, m);
        for (std::size_t i = 0; i + 1 < m; ++i) {
            want(i, i) = 2 * nn;
            if (i + 2 < m) want(i, i + 1) = want(i + 1, i) = -nn;
        }
        want(m - 2, m - 1) = want(m - 1, m - 2) = nn;
        want(m - 1, m - 1) = nn - 1;
        CHECK(g == want);
        // a basis of the dual lattice: covolume 1/sqrt(n)
        CHECK(determinant(transform_gram(cartan, dual_root_basis(n))) == Rational(1, nn));
    }
}

TEST_CASE("gram_in_basis guards") {
    IntegralLattice l = catalog_lattice("U");
    CHECK_THROWS_AS(gram_in_basis(l, IntegerMatrix{{2, 0}, {0, 1}}), PreconditionError);
    CHECK(gram_in_basis(l, IntegerMatrix{{2, 0}, {0, 1}}, true) == IntegerMatrix{{0, 2}, {2, 0}});
    CHECK_THROWS_AS(gram_in_basis(l, RationalMatrix{{Rational(1, 2), 0}, {0, 1}}), ConfigError);
    IsometryCheck ok = verify_isometry(RationalMatrix{{0, 1}, {1, 0}}, to_rational(l.gram()), to_rational(l.gram()));
    CHECK(ok.ok);
    IsometryCheck bad = verify_isometry(RationalMatrix{{2, 0}, {0, 1}}, to_rational(l.gram()), to_rational(l.gram()));
    CHECK_FALSE(bad.ok);
}

TEST_CASE("even sublattice of an even lattice is itself") {
    IntegralLattice e8 = catalog_lattice("E8");
    CHECK(even_sublattice_basis(e8) == IntegerMatrix::identity(8));
    IntegralLattice odd(IntegerMatrix{{1, 0}, {0, 1}});
    CHECK(abs(even_sublattice(odd).det()) == 4);
}

namespace {

// rows omega_2..omega_{n-1}, beta of A_{n-1}^v(n), optionally with the even surgery on the corner
RationalMatrix dual_root_scaled(std::size_t n, bool even) {
    long nn = static_cast<long>(n);
    std::size_t m = n - 1;
    RationalMatrix g = transform_gram(Rational(nn) * to_rational(root_lattice_gram(m)), dual_root_basis(n));
    if (even) {
        g(m - 2, m - 2) = 2 * nn;
        g(m - 2, m - 1) = g(m - 1, m - 2) = 2 * nn;
        g(m - 1, m - 1) = 4 * nn - 4;
    }
    return g;
}

Rational block_det(std::size_t n, bool even) {
    long nn = static_cast<long>(n);
    // <2n> + U(n) + A_{n-1}^v(n)
    return Rational(2 * nn) * Rational(-nn * nn) * determinant(dual_root_scaled(n, even));
}

}  // namespace

TEST_CASE("dual Apollonian lattice decomposition: determinant and parity") {
    for (std::size_t n = 3; n <= 6; ++n) {
        IntegralLattice perp(apollonian_perp_gram(n));
        CHECK(Rational(perp.det()) == block_det(n, false));
        CHECK(perp.even() == (n % 2 == 1));
        if (n % 2 == 0) {
            IntegralLattice ev = even_sublattice(perp);
            CHECK(ev.even());
            CHECK(Rational(ev.det()) == block_det(n, true));
            // the surgered block is even
            RationalMatrix b = dual_root_scaled(n, true);
            for (std::size_t i = 0; i < b.rows(); ++i) CHECK(is_integer(b(i, i) / 2));
        }
    }
}
