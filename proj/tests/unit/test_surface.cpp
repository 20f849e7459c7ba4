#include "../support/oracles.hpp"
#include "packlab/lorentz.hpp"
#include "packlab/surface.hpp"

#include <doctest.h>

#include <sstream>

using namespace packlab;

namespace {

RationalMatrix product(const SurfaceModel& m, const std::vector<std::size_t>& word) {
    RationalMatrix p = RationalMatrix::identity(m.rank());
    for (std::size_t g : word) p = p * m.generators[g].matrix;
    return p;
}

// v -> v - 2 (v,a)/(a,a) a written out entry by entry
RationalMatrix direct_reflection(const RationalMatrix& g, const ExactVector& a) {
    std::size_t n = g.rows();
    RationalMatrix s(n, n);
    Rational aa = inner(a, a, g);
    for (std::size_t j = 0; j < n; ++j) {
        ExactVector e(n, Rational(0));
        e[j] = 1;
        Rational ea = inner(e, a, g);
        for (std::size_t i = 0; i < n; ++i) s(i, j) = e[i] - 2 * ea / aa * a[i];
    }
    return s;
}

}  // namespace

TEST_CASE("baragar_p2p2 identities") {
    SurfaceModel m = builtin_model("baragar_p2p2");
    CHECK(m.gram == RationalMatrix{{0, 1, 2}, {1, -2, 3}, {2, 3, -2}});
    for (const auto& g : m.generators) CHECK(g.matrix.transpose() * m.gram * g.matrix == m.gram);
    for (const auto& r : m.reflections) {
        RationalMatrix s = direct_reflection(m.gram, r.alpha);
        CHECK(s == reflection_matrix(m.gram, r.alpha));
        CHECK(s == product(m, r.word));
    }
    RationalMatrix ag(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) ag(i, j) = inner(m.reflections[i].alpha, m.reflections[j].alpha, m.gram);
    CHECK(ag == Rational(-22) * RationalMatrix{{1, Rational(-13, 2), -10}, {Rational(-13, 2), 1, -1}, {-10, -1, 1}});
    VerificationReport r = verify_model(m);
    CHECK(r.ok());
    REQUIRE(r.triangle_group);
    CHECK(*r.triangle_group == "Gamma(13/2,10,1)");
}

TEST_CASE("baragar_222 identities") {
    SurfaceModel m = builtin_model("baragar_222");
    for (const auto& g : m.generators) CHECK(g.matrix.transpose() * m.gram * g.matrix == m.gram);
    for (const auto& r : m.reflections) CHECK(direct_reflection(m.gram, r.alpha) == product(m, r.word));
    RationalMatrix ag(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) ag(i, j) = inner(m.reflections[i].alpha, m.reflections[j].alpha, m.gram);
    CHECK(ag == Rational(-14) * RationalMatrix{{1, -1, -1, -15}, {-1, 1, -6, -13}, {-1, -6, 1, -13}, {-15, -13, -13, 1}});
    CHECK(verify_model(m).ok());
}

TEST_CASE("a broken model fails verification and refuses to count") {
    SurfaceModel m = builtin_model("baragar_p2p2");
    m.reflections[0].alpha = {1, 0, 0};
    CHECK_FALSE(verify_model(m).ok());
    CHECK_THROWS_AS(orbit_count(m, m.C, Rational(100)), PreconditionError);
    std::stringstream bad(R"({"gram": [[0,1],[1,0]], "generators": [{"matrix": [[2,0],[0,1]]}]})");
    CHECK_THROWS_AS(load_model(bad), PreconditionError);
}

TEST_CASE("model files") {
    std::stringstream in(R"({
        "name": "swap",
        "gram": [["0","1"],["1","0"]],
        "generators": [{"label": "t", "matrix": [[0,1],[1,0]]}],
        "H": ["1","1"]
    })");
    SurfaceModel m = load_model(in);
    CHECK(m.name == "swap");
    CHECK(m.generators.size() == 1);
    CHECK(verify_model(m).ok());
    std::stringstream missing(R"({"generators": []})");
    CHECK_THROWS_AS(load_model(missing), ConfigError);
    std::stringstream garbage("{nope");
    CHECK_THROWS_AS(load_model(garbage), ConfigError);
}

TEST_CASE("trivial and empty counts") {
    SurfaceModel m;
    m.name = "trivial";
    m.gram = RationalMatrix{{0, 1}, {1, 0}};
    m.H = {1, 1};
    m.C = {1, 1};
    OrbitCount one = orbit_count(m, m.C, Rational(5));
    CHECK(one.values.size() == 1);
    CHECK(one.finite_orbit);
    // (H, C) = 2 > T
    CHECK(orbit_count(m, m.C, Rational(1)).values.empty());
    CHECK_THROWS_AS(estimate_surface_exponent(m, m.C, Rational(100)), PreconditionError);
}

TEST_CASE("ideal triangle counts equal the word oracle") {
    SurfaceModel m = builtin_model("triangle(1,1,1)");
    CHECK(verify_model(m).ok());
    std::vector<RationalMatrix> gens;
    for (const auto& g : m.generators) gens.push_back(g.matrix);
    for (long T : {10, 30, 60}) {
        oracle::VectorSet all = oracle::word_orbit(gens, m.C, 10);
        std::vector<Rational> expect;
        for (const auto& v : all) {
            Rational val = -inner(m.H, v, m.gram);
            if (val <= T) expect.push_back(val);
        }
        std::sort(expect.begin(), expect.end());
        OrbitCount oc = orbit_count(m, m.C, Rational(T));
        CHECK_FALSE(oc.truncated);
        CHECK(oc.values == expect);
    }
}

TEST_CASE("norm is constant on the orbit") {
    SurfaceModel m = builtin_model("baragar_222");
    std::vector<RationalMatrix> gens;
    for (const auto& g : m.generators) gens.push_back(g.matrix);
    Rational cc = inner(m.C, m.C, m.gram);
    for (const auto& v : oracle::word_orbit(gens, m.C, 5)) CHECK(inner(v, v, m.gram) == cc);
}

TEST_CASE("surface counts do not depend on the number of threads") {
    SurfaceModel m = builtin_model("baragar_222");
    SurfaceCountOptions o;
    o.threads = 1;
    OrbitCount one = orbit_count(m, m.C, Rational(2000), o);
    for (std::size_t t : {2, 8}) {
        o.threads = t;
        OrbitCount many = orbit_count(m, m.C, Rational(2000), o);
        CHECK(many.values == one.values);
    }
}

TEST_CASE("triangle exponents decrease with a") {
    double prev = 2;
    for (const char* a : {"1", "3/2", "2", "3"}) {
        SurfaceModel m = builtin_model(std::string("triangle(") + a + "," + a + ",1)");
        Rational hh = -inner(m.H, m.H, m.gram);
        SurfaceExponent e = estimate_surface_exponent(m, m.C, hh * 10000);
        CHECK(e.estimate.delta_hat < prev);
        prev = e.estimate.delta_hat;
    }
}
