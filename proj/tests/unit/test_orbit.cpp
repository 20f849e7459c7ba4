#include "../support/oracles.hpp"
#include "packlab/catalog.hpp"
#include "packlab/lattice.hpp"

#include <doctest.h>

#include <filesystem>

using namespace packlab;

namespace {

struct Setup {
    CoxeterPolytope polytope;
    ClusterAction action;
    Cluster seed;
};

Setup make(const std::string& name) {
    PackingSpec spec = catalog_packing(name);
    CoxeterPolytope p(spec.gram);
    ClusterAction a = make_action(p, spec.kind);
    Cluster c = seed_cluster(a, *spec.default_seed);
    return {p, a, c};
}

PackingOrbit bounded(const Setup& s, long T, std::size_t threads = 1) {
    EnumerationOptions o;
    o.curvature_bound = Rational(T);
    o.threads = threads;
    return enumerate_packing(s.action, s.seed, o);
}

std::vector<std::string> curvature_strings(const PackingOrbit& o) {
    std::vector<std::string> out;
    for (const auto& k : o.positive_curvatures()) out.push_back(k.get_str());
    return out;
}

}  // namespace

TEST_CASE("Descartes quadruple of the standard gasket") {
    std::vector<long> k{-10, 18, 23, 27};
    long s = 0, s2 = 0;
    for (long x : k) s += x, s2 += x * x;
    CHECK(2 * s2 - s * s == 0);
    CHECK(descartes_residual(apollonian_gram(2), {-10, 18, 23, 27}) == 0);
    CHECK(descartes_residual(apollonian_gram(2), {-10, 18, 23, 28}) != 0);
}

TEST_CASE("seed validation") {
    Setup s = make("apollonian2");
    CHECK(s.seed.realization);
    CHECK_THROWS_AS(seed_cluster(s.action, {-10, 18, 23, 28}), SoddyError);
    CHECK_THROWS_AS(seed_cluster(s.action, {-10, 18, 23}), DimensionError);
    // tangent unit circles on the line y = 0 with the two lines y = +-1
    std::vector<EuclideanSphere> wrong{EuclideanSphere::ball({0, 0}, 1), EuclideanSphere::ball({3, 0}, 1),
                                       EuclideanSphere::plane({0, 1}, 1), EuclideanSphere::plane({0, -1}, 1)};
    CHECK_THROWS_AS(seed_cluster(s.action, {1, 1, 0, 0}, wrong), GramMismatchError);
}

TEST_CASE("first values of the counting function") {
    Setup s = make("apollonian2");
    CHECK(bounded(s, 30).count_positive() == 3);
    CHECK(bounded(s, 35).count_positive() == 4);
    CHECK(bounded(s, 50).count_positive() == 5);
    CHECK(curvature_strings(bounded(s, 100)) ==
          std::vector<std::string>{"18", "23", "27", "35", "47", "62", "63", "78", "83"});
}

TEST_CASE("bounded enumeration equals the reduced-word oracle") {
    Setup s = make("apollonian2");
    std::vector<SphereVector> seed = s.seed.sphere_vectors();
    // the seed itself is checked directly: unit vectors, pairwise tangent
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            std::size_t n = seed[a].size() - 2;
            Rational ip = seed[a][0] * seed[b][n + 1] + seed[a][n + 1] * seed[b][0];
            for (std::size_t i = 1; i <= n; ++i) ip += seed[a][i] * seed[b][i];
            CHECK(ip == (a == b ? 1 : -1));
        }
    oracle::VectorSet all = oracle::apollonian_words(seed, 12, Rational(200));
    for (long T : {30, 35, 50, 200}) {
        oracle::VectorSet expected;
        for (const auto& v : all)
            if (v[0] <= T) expected.insert(v);
        PackingOrbit o = bounded(s, T);
        oracle::VectorSet got;
        for (const auto& sp : o.spheres)
            if (sp.curvature > 0 && sp.curvature <= T) got.insert(fundamental_vector(sp, s.seed));
        CHECK(got == expected);
    }
}

TEST_CASE("output does not depend on the number of threads") {
    Setup s = make("apollonian2");
    PackingOrbit one = bounded(s, 2000, 1);
    for (std::size_t t : {2, 8}) {
        PackingOrbit many = bounded(s, 2000, t);
        REQUIRE(many.spheres.size() == one.spheres.size());
        for (std::size_t i = 0; i < one.spheres.size(); ++i) CHECK(many.spheres[i].coords == one.spheres[i].coords);
    }
}

TEST_CASE("Boyd packing from its default seed") {
    Setup s = make("boyd");
    CHECK_FALSE(s.seed.realization);
    PackingOrbit o = bounded(s, 100);
    CHECK(o.convergence_checked);
    CHECK_FALSE(o.truncated);
    CHECK(curvature_strings(o) ==
          std::vector<std::string>{"23", "24", "34", "35", "39", "55", "66", "67", "75", "79", "96", "99"});
}

TEST_CASE("Soddy identity and frame Gram on every visited cluster") {
    for (const char* name : {"apollonian2", "apollonian3", "boyd"}) {
        Setup s = make(name);
        const RationalMatrix& g = s.polytope.gram();
        RationalMatrix gi = inverse(g);
        // normalized weight Gram computed from scratch
        std::size_t n = g.rows();
        RationalMatrix N(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rational r;
                REQUIRE(rational_sqrt(gi(i, i) * gi(j, j), r));
                N(i, j) = gi(i, j) / r;
            }
        REQUIRE(s.action.frame_gram == N);
        std::vector<Cluster> layer{s.seed};
        std::size_t seen = 0;
        for (int depth = 0; depth < 4; ++depth) {
            std::vector<Cluster> next;
            for (const Cluster& c : layer) {
                CHECK(descartes_residual(g, c.curvatures) == 0);
                CHECK(c.coords.transpose() * N * c.coords == N);
                ++seen;
                for (std::size_t i = 0; i < s.action.generators.size(); ++i)
                    if (c.word.empty() || c.word.back() != i) next.push_back(apply_generator(c, i, s.action));
            }
            layer = std::move(next);
        }
        CHECK(seen > 50);
    }
}

TEST_CASE("ideal triangle keeps k1k2 + k1k3 + k2k3 = 0") {
    Setup s = make("ideal-triangle");
    std::vector<Cluster> layer{s.seed};
    std::size_t words = 0;
    while (words < 1000) {
        std::vector<Cluster> next;
        for (const Cluster& c : layer) {
            const auto& k = c.curvatures;
            CHECK(k[0] * k[1] + k[0] * k[2] + k[1] * k[2] == 0);
            ++words;
            for (std::size_t i = 0; i < 3; ++i)
                if (c.word.empty() || c.word.back() != i) next.push_back(apply_generator(c, i, s.action));
        }
        layer = std::move(next);
    }
}

TEST_CASE("unbounded packings need a box") {
    Setup s = make("ideal-triangle");
    EnumerationOptions o;
    o.curvature_bound = Rational(10);
    CHECK_THROWS_AS(enumerate_packing(s.action, s.seed, o), PreconditionError);
    o.box = Box{{-2}, {2}};
    PackingOrbit p = enumerate_packing(s.action, s.seed, o);
    CHECK(p.box_restricted);
    CHECK_FALSE(p.truncated);
    // intervals of the Farey tessellation carried to the triangle -1, 0, 1
    for (const auto& sp : p.spheres) {
        if (sp.seed_member) continue;
        EuclideanSphere e = sphere_from_vector(fundamental_vector(sp, s.seed));
        CHECK(e.center[0] >= -2);
        CHECK(e.center[0] <= 2);
    }
    o.box = Box{{-2, -2}, {2, 2}};
    CHECK_THROWS_AS(enumerate_packing(s.action, s.seed, o), DimensionError);
}

TEST_CASE("option validation") {
    Setup s = make("apollonian2");
    EnumerationOptions o;
    CHECK_THROWS_AS(enumerate_packing(s.action, s.seed, o), ConfigError);
    o.curvature_bound = Rational(-1);
    CHECK_THROWS_AS(enumerate_packing(s.action, s.seed, o), ConfigError);
    o.curvature_bound = Rational(10);
    o.slack = Rational(1, 2);
    CHECK_THROWS_AS(enumerate_packing(s.action, s.seed, o), ConfigError);
    EnumerationOptions d;
    d.mode = EnumerationMode::depth_limited;
    d.max_depth = 2;
    PackingOrbit p = enumerate_packing(s.action, s.seed, d);
    // 4 seed circles, 4 at depth 1, 12 at depth 2
    CHECK(p.spheres.size() == 20);
    CHECK(p.truncated);
}

TEST_CASE("checkpoint and resume") {
    Setup s = make("apollonian2");
    auto dir = std::filesystem::temp_directory_path() / "packlab-unit-ckpt";
    std::filesystem::remove_all(dir);
    EnumerationOptions o;
    o.curvature_bound = Rational(5000);
    o.max_vectors = 500;
    o.checkpoint_dir = dir;
    std::string path;
    try {
        enumerate_packing(s.action, s.seed, o);
        FAIL("expected the budget to run out");
    } catch (const CheckpointError& e) {
        path = e.path();
    }
    REQUIRE(std::filesystem::exists(path));
    EnumerationOptions r;
    r.curvature_bound = Rational(5000);
    r.resume_from = path;
    PackingOrbit resumed = enumerate_packing(s.action, s.seed, r);
    PackingOrbit direct = bounded(s, 5000);
    CHECK(resumed.positive_curvatures() == direct.positive_curvatures());
    Setup b = make("boyd");
    r.convergence_check = false;
    CHECK_THROWS_AS(enumerate_packing(b.action, b.seed, r), CheckpointError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("integrality certificate") {
    Setup s = make("apollonian2");
    IntegralityCertificate c = certify_integral(bounded(s, 500), s.action, 4);
    CHECK(c.integral);
    REQUIRE(c.exponent);
    CHECK(*c.exponent == 1);
}

TEST_CASE("dual gasket certificate") {
    PackingSpec spec = catalog_packing("apollonian2");
    CoxeterPolytope p(spec.gram);
    ClusterAction a = make_action(p, ActionKind::dual);
    // circles through the tangency points of (-10, 18, 23, 27)
    Cluster c = seed_cluster(a, {39, 11, 6, 2});
    EnumerationOptions o;
    o.curvature_bound = Rational(200);
    o.threads = 1;
    PackingOrbit orbit = enumerate_packing(a, c, o);
    CHECK(orbit.count_positive() == 412);
    IntegralityCertificate cert = certify_integral(orbit, a, 3);
    CHECK(cert.integral);
    REQUIRE(cert.exponent);
    // pairwise products of unit sphere vectors stay integral; 2n shows up only in the dual lattice
    CHECK(*cert.exponent == 1);
    CHECK(discriminant_group(IntegralLattice(apollonian_lattice_gram(2))).exponent() == 4);
}
