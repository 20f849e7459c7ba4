// One line per acceptance criterion; exit status 1 if any fails.

#include "../support/oracles.hpp"
#include "packlab/catalog.hpp"
#include "packlab/exponent.hpp"
#include "packlab/lattice.hpp"
#include "packlab/surface.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace packlab;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Fixture {
    CoxeterPolytope polytope;
    ClusterAction action;
    Cluster seed;
};

Fixture fixture(const std::string& name) {
    PackingSpec spec = catalog_packing(name);
    CoxeterPolytope p(spec.gram);
    ClusterAction a = make_action(p, spec.kind);
    return {p, a, seed_cluster(a, *spec.default_seed)};
}

PackingOrbit bounded(const Fixture& f, const Rational& T, std::size_t threads) {
    EnumerationOptions o;
    o.curvature_bound = T;
    o.threads = threads;
    return enumerate_packing(f.action, f.seed, o);
}

std::string fmt(double x, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

Outcome descartes() {
    long k[] = {-10, 18, 23, 27};
    Integer s = 0, s2 = 0;
    for (long x : k) s += x, s2 += Integer(x) * x;
    Integer r = 2 * s2 - s * s;
    return {r == 0, "2*sum k^2 - (sum k)^2 = " + r.get_str()};
}

Outcome soddy_suite() {
    std::ostringstream d;
    bool pass = true;
    for (const char* name : {"apollonian2", "apollonian3", "boyd"}) {
        Fixture f = fixture(name);
        const RationalMatrix& g = f.polytope.gram();
        RationalMatrix gi = inverse(g);
        std::size_t n = g.rows();
        // normalized inverse Gram, from scratch
        RationalMatrix N(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rational r;
                if (!rational_sqrt(gi(i, i) * gi(j, j), r)) return {false, std::string(name) + ": irrational weight norm"};
                N(i, j) = gi(i, j) / r;
            }
        std::size_t clusters = 0, bad = 0;
        std::vector<Cluster> layer{f.seed};
        while (clusters < 10000) {
            std::vector<Cluster> next;
            for (const Cluster& c : layer) {
                Rational q = 0;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) q += c.curvatures[i] * g(i, j) * c.curvatures[j];
                if (q != 0 || c.coords.transpose() * N * c.coords != N) ++bad;
                ++clusters;
                for (std::size_t i = 0; i < f.action.generators.size(); ++i)
                    if (c.word.empty() || c.word.back() != i) next.push_back(apply_generator(c, i, f.action));
            }
            layer = std::move(next);
        }
        pass = pass && bad == 0;
        d << name << " " << clusters << " clusters, " << bad << " violations; ";
    }
    return {pass, d.str()};
}

oracle::VectorSet engine_set(const Fixture& f, long T, std::size_t threads) {
    oracle::VectorSet got;
    for (const auto& s : bounded(f, Rational(T), threads).spheres)
        if (s.curvature > 0 && s.curvature <= T) got.insert(fundamental_vector(s, f.seed));
    return got;
}

Outcome oracle_equivalence() {
    Fixture f = fixture("apollonian2");
    std::vector<SphereVector> seed = f.seed.sphere_vectors();
    std::ostringstream d;
    bool pass = true;
    std::map<long, std::size_t> expected_n{{30, 3}, {35, 4}, {50, 5}};
    // one exhaustive pass at the largest bound, filtered for the smaller ones
    oracle::VectorSet all = oracle::apollonian_words(seed, 12, Rational(200));
    for (long T : {30, 35, 50, 200}) {
        oracle::VectorSet want;
        for (const auto& v : all)
            if (v[0] <= T) want.insert(v);
        oracle::VectorSet got = engine_set(f, T, 0);
        bool ok = got == want;
        if (expected_n.count(T)) ok = ok && got.size() == expected_n[T];
        pass = pass && ok;
        d << "N(" << T << ")=" << got.size() << (ok ? "" : " MISMATCH") << " ";
    }
    return {pass, d.str()};
}

Outcome apollonian_exponent() {
    Fixture f = fixture("apollonian2");
    Rational T(100000);
    PackingOrbit o = bounded(f, T, 0);
    std::vector<Rational> k = o.positive_curvatures();
    CountCurve c = counting_function(k, default_grid(k.front().get_d(), T.get_d()));
    c.truncated = o.truncated;
    ExponentEstimate e = fit_exponent(c);
    bool pass = !o.truncated && e.delta_hat >= 1.26 && e.delta_hat <= 1.36;
    return {pass, "N(1e5)=" + std::to_string(k.size()) + ", delta_hat=" + fmt(e.delta_hat) + " +- " + fmt(e.stderr_) +
                      " over [" + fmt(e.T_lo, 0) + ", " + fmt(e.T_hi, 0) + "], target 1.305686729"};
}

Outcome levels() {
    RationalMatrix bad(6, 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) bad(i, j) = i == j ? 1 : -2;
    bool pass = maxwell_level(circulant({1, -1, -1, -1})) == 2 && maxwell_level(circulant({1, -1, -1})) == 1 &&
                maxwell_level(RationalMatrix::identity(2)) == 0 && is_packing_polytope(apollonian_gram(2)) &&
                is_packing_polytope(apollonian_gram(3)) && is_packing_polytope(boyd_gram()) && !is_packing_polytope(bad);
    return {pass, "levels " + level_to_string(maxwell_level(circulant({1, -1, -1, -1}))) + "," +
                      level_to_string(maxwell_level(circulant({1, -1, -1}))) + "," +
                      level_to_string(maxwell_level(RationalMatrix::identity(2))) + "; all-(-2) rank 6: level " +
                      level_to_string(maxwell_level(bad))};
}

Outcome lattice_identities() {
    std::ostringstream d;
    bool a = true, b = true, c = true;
    for (std::size_t n = 2; n <= 5; ++n) {
        IntegralLattice l(apollonian_lattice_gram(n));
        std::vector<Integer> want(n, Integer(2));
        want.push_back(Integer(2 * static_cast<long>(n)));
        std::vector<Integer> oracle_factors;
        for (const auto& x : oracle::determinantal_divisors_snf(l.gram()))
            if (abs(x) != 1) oracle_factors.push_back(abs(x));
        a = a && discriminant_group(l).invariant_factors == want && oracle_factors == want;
    }
    {
        IntegralLattice l(apollonian_lattice_gram(4));
        IntegerMatrix want{{1, 0, 0, 0, 0, 0},  {0, 0, 2, 0, 0, 0},  {0, 2, 0, 0, 0, 0},
                           {0, 0, 0, 4, -2, 0}, {0, 0, 0, -2, 4, -2}, {0, 0, 0, 0, -2, 4}};
        b = gram_in_basis(l, apollonian_f_basis(4)) == want;
    }
    for (std::size_t n = 3; n <= 6; ++n) {
        long nn = static_cast<long>(n);
        std::size_t m = n - 1;
        RationalMatrix g = transform_gram(Rational(nn) * to_rational(root_lattice_gram(m)), dual_root_basis(n));
        RationalMatrix want(m, m);
        for (std::size_t i = 0; i + 1 < m; ++i) {
            want(i, i) = 2 * nn;
            if (i + 2 < m) want(i, i + 1) = want(i + 1, i) = -nn;
        }
        want(m - 2, m - 1) = want(m - 1, m - 2) = nn;
        want(m - 1, m - 1) = nn - 1;
        c = c && g == want;
    }
    d << "(a) " << (a ? "ok" : "FAIL") << " (b) " << (b ? "ok" : "FAIL") << " (c) " << (c ? "ok" : "FAIL")
      << "; Ap(4) discriminant " << discriminant_group(IntegralLattice(apollonian_lattice_gram(4))).to_string();
    return {a && b && c, d.str()};
}

Outcome baragar_verification() {
    auto check = [](const SurfaceModel& m, const Rational& scale, std::string& why) {
        for (const auto& g : m.generators)
            if (g.matrix.transpose() * m.gram * g.matrix != m.gram) why += g.label + " does not preserve the Gram; ";
        for (const auto& r : m.reflections) {
            RationalMatrix prod = RationalMatrix::identity(m.rank());
            for (std::size_t i : r.word) prod = prod * m.generators[i].matrix;
            Rational aa = inner(r.alpha, r.alpha, m.gram);
            RationalMatrix s(m.rank(), m.rank());
            for (std::size_t j = 0; j < m.rank(); ++j) {
                ExactVector e(m.rank(), Rational(0));
                e[j] = 1;
                Rational ea = inner(e, r.alpha, m.gram);
                for (std::size_t i = 0; i < m.rank(); ++i) s(i, j) = e[i] - 2 * ea / aa * r.alpha[i];
            }
            if (s != prod) why += r.label + " reflection differs; ";
        }
        std::size_t k = m.reflections.size();
        RationalMatrix ag(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) ag(i, j) = inner(m.reflections[i].alpha, m.reflections[j].alpha, m.gram);
        if (ag != scale * *m.alpha_gram) why += "alpha Gram differs; ";
        return why.empty();
    };
    SurfaceModel p = builtin_model("baragar_p2p2");
    SurfaceModel q = builtin_model("baragar_222");
    std::string why;
    bool gram_ok = p.gram == RationalMatrix{{0, 1, 2}, {1, -2, 3}, {2, 3, -2}};
    bool ok = gram_ok && check(p, -22, why) && check(q, -14, why) && verify_model(p).ok() && verify_model(q).ok();
    return {ok, ok ? "p2p2: 3 generators, 3 reflections, alpha Gram = -22*displayed; 222: 4 generators, 4 reflections, "
                     "alpha Gram = -14*displayed"
                   : why};
}

struct SurfaceRun {
    double delta = 0;
    bool truncated = false;
    std::vector<Rational> values;
};

SurfaceRun surface_run(const std::string& model, const ExactVector& H, const Rational& T, std::size_t threads) {
    SurfaceModel m = builtin_model(model);
    ExactVector C = m.C;
    m.H = H;
    SurfaceCountOptions o;
    o.threads = threads;
    SurfaceExponent e = estimate_surface_exponent(m, C, T, o);
    return {e.estimate.delta_hat, e.count.truncated, e.count.values};
}

Outcome surface_exponents() {
    SurfaceRun p = surface_run("baragar_p2p2", {1, 1, 1}, Rational(1000000), 0);
    SurfaceRun p2 = surface_run("baragar_p2p2", {2, 1, 1}, Rational(1000000), 0);
    SurfaceRun q = surface_run("baragar_222", {1, 1, 1, 0}, Rational(10000), 0);
    SurfaceRun q2 = surface_run("baragar_222", {2, 1, 1, 0}, Rational(10000), 0);
    bool pass = !p.truncated && !q.truncated && p.delta >= 0.60 && p.delta <= 0.70 && q.delta >= 1.20 && q.delta <= 1.40 &&
                std::abs(p.delta - p2.delta) <= 0.05 && std::abs(q.delta - q2.delta) <= 0.05;
    return {pass, "p2p2 delta_hat=" + fmt(p.delta) + " (other H " + fmt(p2.delta) + "), 222 delta_hat=" + fmt(q.delta) +
                      " (other H " + fmt(q2.delta) + ")"};
}

Outcome determinism() {
    Fixture f = fixture("apollonian2");
    bool pass = true;
    for (long T : {30, 35, 50, 200}) {
        oracle::VectorSet one = engine_set(f, T, 1);
        for (std::size_t t : {2, 8}) pass = pass && engine_set(f, T, t) == one;
    }
    for (const auto& [model, T] : std::vector<std::pair<std::string, long>>{{"baragar_p2p2", 1000000}, {"baragar_222", 10000}}) {
        SurfaceModel m = builtin_model(model);
        SurfaceRun one = surface_run(model, m.H, Rational(T), 1);
        for (std::size_t t : {2, 8}) {
            SurfaceRun r = surface_run(model, m.H, Rational(T), t);
            pass = pass && r.values == one.values && r.delta == one.delta;
        }
    }
    return {pass, "criteria 3 and 8 compared at 1, 2 and 8 threads"};
}

Outcome n1_invariant() {
    Fixture f = fixture("ideal-triangle");
    std::size_t words = 0, bad = 0;
    std::vector<Cluster> layer{f.seed};
    while (words < 1000) {
        std::vector<Cluster> next;
        for (const Cluster& c : layer) {
            const auto& k = c.curvatures;
            if (k[0] * k[1] + k[0] * k[2] + k[1] * k[2] != 0) ++bad;
            ++words;
            for (std::size_t i = 0; i < 3; ++i)
                if (c.word.empty() || c.word.back() != i) next.push_back(apply_generator(c, i, f.action));
        }
        layer = std::move(next);
    }
    return {bad == 0, std::to_string(words) + " words, " + std::to_string(bad) + " violations"};
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Descartes identity", descartes},
        {"Soddy property suite", soddy_suite},
        {"oracle equivalence", oracle_equivalence},
        {"Apollonian exponent", apollonian_exponent},
        {"level classification", levels},
        {"lattice identities", lattice_identities},
        {"Baragar model verification", baragar_verification},
        {"surface exponents", surface_exponents},
        {"determinism", determinism},
        {"n=1 invariant", n1_invariant},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": "
                  << o.detail << " [" << fmt(s, 2) << " s]" << std::endl;
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
