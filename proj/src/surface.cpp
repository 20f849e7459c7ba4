#include "packlab/surface.hpp"

#include "packlab/lorentz.hpp"

#include "detail/id_set.hpp"
#include "detail/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <climits>
#include <fstream>
#include <regex>
#include <sstream>

namespace packlab {

std::string to_string(MatrixConvention c) { return c == MatrixConvention::columns ? "columns" : "rows"; }

namespace {

RationalMatrix rmat(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<std::vector<Rational>> r;
    for (const auto& row : rows) {
        std::vector<Rational> v;
        for (long x : row) v.emplace_back(x);
        r.push_back(std::move(v));
    }
    return RationalMatrix::from_rows(r);
}

ExactVector rvec(std::initializer_list<long> xs) {
    ExactVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

// Columns of the result are the listed images of the basis vectors.
RationalMatrix from_images(std::initializer_list<std::initializer_list<long>> images) {
    return rmat(images).transpose();
}

void add_generator(SurfaceModel& m, std::string label, RationalMatrix displayed) {
    m.generators.push_back({std::move(label), displayed, displayed});
}

SurfaceModel baragar_p2p2() {
    SurfaceModel m;
    m.name = "baragar_p2p2";
    m.gram = rmat({{0, 1, 2}, {1, -2, 3}, {2, 3, -2}});
    m.basis_labels = {"f", "s", "r"};
    add_generator(m, "A1", rmat({{-1, 0, 0}, {3, 0, 1}, {3, 1, 0}}));
    add_generator(m, "A2", rmat({{1, 4, 0}, {0, -1, 0}, {0, 1, 1}}));
    add_generator(m, "A3", rmat({{1, 0, 14}, {0, 1, 4}, {0, 0, -1}}));
    m.reflections = {{"alpha1", rvec({-4, 13, 10}), {0, 1, 0}},
                     {"alpha2", rvec({4, -2, 1}), {1}},
                     {"alpha3", rvec({7, 2, -1}), {2}}};
    m.alpha_gram = RationalMatrix{{1, Rational(-13, 2), -10}, {Rational(-13, 2), 1, -1}, {-10, -1, 1}};
    m.alpha_gram_scale = -22;
    m.H = rvec({1, 1, 1});
    m.C = m.H;
    return m;
}

SurfaceModel baragar_222() {
    SurfaceModel m;
    m.name = "baragar_222";
    m.gram = rmat({{0, 2, 2, 0}, {2, 0, 2, 0}, {2, 2, 0, 1}, {0, 0, 1, -2}});
    m.basis_labels = {"f1", "f2", "f3", "r"};
    add_generator(m, "Phi12", from_images({{1, 0, 0, 0}, {0, 1, 0, 0}, {2, 2, -1, -1}, {0, 0, 0, 1}}));
    add_generator(m, "Phi13", from_images({{1, 0, 0, 0}, {2, -1, 2, 0}, {0, 0, 1, 0}, {1, 0, 0, -1}}));
    // f1 -> -f1+2f2+2f3; the source prints this image under f2
    add_generator(m, "Phi23", from_images({{-1, 2, 2, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, -1}}));
    add_generator(m, "Phi4'", from_images({{-1, 0, 8, 4}, {0, -1, 8, 4}, {0, 0, 1, 0}, {0, 0, 0, 1}}));
    m.reflections = {{"alpha1", rvec({-2, -2, 2, 1}), {0}},
                     {"alpha2", rvec({-5, 2, -2, -1}), {1, 0, 1}},
                     {"alpha3", rvec({2, -5, -2, -1}), {2, 0, 2}},
                     {"alpha4", rvec({2, 2, -30, -15}), {3, 0, 3}}};
    m.alpha_gram = rmat({{1, -1, -1, -15}, {-1, 1, -6, -13}, {-1, -6, 1, -13}, {-15, -13, -13, 1}});
    m.alpha_gram_scale = -14;
    m.H = rvec({1, 1, 1, 0});
    m.C = m.H;
    return m;
}

}  // namespace

RationalMatrix reflection_matrix(const RationalMatrix& gram, const ExactVector& alpha) {
    Rational aa = inner(alpha, alpha, gram);
    if (aa == 0) throw PreconditionError("cannot reflect in an isotropic vector");
    std::size_t n = gram.rows();
    ExactVector ga = gram * alpha;  // v -> (v, alpha) is the row ga^t
    RationalMatrix s = RationalMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s(i, j) -= 2 * alpha[i] * ga[j] / aa;
    return s;
}

SurfaceModel triangle_model(const Rational& a, const Rational& b, const Rational& c) {
    if (a < 1 || b < 1 || c < 1) throw ConfigError("triangle parameters must be >= 1");
    SurfaceModel m;
    m.name = "triangle(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ")";
    m.gram = RationalMatrix{{1, -a, -b}, {-a, 1, -c}, {-b, -c, 1}};
    m.basis_labels = {"e1", "e2", "e3"};
    m.form_sign = -1;
    for (std::size_t i = 0; i < 3; ++i) {
        ExactVector e(3, Rational(0));
        e[i] = 1;
        add_generator(m, "s" + std::to_string(i + 1), reflection_matrix(m.gram, e));
        m.reflections.push_back({"e" + std::to_string(i + 1), e, {i}});
    }
    m.alpha_gram = m.gram;
    // sum of the weights, cleared of denominators
    ExactVector h = inverse(m.gram) * ExactVector(3, Rational(1));
    Integer den = 1;
    for (const auto& x : h) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    for (auto& x : h) x *= den;
    if (inner(h, h, m.gram) < 0) {
        m.H = h;
        m.C = h;
    }
    return m;
}

SurfaceModel builtin_model(const std::string& raw) {
    std::string name;
    for (char ch : raw)
        if (ch != ' ') name += ch;
    SurfaceModel m;
    std::smatch sm;
    static const std::regex tri(R"(^triangle\(([^,]+),([^,]+),([^,]+)\)$)");
    if (name == "baragar_p2p2") {
        m = baragar_p2p2();
    } else if (name == "baragar_222") {
        m = baragar_222();
    } else if (std::regex_match(name, sm, tri)) {
        m = triangle_model(parse_rational(sm[1].str()), parse_rational(sm[2].str()), parse_rational(sm[3].str()));
    } else {
        throw ConfigError("unknown surface model '" + raw + "' (known: baragar_p2p2, baragar_222, triangle(a,b,c))");
    }
    resolve_convention(m);
    return m;
}

void resolve_convention(SurfaceModel& m) {
    if (!m.gram.square() || !m.gram.symmetric()) throw ConfigError("model Gram must be square and symmetric");
    for (const auto& g : m.generators)
        if (g.displayed.rows() != m.rank() || g.displayed.cols() != m.rank())
            throw DimensionError("generator " + g.label + " has the wrong size");
    bool cols = true, rows = true;
    for (const auto& g : m.generators) {
        const RationalMatrix& a = g.displayed;
        if (a.transpose() * m.gram * a != m.gram) cols = false;
        if (a * m.gram * a.transpose() != m.gram) rows = false;
    }
    if (!cols && !rows)
        throw PreconditionError("model " + m.name + ": generators preserve the Gram under neither action convention");
    m.convention = cols ? MatrixConvention::columns : MatrixConvention::rows;
    for (auto& g : m.generators) g.matrix = cols ? g.displayed : g.displayed.transpose();
}

bool VerificationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const ModelCheck& c) { return c.ok; });
}

std::string VerificationReport::to_string() const {
    std::ostringstream out;
    out << "convention: " << packlab::to_string(convention) << "\n";
    for (const auto& c : checks) out << (c.ok ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    if (triangle_group) out << "triangle group: " << *triangle_group << "\n";
    out << (ok() ? "all checks pass" : "verification failed") << "\n";
    return out.str();
}

namespace {

std::string first_mismatch(const RationalMatrix& got, const RationalMatrix& want) {
    for (std::size_t i = 0; i < got.rows(); ++i)
        for (std::size_t j = 0; j < got.cols(); ++j)
            if (got(i, j) != want(i, j))
                return "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is " + got(i, j).get_str() +
                       ", expected " + want(i, j).get_str() + ", residual " + Rational(got(i, j) - want(i, j)).get_str();
    return "";
}

}  // namespace

VerificationReport verify_model(const SurfaceModel& m) {
    VerificationReport r;
    r.convention = m.convention;
    for (const auto& g : m.generators) {
        RationalMatrix p = g.matrix.transpose() * m.gram * g.matrix;
        r.checks.push_back({g.label + " preserves the Gram", p == m.gram, first_mismatch(p, m.gram)});
    }
    for (const auto& claim : m.reflections) {
        RationalMatrix prod = RationalMatrix::identity(m.rank());
        bool ok = true;
        std::string detail;
        for (std::size_t i : claim.word) {
            if (i >= m.generators.size()) {
                ok = false;
                detail = "word uses unknown generator " + std::to_string(i);
                break;
            }
            prod = prod * m.generators[i].matrix;
        }
        if (ok && claim.alpha.size() != m.rank()) {
            ok = false;
            detail = "alpha has the wrong length";
        } else if (ok && inner(claim.alpha, claim.alpha, m.gram) == 0) {
            ok = false;
            detail = "alpha is isotropic";
        } else if (ok) {
            RationalMatrix s = reflection_matrix(m.gram, claim.alpha);
            ok = s == prod;
            detail = first_mismatch(s, prod);
        }
        std::string word;
        for (std::size_t i : claim.word) word += (word.empty() ? "" : "*") + (i < m.generators.size() ? m.generators[i].label : "?");
        r.checks.push_back({"reflection in " + claim.label + " equals " + word, ok, detail});
    }
    if (m.alpha_gram && !m.reflections.empty()) {
        std::size_t k = m.reflections.size();
        RationalMatrix g(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) g(i, j) = inner(m.reflections[i].alpha, m.reflections[j].alpha, m.gram);
        RationalMatrix want = m.alpha_gram_scale * *m.alpha_gram;
        bool ok = g.rows() == want.rows() && g == want;
        r.checks.push_back({"alpha Gram equals " + m.alpha_gram_scale.get_str() + " * displayed", ok,
                            ok ? "" : (g.rows() == want.rows() ? first_mismatch(g, want) : "size mismatch")});
        if (ok && k == 3) {
            const RationalMatrix& d = *m.alpha_gram;
            if (d(0, 0) == 1 && d(1, 1) == 1 && d(2, 2) == 1)
                r.triangle_group = "Gamma(" + Rational(-d(0, 1)).get_str() + "," + Rational(-d(0, 2)).get_str() + "," +
                                   Rational(-d(1, 2)).get_str() + ")";
        }
    }
    if (!m.H.empty()) {
        Rational hh = m.form_sign * inner(m.H, m.H, m.gram);
        r.checks.push_back({"H lies in the positive cone", hh > 0, "(H,H) = " + inner(m.H, m.H, m.gram).get_str()});
    }
    return r;
}

namespace {

struct Overflow {};

inline std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return h ^ x;
}

struct Int64Ops {
    using S = std::int64_t;
    static bool representable(const Rational& q) { return is_integer(q) && q.get_num().fits_slong_p(); }
    static S from(const Rational& q) { return q.get_num().get_si(); }
    static Rational to_rational(S x) { return Rational(static_cast<long>(x)); }
    static void madd(S& acc, S a, S b) {
        S p;
        if (__builtin_mul_overflow(a, b, &p) || __builtin_add_overflow(acc, p, &acc)) throw Overflow{};
    }
    static std::uint64_t hash(const S* v, std::size_t d) {
        std::uint64_t h = d;
        for (std::size_t i = 0; i < d; ++i) h = mix(h, static_cast<std::uint64_t>(v[i]));
        return h;
    }
    static S limit(const Rational& q) {
        Integer f = floor_div(q);
        return f.fits_slong_p() ? f.get_si() : LONG_MAX;
    }
};

struct RationalOps {
    using S = Rational;
    static S from(const Rational& q) { return q; }
    static Rational to_rational(const S& x) { return x; }
    static void madd(S& acc, const S& a, const S& b) { acc += a * b; }
    static std::uint64_t hash(const S* v, std::size_t d) {
        std::uint64_t h = d;
        for (std::size_t i = 0; i < d; ++i) h = mix(h, hash_value(v[i]));
        return h;
    }
    static S limit(const Rational& q) { return q; }
};

struct BfsResult {
    std::vector<Rational> values;
    std::vector<ExactVector> counted;  // sorted, for the convergence comparison
    bool pruned = false;
    std::size_t vectors = 0;
    std::vector<std::size_t> frontier_sizes;
};

template <class Ops>
BfsResult run_bfs(const SurfaceModel& m, const ExactVector& c, const Rational& bound, const Rational& limit_q,
                  std::size_t threads, std::size_t max_vectors) {
    using S = typename Ops::S;
    std::size_t d = m.rank(), g = m.generators.size();
    std::vector<std::vector<S>> gens;
    for (const auto& gen : m.generators) {
        std::vector<S> flat;
        for (const auto& x : gen.matrix.data()) flat.push_back(Ops::from(x));
        gens.push_back(std::move(flat));
    }
    ExactVector wq = m.gram * m.H;
    std::vector<S> w;
    for (const auto& x : wq) w.push_back(Ops::from(m.form_sign * x));
    S limit = Ops::limit(limit_q);

    std::vector<S> store;
    std::vector<S> vals;
    std::vector<std::uint8_t> via;
    detail::IdSet index;
    auto value_of = [&](const S* v) {
        S acc = S(0);
        for (std::size_t j = 0; j < d; ++j) Ops::madd(acc, w[j], v[j]);
        return acc;
    };
    auto find = [&](const S* v, std::uint64_t h) {
        return index.find(h, [&](std::uint32_t id) { return std::equal(v, v + d, store.begin() + id * d); });
    };
    auto add = [&](const S* v, S val, std::uint64_t h, std::uint8_t gen) {
        auto id = static_cast<std::uint32_t>(vals.size());
        store.insert(store.end(), v, v + d);
        vals.push_back(std::move(val));
        via.push_back(gen);
        index.insert(h, id);
        return id;
    };
    constexpr std::uint8_t none = 0xff;
    {
        std::vector<S> v;
        for (const auto& x : c) v.push_back(Ops::from(x));
        add(v.data(), value_of(v.data()), Ops::hash(v.data(), d), none);
    }
    BfsResult res;
    std::vector<std::uint32_t> frontier{0}, next;
    const std::size_t batch = 1 << 15;
    while (!frontier.empty()) {
        res.frontier_sizes.push_back(frontier.size());
        if (max_vectors && vals.size() > max_vectors)
            throw TruncationError("surface orbit exceeded the vector budget of " + std::to_string(max_vectors));
        next.clear();
        for (std::size_t begin = 0; begin < frontier.size(); begin += batch) {
            std::size_t end = std::min(frontier.size(), begin + batch);
            std::size_t cnt = end - begin;
            std::vector<S> child(cnt * g * d);
            std::vector<S> cval(cnt * g);
            std::vector<std::uint64_t> chash(cnt * g);
            std::vector<std::uint8_t> state(cnt * g, 0);  // 0 skip, 1 pruned, 2 keep
            detail::parallel_for(cnt, threads, [&](std::size_t b, std::size_t e) {
                for (std::size_t f = b; f < e; ++f) {
                    std::uint32_t id = frontier[begin + f];
                    const S* v = store.data() + id * d;
                    for (std::size_t i = 0; i < g; ++i) {
                        std::size_t slot = f * g + i;
                        if (via[id] == i) continue;
                        S* out = child.data() + slot * d;
                        const auto& a = gens[i];
                        for (std::size_t r = 0; r < d; ++r) {
                            S acc = S(0);
                            for (std::size_t k = 0; k < d; ++k)
                                if (a[r * d + k] != 0) Ops::madd(acc, a[r * d + k], v[k]);
                            out[r] = std::move(acc);
                        }
                        cval[slot] = value_of(out);
                        if (cval[slot] > limit) {
                            state[slot] = 1;
                            continue;
                        }
                        chash[slot] = Ops::hash(out, d);
                        state[slot] = 2;
                    }
                }
            });
            for (std::size_t slot = 0; slot < cnt * g; ++slot) {
                if (state[slot] == 1) res.pruned = true;
                if (state[slot] != 2) continue;
                const S* v = child.data() + slot * d;
                if (find(v, chash[slot]) != detail::IdSet::empty) continue;
                next.push_back(add(v, cval[slot], chash[slot], static_cast<std::uint8_t>(slot % g)));
            }
        }
        frontier.swap(next);
    }
    res.vectors = vals.size();
    for (std::size_t id = 0; id < vals.size(); ++id) {
        Rational val = Ops::to_rational(vals[id]);
        if (val > bound) continue;
        res.values.push_back(val);
        ExactVector v;
        for (std::size_t j = 0; j < d; ++j) v.push_back(Ops::to_rational(store[id * d + j]));
        res.counted.push_back(std::move(v));
    }
    std::sort(res.values.begin(), res.values.end());
    std::sort(res.counted.begin(), res.counted.end(), lex_less);
    return res;
}

BfsResult surface_bfs(const SurfaceModel& m, const ExactVector& c, const Rational& bound, const Rational& slack,
                      std::size_t threads, std::size_t max_vectors) {
    Rational limit = slack * bound;
    bool small = std::all_of(c.begin(), c.end(), Int64Ops::representable);
    for (const auto& gen : m.generators)
        for (const auto& x : gen.matrix.data()) small = small && Int64Ops::representable(x);
    for (const auto& x : m.gram * m.H) small = small && Int64Ops::representable(x);
    if (small) {
        try {
            return run_bfs<Int64Ops>(m, c, bound, limit, threads, max_vectors);
        } catch (const Overflow&) {
        }
    }
    return run_bfs<RationalOps>(m, c, bound, limit, threads, max_vectors);
}

}  // namespace

OrbitCount orbit_count(const SurfaceModel& m, const ExactVector& C, const Rational& T, const SurfaceCountOptions& options) {
    if (T <= 0) throw ConfigError("count bound T must be positive");
    if (C.size() != m.rank()) throw DimensionError("class C has the wrong length");
    if (m.H.size() != m.rank()) throw PreconditionError("model has no ample class H; supply one");
    if (m.generators.size() >= 0xff) throw ConfigError("too many generators");
    VerificationReport rep = verify_model(m);
    for (const auto& c : rep.checks)
        if (!c.ok) throw PreconditionError("model " + m.name + " failed verification (" + c.name + "); counting refused");
    if (m.form_sign * inner(m.H, m.H, m.gram) <= 0) throw PreconditionError("H is not in the positive cone");
    Rational slack = options.slack ? *options.slack : Rational(2);
    if (slack < 1) throw ConfigError("slack must be >= 1");
    bool check = options.convergence_check.value_or(true);

    BfsResult r = surface_bfs(m, C, T, slack, options.threads, options.max_vectors);
    OrbitCount out;
    out.bound = T;
    out.slack = slack;
    if (check && r.pruned) {
        BfsResult wide = surface_bfs(m, C, T, slack * 2, options.threads, options.max_vectors);
        if (wide.counted != r.counted) out.truncated = true;
        r = std::move(wide);
        out.slack = slack * 2;
    }
    out.finite_orbit = !r.pruned;
    out.values = std::move(r.values);
    out.vectors_seen = r.vectors;
    out.frontier_sizes = std::move(r.frontier_sizes);

    std::vector<double> grid;
    if (options.grid) {
        grid = *options.grid;
    } else {
        Rational lo = T / 1024;
        for (const auto& v : out.values)
            if (v > 0) {
                lo = v;
                break;
            }
        grid = default_grid(lo.get_d(), T.get_d());
    }
    std::vector<Rational> positive;
    for (const auto& v : out.values)
        if (v > 0) positive.push_back(v);
    out.curve = counting_function(positive, grid);
    out.curve.truncated = out.truncated;
    if (!out.truncated) out.curve.reliable_up_to = T.get_d();
    out.curve.ambient_dimension = static_cast<int>(m.rank()) - 1;
    out.curve.source["model"] = m.name;
    out.curve.source["C"] = to_string(C);
    out.curve.source["H"] = to_string(m.H);
    out.curve.source["bound"] = T.get_str();
    out.curve.source["slack"] = out.slack.get_str();
    return out;
}

SurfaceExponent estimate_surface_exponent(const SurfaceModel& m, const ExactVector& C, const Rational& T_max,
                                          const SurfaceCountOptions& options, double decades) {
    SurfaceExponent out;
    out.count = orbit_count(m, C, T_max, options);
    if (out.count.finite_orbit)
        throw PreconditionError("the orbit of C is finite (" + std::to_string(out.count.vectors_seen) +
                                " classes); the group is elementary and has no critical exponent to estimate");
    out.estimate = fit_exponent(out.count.curve, decades);
    return out;
}

namespace {

using json = nlohmann::json;

Rational json_rational(const json& j, const std::string& where) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ConfigError(where + ": expected an integer or a rational string");
}

ExactVector json_vector(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array");
    ExactVector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(json_rational(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

RationalMatrix json_matrix(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array of rows");
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(json_vector(j[i], where + "[" + std::to_string(i) + "]"));
    return RationalMatrix::from_rows(rows);
}

}  // namespace

namespace {

SurfaceModel parse_model(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("model file: ") + e.what());
    }
    SurfaceModel m;
    m.name = j.value("name", std::string("custom"));
    if (!j.contains("gram")) throw ConfigError("model file: missing field 'gram'");
    m.gram = json_matrix(j["gram"], "gram");
    std::size_t n = m.gram.rows();
    if (j.contains("basis_labels")) m.basis_labels = j["basis_labels"].get<std::vector<std::string>>();
    if (j.contains("H")) m.H = json_vector(j["H"], "H");
    if (j.contains("C")) m.C = json_vector(j["C"], "C");
    if (!m.H.empty() && m.H.size() != n) throw DimensionError("model file: H has the wrong length");
    if (!m.C.empty() && m.C.size() != n) throw DimensionError("model file: C has the wrong length");
    if (j.contains("generators")) {
        const json& gs = j["generators"];
        for (std::size_t i = 0; i < gs.size(); ++i) {
            std::string where = "generators[" + std::to_string(i) + "]";
            std::string label = gs[i].value("label", "g" + std::to_string(i + 1));
            if (!gs[i].contains("matrix")) throw ConfigError(where + ": missing 'matrix'");
            add_generator(m, label, json_matrix(gs[i]["matrix"], where + ".matrix"));
        }
    }
    if (j.contains("reflections")) {
        const json& rs = j["reflections"];
        for (std::size_t i = 0; i < rs.size(); ++i) {
            std::string where = "reflections[" + std::to_string(i) + "]";
            ReflectionClaim c;
            c.label = rs[i].value("label", "alpha" + std::to_string(i + 1));
            c.alpha = json_vector(rs[i].at("alpha"), where + ".alpha");
            c.word = rs[i].at("word").get<std::vector<std::size_t>>();
            m.reflections.push_back(std::move(c));
        }
    }
    if (j.contains("alpha_gram")) {
        m.alpha_gram = json_matrix(j["alpha_gram"].at("matrix"), "alpha_gram.matrix");
        if (j["alpha_gram"].contains("scale")) m.alpha_gram_scale = json_rational(j["alpha_gram"]["scale"], "alpha_gram.scale");
    }
    m.form_sign = j.value("form_sign", 1);
    if (m.form_sign != 1 && m.form_sign != -1) throw ConfigError("model file: form_sign must be 1 or -1");
    resolve_convention(m);
    return m;
}

}  // namespace

SurfaceModel load_model(std::istream& in) {
    try {
        return parse_model(in);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("model file: ") + e.what());
    }
}

SurfaceModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open model file " + path);
    return load_model(in);
}

}  // namespace packlab
