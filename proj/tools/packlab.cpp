#include "packlab/catalog.hpp"
#include "packlab/exponent.hpp"
#include "packlab/inversive.hpp"
#include "packlab/lattice.hpp"
#include "packlab/surface.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace packlab;
using json = nlohmann::json;

namespace {

constexpr int kConfigError = 2;
constexpr int kPreconditionError = 3;
constexpr int kTruncation = 4;

std::string fmt(double x) {
    if (x == 0) x = 0;  // drop the sign of -0
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

RationalMatrix parse_matrix(const std::string& text, const std::string& what) {
    std::vector<std::vector<Rational>> rows;
    std::string t = text;
    if (!t.empty() && t[0] == '@') {
        std::ifstream in(t.substr(1));
        if (!in) throw ConfigError(what + ": cannot open " + t.substr(1));
        std::stringstream ss;
        ss << in.rdbuf();
        t = ss.str();
        if (t.find('[') == std::string::npos) std::replace(t.begin(), t.end(), '\n', ';');
    }
    t.erase(0, t.find_first_not_of(" \t\n"));
    if (!t.empty() && t[0] == '[') {
        json j;
        try {
            j = json::parse(t);
        } catch (const json::exception& e) {
            throw ConfigError(what + ": " + e.what());
        }
        for (const auto& row : j) {
            std::vector<Rational> r;
            for (const auto& x : row) r.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : Rational(x.get<long>()));
            rows.push_back(std::move(r));
        }
    } else {
        std::stringstream ss(t);
        std::string row;
        while (std::getline(ss, row, ';'))
            if (row.find_first_not_of(" \t") != std::string::npos) rows.push_back(parse_rational_list(row));
    }
    if (rows.empty()) throw ConfigError(what + ": empty matrix");
    return RationalMatrix::from_rows(rows);
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << text;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    return in;
}

// pack -------------------------------------------------------------------------

struct PackArgs {
    std::string catalog, gram_file, seed, T, box, action, out = "-", svg, counts, viewport, checkpoint_dir, resume;
    std::optional<std::size_t> depth;
    std::optional<std::string> slack;
    std::optional<std::size_t> slack_rounds;
    bool labels = false, no_check = false;
    std::optional<std::size_t> certify;
    std::size_t max_vectors = 0;
};

Box parse_box(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("--box expects lo1,lo2,...:hi1,hi2,...");
    return Box{parse_rational_list(text.substr(0, colon)), parse_rational_list(text.substr(colon + 1))};
}

std::optional<Viewport> parse_viewport(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::vector<Rational> v = parse_rational_list(text);
    if (v.size() != 4) throw ConfigError("--viewport expects xmin,ymin,xmax,ymax");
    Viewport vp{v[0].get_d(), v[1].get_d(), v[2].get_d(), v[3].get_d()};
    if (!(vp.xmax > vp.xmin && vp.ymax > vp.ymin)) throw ConfigError("--viewport must have positive extent");
    return vp;
}

std::string spheres_csv(const PackingOrbit& orbit, const Cluster& seed, const std::optional<Matrix<double>>& x,
                        std::size_t n) {
    std::ostringstream out;
    out << "# truncated=" << (orbit.truncated ? "true" : "false") << "\n";
    if (orbit.curvature_bound) out << "# bound=" << orbit.curvature_bound->get_str() << "\n";
    if (orbit.box_restricted) out << "# counting_region=box\n";
    out << "curvature,depth,kind";
    for (std::size_t i = 1; i <= n; ++i) out << ",center_" << i;
    out << ",radius";
    for (std::size_t i = 1; i <= n; ++i) out << ",normal_" << i;
    out << ",offset,vector\n";
    for (const auto& s : orbit.spheres) {
        out << s.curvature.get_str() << "," << s.depth << ",";
        std::optional<FloatSphere> f;
        if (x) f = approximate_sphere(s, *x);
        out << (s.curvature == 0 ? "hyperplane" : "sphere");
        for (std::size_t i = 0; i < n; ++i) out << "," << (f && !f->hyperplane ? fmt(f->center[i]) : "");
        out << "," << (f && !f->hyperplane ? fmt(f->radius) : "");
        for (std::size_t i = 0; i < n; ++i) out << "," << (f && f->hyperplane ? fmt(f->normal[i]) : "");
        out << "," << (f && f->hyperplane ? fmt(f->offset) : "");
        out << ",";
        if (seed.realization) {
            ExactVector v = fundamental_vector(s, seed);
            for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ";" : "") << v[i].get_str();
        }
        out << "\n";
    }
    return out.str();
}

int cmd_pack(const PackArgs& a, std::size_t threads) {
    if (a.catalog.empty() == a.gram_file.empty()) throw ConfigError("pack: give exactly one of --catalog or --gram-file");
    PackingSpec spec = a.catalog.empty() ? load_packing_file(a.gram_file) : catalog_packing(a.catalog);
    if (!a.action.empty()) spec.kind = parse_action_kind(a.action);
    std::vector<Rational> k;
    if (!a.seed.empty())
        k = parse_rational_list(a.seed);
    else if (spec.default_seed)
        k = *spec.default_seed;
    else
        throw ConfigError("pack: no seed curvatures; pass --seed or add \"seed\" to the packing file");

    CoxeterPolytope p(spec.gram);
    ClusterAction action = make_action(p, spec.kind);
    Cluster seed = seed_cluster(action, k);

    EnumerationOptions opt;
    if (a.depth && a.T.empty()) {
        opt.mode = EnumerationMode::depth_limited;
    } else if (a.T.empty()) {
        throw ConfigError("pack: give a curvature bound --T (or --depth for depth-limited mode)");
    }
    if (a.depth) {
        opt.max_depth = a.depth;
        if (!a.T.empty()) opt.mode = EnumerationMode::depth_limited;
    }
    if (!a.T.empty()) opt.curvature_bound = parse_rational(a.T);
    if (a.slack) opt.slack = parse_rational(*a.slack);
    if (a.no_check) opt.convergence_check = false;
    opt.slack_rounds = a.slack_rounds;
    if (!a.box.empty()) opt.box = parse_box(a.box);
    opt.threads = threads;
    opt.max_vectors = a.max_vectors;
    if (!a.checkpoint_dir.empty()) opt.checkpoint_dir = a.checkpoint_dir;
    if (!a.resume.empty()) opt.resume_from = a.resume;

    PackingOrbit orbit = enumerate_packing(action, seed, opt);
    std::optional<Matrix<double>> x = approximate_realization(action, seed);
    write_text(a.out, spheres_csv(orbit, seed, x, action.dimension()));

    if (!a.counts.empty()) {
        std::vector<Rational> pos = orbit.positive_curvatures();
        if (!opt.curvature_bound) throw ConfigError("pack: --counts needs --T");
        double lo = pos.empty() ? opt.curvature_bound->get_d() / 1024 : pos.front().get_d();
        CountCurve c = counting_function(pos, default_grid(lo, opt.curvature_bound->get_d()));
        c.truncated = orbit.truncated;
        if (!orbit.truncated) c.reliable_up_to = opt.curvature_bound->get_d();
        c.ambient_dimension = static_cast<int>(action.dimension());
        c.source["packing"] = spec.name;
        c.source["seed"] = to_string(k);
        c.source["bound"] = opt.curvature_bound->get_str();
        if (opt.box) c.source["counting_region"] = "box";
        std::ostringstream s;
        write_curve_csv(s, c);
        write_text(a.counts, s.str());
    }
    if (!a.svg.empty()) {
        if (action.dimension() != 2) throw PreconditionError("pack: --svg needs a packing of circles (n = 2)");
        if (!x) throw PreconditionError("pack: no realization of the seed is available for rendering");
        std::vector<FloatSphere> fs;
        for (const auto& s : orbit.spheres) fs.push_back(approximate_sphere(s, *x));
        SvgOptions so;
        so.labels = a.labels;
        so.viewport = parse_viewport(a.viewport);
        write_text(a.svg, render_svg(fs, so));
    }
    std::cerr << "spheres: " << orbit.spheres.size() << ", positive curvature <= bound: " << orbit.count_positive()
              << ", truncated: " << (orbit.truncated ? "yes" : "no") << ", slack: " << orbit.slack.get_str() << "\n";
    if (a.certify) {
        IntegralityCertificate c = certify_integral(orbit, action, *a.certify);
        std::cerr << "integral: " << (c.integral ? "yes" : "no");
        if (c.exponent) std::cerr << ", exponent: " << c.exponent->get_str();
        if (!c.witness.empty()) std::cerr << ", witness: " << c.witness;
        std::cerr << "\n";
    }
    return 0;
}

// fit --------------------------------------------------------------------------

struct FitArgs {
    std::string counts, spheres;
    double decades = 2.0;
    std::size_t min_points = 8;
    std::optional<double> power;
};

std::vector<Rational> read_sphere_curvatures(const std::string& path) {
    std::ifstream in = open_input(path);
    std::string line;
    std::vector<Rational> k;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line.rfind("curvature", 0) != 0) throw ConfigError(path + ": expected a spheres CSV header");
            header = true;
            continue;
        }
        Rational q = parse_rational(line.substr(0, line.find(',')));
        if (q > 0) k.push_back(q);
    }
    return k;
}

int cmd_fit(const FitArgs& a) {
    if (a.counts.empty() && a.spheres.empty()) throw ConfigError("fit: give --counts or --spheres");
    json report;
    if (!a.counts.empty()) {
        std::ifstream in = open_input(a.counts);
        CountCurve c = read_curve_csv(in);
        ExponentEstimate e = fit_exponent(c, a.decades, a.min_points);
        std::cout << "delta_hat = " << fmt(e.delta_hat) << "\n"
                  << "stderr = " << fmt(e.stderr_) << "\n"
                  << "r2 = " << fmt(e.r_squared) << "\n"
                  << "window = [" << fmt(e.T_lo) << ", " << fmt(e.T_hi) << "]\n"
                  << "points = " << e.points_used << "\n"
                  << "constant = " << fmt(e.constant()) << "\n";
        report = {{"delta_hat", e.delta_hat}, {"stderr", e.stderr_}, {"r2", e.r_squared},
                  {"window", {e.T_lo, e.T_hi}}, {"points", e.points_used}, {"constant", e.constant()},
                  {"method", to_string(e.method)}};
    }
    if (a.power) {
        if (a.spheres.empty()) throw ConfigError("fit: --power-sum needs --spheres");
        PowerSum p = power_sum(read_sphere_curvatures(a.spheres), *a.power);
        std::cout << "power_sum(s=" << fmt(*a.power) << ") = " << fmt(p.value) << ", tail " << to_string(p.trend) << "\n";
        report["power_sum"] = {{"s", *a.power}, {"value", p.value}, {"tail", to_string(p.trend)}};
        if (p.balance_exponent) report["power_sum"]["balance_exponent"] = *p.balance_exponent;
    }
    std::cout << "# machine-readable\n" << report.dump() << "\n";
    return 0;
}

// lattice ----------------------------------------------------------------------

struct LatticeArgs {
    std::string name, gram, basis, scale;
    bool discriminant = false, even = false, dual = false, sublattice = false;
};

int cmd_lattice(const LatticeArgs& a) {
    if (a.name.empty() == a.gram.empty()) throw ConfigError("lattice: give exactly one of --name or --gram");
    ScaledLattice s = a.name.empty() ? ScaledLattice{parse_matrix(a.gram, "--gram"), "custom", true} : catalog_gram(a.name);
    if (a.name.empty()) {
        for (const auto& x : s.gram.data())
            if (!is_integer(x)) s.integral = false;
    }
    if (!a.scale.empty()) s = rescale(s, parse_rational(a.scale));
    std::cout << "lattice: " << s.label << "\n";
    std::cout << "gram: " << to_string(s.gram) << "\n";
    if (!s.integral) {
        std::cout << "integral: no\n";
        if (a.discriminant || a.even || !a.basis.empty())
            throw PreconditionError("the form is not integral; rescale it first");
        if (a.dual) std::cout << "dual gram: " << to_string(inverse(s.gram)) << "\n";
        return 0;
    }
    IntegralLattice l = s.lattice();
    std::cout << "rank: " << l.rank() << "\ndet: " << l.det().get_str() << "\nparity: " << (l.even() ? "even" : "odd") << "\n";
    bool any = a.discriminant || a.even || a.dual || !a.basis.empty();
    if (a.discriminant || !any) {
        DiscriminantGroup g = discriminant_group(l);
        std::cout << "discriminant group: " << g.to_string() << "\n";
        std::cout << "invariant factors:";
        for (const auto& d : g.invariant_factors) std::cout << " " << d.get_str();
        std::cout << "\norder: " << g.order().get_str() << "\nexponent: " << g.exponent().get_str() << "\n";
    }
    if (a.even) {
        IntegralLattice ev = even_sublattice(l);
        std::cout << "even sublattice gram: " << to_string(ev.gram()) << "\n";
        std::cout << "even sublattice det: " << ev.det().get_str() << "\n";
    }
    if (a.dual) std::cout << "dual gram: " << to_string(dual_gram(l)) << "\n";
    if (!a.basis.empty()) {
        RationalMatrix b = parse_matrix(a.basis, "--basis");
        std::cout << "gram in basis: " << to_string(gram_in_basis(l, b, a.sublattice)) << "\n";
    }
    return 0;
}

// surface ----------------------------------------------------------------------

struct SurfaceArgs {
    std::string model, model_file, a = "1", b = "1", c = "1", T, H, C, out = "-";
    std::optional<std::string> slack;
    bool verify = false, count = false, fit = false, no_check = false;
    double decades = 2.0;
    std::size_t max_vectors = 50'000'000;
};

int cmd_surface(const SurfaceArgs& s, std::size_t threads) {
    if (s.model.empty() == s.model_file.empty()) throw ConfigError("surface: give exactly one of --model or --model-file");
    SurfaceModel m;
    if (!s.model_file.empty())
        m = load_model_file(s.model_file);
    else if (s.model == "triangle")
        m = builtin_model("triangle(" + s.a + "," + s.b + "," + s.c + ")");
    else
        m = builtin_model(s.model);
    if (!s.H.empty()) m.H = parse_rational_list(s.H);
    if (!s.C.empty()) m.C = parse_rational_list(s.C);
    if (m.C.empty()) m.C = m.H;

    bool verify = s.verify || (!s.count && !s.fit);
    VerificationReport r = verify_model(m);
    if (verify) std::cout << "model: " << m.name << "\n" << r.to_string();
    if (!r.ok()) {
        std::cerr << "verification failed; counting aborted\n";
        return kPreconditionError;
    }
    if (!s.count && !s.fit) return 0;
    if (s.T.empty()) throw ConfigError("surface: counting needs --T");
    SurfaceCountOptions opt;
    if (s.slack) opt.slack = parse_rational(*s.slack);
    if (s.no_check) opt.convergence_check = false;
    opt.threads = threads;
    opt.max_vectors = s.max_vectors;
    Rational T = parse_rational(s.T);
    OrbitCount oc;
    std::optional<ExponentEstimate> est;
    if (s.fit) {
        SurfaceExponent e = estimate_surface_exponent(m, m.C, T, opt, s.decades);
        oc = std::move(e.count);
        est = e.estimate;
    } else {
        oc = orbit_count(m, m.C, T, opt);
    }
    std::ostringstream csv;
    write_curve_csv(csv, oc.curve);
    write_text(s.out, csv.str());
    std::cerr << "orbit classes with value <= T: " << oc.values.size() << ", vectors seen: " << oc.vectors_seen
              << ", truncated: " << (oc.truncated ? "yes" : "no") << "\n";
    if (est)
        std::cerr << "delta_hat = " << fmt(est->delta_hat) << " (stderr " << fmt(est->stderr_) << ", r2 "
                  << fmt(est->r_squared) << ", window [" << fmt(est->T_lo) << ", " << fmt(est->T_hi) << "])\n";
    return 0;
}

// render -----------------------------------------------------------------------

struct RenderArgs {
    std::string spheres, svg = "-", viewport;
    bool labels = false;
    int pixels = 800;
};

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

int cmd_render(const RenderArgs& a) {
    std::ifstream in = open_input(a.spheres);
    std::string line;
    std::vector<std::string> header;
    std::vector<FloatSphere> fs;
    std::size_t no = 0;
    auto num = [&](const std::string& cell) {
        double v = 0;
        auto r = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (r.ec != std::errc()) throw ConfigError(a.spheres + ":" + std::to_string(no) + ": bad number '" + cell + "'");
        return v;
    };
    while (std::getline(in, line)) {
        ++no;
        if (line.empty() || line[0] == '#') continue;
        if (header.empty()) {
            header = split_csv(line);
            continue;
        }
        auto cells = split_csv(line);
        if (cells.size() != header.size()) throw ConfigError(a.spheres + ":" + std::to_string(no) + ": wrong number of fields");
        auto col = [&](const std::string& name) -> const std::string& {
            for (std::size_t i = 0; i < header.size(); ++i)
                if (header[i] == name) return cells[i];
            throw ConfigError(a.spheres + ": missing column " + name);
        };
        FloatSphere f;
        Rational k = parse_rational(col("curvature"));
        f.curvature = k.get_d();
        if (is_integer(k)) f.label = k.get_str();
        if (col("kind") == "hyperplane") {
            f.hyperplane = true;
            f.normal = {num(col("normal_1")), num(col("normal_2"))};
            f.offset = num(col("offset"));
        } else {
            if (col("radius").empty()) continue;
            f.center = {num(col("center_1")), num(col("center_2"))};
            f.radius = num(col("radius"));
        }
        fs.push_back(std::move(f));
    }
    SvgOptions so;
    so.labels = a.labels;
    so.pixels = a.pixels;
    so.viewport = parse_viewport(a.viewport);
    write_text(a.svg, render_svg(fs, so));
    return 0;
}

// dual -------------------------------------------------------------------------

struct DualArgs {
    std::string catalog, gram_file, gram;
};

int cmd_dual(const DualArgs& a) {
    int given = !a.catalog.empty() + !a.gram_file.empty() + !a.gram.empty();
    if (given != 1) throw ConfigError("dual: give exactly one of --catalog, --gram-file or --gram");
    RationalMatrix g = !a.catalog.empty()     ? catalog_packing(a.catalog).gram
                       : !a.gram_file.empty() ? load_packing_file(a.gram_file).gram
                                              : parse_matrix(a.gram, "--gram");
    CoxeterPolytope p(g);
    CoxeterPolytope d = dual_polytope(p);
    std::cout << "polytope gram: " << to_string(p.gram()) << "\n";
    std::cout << "dual gram: " << to_string(d.gram()) << "\n";
    std::cout << "dual level: " << level_to_string(maxwell_level(d.gram())) << "\n";
    std::cout << "dual is a packing polytope: " << (is_packing_polytope(d.gram()) ? "yes" : "no") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"packlab: sphere packings from Coxeter polytopes, orbit counts and exponent fits"};
    app.require_subcommand(1);
    std::size_t threads = 0;
    app.add_option("--threads", threads, "worker threads (0: all cores)");
    app.fallthrough();

    PackArgs pa;
    auto* pack = app.add_subcommand("pack", "enumerate a packing and write its spheres");
    pack->add_option("--catalog", pa.catalog, "apollonian2, apollonian3, apollonian:n=<n>, boyd, ideal-triangle");
    pack->add_option("--gram-file", pa.gram_file, "JSON file with gram, seed and action");
    pack->add_option("--seed", pa.seed, "comma-separated curvatures of the seed cluster");
    pack->add_option("--T", pa.T, "curvature bound");
    pack->add_option("--depth", pa.depth, "word length limit (depth-limited mode)");
    pack->add_option("--slack", pa.slack, "pruning slack >= 1");
    pack->add_flag("--no-convergence-check", pa.no_check);
    pack->add_option("--slack-rounds", pa.slack_rounds, "slack doublings tried until two runs agree");
    pack->add_option("--box", pa.box, "counting box lo1,lo2:hi1,hi2 (needed for unbounded packings)");
    pack->add_option("--action", pa.action, "boyd_maxwell, dual or reflection");
    pack->add_option("--out", pa.out, "spheres CSV path ('-' for stdout)");
    pack->add_option("--counts", pa.counts, "write the counting function N(T) as CSV");
    pack->add_option("--svg", pa.svg, "write an SVG picture (n = 2)");
    pack->add_flag("--labels", pa.labels, "label circles by curvature");
    pack->add_option("--viewport", pa.viewport, "xmin,ymin,xmax,ymax");
    pack->add_option("--certify", pa.certify, "report integrality using pairs up to this depth");
    pack->add_option("--max-vectors", pa.max_vectors, "vector budget before checkpointing (0: unlimited)");
    pack->add_option("--checkpoint-dir", pa.checkpoint_dir, "where checkpoints go (else PACKLAB_CHECKPOINT_DIR)");
    pack->add_option("--resume", pa.resume, "resume from a checkpoint file");

    FitArgs fa;
    auto* fit = app.add_subcommand("fit", "fit the exponent of a counting function");
    fit->add_option("--counts", fa.counts, "CSV with header T,N");
    fit->add_option("--spheres", fa.spheres, "spheres CSV (for --power-sum)");
    fit->add_option("--decades", fa.decades, "fit window in decades below the largest T");
    fit->add_option("--min-points", fa.min_points, "minimum points in the window");
    fit->add_option("--power-sum", fa.power, "exponent s for the power sum of radii");

    LatticeArgs la;
    auto* lat = app.add_subcommand("lattice", "integral lattice identities");
    lat->add_option("--name", la.name, "<k>, U, A<m>, A<m>^v, E8, Ap<n>, Ap<n>^ev, Ap<n>^perp, optionally (t)");
    lat->add_option("--gram", la.gram, "matrix as 'a,b;c,d', JSON, or @file");
    lat->add_flag("--discriminant", la.discriminant);
    lat->add_flag("--even", la.even);
    lat->add_flag("--dual", la.dual);
    lat->add_option("--basis", la.basis, "basis vectors as the columns of this matrix");
    lat->add_flag("--sublattice", la.sublattice, "allow a non-unimodular basis");
    lat->add_option("--scale", la.scale, "multiply the form by t");

    SurfaceArgs sa;
    auto* surf = app.add_subcommand("surface", "orbit counts on surface lattices");
    surf->add_option("--model", sa.model, "baragar_p2p2, baragar_222 or triangle");
    surf->add_option("--model-file", sa.model_file, "JSON model file");
    surf->add_option("--a", sa.a);
    surf->add_option("--b", sa.b);
    surf->add_option("--c", sa.c);
    surf->add_flag("--verify", sa.verify);
    surf->add_flag("--count", sa.count);
    surf->add_flag("--fit", sa.fit, "estimate the exponent from the counts");
    surf->add_option("--T", sa.T, "bound on (H,C')");
    surf->add_option("--H", sa.H, "ample class, comma-separated");
    surf->add_option("--C", sa.C, "seed class, comma-separated (default H)");
    surf->add_option("--slack", sa.slack);
    surf->add_flag("--no-convergence-check", sa.no_check);
    surf->add_option("--out", sa.out, "counts CSV path ('-' for stdout)");
    surf->add_option("--decades", sa.decades);
    surf->add_option("--max-vectors", sa.max_vectors);

    RenderArgs ra;
    auto* render = app.add_subcommand("render", "draw a spheres CSV as SVG");
    render->add_option("--spheres", ra.spheres)->required();
    render->add_option("--svg", ra.svg);
    render->add_flag("--labels", ra.labels);
    render->add_option("--viewport", ra.viewport);
    render->add_option("--pixels", ra.pixels);

    DualArgs da;
    auto* dual = app.add_subcommand("dual", "dual polytope of a packing polytope");
    dual->add_option("--catalog", da.catalog);
    dual->add_option("--gram-file", da.gram_file);
    dual->add_option("--gram", da.gram);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        if (*pack) return cmd_pack(pa, threads);
        if (*fit) return cmd_fit(fa);
        if (*lat) return cmd_lattice(la);
        if (*surf) return cmd_surface(sa, threads);
        if (*render) return cmd_render(ra);
        if (*dual) return cmd_dual(da);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const TruncationError& e) {
        std::cerr << "truncation: " << e.what() << "\n";
        return kTruncation;
    } catch (const CheckpointError& e) {
        std::cerr << "checkpoint: " << e.what() << "\n";
        return kTruncation;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return kPreconditionError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kPreconditionError;
    }
    return 0;
}
