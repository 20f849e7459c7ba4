#include "packlab/catalog.hpp"
#include "packlab/exponent.hpp"
#include "packlab/lattice.hpp"
#include "packlab/surface.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace packlab;

namespace {

py::object fraction(const Rational& q) { return py::module_::import("fractions").attr("Fraction")(q.get_str()); }

Rational rational(const py::handle& x) { return parse_rational(py::str(x).cast<std::string>()); }

std::vector<Rational> rationals(const py::iterable& xs) {
    std::vector<Rational> out;
    for (auto x : xs) out.push_back(rational(x));
    return out;
}

RationalMatrix matrix(const py::iterable& rows) {
    std::vector<std::vector<Rational>> r;
    for (auto row : rows) r.push_back(rationals(py::reinterpret_borrow<py::iterable>(row)));
    return RationalMatrix::from_rows(r);
}

py::list fractions(const std::vector<Rational>& v) {
    py::list out;
    for (const auto& q : v) out.append(fraction(q));
    return out;
}

py::dict estimate_dict(const ExponentEstimate& e) {
    py::dict d;
    d["delta_hat"] = e.delta_hat;
    d["stderr"] = e.stderr_;
    d["r2"] = e.r_squared;
    d["window"] = py::make_tuple(e.T_lo, e.T_hi);
    d["points"] = e.points_used;
    d["constant"] = e.constant();
    return d;
}

PackingSpec packing_spec(const py::object& packing) {
    if (py::isinstance<py::str>(packing)) return catalog_packing(packing.cast<std::string>());
    PackingSpec s;
    s.name = "custom";
    s.gram = matrix(packing);
    return s;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact sphere packing orbits, lattice invariants and orbit-count exponents";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ArithmeticError);
    py::register_exception<TruncationError>(m, "TruncationError", PyExc_RuntimeError);
    py::register_exception<CheckpointError>(m, "CheckpointError", PyExc_RuntimeError);

    m.def("descartes_residual", [](const py::iterable& gram, const py::iterable& k) {
        return fraction(descartes_residual(matrix(gram), rationals(k)));
    }, py::arg("gram"), py::arg("curvatures"));

    m.def("maxwell_level", [](const py::iterable& gram) { return maxwell_level(matrix(gram)); }, py::arg("gram"),
          "Level 0, 1 or 2, or None for level > 2.");
    m.def("is_packing_polytope", [](const py::iterable& gram) { return is_packing_polytope(matrix(gram)); });
    m.def("catalog_names", &catalog_names);

    m.def(
        "enumerate_packing",
        [](const py::object& packing, std::optional<py::iterable> seed, std::optional<py::object> T,
           std::optional<std::size_t> depth, std::optional<py::object> slack, std::optional<std::string> action,
           std::size_t threads) {
            PackingSpec spec = packing_spec(packing);
            if (action) spec.kind = parse_action_kind(*action);
            std::vector<Rational> k;
            if (seed) k = rationals(*seed);
            else if (spec.default_seed) k = *spec.default_seed;
            else throw ConfigError("no seed curvatures given");
            CoxeterPolytope p(spec.gram);
            ClusterAction act = make_action(p, spec.kind);
            Cluster c = seed_cluster(act, k);
            EnumerationOptions o;
            if (T) o.curvature_bound = rational(*T);
            if (depth) {
                o.max_depth = depth;
                if (!T) o.mode = EnumerationMode::depth_limited;
            }
            if (slack) o.slack = rational(*slack);
            o.threads = threads;
            PackingOrbit orbit;
            {
                py::gil_scoped_release release;
                orbit = enumerate_packing(act, c, o);
            }
            py::dict d;
            d["curvatures"] = fractions(orbit.positive_curvatures());
            d["spheres"] = orbit.spheres.size();
            d["truncated"] = orbit.truncated;
            d["slack"] = fraction(orbit.slack);
            d["clusters"] = orbit.clusters_visited;
            return d;
        },
        py::arg("packing"), py::arg("seed") = py::none(), py::arg("T") = py::none(), py::arg("depth") = py::none(),
        py::arg("slack") = py::none(), py::arg("action") = py::none(), py::arg("threads") = 0,
        "Orbit of a seed cluster. `packing` is a catalog name or a polytope Gram matrix.");

    m.def("fit_exponent", [](const std::vector<double>& T, const std::vector<std::uint64_t>& N, double decades,
                             std::size_t min_points) {
        if (T.size() != N.size()) throw ConfigError("T and N differ in length");
        CountCurve c;
        for (std::size_t i = 0; i < T.size(); ++i) c.points.push_back({T[i], N[i]});
        return estimate_dict(fit_exponent(c, decades, min_points));
    }, py::arg("T"), py::arg("N"), py::arg("decades") = 2.0, py::arg("min_points") = 8);

    m.def("curvature_exponent", [](const py::iterable& curvatures, double decades) {
        std::vector<Rational> k = rationals(curvatures);
        std::sort(k.begin(), k.end());
        if (k.empty()) throw ConfigError("no curvatures");
        CountCurve c = counting_function(k, default_grid(k.front().get_d(), k.back().get_d()));
        return estimate_dict(fit_exponent(c, decades));
    }, py::arg("curvatures"), py::arg("decades") = 2.0);

    m.def("discriminant_group", [](const py::object& lattice) {
        IntegralLattice l = py::isinstance<py::str>(lattice) ? catalog_lattice(lattice.cast<std::string>())
                                                             : IntegralLattice(to_integer(matrix(lattice)));
        std::vector<long> out;
        for (const auto& d : discriminant_group(l).invariant_factors) out.push_back(d.get_si());
        return out;
    }, py::arg("lattice"), "Invariant factors of L^v/L for a catalog name or an integer Gram matrix.");

    m.def("verify_model", [](const std::string& name) {
        VerificationReport r = verify_model(builtin_model(name));
        return py::make_tuple(r.ok(), r.to_string());
    }, py::arg("model"));

    m.def(
        "surface_exponent",
        [](const std::string& name, const py::object& T, std::optional<py::iterable> H, std::optional<py::iterable> C,
           std::size_t threads) {
            SurfaceModel sm = builtin_model(name);
            if (H) sm.H = rationals(*H);
            ExactVector c = C ? rationals(*C) : sm.C;
            if (c.empty()) c = sm.H;
            SurfaceCountOptions o;
            o.threads = threads;
            SurfaceExponent e;
            Rational bound = rational(T);
            {
                py::gil_scoped_release release;
                e = estimate_surface_exponent(sm, c, bound, o);
            }
            py::dict d = estimate_dict(e.estimate);
            d["count"] = e.count.values.size();
            d["truncated"] = e.count.truncated;
            return d;
        },
        py::arg("model"), py::arg("T"), py::arg("H") = py::none(), py::arg("C") = py::none(), py::arg("threads") = 0);
}
