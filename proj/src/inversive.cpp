#include "packlab/inversive.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

namespace packlab {

namespace {

Rational fundamental_inner(const ExactVector& v, const ExactVector& w) {
    if (v.size() != w.size() || v.size() < 3) throw DimensionError("sphere vectors must have equal length >= 3");
    std::size_t last = v.size() - 1;
    Rational s = v[0] * w[last] + v[last] * w[0];
    for (std::size_t i = 1; i < last; ++i) s += v[i] * w[i];
    return s;
}

void require_normalized(const SphereVector& v, const char* where) {
    Rational n = fundamental_inner(v, v);
    if (n != 1) throw PreconditionError(std::string(where) + ": (v,v) = " + n.get_str() + ", expected 1");
}

}  // namespace

EuclideanSphere EuclideanSphere::ball(std::vector<Rational> center, const Rational& radius, int orientation) {
    if (radius <= 0) throw PreconditionError("sphere radius must be positive");
    EuclideanSphere s;
    s.kind = Kind::sphere;
    s.center = std::move(center);
    s.radius = radius;
    s.orientation = orientation >= 0 ? 1 : -1;
    s.curvature = Rational(s.orientation) / radius;
    return s;
}

EuclideanSphere EuclideanSphere::plane(std::vector<Rational> normal, const Rational& offset, int orientation) {
    if (std::all_of(normal.begin(), normal.end(), [](const Rational& x) { return x == 0; }))
        throw PreconditionError("hyperplane normal must be nonzero");
    EuclideanSphere s;
    s.kind = Kind::hyperplane;
    s.curvature = 0;
    s.normal = std::move(normal);
    s.offset = offset;
    s.orientation = orientation >= 0 ? 1 : -1;
    return s;
}

EuclideanSphere EuclideanSphere::flipped() const {
    EuclideanSphere s = *this;
    s.orientation = -orientation;
    s.curvature = -curvature;
    return s;
}

bool operator==(const EuclideanSphere& a, const EuclideanSphere& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == EuclideanSphere::Kind::sphere)
        return a.curvature == b.curvature && a.center == b.center && a.radius == b.radius;
    if (a.normal.size() != b.normal.size()) return false;
    // (normal, offset) compared up to a positive factor, orientation folded in
    std::vector<Rational> x = a.normal, y = b.normal;
    x.push_back(a.offset);
    y.push_back(b.offset);
    Rational ratio = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if ((x[i] == 0) != (y[i] == 0)) return false;
        if (x[i] == 0) continue;
        Rational r = (y[i] * b.orientation) / (x[i] * a.orientation);
        if (ratio == 0)
            ratio = r;
        else if (r != ratio)
            return false;
    }
    return ratio > 0;
}

EuclideanSphere sphere_from_vector(const SphereVector& v) {
    require_normalized(v, "sphere_from_vector");
    std::size_t n = v.size() - 2;
    if (v[0] != 0) {
        std::vector<Rational> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = v[i + 1] / v[0];
        return EuclideanSphere::ball(std::move(c), Rational(1 / abs(v[0])), sgn(v[0]));
    }
    std::vector<Rational> normal(v.begin() + 1, v.end() - 1);
    return EuclideanSphere::plane(std::move(normal), v[n + 1], 1);
}

SphereVector vector_from_sphere(const EuclideanSphere& s) {
    if (s.kind == EuclideanSphere::Kind::sphere) {
        std::size_t n = s.center.size();
        if (s.radius <= 0) throw PreconditionError("sphere radius must be positive");
        Rational a0 = s.orientation / s.radius;
        SphereVector v(n + 2);
        v[0] = a0;
        Rational sq = 0;
        for (std::size_t i = 0; i < n; ++i) {
            v[i + 1] = s.center[i] * a0;
            sq += v[i + 1] * v[i + 1];
        }
        v[n + 1] = (1 - sq) / (2 * a0);
        return v;
    }
    std::size_t n = s.normal.size();
    Rational len2 = 0;
    for (const auto& x : s.normal) len2 += x * x;
    Rational len;
    if (len2 == 0) throw PreconditionError("hyperplane normal must be nonzero");
    if (!rational_sqrt(len2, len))
        throw PreconditionError("hyperplane normal has irrational length sqrt(" + len2.get_str() + ")");
    SphereVector v(n + 2);
    v[0] = 0;
    for (std::size_t i = 0; i < n; ++i) v[i + 1] = s.orientation * s.normal[i] / len;
    v[n + 1] = s.orientation * s.offset / len;
    return v;
}

std::string to_string(SphereRelation r) {
    switch (r) {
        case SphereRelation::identical: return "identical";
        case SphereRelation::tangent: return "tangent";
        case SphereRelation::disjoint_interiors: return "disjoint_interiors";
        case SphereRelation::intersecting: return "intersecting";
        case SphereRelation::orthogonal: return "orthogonal";
    }
    return "unknown";
}

SphereRelation classify_inner(const Rational& vw) {
    if (vw == -1) return SphereRelation::tangent;
    if (vw < -1) return SphereRelation::disjoint_interiors;
    if (vw == 0) return SphereRelation::orthogonal;
    return SphereRelation::intersecting;
}

SphereRelation classify_pair(const SphereVector& v, const SphereVector& w) {
    require_normalized(v, "classify_pair");
    require_normalized(w, "classify_pair");
    if (v == w) return SphereRelation::identical;
    return classify_inner(fundamental_inner(v, w));
}

SphereRelation classify_pair(const SphereVector& v, const SphereVector& w, const QuadraticSpace& q) {
    if (inner(v, v, q) != 1 || inner(w, w, q) != 1) throw PreconditionError("classify_pair: vectors must have norm 1");
    if (v == w) return SphereRelation::identical;
    return classify_inner(inner(v, w, q));
}

namespace {

struct ExactField {
    using S = Rational;
    static bool zero(const S& x) { return x == 0; }
    static std::optional<S> root(const S& x) {
        S r;
        if (rational_sqrt(x, r)) return r;
        return std::nullopt;
    }
    static bool equal(const S& a, const S& b) { return a == b; }
    static double magnitude(const S& x) { return std::fabs(x.get_d()); }
};

struct FloatField {
    using S = double;
    static bool zero(const S& x) { return std::fabs(x) < 1e-11; }
    static std::optional<S> root(const S& x) {
        if (x < -1e-9) return std::nullopt;
        return std::sqrt(std::max(0.0, x));
    }
    static bool equal(const S& a, const S& b) { return std::fabs(a - b) <= 1e-8 * (1 + std::fabs(a) + std::fabs(b)); }
    static double magnitude(const S& x) { return std::fabs(x); }
};

template <class F>
std::optional<std::vector<typename F::S>> solve(Matrix<typename F::S> a, std::vector<typename F::S> b) {
    using S = typename F::S;
    std::size_t n = a.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = n;
        double best = 0;
        for (std::size_t r = c; r < n; ++r)
            if (!F::zero(a(r, c)) && F::magnitude(a(r, c)) > best) {
                best = F::magnitude(a(r, c));
                p = r;
            }
        if (p == n) return std::nullopt;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
            std::swap(b[p], b[c]);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || F::zero(a(r, c))) continue;
            S f = a(r, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
            b[r] -= f * b[c];
        }
    }
    std::vector<S> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a(i, i);
    return x;
}

template <class F>
std::optional<std::vector<std::vector<typename F::S>>> realize_in_order(const Matrix<typename F::S>& gram,
                                                                        const std::vector<typename F::S>& k,
                                                                        const std::vector<std::size_t>& order) {
    using S = typename F::S;
    std::size_t d = gram.rows();
    std::size_t last = d - 1;
    std::vector<std::vector<S>> x(d, std::vector<S>(d, S(0)));
    for (std::size_t p = 0; p < d; ++p) {
        std::size_t m = order[p];
        std::vector<S>& v = x[m];
        v[0] = k[m];
        if (p == 0) {
            if (F::zero(k[m])) return std::nullopt;
            v[last] = gram(m, m) / (2 * k[m]);
            continue;
        }
        // unknowns a_1..a_{p-1} (or a_1..a_n for the last vector) and a_last
        std::size_t free_coords = (p == last) ? last - 1 : p - 1;
        std::size_t u = free_coords + 1;
        Matrix<S> a(u, u);
        std::vector<S> rhs(u);
        for (std::size_t q = 0; q < p; ++q) {
            const std::vector<S>& w = x[order[q]];
            for (std::size_t i = 1; i <= free_coords; ++i) a(q, i - 1) = w[i];
            a(q, free_coords) = w[0];
            rhs[q] = gram(m, order[q]) - w[last] * k[m];
        }
        auto sol = solve<F>(a, rhs);
        if (!sol) return std::nullopt;
        for (std::size_t i = 1; i <= free_coords; ++i) v[i] = (*sol)[i - 1];
        v[last] = (*sol)[free_coords];
        S norm = 2 * v[0] * v[last];
        for (std::size_t i = 1; i <= free_coords; ++i) norm += v[i] * v[i];
        if (p == last) {
            if (!F::equal(norm, gram(m, m))) return std::nullopt;
        } else {
            auto r = F::root(gram(m, m) - norm);
            if (!r) return std::nullopt;
            v[p] = *r;
        }
    }
    return x;
}

template <class F>
std::optional<Matrix<typename F::S>> realize(const Matrix<typename F::S>& gram, const std::vector<typename F::S>& k) {
    std::size_t d = gram.rows();
    if (!gram.square() || k.size() != d) throw DimensionError("realize: gram and curvature sizes differ");
    if (d < 3) throw DimensionError("realize: need at least 3 vectors");
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    do {
        auto x = realize_in_order<F>(gram, k, order);
        if (x) return Matrix<typename F::S>::from_columns(*x);
    } while (std::next_permutation(order.begin(), order.end()));
    return std::nullopt;
}

}  // namespace

std::optional<RationalMatrix> realize_configuration(const RationalMatrix& gram, const std::vector<Rational>& curvatures) {
    return realize<ExactField>(gram, curvatures);
}

std::optional<Matrix<double>> realize_configuration_approx(const RationalMatrix& gram,
                                                           const std::vector<Rational>& curvatures) {
    Matrix<double> g(gram.rows(), gram.cols());
    for (std::size_t i = 0; i < gram.rows(); ++i)
        for (std::size_t j = 0; j < gram.cols(); ++j) g(i, j) = gram(i, j).get_d();
    std::vector<double> k;
    for (const auto& x : curvatures) k.push_back(x.get_d());
    return realize<FloatField>(g, k);
}

FloatSphere approximate(const EuclideanSphere& s) {
    FloatSphere f;
    if (s.is_hyperplane()) {
        f.hyperplane = true;
        for (const auto& x : s.normal) f.normal.push_back(s.orientation * x.get_d());
        f.offset = s.orientation * s.offset.get_d();
        return f;
    }
    f.curvature = s.curvature.get_d();
    for (const auto& x : s.center) f.center.push_back(x.get_d());
    f.radius = s.radius.get_d();
    if (is_integer(s.curvature)) f.label = s.curvature.get_str();
    return f;
}

FloatSphere approximate_from_vector(const std::vector<double>& v) {
    FloatSphere f;
    std::size_t n = v.size() - 2;
    double scale = 0;
    for (double x : v) scale = std::max(scale, std::fabs(x));
    if (std::fabs(v[0]) <= 1e-12 * std::max(1.0, scale)) {
        f.hyperplane = true;
        f.normal.assign(v.begin() + 1, v.end() - 1);
        f.offset = v[n + 1];
        return f;
    }
    f.curvature = v[0];
    for (std::size_t i = 0; i < n; ++i) f.center.push_back(v[i + 1] / v[0]);
    f.radius = 1.0 / std::fabs(v[0]);
    return f;
}

namespace {

Viewport auto_viewport(const std::vector<FloatSphere>& spheres) {
    const FloatSphere* outer = nullptr;
    for (const auto& s : spheres)
        if (!s.hyperplane && s.curvature < 0 && (!outer || s.curvature < outer->curvature)) outer = &s;
    Viewport v;
    bool any = false;
    auto grow = [&](const FloatSphere& s) {
        double x0 = s.center[0] - s.radius, x1 = s.center[0] + s.radius;
        double y0 = s.center[1] - s.radius, y1 = s.center[1] + s.radius;
        if (!any) {
            v = {x0, y0, x1, y1};
            any = true;
            return;
        }
        v.xmin = std::min(v.xmin, x0);
        v.ymin = std::min(v.ymin, y0);
        v.xmax = std::max(v.xmax, x1);
        v.ymax = std::max(v.ymax, y1);
    };
    if (outer) {
        grow(*outer);
    } else {
        for (const auto& s : spheres)
            if (!s.hyperplane) grow(s);
    }
    if (!any) return Viewport{};
    double pad = 0.02 * std::max(v.xmax - v.xmin, v.ymax - v.ymin);
    return {v.xmin - pad, v.ymin - pad, v.xmax + pad, v.ymax + pad};
}

// Segment of a x + b y + c = 0 inside the rectangle, if any.
std::optional<std::array<double, 4>> clip_line(double a, double b, double c, const Viewport& v) {
    std::vector<std::pair<double, double>> pts;
    auto add = [&](double x, double y) {
        const double eps = 1e-12 * (1 + std::fabs(v.xmax - v.xmin) + std::fabs(v.ymax - v.ymin));
        if (x < v.xmin - eps || x > v.xmax + eps || y < v.ymin - eps || y > v.ymax + eps) return;
        for (const auto& p : pts)
            if (std::fabs(p.first - x) <= eps && std::fabs(p.second - y) <= eps) return;
        pts.emplace_back(x, y);
    };
    if (b != 0) {
        add(v.xmin, -(a * v.xmin + c) / b);
        add(v.xmax, -(a * v.xmax + c) / b);
    }
    if (a != 0) {
        add(-(b * v.ymin + c) / a, v.ymin);
        add(-(b * v.ymax + c) / a, v.ymax);
    }
    if (pts.size() < 2) return std::nullopt;
    return std::array<double, 4>{pts[0].first, pts[0].second, pts[1].first, pts[1].second};
}

}  // namespace

std::string render_svg(const std::vector<FloatSphere>& spheres, const SvgOptions& options) {
    for (const auto& s : spheres)
        if ((s.hyperplane ? s.normal.size() : s.center.size()) != 2)
            throw PreconditionError("render_svg: only circles and lines in the plane are supported");
    Viewport v = options.viewport ? *options.viewport : auto_viewport(spheres);
    double w = v.xmax - v.xmin, h = v.ymax - v.ymin;
    if (w <= 0 || h <= 0) throw PreconditionError("render_svg: empty viewport");
    double stroke = std::max(w, h) / 800.0;
    int px = options.pixels;
    int py = static_cast<int>(std::lround(px * h / w));

    std::ostringstream out;
    out << std::setprecision(10);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << px << "\" height=\"" << py
        << "\" viewBox=\"" << v.xmin << " " << -v.ymax << " " << w << " " << h << "\">\n";
    out << "<g fill=\"none\" stroke=\"black\" stroke-width=\"" << stroke << "\">\n";
    // y is flipped so that the picture keeps the mathematical orientation
    for (const auto& s : spheres) {
        if (s.hyperplane) {
            auto seg = clip_line(s.normal[0], s.normal[1], s.offset, v);
            if (!seg) continue;
            out << "<line x1=\"" << (*seg)[0] << "\" y1=\"" << -(*seg)[1] << "\" x2=\"" << (*seg)[2] << "\" y2=\""
                << -(*seg)[3] << "\"/>\n";
        } else {
            out << "<circle cx=\"" << s.center[0] << "\" cy=\"" << -s.center[1] << "\" r=\"" << s.radius << "\"/>\n";
        }
    }
    out << "</g>\n";
    if (options.labels) {
        out << "<g font-family=\"sans-serif\" text-anchor=\"middle\" dominant-baseline=\"central\">\n";
        for (const auto& s : spheres) {
            if (s.hyperplane || s.curvature <= 0 || s.label.empty()) continue;
            double size = s.radius * 0.6;
            if (size < stroke * 2) continue;
            out << "<text x=\"" << s.center[0] << "\" y=\"" << -s.center[1] << "\" font-size=\"" << size << "\">"
                << s.label << "</text>\n";
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string render_svg(const std::vector<EuclideanSphere>& spheres, const SvgOptions& options) {
    std::vector<FloatSphere> f;
    f.reserve(spheres.size());
    for (const auto& s : spheres) f.push_back(approximate(s));
    return render_svg(f, options);
}

}  // namespace packlab
