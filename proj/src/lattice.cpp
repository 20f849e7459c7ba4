#include "packlab/lattice.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

namespace packlab {

IntegralLattice::IntegralLattice(IntegerMatrix gram, std::string label) : gram_(std::move(gram)), label_(std::move(label)) {
    if (!gram_.square() || gram_.rows() == 0) throw DimensionError("lattice Gram must be square and nonempty");
    if (!gram_.symmetric()) throw PreconditionError("lattice Gram is not symmetric");
    if (determinant(gram_) == 0) throw PreconditionError("lattice Gram is singular");
}

bool IntegralLattice::even() const {
    for (std::size_t i = 0; i < rank(); ++i)
        if (mpz_odd_p(gram_(i, i).get_mpz_t())) return false;
    return true;
}

IntegralLattice ScaledLattice::lattice() const {
    if (!integral) throw PreconditionError("form of " + (label.empty() ? std::string("lattice") : label) + " is not integral");
    return IntegralLattice(to_integer(gram), label);
}

RationalMatrix dual_gram(const IntegralLattice& l) { return inverse(to_rational(l.gram())); }

namespace {

bool all_integral(const RationalMatrix& m) {
    for (const auto& x : m.data())
        if (!is_integer(x)) return false;
    return true;
}

std::string scaled_label(const std::string& label, const Rational& t) {
    if (label.empty() || t == 1) return label;
    return label + "(" + t.get_str() + ")";
}

}  // namespace

ScaledLattice rescale(const IntegralLattice& l, const Rational& t) {
    if (t == 0) throw ConfigError("rescale factor must be nonzero");
    ScaledLattice s;
    s.gram = t * to_rational(l.gram());
    s.integral = all_integral(s.gram);
    s.label = scaled_label(l.label(), t);
    return s;
}

ScaledLattice rescale(const ScaledLattice& l, const Rational& t) {
    if (t == 0) throw ConfigError("rescale factor must be nonzero");
    ScaledLattice s;
    s.gram = t * l.gram;
    s.integral = all_integral(s.gram);
    s.label = scaled_label(l.label, t);
    return s;
}

Integer DiscriminantGroup::order() const {
    Integer o = 1;
    for (const auto& d : invariant_factors) o *= d;
    return o;
}

Integer DiscriminantGroup::exponent() const { return invariant_factors.empty() ? Integer(1) : invariant_factors.back(); }

std::string DiscriminantGroup::to_string() const {
    if (invariant_factors.empty()) return "trivial";
    std::string s;
    for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
        if (i) s += " + ";
        s += "Z/" + invariant_factors[i].get_str();
    }
    return s;
}

std::vector<Integer> smith_diagonal(const IntegerMatrix& m) {
    IntegerMatrix a = m;
    std::size_t r = a.rows(), c = a.cols(), k = std::min(r, c);
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        for (std::size_t x = 0; x < c; ++x) std::swap(a(i, x), a(j, x));
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (std::size_t x = 0; x < r; ++x) std::swap(a(x, i), a(x, j));
    };
    std::vector<Integer> diag;
    for (std::size_t t = 0; t < k; ++t) {
        while (true) {
            // smallest nonzero entry becomes the pivot
            std::size_t pi = r, pj = c;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < c; ++j)
                    if (a(i, j) != 0 && (pi == r || abs(a(i, j)) < abs(a(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == r) {
                diag.resize(k, Integer(0));
                return diag;
            }
            swap_rows(t, pi);
            swap_cols(t, pj);
            bool clean = true;
            Integer q;
            for (std::size_t i = t + 1; i < r; ++i) {
                mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                if (q != 0)
                    for (std::size_t x = t; x < c; ++x) a(i, x) -= q * a(t, x);
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                if (q != 0)
                    for (std::size_t x = t; x < r; ++x) a(x, j) -= q * a(x, t);
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < r && divides; ++i)
                for (std::size_t j = t + 1; j < c; ++j)
                    if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                        for (std::size_t x = t; x < c; ++x) a(t, x) += a(i, x);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        diag.push_back(abs(a(t, t)));
    }
    return diag;
}

DiscriminantGroup discriminant_group(const IntegralLattice& l) {
    DiscriminantGroup g;
    for (const auto& d : smith_diagonal(l.gram()))
        if (d > 1) g.invariant_factors.push_back(d);
    return g;
}

IntegerMatrix even_sublattice_basis(const IntegralLattice& l) {
    std::size_t n = l.rank();
    IntegerMatrix b = IntegerMatrix::identity(n);
    // (v,v) = sum g_ii v_i (mod 2), so the even vectors are the kernel of that functional
    std::size_t p = n;
    for (std::size_t i = 0; i < n && p == n; ++i)
        if (mpz_odd_p(l.gram()(i, i).get_mpz_t())) p = i;
    if (p == n) return b;
    b(p, p) = 2;
    for (std::size_t i = 0; i < n; ++i)
        if (i != p && mpz_odd_p(l.gram()(i, i).get_mpz_t())) b(p, i) = 1;
    return b;
}

IntegralLattice even_sublattice(const IntegralLattice& l) {
    if (l.even()) return l;
    IntegerMatrix b = even_sublattice_basis(l);
    return IntegralLattice(gram_in_basis(l, b, true), l.label().empty() ? "" : l.label() + "^ev");
}

IntegerMatrix gram_in_basis(const IntegralLattice& l, const IntegerMatrix& b, bool sublattice) {
    if (!b.square() || b.rows() != l.rank()) throw DimensionError("basis matrix must be square of the lattice rank");
    Integer d = determinant(b);
    if (d == 0) throw PreconditionError("basis vectors are linearly dependent");
    if (!sublattice && abs(d) != 1)
        throw PreconditionError("basis has determinant " + d.get_str() + "; not a basis of the full lattice");
    return b.transpose() * l.gram() * b;
}

IntegerMatrix gram_in_basis(const IntegralLattice& l, const RationalMatrix& b, bool sublattice) {
    for (const auto& x : b.data())
        if (!is_integer(x)) throw ConfigError("basis has a non-integer coordinate " + x.get_str());
    return gram_in_basis(l, to_integer(b), sublattice);
}

RationalMatrix transform_gram(const RationalMatrix& g, const RationalMatrix& b) {
    if (!g.square() || g.rows() != b.rows()) throw DimensionError("basis matrix does not match the Gram matrix");
    return b.transpose() * g * b;
}

std::string IsometryCheck::to_string() const {
    if (ok) return "isometry holds";
    return "entry (" + std::to_string(row) + "," + std::to_string(col) + "): got " + got.get_str() + ", expected " +
           expected.get_str();
}

IsometryCheck verify_isometry(const RationalMatrix& a, const RationalMatrix& g1, const RationalMatrix& g2) {
    if (!g1.square() || !g2.square() || a.rows() != g1.rows() || a.cols() != g2.rows())
        throw DimensionError("verify_isometry: incompatible dimensions");
    RationalMatrix p = a.transpose() * g1 * a;
    IsometryCheck c;
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j)
            if (p(i, j) != g2(i, j)) {
                c.row = i;
                c.col = j;
                c.got = p(i, j);
                c.expected = g2(i, j);
                return c;
            }
    c.ok = true;
    return c;
}

IntegerMatrix root_lattice_gram(std::size_t m) {
    if (m == 0) throw ConfigError("A_m needs m >= 1");
    IntegerMatrix g(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        g(i, i) = 2;
        if (i + 1 < m) g(i, i + 1) = g(i + 1, i) = -1;
    }
    return g;
}

IntegerMatrix e8_gram() {
    // Bourbaki labelling: chain 1-3-4-5-6-7-8 with 2 attached to 4
    IntegerMatrix g(8, 8);
    for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
    const std::pair<int, int> edges[] = {{0, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {1, 3}};
    for (auto [a, b] : edges) g(a, b) = g(b, a) = -1;
    return g;
}

IntegerMatrix apollonian_lattice_gram(std::size_t n) {
    if (n < 1) throw ConfigError("Ap(n) needs n >= 1");
    IntegerMatrix g(n + 2, n + 2);
    for (std::size_t i = 0; i < n + 2; ++i)
        for (std::size_t j = 0; j < n + 2; ++j) g(i, j) = i == j ? 1 : -1;
    return g;
}

IntegerMatrix apollonian_perp_gram(std::size_t n) {
    if (n < 1) throw ConfigError("Ap(n)^perp needs n >= 1");
    IntegerMatrix g(n + 2, n + 2);
    for (std::size_t i = 0; i < n + 2; ++i)
        for (std::size_t j = 0; j < n + 2; ++j) g(i, j) = i == j ? Integer(static_cast<long>(n) - 1) : Integer(-1);
    return g;
}

IntegerMatrix apollonian_f_basis(std::size_t n) {
    if (n < 2) throw ConfigError("the f-basis needs n >= 2");
    std::size_t d = n + 2;
    IntegerMatrix b(d, d);
    b(0, 0) = 1;
    b(0, 1) = 1, b(1, 1) = 1;
    b(0, 2) = -1, b(2, 2) = -1;
    b(0, 3) = 1, b(1, 3) = 1, b(2, 3) = 1, b(3, 3) = -1;
    for (std::size_t k = 4; k < d; ++k) {
        b(k - 1, k) = 1;
        b(k, k) = -1;
    }
    return b;
}

RationalMatrix dual_root_basis(std::size_t n) {
    if (n < 3) throw ConfigError("the dual root basis needs n >= 3");
    std::size_t m = n - 1;  // rank of A_{n-1}
    RationalMatrix b(m, m);
    for (std::size_t k = 1; k < m; ++k) b(k, k - 1) = 1;  // omega_2 .. omega_{n-1}
    for (std::size_t i = 0; i < m; ++i) b(i, m - 1) = Rational(static_cast<long>(i + 1)) / static_cast<long>(n);
    return b;
}

namespace {

ScaledLattice from_integer(const IntegerMatrix& g, std::string label) {
    return ScaledLattice{to_rational(g), std::move(label), true};
}

std::size_t parse_size(const std::string& s, const std::string& name) {
    try {
        std::size_t pos = 0;
        unsigned long v = std::stoul(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("bad index in lattice name '" + name + "'");
    }
}

}  // namespace

ScaledLattice catalog_gram(const std::string& raw) {
    std::string name;
    for (char ch : raw)
        if (ch != ' ') name += ch;
    static const std::regex ap_paren(R"(^Ap\((\d+)\))");
    name = std::regex_replace(name, ap_paren, "Ap$1");
    std::optional<Rational> t;
    if (!name.empty() && name.back() == ')') {
        auto open = name.rfind('(');
        if (open == std::string::npos || open == 0) throw ConfigError("unknown lattice '" + raw + "'");
        t = parse_rational(name.substr(open + 1, name.size() - open - 2));
        name = name.substr(0, open);
    }
    std::smatch m;
    ScaledLattice base;
    static const std::regex angle(R"(^<(-?\d+)>$)"), a_re(R"(^A(\d+)(\^v)?$)"),
        ap_re(R"(^Ap(\d+)(\^ev|\^perp)?$)");
    if (std::regex_match(name, m, angle)) {
        IntegerMatrix g(1, 1);
        g(0, 0) = Integer(m[1].str());
        if (g(0, 0) == 0) throw ConfigError("<0> is degenerate");
        base = from_integer(g, "<" + m[1].str() + ">");
    } else if (name == "U") {
        base = from_integer(IntegerMatrix{{0, 1}, {1, 0}}, "U");
    } else if (name == "E8") {
        base = from_integer(e8_gram(), "E8");
    } else if (std::regex_match(name, m, a_re)) {
        std::size_t k = parse_size(m[1].str(), raw);
        IntegerMatrix g = root_lattice_gram(k);
        if (m[2].matched) {
            RationalMatrix gi = inverse(to_rational(g));
            base = ScaledLattice{gi, "A" + m[1].str() + "^v", all_integral(gi)};
        } else {
            base = from_integer(g, "A" + m[1].str());
        }
    } else if (std::regex_match(name, m, ap_re)) {
        std::size_t n = parse_size(m[1].str(), raw);
        if (n < 1 || n > 6) throw ConfigError("Ap(n) catalog covers 1 <= n <= 6");
        std::string label = "Ap(" + m[1].str() + ")";
        if (!m[2].matched) {
            base = from_integer(apollonian_lattice_gram(n), label);
        } else if (m[2].str() == "^ev") {
            IntegralLattice ev = even_sublattice(IntegralLattice(apollonian_lattice_gram(n)));
            base = from_integer(ev.gram(), label + "^ev");
        } else {
            base = from_integer(apollonian_perp_gram(n), label + "^perp");
        }
    } else {
        throw ConfigError("unknown lattice '" + raw + "'");
    }
    return t ? rescale(base, *t) : base;
}

IntegralLattice catalog_lattice(const std::string& name) { return catalog_gram(name).lattice(); }

}  // namespace packlab
