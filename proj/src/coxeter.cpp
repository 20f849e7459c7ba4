#include "packlab/coxeter.hpp"

namespace packlab {

CoxeterPolytope::CoxeterPolytope(RationalMatrix gram) : gram_(std::move(gram)) {
    if (!gram_.square() || gram_.rows() < 3) throw DimensionError("polytope Gram must be square of size >= 3");
    if (!gram_.symmetric()) throw PreconditionError("polytope Gram is not symmetric");
    for (std::size_t i = 0; i < gram_.rows(); ++i)
        if (gram_(i, i) != 1)
            throw UnitDiagonalError("polytope Gram diagonal entry " + std::to_string(i) + " is " + gram_(i, i).get_str() +
                                    ", expected 1");
    if (determinant(gram_) == 0) throw SingularGramError("polytope Gram is singular");
    Signature s = signature(gram_);
    if (s.negative != 1)
        throw SignatureError("polytope Gram has signature (" + std::to_string(s.positive) + "," +
                             std::to_string(s.negative) + "), expected (" + std::to_string(gram_.rows() - 1) + ",1)");
    gram_inv_ = inverse(gram_);
}

ExactVector CoxeterPolytope::weight(std::size_t j) const {
    if (j >= size()) throw ConfigError("weight index out of range");
    return gram_inv_.row(j);
}

std::vector<std::size_t> CoxeterPolytope::real_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < size(); ++j)
        if (real(j)) out.push_back(j);
    return out;
}

Rational CoxeterPolytope::normalized_weight_inner_squared(std::size_t i, std::size_t j) const {
    if (!real(i) || !real(j)) throw PreconditionError("normalized weights need real weights");
    return gram_inv_(i, j) * gram_inv_(i, j) / (gram_inv_(i, i) * gram_inv_(j, j));
}

std::optional<Rational> CoxeterPolytope::normalized_weight_inner(std::size_t i, std::size_t j) const {
    Rational sq = normalized_weight_inner_squared(i, j);
    Rational r;
    if (!rational_sqrt(sq, r)) return std::nullopt;
    return gram_inv_(i, j) < 0 ? Rational(-r) : r;
}

CoxeterPolytope build_polytope(const RationalMatrix& gram) { return CoxeterPolytope(gram); }

namespace {

// Visit each subset of {0..n-1} of the given size.
template <class F>
bool all_subsets(std::size_t n, std::size_t k, F&& f) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (!f(idx)) return false;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

std::optional<int> maxwell_level(const RationalMatrix& gram) {
    if (!gram.square() || !gram.symmetric()) throw PreconditionError("maxwell_level: Gram must be square and symmetric");
    std::size_t n = gram.rows();
    for (int l = 0; l <= 2; ++l) {
        if (static_cast<std::size_t>(l) > n) break;
        std::size_t keep = n - static_cast<std::size_t>(l);
        bool ok = all_subsets(n, keep, [&](const std::vector<std::size_t>& idx) {
            return positive_semidefinite(gram.submatrix(idx));
        });
        if (ok) return l;
    }
    return std::nullopt;
}

std::string level_to_string(const std::optional<int>& level) { return level ? std::to_string(*level) : ">2"; }

bool is_packing_polytope(const RationalMatrix& gram) { return maxwell_level(gram).has_value(); }

RationalMatrix reflection_in_weight_basis(const CoxeterPolytope& p, std::size_t i) {
    if (i >= p.size()) throw ConfigError("reflection index out of range");
    std::size_t n = p.size();
    RationalMatrix a = RationalMatrix::identity(n);
    // omega_i -> omega_i - 2 sum_k g_ki omega_k; column i holds the image
    for (std::size_t k = 0; k < n; ++k) a(k, i) -= 2 * p.gram()(k, i);
    return a;
}

RationalMatrix reflection_in_normal_basis(const CoxeterPolytope& p, std::size_t i) {
    if (i >= p.size()) throw ConfigError("reflection index out of range");
    if (!p.real(i)) throw PreconditionError("weight " + std::to_string(i) + " is not real");
    std::size_t n = p.size();
    const RationalMatrix& gi = p.gram_inverse();
    RationalMatrix b = RationalMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) b(k, i) -= 2 * gi(k, i) / gi(i, i);
    return b;
}

RationalMatrix normalized_weight_gram(const CoxeterPolytope& p) {
    std::vector<std::size_t> real = p.real_indices();
    RationalMatrix g(real.size(), real.size());
    for (std::size_t a = 0; a < real.size(); ++a)
        for (std::size_t b = 0; b < real.size(); ++b) {
            auto v = p.normalized_weight_inner(real[a], real[b]);
            if (!v)
                throw PreconditionError("(omega_" + std::to_string(real[a]) + ", omega_" + std::to_string(real[b]) +
                                        ") normalized is irrational");
            g(a, b) = *v;
        }
    return g;
}

CoxeterPolytope dual_polytope(const CoxeterPolytope& p) {
    std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i)
        if (!p.real(i)) throw PreconditionError("dual polytope: weight " + std::to_string(i) + " is not real");
    const RationalMatrix& gi = p.gram_inverse();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            // (w_i,w_j) <= -sqrt(g^ii g^jj)
            if (gi(i, j) >= 0 || gi(i, j) * gi(i, j) < gi(i, i) * gi(j, j))
                throw PreconditionError("not a packing dual: normalized (omega_" + std::to_string(i) + ", omega_" +
                                        std::to_string(j) + ") > -1");
        }
    return CoxeterPolytope(normalized_weight_gram(p));
}

RationalMatrix apollonian_gram(std::size_t n) {
    if (n < 2) throw ConfigError("the Apollonian polytope needs n >= 2");
    std::vector<Rational> row(n + 2, Rational(-1) / Rational(static_cast<long>(n) - 1));
    row[0] = 1;
    return circulant(row);
}

RationalMatrix boyd_gram() { return circulant({1, -1, 0, -1}); }

RationalMatrix ideal_triangle_gram() { return circulant({1, -1, -1}); }

}  // namespace packlab
