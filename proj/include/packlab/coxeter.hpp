#pragma once

#include "packlab/lorentz.hpp"

#include <optional>
#include <string>
#include <vector>

namespace packlab {

class SignatureError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class SingularGramError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class UnitDiagonalError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class CoxeterPolytope {
public:
    explicit CoxeterPolytope(RationalMatrix gram);

    std::size_t size() const { return gram_.rows(); }
    std::size_t dimension() const { return gram_.rows() - 2; }
    const RationalMatrix& gram() const { return gram_; }
    const RationalMatrix& gram_inverse() const { return gram_inv_; }

    // omega_j in e-coordinates (row j of the inverse Gram).
    ExactVector weight(std::size_t j) const;
    const Rational& weight_norm(std::size_t j) const { return gram_inv_(j, j); }
    bool real(std::size_t j) const { return gram_inv_(j, j) > 0; }
    std::vector<std::size_t> real_indices() const;
    bool nondegenerate() const { return real_indices().size() == size(); }

    // (omega_i bar, omega_j bar)^2 and its sign, without square roots.
    Rational normalized_weight_inner_squared(std::size_t i, std::size_t j) const;
    // Exact value when both weights are real and the value is rational.
    std::optional<Rational> normalized_weight_inner(std::size_t i, std::size_t j) const;

private:
    RationalMatrix gram_;
    RationalMatrix gram_inv_;
};

CoxeterPolytope build_polytope(const RationalMatrix& gram);

// nullopt stands for "level > 2".
std::optional<int> maxwell_level(const RationalMatrix& gram);
std::string level_to_string(const std::optional<int>& level);
bool is_packing_polytope(const RationalMatrix& gram);

RationalMatrix reflection_in_weight_basis(const CoxeterPolytope& p, std::size_t i);
RationalMatrix reflection_in_normal_basis(const CoxeterPolytope& p, std::size_t i);

// Gram of the normalized real weights; throws if an entry is irrational.
RationalMatrix normalized_weight_gram(const CoxeterPolytope& p);

CoxeterPolytope dual_polytope(const CoxeterPolytope& p);

// Gram matrices used throughout: G(P) of the Apollonian polytope in dimension n >= 2
// is cir(1, -1/(n-1), ..., -1/(n-1)); its normalized weights form the tangent cluster.
RationalMatrix apollonian_gram(std::size_t n);
RationalMatrix boyd_gram();
RationalMatrix ideal_triangle_gram();

}  // namespace packlab
