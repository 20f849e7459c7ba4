#pragma once

#include "packlab/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace packlab {

class IntegralLattice {
public:
    IntegralLattice() = default;
    // Throws on a non-symmetric or singular Gram matrix.
    explicit IntegralLattice(IntegerMatrix gram, std::string label = "");

    const IntegerMatrix& gram() const { return gram_; }
    const std::string& label() const { return label_; }
    std::size_t rank() const { return gram_.rows(); }
    Integer det() const { return determinant(gram_); }
    bool even() const;

private:
    IntegerMatrix gram_;
    std::string label_;
};

// A lattice whose form may have left Z after rescaling.
struct ScaledLattice {
    RationalMatrix gram;
    std::string label;
    bool integral = false;

    IntegralLattice lattice() const;  // throws PreconditionError if not integral
};

RationalMatrix dual_gram(const IntegralLattice& l);

ScaledLattice rescale(const IntegralLattice& l, const Rational& t);
ScaledLattice rescale(const ScaledLattice& l, const Rational& t);

struct DiscriminantGroup {
    std::vector<Integer> invariant_factors;  // each > 1, d1 | d2 | ...

    Integer order() const;
    Integer exponent() const;  // 1 for the trivial group
    std::string to_string() const;
};

// Diagonal of the Smith normal form, including unit entries.
std::vector<Integer> smith_diagonal(const IntegerMatrix& m);
DiscriminantGroup discriminant_group(const IntegralLattice& l);

// Column basis of {v : (v,v) even}; the identity when l is already even.
IntegerMatrix even_sublattice_basis(const IntegralLattice& l);
IntegralLattice even_sublattice(const IntegralLattice& l);

// B^t G B. Unless `sublattice` is set, B must be unimodular.
IntegerMatrix gram_in_basis(const IntegralLattice& l, const IntegerMatrix& b, bool sublattice = false);
// Same product for a basis with rational coordinates; throws if B has a non-integer entry.
IntegerMatrix gram_in_basis(const IntegralLattice& l, const RationalMatrix& b, bool sublattice = false);
// B^t G B with no integrality requirements.
RationalMatrix transform_gram(const RationalMatrix& g, const RationalMatrix& b);

struct IsometryCheck {
    bool ok = false;
    std::size_t row = 0, col = 0;
    Rational got, expected;
    std::string to_string() const;
};

IsometryCheck verify_isometry(const RationalMatrix& a, const RationalMatrix& g1, const RationalMatrix& g2);

// Catalog: "<k>", "U", "A<m>", "A<m>^v", "E8", "Ap<n>", "Ap<n>^ev", "Ap<n>^perp", each optionally
// followed by "(t)" for the rescaled form, e.g. "U(2)", "A3^v(4)". Ap(n) spellings are accepted.
ScaledLattice catalog_gram(const std::string& name);
IntegralLattice catalog_lattice(const std::string& name);

IntegerMatrix root_lattice_gram(std::size_t m);       // Cartan matrix of A_m
IntegerMatrix e8_gram();
IntegerMatrix apollonian_lattice_gram(std::size_t n);  // q_n = sum t_i^2 - 2 sum t_i t_j, rank n+2
IntegerMatrix apollonian_perp_gram(std::size_t n);     // (n-1) sum t_i^2 - 2 sum t_i t_j

// Columns f_1..f_{n+2} in the basis of normalized weights.
IntegerMatrix apollonian_f_basis(std::size_t n);
// Columns omega_2..omega_{n-1}, beta of the dual root lattice, in simple-root coordinates.
RationalMatrix dual_root_basis(std::size_t n);

}  // namespace packlab
