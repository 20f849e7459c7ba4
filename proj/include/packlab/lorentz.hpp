#pragma once

#include "packlab/matrix.hpp"

namespace packlab {

struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;
    friend bool operator==(const Signature&, const Signature&) = default;
};

// Throws PreconditionError if the form is not symmetric or is degenerate.
Signature signature(const RationalMatrix& gram);

class QuadraticSpace {
public:
    enum class Convention {
        any,         // symmetric and nondegenerate
        lorentzian,  // exactly one negative direction, signature (n+1,1)
        hyperbolic,  // exactly one positive direction, signature (1,n)
    };

    explicit QuadraticSpace(RationalMatrix gram, Convention convention = Convention::lorentzian);

    // 2 t0 t_{n+1} + t1^2 + ... + tn^2 on R^{n+2}
    static QuadraticSpace fundamental(std::size_t n);

    std::size_t dim() const { return gram_.rows(); }
    const RationalMatrix& gram() const { return gram_; }
    Signature signature() const { return signature_; }
    Convention convention() const { return convention_; }

private:
    RationalMatrix gram_;
    Signature signature_;
    Convention convention_;
};

Rational inner(const ExactVector& v, const ExactVector& w, const RationalMatrix& gram);
Rational inner(const ExactVector& v, const ExactVector& w, const QuadraticSpace& q);
Signature signature(const QuadraticSpace& q);

// arccosh(-(v,w)) for vectors on the hyperboloid (v,v) = (w,w) = -1.
double hyperbolic_distance(const ExactVector& v, const ExactVector& w, const QuadraticSpace& q);
// arccosh|(e,e')| for unit normals of divergent or tangent hyperplanes.
double hyperplane_distance(const ExactVector& e, const ExactVector& e2, const QuadraticSpace& q);

}  // namespace packlab
