#include "packlab/lorentz.hpp"

#include <cmath>

namespace packlab {

Signature signature(const RationalMatrix& gram) {
    if (!gram.square()) throw DimensionError("signature: gram is not square");
    if (!gram.symmetric()) throw PreconditionError("signature: gram is not symmetric");
    Inertia in = inertia(gram);
    if (in.zero != 0) throw PreconditionError("signature: form is degenerate");
    return {in.positive, in.negative};
}

QuadraticSpace::QuadraticSpace(RationalMatrix gram, Convention convention)
    : gram_(std::move(gram)), convention_(convention) {
    signature_ = packlab::signature(gram_);
    if (convention_ == Convention::lorentzian && signature_.negative != 1)
        throw PreconditionError("form has signature (" + std::to_string(signature_.positive) + "," +
                                std::to_string(signature_.negative) + "), expected exactly one negative direction");
    if (convention_ == Convention::hyperbolic && signature_.positive != 1)
        throw PreconditionError("form has signature (" + std::to_string(signature_.positive) + "," +
                                std::to_string(signature_.negative) + "), expected exactly one positive direction");
}

QuadraticSpace QuadraticSpace::fundamental(std::size_t n) {
    RationalMatrix g(n + 2, n + 2);
    g(0, n + 1) = 1;
    g(n + 1, 0) = 1;
    for (std::size_t i = 1; i <= n; ++i) g(i, i) = 1;
    return QuadraticSpace(std::move(g));
}

Rational inner(const ExactVector& v, const ExactVector& w, const RationalMatrix& gram) {
    std::size_t n = gram.rows();
    if (v.size() != n || w.size() != n)
        throw DimensionError("inner: vector length " + std::to_string(v.size()) + "/" + std::to_string(w.size()) +
                             " does not match form dimension " + std::to_string(n));
    Rational s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] == 0) continue;
        Rational row = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (gram(i, j) != 0 && w[j] != 0) row += gram(i, j) * w[j];
        s += v[i] * row;
    }
    return s;
}

Rational inner(const ExactVector& v, const ExactVector& w, const QuadraticSpace& q) {
    return inner(v, w, q.gram());
}

Signature signature(const QuadraticSpace& q) { return q.signature(); }

double hyperbolic_distance(const ExactVector& v, const ExactVector& w, const QuadraticSpace& q) {
    if (inner(v, v, q) != -1 || inner(w, w, q) != -1)
        throw PreconditionError("hyperbolic_distance: both vectors need (v,v) = -1");
    Rational c = -inner(v, w, q);
    if (c < 1) throw PreconditionError("hyperbolic_distance: -(v,w) = " + c.get_str() + " < 1, not on one sheet");
    return std::acosh(c.get_d());
}

double hyperplane_distance(const ExactVector& e, const ExactVector& e2, const QuadraticSpace& q) {
    if (inner(e, e, q) != 1 || inner(e2, e2, q) != 1)
        throw PreconditionError("hyperplane_distance: both normals need (e,e) = 1");
    Rational c = abs(inner(e, e2, q));
    if (c < 1) throw PreconditionError("hyperplane_distance: |(e,e')| = " + c.get_str() + " < 1, hyperplanes intersect");
    return std::acosh(c.get_d());
}

}  // namespace packlab
