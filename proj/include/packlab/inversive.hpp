#pragma once

#include "packlab/lorentz.hpp"

#include <optional>
#include <string>
#include <vector>

namespace packlab {

using SphereVector = ExactVector;

struct EuclideanSphere {
    enum class Kind { sphere, hyperplane };

    Kind kind = Kind::sphere;
    // Oriented: negative means the interior is the outside of the ball. Zero for hyperplanes.
    Rational curvature;
    std::vector<Rational> center;
    Rational radius;
    // Hyperplane normal . x + offset = 0, positive side is the interior; not normalized.
    std::vector<Rational> normal;
    Rational offset;
    int orientation = 1;

    std::size_t dimension() const { return kind == Kind::sphere ? center.size() : normal.size(); }
    bool is_hyperplane() const { return kind == Kind::hyperplane; }

    static EuclideanSphere ball(std::vector<Rational> center, const Rational& radius, int orientation = 1);
    static EuclideanSphere plane(std::vector<Rational> normal, const Rational& offset, int orientation = 1);

    EuclideanSphere flipped() const;

    friend bool operator==(const EuclideanSphere& a, const EuclideanSphere& b);
};

EuclideanSphere sphere_from_vector(const SphereVector& v);
// Throws PreconditionError when a hyperplane normal has irrational length.
SphereVector vector_from_sphere(const EuclideanSphere& s);

enum class SphereRelation { identical, tangent, disjoint_interiors, intersecting, orthogonal };

std::string to_string(SphereRelation r);

SphereRelation classify_pair(const SphereVector& v, const SphereVector& w);
SphereRelation classify_pair(const SphereVector& v, const SphereVector& w, const QuadraticSpace& q);
// Classification from the inner product of two normalized, distinct vectors.
SphereRelation classify_inner(const Rational& vw);

// Columns are the fundamental-form coordinates of a configuration with Gram matrix
// `gram` and first coordinates `curvatures`. Empty when no rational configuration exists.
std::optional<RationalMatrix> realize_configuration(const RationalMatrix& gram, const std::vector<Rational>& curvatures);
// Same construction with floating square roots; always succeeds for a realizable pair.
std::optional<Matrix<double>> realize_configuration_approx(const RationalMatrix& gram,
                                                           const std::vector<Rational>& curvatures);

struct FloatSphere {
    bool hyperplane = false;
    double curvature = 0;
    std::vector<double> center;
    double radius = 0;
    std::vector<double> normal;
    double offset = 0;
    std::string label;
};

FloatSphere approximate(const EuclideanSphere& s);
// From fundamental-form coordinates given in floating point.
FloatSphere approximate_from_vector(const std::vector<double>& v);

struct Viewport {
    double xmin = -1, ymin = -1, xmax = 1, ymax = 1;
};

struct SvgOptions {
    std::optional<Viewport> viewport;
    bool labels = false;
    int pixels = 800;
};

std::string render_svg(const std::vector<EuclideanSphere>& spheres, const SvgOptions& options = {});
std::string render_svg(const std::vector<FloatSphere>& spheres, const SvgOptions& options = {});

}  // namespace packlab
