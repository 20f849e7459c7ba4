#pragma once

#include "packlab/exponent.hpp"
#include "packlab/matrix.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace packlab {

enum class MatrixConvention { columns, rows };
std::string to_string(MatrixConvention c);

struct SurfaceGenerator {
    std::string label;
    RationalMatrix displayed;  // as printed in the source
    RationalMatrix matrix;     // acts on column vectors: v -> matrix * v
};

// alpha together with the generator word whose product should equal s_alpha.
struct ReflectionClaim {
    std::string label;
    ExactVector alpha;
    std::vector<std::size_t> word;
};

struct SurfaceModel {
    std::string name;
    RationalMatrix gram;
    std::vector<std::string> basis_labels;
    ExactVector H;
    ExactVector C;
    std::vector<SurfaceGenerator> generators;
    std::vector<ReflectionClaim> reflections;
    // Claimed Gram of the alphas as scale * matrix.
    std::optional<RationalMatrix> alpha_gram;
    Rational alpha_gram_scale = 1;
    MatrixConvention convention = MatrixConvention::columns;
    // +1 counts (H,C'); -1 counts -(H,C') for forms whose positive cone has negative norm.
    int form_sign = 1;

    std::size_t rank() const { return gram.rows(); }
};

// "baragar_p2p2", "baragar_222", "triangle(a,b,c)" with rational a,b,c >= 1.
SurfaceModel builtin_model(const std::string& name);
SurfaceModel triangle_model(const Rational& a, const Rational& b, const Rational& c);

// Picks the action convention under which every displayed matrix preserves the Gram.
// Throws PreconditionError when neither works.
void resolve_convention(SurfaceModel& m);

// JSON model file: gram, generators (label, matrix), optional basis_labels, H, C,
// reflections (label, alpha, word), alpha_gram {scale, matrix}, form_sign.
SurfaceModel load_model(std::istream& in);
SurfaceModel load_model_file(const std::string& path);

// s_alpha: v -> v - 2 (v,alpha)/(alpha,alpha) alpha, as a matrix on column vectors.
RationalMatrix reflection_matrix(const RationalMatrix& gram, const ExactVector& alpha);

struct ModelCheck {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct VerificationReport {
    std::vector<ModelCheck> checks;
    MatrixConvention convention = MatrixConvention::columns;
    std::optional<std::string> triangle_group;

    bool ok() const;
    std::string to_string() const;
};

VerificationReport verify_model(const SurfaceModel& m);

struct SurfaceCountOptions {
    std::optional<Rational> slack;              // default 2
    std::optional<bool> convergence_check;      // default on: rerun at 2x slack
    std::size_t threads = 0;
    std::size_t max_vectors = 50'000'000;
    std::optional<std::vector<double>> grid;
};

struct OrbitCount {
    CountCurve curve;
    std::vector<Rational> values;  // sign * (H, C') for every counted C', ascending
    Rational bound;
    Rational slack;
    bool truncated = false;
    bool finite_orbit = false;  // the BFS closed up without pruning
    std::size_t vectors_seen = 0;
    std::vector<std::size_t> frontier_sizes;
};

OrbitCount orbit_count(const SurfaceModel& m, const ExactVector& C, const Rational& T,
                       const SurfaceCountOptions& options = {});

struct SurfaceExponent {
    ExponentEstimate estimate;
    OrbitCount count;
};

SurfaceExponent estimate_surface_exponent(const SurfaceModel& m, const ExactVector& C, const Rational& T_max,
                                          const SurfaceCountOptions& options = {}, double decades = 2.0);

}  // namespace packlab
