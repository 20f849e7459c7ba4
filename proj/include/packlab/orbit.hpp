#pragma once

#include "packlab/coxeter.hpp"
#include "packlab/inversive.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace packlab {

enum class ActionKind {
    boyd_maxwell,  // Gamma_P on normalized weights (the packing P(P))
    dual,          // reflections in normalized weights acting on the normals (the packing P(P^perp))
    reflection,    // Gamma_P on its own normals (n = 1 Apollonian packing)
};

std::string to_string(ActionKind k);

// A reflection group acting on a frame of n+2 vectors of R^{n+1,1}. Vectors are
// written in frame coordinates; generators hold the images of frame vectors as columns.
struct ClusterAction {
    ActionKind kind = ActionKind::boyd_maxwell;
    RationalMatrix polytope_gram;
    RationalMatrix frame_gram;
    RationalMatrix frame_gram_inverse;
    std::vector<RationalMatrix> generators;
    std::vector<std::vector<std::size_t>> changed;  // per generator: slots whose image differs
    std::vector<bool> sphere_slot;                   // frame vector has norm 1
    RationalMatrix packing_gram;                     // the level of this Gram decides the packing property
    Rational default_slack = 4;
    bool apollonian = false;

    std::size_t size() const { return frame_gram.rows(); }
    std::size_t dimension() const { return frame_gram.rows() - 2; }
    std::vector<std::size_t> cluster_slots() const;
};

// Frame b_k = omega_k / sqrt|g^kk|. Throws if the frame is not rational.
ClusterAction boyd_maxwell_action(const CoxeterPolytope& p);
ClusterAction dual_action(const CoxeterPolytope& p);
ClusterAction reflection_action(const CoxeterPolytope& p);

struct Cluster {
    RationalMatrix coords;             // column a: frame coordinates of gamma(b_a)
    std::vector<Rational> curvatures;  // per frame slot; empty when no seed is attached
    std::vector<std::size_t> word;
    std::vector<std::size_t> slots;    // columns that are cluster spheres
    std::shared_ptr<const RationalMatrix> realization;  // fundamental coordinates of the frame

    std::vector<ExactVector> vectors() const;
    // Fundamental-form coordinates; requires an exact realization.
    std::vector<SphereVector> sphere_vectors() const;
    std::vector<Rational> sphere_curvatures() const;
};

Cluster initial_cluster(const CoxeterPolytope& p);
Cluster initial_cluster(const ClusterAction& action);

// Gram of the cluster in the frame form.
RationalMatrix cluster_gram(const Cluster& c, const ClusterAction& action);

// k^t N^{-1} k for curvatures of the frame; zero exactly on valid seeds.
Rational soddy_residual(const ClusterAction& action, const std::vector<Rational>& k);
// k^t G k, the literal form of the identity.
Rational descartes_residual(const RationalMatrix& g, const std::vector<Rational>& k);

class SoddyError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class GramMismatchError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

// Curvatures are listed per frame slot; degenerate frames need all n+2 values.
// When `realization` is given, each sphere is converted with vector_from_sphere and
// checked against the frame Gram; otherwise an exact realization is searched for.
Cluster seed_cluster(const ClusterAction& action, const std::vector<Rational>& curvatures,
                     const std::optional<std::vector<EuclideanSphere>>& realization = std::nullopt);
Cluster seed_cluster_from_curvatures(const CoxeterPolytope& p, const std::vector<Rational>& curvatures,
                                     const std::optional<std::vector<EuclideanSphere>>& realization = std::nullopt);

Cluster apply_generator(const Cluster& c, std::size_t i, const ClusterAction& action);
Cluster apply_generator(const Cluster& c, std::size_t i, const CoxeterPolytope& p);

enum class EnumerationMode { bounded, depth_limited };

struct Box {
    std::vector<Rational> lo;
    std::vector<Rational> hi;
};

struct EnumerationOptions {
    EnumerationMode mode = EnumerationMode::bounded;
    std::optional<Rational> curvature_bound;
    std::optional<std::size_t> max_depth;
    std::optional<Rational> slack;
    std::optional<bool> convergence_check;
    std::optional<Box> box;
    // Doublings of the slack tried until two runs agree (default 1, or 8 with a box).
    std::optional<std::size_t> slack_rounds;
    std::size_t threads = 0;       // 0: hardware concurrency
    std::size_t max_vectors = 0;   // 0: unlimited
    std::optional<std::filesystem::path> checkpoint_dir;  // falls back to PACKLAB_CHECKPOINT_DIR
    std::optional<std::filesystem::path> resume_from;
};

struct OrbitSphere {
    ExactVector coords;  // frame coordinates
    Rational curvature;
    std::size_t depth = 0;
    std::size_t slot = 0;
    bool seed_member = false;
};

struct PackingOrbit {
    std::vector<OrbitSphere> spheres;  // sorted lexicographically on coordinates
    std::optional<Rational> curvature_bound;
    Rational slack = 1;
    bool truncated = false;
    bool box_restricted = false;
    bool convergence_checked = false;
    std::size_t clusters_visited = 0;
    std::size_t vectors_seen = 0;
    std::vector<std::size_t> frontier_sizes;

    // Curvatures in (0, T], ascending.
    std::vector<Rational> positive_curvatures() const;
    std::size_t count_positive() const;
};

PackingOrbit enumerate_packing(const ClusterAction& action, const Cluster& seed, const EnumerationOptions& options);
PackingOrbit enumerate_packing(const CoxeterPolytope& p, const Cluster& seed, const EnumerationOptions& options);

// Fundamental-form coordinates of an orbit sphere (exact realization required).
SphereVector fundamental_vector(const OrbitSphere& s, const Cluster& seed);
// Floating realization of a seed, usable whether or not an exact one exists.
std::optional<Matrix<double>> approximate_realization(const ClusterAction& action, const Cluster& seed);
FloatSphere approximate_sphere(const OrbitSphere& s, const Matrix<double>& realization);

struct IntegralityCertificate {
    bool integral = false;
    std::optional<Integer> exponent;
    std::string witness;
};

IntegralityCertificate certify_integral(const PackingOrbit& orbit, const ClusterAction& action, std::size_t sample_depth);

// Checkpoint file written when the vector budget is exhausted.
struct Checkpoint {
    std::size_t dimension = 0;
    std::vector<ExactVector> vectors;
    std::vector<std::size_t> depths;
    std::vector<std::vector<std::size_t>> frontier_words;
};

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& c);
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace packlab
