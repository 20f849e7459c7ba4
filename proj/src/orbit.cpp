#include "packlab/orbit.hpp"

#include "detail/id_set.hpp"
#include "detail/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

namespace packlab {

std::string to_string(ActionKind k) {
    switch (k) {
        case ActionKind::boyd_maxwell: return "boyd_maxwell";
        case ActionKind::dual: return "dual";
        case ActionKind::reflection: return "reflection";
    }
    return "unknown";
}

std::vector<std::size_t> ClusterAction::cluster_slots() const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < sphere_slot.size(); ++a)
        if (sphere_slot[a]) out.push_back(a);
    return out;
}

namespace {

bool is_apollonian_polytope(const RationalMatrix& g) {
    if (g.rows() < 4) return false;
    return g == apollonian_gram(g.rows() - 2);
}

void finish_action(ClusterAction& a) {
    a.frame_gram_inverse = inverse(a.frame_gram);
    a.changed.clear();
    std::size_t n = a.size();
    RationalMatrix id = RationalMatrix::identity(n);
    for (const auto& m : a.generators) {
        if (m * m != id) throw PreconditionError("generator is not an involution");
        if (m.transpose() * a.frame_gram * m != a.frame_gram)
            throw PreconditionError("generator does not preserve the frame Gram");
        std::vector<std::size_t> ch;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                if (m(i, j) != id(i, j)) {
                    ch.push_back(j);
                    break;
                }
        a.changed.push_back(std::move(ch));
    }
    a.apollonian = is_apollonian_polytope(a.packing_gram);
    a.default_slack = a.apollonian ? 1 : 4;
}

}  // namespace

ClusterAction boyd_maxwell_action(const CoxeterPolytope& p) {
    std::size_t n = p.size();
    const RationalMatrix& gi = p.gram_inverse();
    // nu_k^2 = |g^kk|; isotropic weights borrow the first nonzero scale
    Rational ref = 0;
    for (std::size_t k = 0; k < n && ref == 0; ++k)
        if (gi(k, k) != 0) ref = abs(gi(k, k));
    std::vector<Rational> nu2(n);
    for (std::size_t k = 0; k < n; ++k) nu2[k] = gi(k, k) != 0 ? Rational(abs(gi(k, k))) : ref;
    auto ratio = [&](std::size_t a, std::size_t b) {
        Rational r;
        if (!rational_sqrt(nu2[a] / nu2[b], r))
            throw PreconditionError("normalized weights " + std::to_string(a) + " and " + std::to_string(b) +
                                    " have an irrational scale ratio; the frame is not rational");
        return r;
    };
    ClusterAction act;
    act.kind = ActionKind::boyd_maxwell;
    act.polytope_gram = p.gram();
    act.packing_gram = p.gram();
    act.frame_gram = RationalMatrix(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) act.frame_gram(a, b) = gi(a, b) / (nu2[b] * ratio(a, b));
    for (std::size_t i = 0; i < n; ++i) {
        RationalMatrix w = reflection_in_weight_basis(p, i);
        RationalMatrix m = RationalMatrix::identity(n);
        for (std::size_t k = 0; k < n; ++k) m(k, i) = w(k, i) == 0 ? Rational(0) : Rational(w(k, i) * ratio(k, i));
        act.generators.push_back(std::move(m));
    }
    for (std::size_t k = 0; k < n; ++k) act.sphere_slot.push_back(p.real(k));
    finish_action(act);
    return act;
}

ClusterAction dual_action(const CoxeterPolytope& p) {
    std::size_t n = p.size();
    ClusterAction act;
    act.kind = ActionKind::dual;
    act.polytope_gram = p.gram();
    act.frame_gram = p.gram();
    act.packing_gram = normalized_weight_gram(p);
    if (act.packing_gram.rows() != n) throw PreconditionError("dual action needs all weights real");
    for (std::size_t i = 0; i < n; ++i) act.generators.push_back(reflection_in_normal_basis(p, i));
    act.sphere_slot.assign(n, true);
    finish_action(act);
    return act;
}

ClusterAction reflection_action(const CoxeterPolytope& p) {
    std::size_t n = p.size();
    ClusterAction act;
    act.kind = ActionKind::reflection;
    act.polytope_gram = p.gram();
    act.frame_gram = p.gram();
    act.packing_gram = p.gram();
    for (std::size_t i = 0; i < n; ++i) {
        RationalMatrix m = RationalMatrix::identity(n);
        for (std::size_t j = 0; j < n; ++j) m(i, j) -= 2 * p.gram()(i, j);
        act.generators.push_back(std::move(m));
    }
    act.sphere_slot.assign(n, true);
    finish_action(act);
    return act;
}

std::vector<ExactVector> Cluster::vectors() const {
    std::vector<ExactVector> out;
    for (std::size_t a : slots) out.push_back(coords.col(a));
    return out;
}

std::vector<SphereVector> Cluster::sphere_vectors() const {
    if (!realization) throw PreconditionError("cluster has no exact realization");
    std::vector<SphereVector> out;
    for (std::size_t a : slots) out.push_back((*realization) * coords.col(a));
    return out;
}

std::vector<Rational> Cluster::sphere_curvatures() const {
    std::vector<Rational> out;
    if (curvatures.empty()) return out;
    for (std::size_t a : slots) out.push_back(curvatures[a]);
    return out;
}

Cluster initial_cluster(const CoxeterPolytope& p) {
    Cluster c;
    c.slots = p.real_indices();
    if (c.slots.empty()) throw PreconditionError("polytope has no real weights");
    c.coords = RationalMatrix::identity(p.size());
    return c;
}

Cluster initial_cluster(const ClusterAction& action) {
    Cluster c;
    c.slots = action.cluster_slots();
    if (c.slots.empty()) throw PreconditionError("frame has no sphere vectors");
    c.coords = RationalMatrix::identity(action.size());
    return c;
}

RationalMatrix cluster_gram(const Cluster& c, const ClusterAction& action) {
    std::vector<ExactVector> v = c.vectors();
    RationalMatrix g(v.size(), v.size());
    for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t b = 0; b < v.size(); ++b) g(a, b) = inner(v[a], v[b], action.frame_gram);
    return g;
}

Rational soddy_residual(const ClusterAction& action, const std::vector<Rational>& k) {
    if (k.size() != action.size()) throw DimensionError("curvature vector has the wrong length");
    return inner(k, k, action.frame_gram_inverse);
}

Rational descartes_residual(const RationalMatrix& g, const std::vector<Rational>& k) { return inner(k, k, g); }

Cluster seed_cluster(const ClusterAction& action, const std::vector<Rational>& curvatures,
                     const std::optional<std::vector<EuclideanSphere>>& realization) {
    std::size_t n = action.size();
    if (curvatures.size() != n) {
        if (action.cluster_slots().size() != n)
            throw DimensionError("degenerate frame: give all " + std::to_string(n) + " frame curvatures");
        throw DimensionError("expected " + std::to_string(n) + " curvatures, got " + std::to_string(curvatures.size()));
    }
    Rational r = soddy_residual(action, curvatures);
    if (r != 0) throw SoddyError("curvatures violate the Soddy identity, residual " + r.get_str());
    Cluster c = initial_cluster(action);
    c.curvatures = curvatures;
    if (realization) {
        if (realization->size() != n) throw DimensionError("realization needs one sphere per frame slot");
        for (std::size_t a = 0; a < n; ++a)
            if (!action.sphere_slot[a]) throw PreconditionError("explicit realizations need a non-degenerate frame");
        std::vector<ExactVector> cols;
        for (const auto& s : *realization) cols.push_back(vector_from_sphere(s));
        RationalMatrix x = RationalMatrix::from_columns(cols);
        QuadraticSpace fund = QuadraticSpace::fundamental(n - 2);
        for (std::size_t a = 0; a < n; ++a) {
            if (x(0, a) != curvatures[a])
                throw GramMismatchError("sphere " + std::to_string(a) + " has curvature " + x(0, a).get_str() +
                                        ", expected " + curvatures[a].get_str());
            for (std::size_t b = a + 1; b < n; ++b) {
                Rational ip = inner(cols[a], cols[b], fund);
                if (ip != action.frame_gram(a, b))
                    throw GramMismatchError("pair (" + std::to_string(a) + "," + std::to_string(b) +
                                            "): inner product " + ip.get_str() + ", expected " +
                                            action.frame_gram(a, b).get_str());
            }
        }
        c.realization = std::make_shared<const RationalMatrix>(std::move(x));
    } else if (auto x = realize_configuration(action.frame_gram, curvatures)) {
        c.realization = std::make_shared<const RationalMatrix>(std::move(*x));
    }
    return c;
}

Cluster seed_cluster_from_curvatures(const CoxeterPolytope& p, const std::vector<Rational>& curvatures,
                                     const std::optional<std::vector<EuclideanSphere>>& realization) {
    ClusterAction act = boyd_maxwell_action(p);
    return seed_cluster(act, curvatures, realization);
}

Cluster apply_generator(const Cluster& c, std::size_t i, const ClusterAction& action) {
    if (i >= action.generators.size()) throw ConfigError("generator index out of range");
    const RationalMatrix& m = action.generators[i];
    Cluster out = c;
    std::size_t n = action.size();
    for (std::size_t a : action.changed[i]) {
        ExactVector col(n, Rational(0));
        Rational k = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (m(j, a) == 0) continue;
            for (std::size_t r = 0; r < n; ++r) col[r] += m(j, a) * c.coords(r, j);
            if (!c.curvatures.empty()) k += m(j, a) * c.curvatures[j];
        }
        out.coords.set_col(a, col);
        if (!c.curvatures.empty()) out.curvatures[a] = k;
    }
    out.word.push_back(i);
    return out;
}

Cluster apply_generator(const Cluster& c, std::size_t i, const CoxeterPolytope& p) {
    return apply_generator(c, i, boyd_maxwell_action(p));
}

std::vector<Rational> PackingOrbit::positive_curvatures() const {
    std::vector<Rational> out;
    for (const auto& s : spheres)
        if (s.curvature > 0 && (!curvature_bound || s.curvature <= *curvature_bound)) out.push_back(s.curvature);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t PackingOrbit::count_positive() const { return positive_curvatures().size(); }

namespace {

std::uint64_t fingerprint(const ClusterAction& action, const Cluster& seed) {
    ExactVector flat(action.frame_gram.data().begin(), action.frame_gram.data().end());
    for (const auto& k : seed.curvatures) flat.push_back(k);
    flat.push_back(static_cast<long>(action.kind));
    return hash_value(flat);
}

struct Term {
    std::size_t slot;
    Rational coef;
};

struct Child {
    bool pruned = false;
    std::vector<ExactVector> vecs;
    std::vector<Rational> curv;
    std::vector<std::uint64_t> hashes;
};

class Engine {
public:
    Engine(const ClusterAction& action, const Cluster& seed, const EnumerationOptions& opt, const Rational& slack)
        : act_(action), seed_(seed), opt_(opt), slack_(slack), d_(action.size()) {
        for (std::size_t i = 0; i < act_.generators.size(); ++i) {
            std::vector<std::vector<Term>> per;
            for (std::size_t a : act_.changed[i]) {
                std::vector<Term> terms;
                for (std::size_t j = 0; j < d_; ++j)
                    if (act_.generators[i](j, a) != 0) terms.push_back({j, act_.generators[i](j, a)});
                per.push_back(std::move(terms));
            }
            terms_.push_back(std::move(per));
        }
        if (opt_.curvature_bound) limit_ = slack_ * *opt_.curvature_bound;
        if (opt_.box) {
            const Box& b = *opt_.box;
            std::size_t n = d_ - 2;
            if (b.lo.size() != n || b.hi.size() != n) throw DimensionError("box has the wrong dimension");
            for (std::size_t i = 0; i < n; ++i) {
                Rational mid = (b.lo[i] + b.hi[i]) / 2, half = (b.hi[i] - b.lo[i]) / 2;
                if (half <= 0) throw ConfigError("box must have positive extent");
                wide_lo_.push_back(mid - slack_ * half);
                wide_hi_.push_back(mid + slack_ * half);
            }
        }
    }

    void run() {
        if (opt_.resume_from)
            resume(*opt_.resume_from);
        else
            start();
        std::size_t level = start_level_;
        while (!frontier_.empty()) {
            frontier_sizes_.push_back(frontier_.size());
            if (opt_.max_depth && level >= *opt_.max_depth) {
                depth_capped_ = true;
                break;
            }
            if (opt_.max_vectors && vecs_.size() > opt_.max_vectors) checkpoint_and_throw();
            expand_level(level);
            ++level;
        }
    }

    PackingOrbit result() const {
        PackingOrbit out;
        out.curvature_bound = opt_.curvature_bound;
        out.slack = slack_;
        out.box_restricted = opt_.box.has_value();
        out.clusters_visited = keys_.size() / d_;
        out.vectors_seen = vecs_.size();
        out.frontier_sizes = frontier_sizes_;
        out.truncated = depth_capped_;
        for (std::size_t id = 0; id < vecs_.size(); ++id) {
            if (!act_.sphere_slot[slot_[id]]) continue;
            bool keep = seed_ids_[id];
            if (!keep) {
                const Rational& k = curv_[id];
                keep = k > 0 && (!opt_.curvature_bound || k <= *opt_.curvature_bound);
                if (keep && opt_.box) keep = center_in(vecs_[id], opt_.box->lo, opt_.box->hi);
            }
            if (!keep) continue;
            out.spheres.push_back({vecs_[id], curv_[id], depth_[id], slot_[id], static_cast<bool>(seed_ids_[id])});
        }
        std::sort(out.spheres.begin(), out.spheres.end(),
                  [](const OrbitSphere& a, const OrbitSphere& b) { return lex_less(a.coords, b.coords); });
        return out;
    }

private:
    std::uint32_t find_vector(const ExactVector& v, std::uint64_t h) const {
        return vindex_.find(h, [&](std::uint32_t id) { return vecs_[id] == v; });
    }

    std::uint32_t add_vector(ExactVector v, Rational k, std::uint64_t h, std::size_t slot, std::size_t depth) {
        std::uint32_t id = find_vector(v, h);
        if (id != detail::IdSet::empty) return id;
        id = static_cast<std::uint32_t>(vecs_.size());
        vecs_.push_back(std::move(v));
        curv_.push_back(std::move(k));
        depth_.push_back(static_cast<std::uint32_t>(depth));
        slot_.push_back(static_cast<std::uint8_t>(slot));
        seed_ids_.push_back(0);
        vindex_.insert(h, id);
        return id;
    }

    static std::uint64_t key_hash(const std::uint32_t* key, std::size_t d) {
        ExactVector dummy;
        std::uint64_t h = 1469598103934665603ULL;
        for (std::size_t i = 0; i < d; ++i) {
            h ^= key[i] + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 1099511628211ULL;
        }
        return h;
    }

    // Registers the cluster if new; returns true when it was new.
    bool add_cluster(const std::vector<std::uint32_t>& key, std::uint32_t parent, std::uint8_t via) {
        std::uint64_t h = key_hash(key.data(), d_);
        std::uint32_t found = cindex_.find(h, [&](std::uint32_t cid) {
            return std::equal(key.begin(), key.end(), keys_.begin() + static_cast<std::ptrdiff_t>(cid * d_));
        });
        if (found != detail::IdSet::empty) return false;
        auto cid = static_cast<std::uint32_t>(parent_.size());
        keys_.insert(keys_.end(), key.begin(), key.end());
        parent_.push_back(parent);
        via_.push_back(via);
        cindex_.insert(h, cid);
        next_.push_back(cid);
        return true;
    }

    void start() {
        std::vector<std::uint32_t> key(d_);
        for (std::size_t a = 0; a < d_; ++a) {
            ExactVector e(d_, Rational(0));
            e[a] = 1;
            std::uint64_t h = hash_value(e);
            Rational k = seed_.curvatures.empty() ? Rational(0) : seed_.curvatures[a];
            key[a] = add_vector(std::move(e), k, h, a, 0);
            seed_ids_[key[a]] = act_.sphere_slot[a] ? 1 : 0;
        }
        add_cluster(key, detail::IdSet::empty, kNoGenerator);
        frontier_.swap(next_);
        next_.clear();
        start_level_ = 0;
    }

    bool center_in(const ExactVector& coords, const std::vector<Rational>& lo, const std::vector<Rational>& hi) const {
        const RationalMatrix& x = *seed_.realization;
        std::size_t n = d_ - 2;
        Rational a0 = 0;
        for (std::size_t j = 0; j < d_; ++j) a0 += x(0, j) * coords[j];
        if (a0 == 0) {
            // hyperplane normal.x + offset = 0: keep it when it meets the box
            Rational offset = 0, lo_sum = 0, hi_sum = 0;
            for (std::size_t j = 0; j < d_; ++j) offset += x(n + 1, j) * coords[j];
            for (std::size_t i = 0; i < n; ++i) {
                Rational ni = 0;
                for (std::size_t j = 0; j < d_; ++j) ni += x(i + 1, j) * coords[j];
                Rational p = ni * lo[i], q = ni * hi[i];
                lo_sum += std::min(p, q);
                hi_sum += std::max(p, q);
            }
            return offset + lo_sum <= 0 && offset + hi_sum >= 0;
        }
        for (std::size_t i = 0; i < n; ++i) {
            Rational ai = 0;
            for (std::size_t j = 0; j < d_; ++j) ai += x(i + 1, j) * coords[j];
            Rational c = ai / a0;
            if (c < lo[i] || c > hi[i]) return false;
        }
        return true;
    }

    void compute_child(std::uint32_t cid, std::size_t gen, Child& out) const {
        const std::uint32_t* key = keys_.data() + cid * d_;
        const auto& per = terms_[gen];
        const auto& slots = act_.changed[gen];
        out.vecs.resize(slots.size());
        out.curv.resize(slots.size());
        out.hashes.resize(slots.size());
        for (std::size_t s = 0; s < slots.size(); ++s) {
            ExactVector v(d_, Rational(0));
            Rational k = 0;
            for (const Term& t : per[s]) {
                const ExactVector& src = vecs_[key[t.slot]];
                for (std::size_t r = 0; r < d_; ++r)
                    if (src[r] != 0) v[r] += t.coef * src[r];
                k += t.coef * curv_[key[t.slot]];
            }
            if (opt_.mode == EnumerationMode::bounded && limit_ && abs(k) > *limit_) {
                out.pruned = true;
                return;
            }
            if (opt_.box && !center_in(v, wide_lo_, wide_hi_)) {
                out.pruned = true;
                return;
            }
            if (opt_.mode == EnumerationMode::bounded && !opt_.box && k == 0 && act_.sphere_slot[slots[s]])
                unbounded_ = true;
            out.hashes[s] = hash_value(v);
            out.vecs[s] = std::move(v);
            out.curv[s] = std::move(k);
        }
    }

    void expand_level(std::size_t level) {
        std::size_t g = act_.generators.size();
        const std::size_t batch = 1 << 14;
        next_.clear();
        for (std::size_t begin = 0; begin < frontier_.size(); begin += batch) {
            std::size_t end = std::min(frontier_.size(), begin + batch);
            std::vector<Child> children((end - begin) * g);
            detail::parallel_for(end - begin, opt_.threads, [&](std::size_t b, std::size_t e) {
                for (std::size_t f = b; f < e; ++f) {
                    std::uint32_t cid = frontier_[begin + f];
                    for (std::size_t i = 0; i < g; ++i) {
                        Child& ch = children[f * g + i];
                        if (via_[cid] == i) {
                            ch.pruned = true;
                            continue;
                        }
                        compute_child(cid, i, ch);
                    }
                }
            });
            if (unbounded_)
                throw PreconditionError("the packing contains a hyperplane and is unbounded; supply a bounding box");
            for (std::size_t f = 0; f < end - begin; ++f) {
                std::uint32_t cid = frontier_[begin + f];
                for (std::size_t i = 0; i < g; ++i) {
                    Child& ch = children[f * g + i];
                    if (ch.pruned) continue;
                    std::vector<std::uint32_t> key(keys_.begin() + static_cast<std::ptrdiff_t>(cid * d_),
                                                   keys_.begin() + static_cast<std::ptrdiff_t>((cid + 1) * d_));
                    const auto& slots = act_.changed[i];
                    for (std::size_t s = 0; s < slots.size(); ++s)
                        key[slots[s]] = add_vector(std::move(ch.vecs[s]), std::move(ch.curv[s]), ch.hashes[s], slots[s],
                                                   level + 1);
                    add_cluster(key, cid, static_cast<std::uint8_t>(i));
                }
            }
        }
        frontier_.swap(next_);
        next_.clear();
    }

    std::vector<std::size_t> word_of(std::uint32_t cid) const {
        std::vector<std::size_t> w;
        while (parent_[cid] != detail::IdSet::empty) {
            w.push_back(via_[cid]);
            cid = parent_[cid];
        }
        std::reverse(w.begin(), w.end());
        return w;
    }

    void checkpoint_and_throw() const {
        Checkpoint c;
        c.dimension = d_;
        c.vectors = vecs_;
        for (std::size_t i = 0; i < vecs_.size(); ++i) c.depths.push_back(depth_[i]);
        for (std::uint32_t cid : frontier_) c.frontier_words.push_back(word_of(cid));
        std::filesystem::path dir;
        if (opt_.checkpoint_dir) {
            dir = *opt_.checkpoint_dir;
        } else if (const char* env = std::getenv("PACKLAB_CHECKPOINT_DIR")) {
            dir = env;
        } else {
            dir = std::filesystem::temp_directory_path();
        }
        std::filesystem::create_directories(dir);
        std::ostringstream name;
        name << "packlab-" << std::hex << fingerprint(act_, seed_) << ".ckpt";
        std::filesystem::path path = dir / name.str();
        write_checkpoint_with_slots(path, c);
        throw CheckpointError("vector budget of " + std::to_string(opt_.max_vectors) +
                                  " exceeded; resumable checkpoint written to " + path.string(),
                              path.string());
    }

    void write_checkpoint_with_slots(const std::filesystem::path& path, const Checkpoint& c) const {
        write_checkpoint(path, c);
        std::ofstream meta(path.string() + ".meta");
        meta << "fingerprint " << std::hex << fingerprint(act_, seed_) << std::dec << "\n";
    }

    void resume(const std::filesystem::path& path) {
        Checkpoint c = read_checkpoint(path);
        if (c.dimension != d_) throw CheckpointError("checkpoint dimension does not match the run", path.string());
        std::ifstream meta(path.string() + ".meta");
        std::string tag;
        std::uint64_t fp = 0;
        if (meta >> tag >> std::hex >> fp) {
            if (tag != "fingerprint" || fp != fingerprint(act_, seed_))
                throw CheckpointError("checkpoint belongs to a different seed or polytope", path.string());
        }
        start();
        frontier_.clear();
        for (std::size_t i = 0; i < c.vectors.size(); ++i) {
            const ExactVector& v = c.vectors[i];
            Rational k = seed_.curvatures.empty() ? Rational(0) : dot(seed_.curvatures, v);
            std::size_t slot = slot_of(v);
            add_vector(v, k, hash_value(v), slot, c.depths.empty() ? 0 : c.depths[i]);
        }
        std::size_t level = 0;
        for (const auto& w : c.frontier_words) {
            Cluster cl = initial_cluster(act_);
            cl.curvatures = seed_.curvatures;
            for (std::size_t g : w) cl = apply_generator(cl, g, act_);
            std::vector<std::uint32_t> key(d_);
            for (std::size_t a = 0; a < d_; ++a) {
                ExactVector v = cl.coords.col(a);
                Rational k = seed_.curvatures.empty() ? Rational(0) : cl.curvatures[a];
                std::uint64_t h = hash_value(v);
                key[a] = add_vector(std::move(v), std::move(k), h, a, w.size());
            }
            std::uint32_t parent = detail::IdSet::empty;
            std::uint8_t via = w.empty() ? kNoGenerator : static_cast<std::uint8_t>(w.back());
            add_cluster(key, parent, via);
            level = std::max(level, w.size());
        }
        frontier_.swap(next_);
        next_.clear();
        start_level_ = level;
    }

    // Frame slot of a stored vector: the unique slot whose orbit it lies in is not
    // recoverable from coordinates alone, so the norm decides sphere versus non-sphere.
    std::size_t slot_of(const ExactVector& v) const {
        Rational norm = inner(v, v, act_.frame_gram);
        for (std::size_t a = 0; a < d_; ++a)
            if (act_.frame_gram(a, a) == norm) return a;
        return 0;
    }

    static constexpr std::uint8_t kNoGenerator = 0xff;

    const ClusterAction& act_;
    const Cluster& seed_;
    const EnumerationOptions& opt_;
    Rational slack_;
    std::size_t d_;
    std::optional<Rational> limit_;
    std::vector<Rational> wide_lo_, wide_hi_;
    std::vector<std::vector<std::vector<Term>>> terms_;

    std::vector<ExactVector> vecs_;
    std::vector<Rational> curv_;
    std::vector<std::uint32_t> depth_;
    std::vector<std::uint8_t> slot_;
    std::vector<std::uint8_t> seed_ids_;
    detail::IdSet vindex_;

    std::vector<std::uint32_t> keys_;
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint8_t> via_;
    detail::IdSet cindex_;

    std::vector<std::uint32_t> frontier_, next_;
    std::vector<std::size_t> frontier_sizes_;
    std::size_t start_level_ = 0;
    bool depth_capped_ = false;
    mutable bool unbounded_ = false;
};

bool same_spheres(const PackingOrbit& a, const PackingOrbit& b) {
    if (a.spheres.size() != b.spheres.size()) return false;
    for (std::size_t i = 0; i < a.spheres.size(); ++i)
        if (a.spheres[i].coords != b.spheres[i].coords) return false;
    return true;
}

}  // namespace

PackingOrbit enumerate_packing(const ClusterAction& action, const Cluster& seed, const EnumerationOptions& options) {
    if (!is_packing_polytope(action.packing_gram))
        throw PreconditionError("the polytope is not of level <= 2, so its orbit is not a packing");
    if (seed.coords.rows() != action.size()) throw DimensionError("seed cluster does not match the action");
    if (seed.curvatures.empty()) throw PreconditionError("enumeration needs a seed with curvatures");
    if (options.mode == EnumerationMode::bounded) {
        if (!options.curvature_bound) throw ConfigError("bounded mode needs a curvature bound T");
    } else if (!options.max_depth) {
        throw ConfigError("depth-limited mode needs max_depth");
    }
    if (options.curvature_bound && *options.curvature_bound <= 0) throw ConfigError("curvature bound must be positive");
    if (options.box && !seed.realization) throw PreconditionError("box filtering needs an exact realization of the seed");
    if (options.mode == EnumerationMode::bounded && !options.box) {
        for (std::size_t a : seed.slots)
            if (seed.curvatures[a] == 0)
                throw PreconditionError("seed contains a hyperplane, so the packing is unbounded; supply a bounding box");
    }
    Rational slack = options.slack ? *options.slack : action.default_slack;
    if (options.box && !options.slack) slack = std::max(slack, Rational(2));
    if (slack < 1) throw ConfigError("slack must be >= 1");
    bool check = options.convergence_check ? *options.convergence_check
                                           : (options.mode == EnumerationMode::bounded && (!action.apollonian || options.box));
    Engine first(action, seed, options, slack);
    first.run();
    PackingOrbit orbit = first.result();
    if (check && options.mode == EnumerationMode::bounded) {
        EnumerationOptions wide = options;
        wide.resume_from.reset();
        std::size_t rounds = options.slack_rounds ? *options.slack_rounds : (options.box ? 8 : 1);
        for (std::size_t r = 0; r < std::max<std::size_t>(rounds, 1); ++r) {
            slack *= 2;
            Engine next(action, seed, wide, slack);
            next.run();
            PackingOrbit wider = next.result();
            wider.convergence_checked = true;
            bool stable = same_spheres(orbit, wider);
            wider.truncated = wider.truncated || orbit.truncated;
            orbit = std::move(wider);
            if (stable) return orbit;
        }
        orbit.truncated = true;
    }
    return orbit;
}

PackingOrbit enumerate_packing(const CoxeterPolytope& p, const Cluster& seed, const EnumerationOptions& options) {
    return enumerate_packing(boyd_maxwell_action(p), seed, options);
}

SphereVector fundamental_vector(const OrbitSphere& s, const Cluster& seed) {
    if (!seed.realization) throw PreconditionError("seed has no exact realization");
    return (*seed.realization) * s.coords;
}

std::optional<Matrix<double>> approximate_realization(const ClusterAction& action, const Cluster& seed) {
    if (seed.realization) {
        const RationalMatrix& x = *seed.realization;
        Matrix<double> out(x.rows(), x.cols());
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t j = 0; j < x.cols(); ++j) out(i, j) = x(i, j).get_d();
        return out;
    }
    return realize_configuration_approx(action.frame_gram, seed.curvatures);
}

FloatSphere approximate_sphere(const OrbitSphere& s, const Matrix<double>& x) {
    std::vector<double> v(x.rows(), 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) v[i] += x(i, j) * s.coords[j].get_d();
    // the exact curvature decides between sphere and hyperplane
    v[0] = s.curvature.get_d();
    FloatSphere f = approximate_from_vector(v);
    if (s.curvature == 0 && !f.hyperplane) {
        std::size_t n = v.size() - 2;
        f = FloatSphere{};
        f.hyperplane = true;
        f.normal.assign(v.begin() + 1, v.begin() + 1 + static_cast<std::ptrdiff_t>(n));
        f.offset = v[n + 1];
    }
    if (is_integer(s.curvature)) f.label = s.curvature.get_str();
    return f;
}

IntegralityCertificate certify_integral(const PackingOrbit& orbit, const ClusterAction& action, std::size_t sample_depth) {
    if (orbit.spheres.empty()) throw PreconditionError("certify_integral: empty orbit");
    IntegralityCertificate out;
    for (const auto& s : orbit.spheres)
        if (!is_integer(s.curvature)) {
            out.integral = false;
            out.witness = s.curvature.get_str();
            return out;
        }
    std::vector<const OrbitSphere*> sample;
    for (const auto& s : orbit.spheres)
        if (s.depth <= sample_depth) sample.push_back(&s);
    const std::size_t cap = 400;
    if (sample.size() > cap) sample.resize(cap);
    Integer lambda = 1;
    for (std::size_t a = 0; a < sample.size(); ++a)
        for (std::size_t b = a; b < sample.size(); ++b) {
            Rational ip = inner(sample[a]->coords, sample[b]->coords, action.frame_gram);
            mpz_lcm(lambda.get_mpz_t(), lambda.get_mpz_t(), ip.get_den_mpz_t());
        }
    out.integral = true;
    out.exponent = lambda;
    return out;
}

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& c) {
    std::ofstream out(path);
    if (!out) throw CheckpointError("cannot write checkpoint", path.string());
    out << "PACKLAB-CHECKPOINT 1\n";
    out << "dimension " << c.dimension << "\n";
    out << "vectors " << c.vectors.size() << "\n";
    for (std::size_t i = 0; i < c.vectors.size(); ++i) {
        out << (c.depths.empty() ? 0 : c.depths[i]) << " " << c.vectors[i].size();
        for (const auto& x : c.vectors[i]) out << " " << x.get_str();
        out << "\n";
    }
    out << "frontier " << c.frontier_words.size() << "\n";
    for (const auto& w : c.frontier_words) {
        out << w.size();
        for (std::size_t g : w) out << " " << g;
        out << "\n";
    }
    if (!out) throw CheckpointError("failed writing checkpoint", path.string());
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw CheckpointError("cannot open checkpoint", path.string());
    auto bad = [&](const std::string& what) { return CheckpointError("malformed checkpoint: " + what, path.string()); };
    std::string magic, tag;
    int version = 0;
    if (!(in >> magic >> version) || magic != "PACKLAB-CHECKPOINT") throw bad("header");
    if (version != 1) throw bad("unsupported version " + std::to_string(version));
    Checkpoint c;
    std::size_t count = 0;
    if (!(in >> tag >> c.dimension) || tag != "dimension") throw bad("dimension");
    if (!(in >> tag >> count) || tag != "vectors") throw bad("vector count");
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t depth = 0, len = 0;
        if (!(in >> depth >> len) || len != c.dimension) throw bad("vector " + std::to_string(i));
        ExactVector v(len);
        for (auto& x : v) {
            std::string s;
            if (!(in >> s)) throw bad("vector " + std::to_string(i));
            x = parse_rational(s);
        }
        c.vectors.push_back(std::move(v));
        c.depths.push_back(depth);
    }
    if (!(in >> tag >> count) || tag != "frontier") throw bad("frontier count");
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t len = 0;
        if (!(in >> len)) throw bad("word " + std::to_string(i));
        std::vector<std::size_t> w(len);
        for (auto& g : w)
            if (!(in >> g)) throw bad("word " + std::to_string(i));
        c.frontier_words.push_back(std::move(w));
    }
    return c;
}

}  // namespace packlab
