#pragma once

#include "packlab/orbit.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace packlab {

struct PackingSpec {
    std::string name;
    RationalMatrix gram;
    ActionKind kind = ActionKind::boyd_maxwell;
    std::optional<std::vector<Rational>> default_seed;
};

// "apollonian2", "apollonian3", "apollonian:n=<n>", "boyd", "ideal-triangle".
PackingSpec catalog_packing(const std::string& name);
std::vector<std::string> catalog_names();

ActionKind parse_action_kind(const std::string& s);
ClusterAction make_action(const CoxeterPolytope& p, ActionKind kind);

// JSON packing file: {"gram": [[...]], "seed": [...], "action": "boyd_maxwell"|"dual"|"reflection", "name": ...}.
PackingSpec load_packing(std::istream& in);
PackingSpec load_packing_file(const std::string& path);

}  // namespace packlab
