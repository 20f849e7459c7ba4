#include "packlab/catalog.hpp"

#include <json.hpp>

#include <fstream>
#include <regex>

namespace packlab {

namespace {

std::vector<Rational> rats(std::initializer_list<long> xs) {
    std::vector<Rational> v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

}  // namespace

std::vector<std::string> catalog_names() { return {"apollonian2", "apollonian3", "apollonian:n=<n>", "boyd", "ideal-triangle"}; }

PackingSpec catalog_packing(const std::string& name) {
    static const std::regex ap(R"(^apollonian(?::n=|\(n=)?(\d+)\)?$)");
    std::smatch m;
    PackingSpec s;
    s.name = name;
    if (std::regex_match(name, m, ap)) {
        std::size_t n = std::stoul(m[1].str());
        s.gram = apollonian_gram(n);
        s.name = "apollonian" + m[1].str();
        if (n == 2) s.default_seed = rats({-10, 18, 23, 27});
        if (n == 3) s.default_seed = rats({-1, 2, 2, 3, 3});
    } else if (name == "boyd") {
        s.gram = boyd_gram();
        s.default_seed = rats({-10, 23, 39, 24});
    } else if (name == "ideal-triangle") {
        s.gram = ideal_triangle_gram();
        s.kind = ActionKind::reflection;
        s.default_seed = rats({1, -2, -2});
    } else {
        throw ConfigError("unknown catalog packing '" + name + "' (known: apollonian2, apollonian3, apollonian:n=<n>, boyd, ideal-triangle)");
    }
    return s;
}

ActionKind parse_action_kind(const std::string& s) {
    if (s == "boyd_maxwell" || s == "boyd-maxwell") return ActionKind::boyd_maxwell;
    if (s == "dual") return ActionKind::dual;
    if (s == "reflection") return ActionKind::reflection;
    throw ConfigError("unknown action '" + s + "' (known: boyd_maxwell, dual, reflection)");
}

ClusterAction make_action(const CoxeterPolytope& p, ActionKind kind) {
    switch (kind) {
        case ActionKind::boyd_maxwell: return boyd_maxwell_action(p);
        case ActionKind::dual: return dual_action(p);
        case ActionKind::reflection: return reflection_action(p);
    }
    throw ConfigError("unknown action");
}

namespace {

using json = nlohmann::json;

Rational to_rat(const json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const ConfigError& e) {
            throw ConfigError(where + ": " + e.what());
        }
    }
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw ConfigError(where + ": expected an integer or a rational string such as \"-13/2\"");
}

PackingSpec parse_packing(std::istream& in) {
    json j = json::parse(in);
    if (!j.is_object()) throw ConfigError("packing file: expected a JSON object");
    PackingSpec s;
    s.name = j.value("name", std::string("custom"));
    if (!j.contains("gram")) throw ConfigError("packing file: missing field 'gram'");
    const json& g = j["gram"];
    if (!g.is_array() || g.empty()) throw ConfigError("packing file: 'gram' must be a nonempty array of rows");
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g[i].is_array() || g[i].size() != g.size())
            throw ConfigError("packing file: gram row " + std::to_string(i) + " must have " + std::to_string(g.size()) + " entries");
        std::vector<Rational> row;
        for (std::size_t k = 0; k < g[i].size(); ++k)
            row.push_back(to_rat(g[i][k], "gram[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
        rows.push_back(std::move(row));
    }
    s.gram = RationalMatrix::from_rows(rows);
    if (j.contains("seed")) {
        std::vector<Rational> seed;
        for (std::size_t i = 0; i < j["seed"].size(); ++i) seed.push_back(to_rat(j["seed"][i], "seed[" + std::to_string(i) + "]"));
        s.default_seed = seed;
    }
    if (j.contains("action")) s.kind = parse_action_kind(j["action"].get<std::string>());
    return s;
}

}  // namespace

PackingSpec load_packing(std::istream& in) {
    try {
        return parse_packing(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("packing file: ") + e.what());
    }
}

PackingSpec load_packing_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open packing file " + path);
    return load_packing(in);
}

}  // namespace packlab
