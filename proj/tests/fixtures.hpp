#pragma once

// Shared fixtures: the A -> AB system, the two featured parallel proofs of
// AA ->* ABBBABBB, and the ten rung rules they induce.

#include <string>
#include <utility>
#include <vector>

#include "multiway/errors.hpp"
#include "multiway/graph.hpp"
#include "multiway/homotopy.hpp"
#include "multiway/rules.hpp"

namespace multiway::fixtures {

inline const std::vector<std::pair<std::string, std::string>> kForwardRungs = {
    {"AAB", "ABA"},       {"AABB", "ABBA"},       {"AABBB", "ABBBA"},
    {"ABABBB", "ABBBAB"}, {"ABBABBB", "ABBBABB"},
};

inline const std::vector<std::pair<std::string, std::string>> kInverseRungs = {
    {"ABA", "AAB"},       {"ABBA", "AABB"},       {"ABBBA", "AABBB"},
    {"ABBBAB", "ABABBB"}, {"ABBBABB", "ABBABBB"},
};

inline const std::vector<std::string> kRedStates = {
    "AA", "AAB", "AABB", "AABBB", "ABABBB", "ABBABBB", "ABBBABBB",
};

inline const std::vector<std::string> kYellowStates = {
    "AA", "ABA", "ABBA", "ABBBA", "ABBBAB", "ABBBABB", "ABBBABBB",
};

inline RuleSystem base_ab() { return parse_rules("A -> AB\n"); }

inline ProofPath path_from_states(const MultiwayGraph& g, const std::vector<std::string>& states) {
    ProofPath path;
    for (const std::string& s : states) {
        auto id = g.find_node(s);
        if (!id) throw DomainError("fixture state '" + s + "' not in graph");
        path.nodes.push_back(*id);
    }
    for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
        auto e = g.edge_between(path.nodes[i], path.nodes[i + 1]);
        if (!e) throw DomainError("fixture edge missing between '" + states[i] + "' and '" +
                                  states[i + 1] + "'");
        path.edges.push_back(*e);
    }
    return path;
}

// The eleven-rule system shown alongside the featured proof pair: the base
// rule plus the five forward rungs and their inverses.
inline ExtendedSystem featured_pair_system() {
    RuleSystem base = base_ab();
    MultiwayGraph g = evolve({"AA"}, base, 6);
    ProofPath red = path_from_states(g, kRedStates);
    ProofPath yellow = path_from_states(g, kYellowStates);
    HomotopySpec spec = synthesize_rungs(g, red, yellow, 2);
    return extend_system(ExtendedSystem::from_base(base), spec);
}

// Drops one rule from the combined system while keeping the layer claims.
inline ExtendedSystem remove_rule(ExtendedSystem es, const std::string& id) {
    std::vector<Rule> rules;
    for (const Rule& r : es.combined.rules())
        if (r.id != id) rules.push_back(r);
    es.combined = RuleSystem(std::move(rules));
    return es;
}

}  // namespace multiway::fixtures
