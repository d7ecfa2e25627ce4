#include "multiway/homotopy.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "multiway/errors.hpp"
#include "multiway/parallel.hpp"

namespace multiway {

namespace {

std::vector<std::string> path_states(const MultiwayGraph& g, const ProofPath& p) {
    std::vector<std::string> states;
    states.reserve(p.nodes.size());
    for (NodeId id : p.nodes) states.push_back(g.node(id).string);
    return states;
}

// Content key of a spec's rung set, independent of rule ids.
std::set<std::pair<std::string, std::string>> rung_content(const HomotopySpec& spec) {
    std::set<std::pair<std::string, std::string>> content;
    for (const Rule& r : spec.rungs) content.emplace(r.lhs, r.rhs);
    return content;
}

std::size_t count_rung_pairs(const RuleSystem& system, int order) {
    std::size_t n = 0;
    for (const Rule& r : system.rules())
        if (r.order == order && !r.id.ends_with("_inv")) ++n;
    return n;
}

}  // namespace

ExtendedSystem ExtendedSystem::from_base(RuleSystem base_rules) {
    ExtendedSystem es;
    es.base = base_rules;
    es.combined = std::move(base_rules);
    es.max_order = std::max(1, es.combined.max_rule_order());
    return es;
}

ExtendedSystem ExtendedSystem::from_rules(const RuleSystem& all_rules) {
    ExtendedSystem es;
    std::vector<Rule> base;
    for (const Rule& r : all_rules.rules())
        if (r.order < 2) base.push_back(r);
    es.base = RuleSystem(std::move(base));
    es.combined = all_rules;
    es.max_order = std::max(1, all_rules.max_rule_order());
    return es;
}

std::vector<const HomotopySpec*> ExtendedSystem::layers_of_order(int order) const {
    std::vector<const HomotopySpec*> out;
    for (const HomotopySpec& spec : layers)
        if (spec.order == order) out.push_back(&spec);
    return out;
}

HomotopySpec synthesize_rungs(const MultiwayGraph& g, const ProofPath& p, const ProofPath& q,
                              int order) {
    if (order < 2) throw DomainError("homotopy order must be at least 2");
    if (p.nodes.empty() || q.nodes.empty()) throw DomainError("paths must be nonempty");
    if (p.nodes.front() != q.nodes.front() || p.nodes.back() != q.nodes.back())
        throw DomainError("paths do not share both endpoints");
    if (p.nodes.size() != q.nodes.size())
        throw DomainError("parallel paths must have equal length");

    HomotopySpec spec;
    spec.order = order;
    spec.source_states = path_states(g, p);
    spec.target_states = path_states(g, q);

    for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) {
        if (p.nodes[i] == q.nodes[i]) continue;
        const std::string& src = spec.source_states[i];
        const std::string& dst = spec.target_states[i];
        std::string id = "h" + std::to_string(order) + "_" + std::to_string(i);
        spec.rungs.push_back(Rule{id, src, dst, order, id + "_inv"});
        spec.rungs.push_back(Rule{id + "_inv", dst, src, order, id});
    }
    return spec;
}

ExtendedSystem extend_system(ExtendedSystem es, const HomotopySpec& spec) {
    if (spec.order > es.max_order + 1)
        throw DomainError("order gap: cannot add order-" + std::to_string(spec.order) +
                          " rungs to an order-" + std::to_string(es.max_order) + " system");
    if (spec.empty()) return es;

    bool layer_known = std::any_of(es.layers.begin(), es.layers.end(), [&](const HomotopySpec& s) {
        return s.order == spec.order && s.source_states == spec.source_states &&
               s.target_states == spec.target_states && rung_content(s) == rung_content(spec);
    });

    std::size_t serial = count_rung_pairs(es.combined, spec.order);
    for (std::size_t i = 0; i + 1 < spec.rungs.size(); i += 2) {
        const Rule& forward = spec.rungs[i];
        const Rule& inverse = spec.rungs[i + 1];
        if (es.combined.contains(forward.lhs, forward.rhs, spec.order)) continue;
        ++serial;
        std::string id = "h" + std::to_string(spec.order) + "_" + std::to_string(serial);
        es.combined.add(Rule{id, forward.lhs, forward.rhs, spec.order, id + "_inv"});
        es.combined.add(Rule{id + "_inv", inverse.lhs, inverse.rhs, spec.order, id});
    }

    if (!layer_known) es.layers.push_back(spec);
    es.max_order = std::max(es.max_order, spec.order);
    return es;
}

std::vector<HomotopySpec> auto_homotopy(const MultiwayGraph& g, const std::string& from,
                                        const std::string& to, std::size_t max_len, int order,
                                        const PathOptions& options) {
    if (order < 2) throw DomainError("homotopy order must be at least 2");
    auto pairs = parallel_path_pairs(g, from, to, max_len, options);

    std::vector<HomotopySpec> specs(pairs.size());
    parallel_for(
        pairs.size(),
        [&](std::size_t i) {
            specs[i] = synthesize_rungs(g, pairs[i].first, pairs[i].second, order);
        },
        options.shuffle_seed);

    std::vector<HomotopySpec> deduped;
    std::set<std::set<std::pair<std::string, std::string>>> seen;
    for (auto& spec : specs) {
        if (spec.empty()) continue;
        if (seen.insert(rung_content(spec)).second) deduped.push_back(std::move(spec));
    }
    return deduped;
}

namespace {

// Parallel pairs among simple paths whose edges are all order-(k-1) rungs,
// over every ordered state pair. The subgraph is tiny (rungs only), so a
// plain DFS per source suffices.
std::vector<HomotopySpec> rung_layer_homotopy(const MultiwayGraph& g, int order,
                                              std::size_t max_len, std::size_t path_budget) {
    int edge_order = order - 1;
    std::size_t n = g.nodes().size();

    std::vector<std::vector<std::size_t>> sub(n);
    for (NodeId u = 0; u < n; ++u)
        for (std::size_t e : g.out_edges(u))
            if (g.edge_has_order(e, edge_order)) sub[u].push_back(e);

    std::vector<HomotopySpec> specs;
    std::set<std::set<std::pair<std::string, std::string>>> seen;

    for (NodeId src = 0; src < n; ++src) {
        if (sub[src].empty()) continue;
        // Collect all simple rung-paths from src, grouped by destination.
        std::map<NodeId, std::vector<ProofPath>> by_dst;
        std::vector<bool> visited(n, false);
        ProofPath current;
        current.nodes.push_back(src);
        visited[src] = true;
        std::size_t emitted = 0;
        auto dfs = [&](auto&& self, NodeId u) -> void {
            if (u != src) {
                if (++emitted > path_budget)
                    throw BudgetError("path budget (" + std::to_string(path_budget) +
                                          ") exceeded during rung-path enumeration",
                                      {});
                by_dst[u].push_back(current);
            }
            if (current.edges.size() == max_len) return;
            for (std::size_t e : sub[u]) {
                NodeId v = g.edges()[e].dst;
                if (visited[v]) continue;
                visited[v] = true;
                current.nodes.push_back(v);
                current.edges.push_back(e);
                self(self, v);
                current.nodes.pop_back();
                current.edges.pop_back();
                visited[v] = false;
            }
        };
        dfs(dfs, src);

        for (auto& [dst, paths] : by_dst) {
            for (std::size_t i = 0; i < paths.size(); ++i)
                for (std::size_t j = i + 1; j < paths.size(); ++j) {
                    if (paths[i].length() != paths[j].length()) continue;
                    HomotopySpec spec = synthesize_rungs(g, paths[i], paths[j], order);
                    if (spec.empty()) continue;
                    if (seen.insert(rung_content(spec)).second) specs.push_back(std::move(spec));
                }
        }
    }
    return specs;
}

}  // namespace

IterateResult iterate_homotopy(ExtendedSystem es, const std::vector<std::string>& initial,
                               const std::string& from, const std::string& to, int target_order,
                               const IterateLimits& limits) {
    if (target_order < 2) throw DomainError("target order must be at least 2");

    IterateResult result;
    result.system = std::move(es);

    for (int order = 2; order <= target_order; ++order) {
        MultiwayGraph graph = evolve(initial, result.system.combined, limits.generations,
                                     EvolveOptions{limits.node_budget, 0});
        std::vector<HomotopySpec> specs;
        if (order == 2)
            specs = auto_homotopy(graph, from, to, limits.max_len, order,
                                  PathOptions{limits.path_budget});
        else
            specs = rung_layer_homotopy(graph, order, limits.max_len, limits.path_budget);

        if (specs.empty()) {
            result.rung_counts.emplace_back(order, 0);
            if (order < target_order) {
                // Cannot build on a missing layer; the proviso fails here.
                result.reached_order = order - 1;
                result.admissible = false;
                return result;
            }
            result.reached_order = order;  // completed with an empty top layer
            return result;
        }

        std::size_t before = result.system.combined.size();
        for (const HomotopySpec& spec : specs)
            result.system = extend_system(std::move(result.system), spec);
        result.rung_counts.emplace_back(order, result.system.combined.size() - before);
        result.reached_order = order;
    }
    return result;
}

}  // namespace multiway
