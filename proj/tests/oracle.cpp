#include "oracle.hpp"

#include <algorithm>

namespace multiway::oracle {

std::vector<std::pair<std::size_t, std::size_t>> matches(const std::string& state,
                                                         const RuleSystem& system) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t r = 0; r < system.size(); ++r) {
        const Rule& rule = system.rule(r);
        if (rule.whole_string()) {
            if (state == rule.lhs) out.emplace_back(r, 0);
            continue;
        }
        if (rule.lhs.size() > state.size()) continue;
        for (std::size_t p = 0; p + rule.lhs.size() <= state.size(); ++p) {
            bool hit = true;
            for (std::size_t i = 0; i < rule.lhs.size(); ++i)
                if (state[p + i] != rule.lhs[i]) {
                    hit = false;
                    break;
                }
            if (hit) out.emplace_back(r, p);
        }
    }
    return out;
}

std::string splice(const std::string& state, std::size_t pos, const std::string& lhs,
                   const std::string& rhs) {
    std::string out;
    for (std::size_t i = 0; i < pos; ++i) out.push_back(state[i]);
    for (char c : rhs) out.push_back(c);
    for (std::size_t i = pos + lhs.size(); i < state.size(); ++i) out.push_back(state[i]);
    return out;
}

std::map<std::string, std::set<std::string>> Graph::adjacency() const {
    std::map<std::string, std::set<std::string>> out;
    for (const auto& [src, dst, rule, pos] : edges) out[src].insert(dst);
    return out;
}

Graph evolve(const std::vector<std::string>& initial, const RuleSystem& system,
             unsigned generations) {
    Graph g;
    std::set<std::string> layer(initial.begin(), initial.end());
    for (const std::string& s : layer) g.generation.emplace(s, 0);
    g.layer_sizes.push_back(layer.size());

    for (unsigned gen = 0; gen < generations; ++gen) {
        std::set<std::string> next;
        for (const std::string& state : layer) {
            for (const auto& [rule, pos] : matches(state, system)) {
                std::string result =
                    splice(state, pos, system.rule(rule).lhs, system.rule(rule).rhs);
                g.edges.insert({state, result, rule, pos});
                if (!g.generation.count(result)) next.insert(result);
            }
        }
        for (const std::string& s : next) g.generation.emplace(s, gen + 1);
        g.layer_sizes.push_back(next.size());
        layer = std::move(next);
    }
    return g;
}

std::vector<std::vector<std::string>> paths(const Graph& g, const std::string& from,
                                            const std::string& to, std::size_t max_len) {
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> current{from};
    std::set<std::string> visited{from};
    auto adjacency = g.adjacency();
    struct Rec {
        const std::map<std::string, std::set<std::string>>& adj;
        const std::string& to;
        std::size_t max_len;
        std::vector<std::vector<std::string>>& out;
        void run(std::vector<std::string>& current, std::set<std::string>& visited) {
            const std::string& at = current.back();
            if (at == to) {
                out.push_back(current);
                return;
            }
            if (current.size() - 1 == max_len) return;
            auto it = adj.find(at);
            if (it == adj.end()) return;
            for (const std::string& next : it->second) {
                if (visited.count(next)) continue;
                visited.insert(next);
                current.push_back(next);
                run(current, visited);
                current.pop_back();
                visited.erase(next);
            }
        }
    };
    Rec rec{adjacency, to, max_len, out};
    rec.run(current, visited);
    return out;
}

namespace {

std::vector<NodeId> targets(const MultiwayGraph& g, NodeId u, int rule_order) {
    std::vector<NodeId> out;
    for (std::size_t e : g.out_edges(u)) {
        bool hit = false;
        for (const EdgeWitness& w : g.edges()[e].witnesses)
            if (rule_order < 2 ? g.system().rule(w.rule_index).order < 2
                               : g.system().rule(w.rule_index).order == rule_order)
                hit = true;
        if (hit) out.push_back(g.edges()[e].dst);
    }
    return out;
}

bool has_edge(const MultiwayGraph& g, NodeId u, NodeId v, int rule_order) {
    auto t = targets(g, u, rule_order);
    return std::find(t.begin(), t.end(), v) != t.end();
}

}  // namespace

std::size_t cube_count(const MultiwayGraph& g) {
    std::size_t count = 0;
    NodeId n = static_cast<NodeId>(g.nodes().size());
    for (NodeId v000 = 0; v000 < n; ++v000)
        for (NodeId v100 : targets(g, v000, 0))
            for (NodeId v010 : targets(g, v000, 2))
                for (NodeId v001 : targets(g, v000, 3))
                    for (NodeId v110 : targets(g, v100, 2)) {
                        if (!has_edge(g, v010, v110, 0)) continue;
                        for (NodeId v101 : targets(g, v100, 3)) {
                            if (!has_edge(g, v001, v101, 0)) continue;
                            for (NodeId v011 : targets(g, v010, 3)) {
                                if (!has_edge(g, v001, v011, 2)) continue;
                                for (NodeId v111 : targets(g, v110, 3)) {
                                    if (!has_edge(g, v011, v111, 0)) continue;
                                    if (!has_edge(g, v101, v111, 2)) continue;
                                    ++count;
                                }
                            }
                        }
                    }
    return count;
}

std::size_t rung_pair_count(const MultiwayGraph& g, int order, std::size_t max_len) {
    int edge_order = order - 1;
    std::map<std::string, std::set<std::string>> adjacency;
    for (NodeId u = 0; u < static_cast<NodeId>(g.nodes().size()); ++u)
        for (NodeId v : targets(g, u, edge_order))
            adjacency[g.node(u).string].insert(g.node(v).string);

    Graph pseudo;
    for (const auto& [src, dsts] : adjacency)
        for (const auto& dst : dsts) pseudo.edges.insert({src, dst, 0, 0});

    std::set<std::pair<std::string, std::string>> rungs;
    for (const auto& [src, unused] : adjacency) {
        std::map<std::string, std::vector<std::vector<std::string>>> by_dst;
        for (const StateNode& node : g.nodes()) {
            if (node.string == src) continue;
            for (auto& p : paths(pseudo, src, node.string, max_len))
                by_dst[node.string].push_back(std::move(p));
        }
        for (const auto& [dst, list] : by_dst)
            for (std::size_t i = 0; i < list.size(); ++i)
                for (std::size_t j = i + 1; j < list.size(); ++j) {
                    if (list[i].size() != list[j].size()) continue;
                    for (std::size_t k = 1; k + 1 < list[i].size(); ++k)
                        if (list[i][k] != list[j][k]) {
                            rungs.emplace(list[i][k], list[j][k]);
                            rungs.emplace(list[j][k], list[i][k]);
                        }
                }
    }
    return rungs.size();
}

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t result = 1;
    for (std::size_t i = 0; i < k; ++i) result = result * (n - i) / (i + 1);
    return result;
}

}  // namespace multiway::oracle
