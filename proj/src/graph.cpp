#include "multiway/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "multiway/errors.hpp"
#include "multiway/parallel.hpp"

namespace multiway {

std::optional<NodeId> MultiwayGraph::find_node(const std::string& state) const {
    auto it = by_string_.find(state);
    if (it == by_string_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> MultiwayGraph::edge_between(NodeId src, NodeId dst) const {
    const auto& out = adjacency_[src];
    auto it = std::lower_bound(out.begin(), out.end(), dst, [&](std::size_t e, NodeId d) {
        return edges_[e].dst < d;
    });
    if (it == out.end() || edges_[*it].dst != dst) return std::nullopt;
    return *it;
}

std::vector<std::size_t> MultiwayGraph::layer_counts() const {
    std::vector<std::size_t> counts(depth_ + 1, 0);
    for (const StateNode& n : nodes_) ++counts[n.generation];
    return counts;
}

bool MultiwayGraph::edge_has_order(std::size_t edge_index, int order) const {
    for (const EdgeWitness& w : edges_[edge_index].witnesses)
        if (system_.rule(w.rule_index).order == order) return true;
    return false;
}

bool MultiwayGraph::edge_is_vertical(std::size_t edge_index) const {
    for (const EdgeWitness& w : edges_[edge_index].witnesses)
        if (system_.rule(w.rule_index).order < 2) return true;
    return false;
}

void MultiwayGraph::finalize() {
    std::sort(edges_.begin(), edges_.end(), [](const RewriteEdge& a, const RewriteEdge& b) {
        return std::pair(a.src, a.dst) < std::pair(b.src, b.dst);
    });
    adjacency_.assign(nodes_.size(), {});
    reverse_adjacency_.assign(nodes_.size(), {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        adjacency_[edges_[e].src].push_back(e);
        reverse_adjacency_[edges_[e].dst].push_back(e);
    }
    for (auto& in : reverse_adjacency_)
        std::sort(in.begin(), in.end(),
                  [&](std::size_t a, std::size_t b) { return edges_[a].src < edges_[b].src; });
    by_string_.clear();
    by_string_.reserve(nodes_.size());
    for (const StateNode& n : nodes_) by_string_.emplace(n.string, n.id);
}

MultiwayGraph evolve(const std::vector<std::string>& initial, const RuleSystem& system,
                     unsigned generations, const EvolveOptions& options) {
    if (initial.empty()) throw DomainError("evolve requires at least one initial state");

    MultiwayGraph g;
    g.system_ = system;
    g.depth_ = generations;

    std::set<std::string> seeds(initial.begin(), initial.end());
    if (seeds.size() > options.node_budget)
        throw BudgetError("node budget exceeded by the initial states", {});

    std::unordered_map<std::string, NodeId> index;
    for (const std::string& s : seeds) {
        NodeId id = static_cast<NodeId>(g.nodes_.size());
        g.nodes_.push_back(StateNode{id, s, 0});
        index.emplace(s, id);
    }

    std::size_t layer_begin = 0;
    std::vector<std::size_t> completed_layers{g.nodes_.size()};

    for (unsigned gen = 0; gen < generations; ++gen) {
        std::size_t layer_end = g.nodes_.size();
        if (layer_begin == layer_end) break;  // nothing left to expand

        // Map phase: per-frontier-node match lists, order-independent.
        std::size_t frontier = layer_end - layer_begin;
        std::vector<std::vector<MatchSite>> matches(frontier);
        parallel_for(
            frontier,
            [&](std::size_t i) {
                matches[i] = find_matches(g.nodes_[layer_begin + i].string, system);
            },
            options.shuffle_seed);

        // Merge phase, canonical order. New states first, sorted, so ids are
        // a function of (generation, string) alone.
        std::vector<std::vector<std::string>> results(frontier);
        parallel_for(
            frontier,
            [&](std::size_t i) {
                results[i].reserve(matches[i].size());
                for (const MatchSite& site : matches[i])
                    results[i].push_back(apply_match(site, system));
            },
            options.shuffle_seed);

        std::set<std::string> fresh;
        for (const auto& rs : results)
            for (const std::string& s : rs)
                if (!index.count(s)) fresh.insert(s);

        if (g.nodes_.size() + fresh.size() > options.node_budget)
            throw BudgetError("node budget (" + std::to_string(options.node_budget) +
                                  ") exceeded at generation " + std::to_string(gen + 1),
                              completed_layers);

        for (const std::string& s : fresh) {
            NodeId id = static_cast<NodeId>(g.nodes_.size());
            g.nodes_.push_back(StateNode{id, s, gen + 1});
            index.emplace(s, id);
        }
        completed_layers.push_back(fresh.size());

        for (std::size_t i = 0; i < frontier; ++i) {
            NodeId src = static_cast<NodeId>(layer_begin + i);
            std::map<NodeId, std::size_t> local;  // dst -> edge index
            for (std::size_t k = 0; k < matches[i].size(); ++k) {
                NodeId dst = index.at(results[i][k]);
                auto [it, inserted] = local.emplace(dst, g.edges_.size());
                if (inserted) g.edges_.push_back(RewriteEdge{src, dst, {}});
                g.edges_[it->second].witnesses.push_back(
                    EdgeWitness{matches[i][k].rule_index, matches[i][k].position});
            }
        }

        layer_begin = layer_end;
    }

    g.finalize();
    return g;
}

namespace {

NodeId require_node(const MultiwayGraph& g, const std::string& state) {
    auto id = g.find_node(state);
    if (!id) throw DomainError("state '" + state + "' is not a node of the graph");
    return *id;
}

}  // namespace

bool reachable(const MultiwayGraph& g, const std::string& from, const std::string& to) {
    NodeId src = require_node(g, from);
    NodeId dst = require_node(g, to);
    if (src == dst) return true;

    std::vector<bool> seen(g.nodes().size(), false);
    std::vector<NodeId> stack{src};
    seen[src] = true;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (std::size_t e : g.out_edges(u)) {
            NodeId v = g.edges()[e].dst;
            if (v == dst) return true;
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    return false;
}

std::vector<ProofPath> enumerate_paths(const MultiwayGraph& g, const std::string& from,
                                       const std::string& to, std::size_t max_len,
                                       const PathOptions& options) {
    NodeId src = require_node(g, from);
    NodeId dst = require_node(g, to);

    std::vector<ProofPath> paths;
    std::vector<bool> visited(g.nodes().size(), false);
    ProofPath current;
    current.nodes.push_back(src);
    visited[src] = true;

    // Depth-first over destination-sorted adjacency yields lexicographic
    // node-id order directly.
    auto dfs = [&](auto&& self, NodeId u) -> void {
        if (u == dst) {
            if (paths.size() >= options.path_budget)
                throw BudgetError("path budget (" + std::to_string(options.path_budget) +
                                      ") exceeded",
                                  {});
            paths.push_back(current);
            return;  // a simple path cannot revisit dst
        }
        if (current.edges.size() == max_len) return;
        for (std::size_t e : g.out_edges(u)) {
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
    return paths;
}

std::vector<std::pair<ProofPath, ProofPath>> parallel_path_pairs(const MultiwayGraph& g,
                                                                 const std::string& from,
                                                                 const std::string& to,
                                                                 std::size_t max_len,
                                                                 const PathOptions& options) {
    std::vector<ProofPath> paths = enumerate_paths(g, from, to, max_len, options);
    std::vector<std::pair<ProofPath, ProofPath>> pairs;
    for (std::size_t i = 0; i < paths.size(); ++i)
        for (std::size_t j = i + 1; j < paths.size(); ++j) {
            if (paths[i].length() != paths[j].length()) continue;
            if (pairs.size() >= options.path_budget)
                throw BudgetError("path budget (" + std::to_string(options.path_budget) +
                                      ") exceeded while pairing",
                                  {});
            pairs.emplace_back(paths[i], paths[j]);
        }
    return pairs;
}

}  // namespace multiway
