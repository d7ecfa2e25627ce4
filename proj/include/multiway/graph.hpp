#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "multiway/rewrite.hpp"
#include "multiway/rules.hpp"

namespace multiway {

using NodeId = std::uint32_t;

struct StateNode {
    NodeId id = 0;
    std::string string;
    unsigned generation = 0;
};

struct EdgeWitness {
    std::size_t rule_index = 0;
    std::size_t position = 0;

    friend bool operator==(const EdgeWitness&, const EdgeWitness&) = default;
};

// One edge per ordered (src, dst) pair; every distinct rewrite producing the
// same transition is kept as a witness, ordered by (rule index, position).
struct RewriteEdge {
    NodeId src = 0;
    NodeId dst = 0;
    std::vector<EdgeWitness> witnesses;
};

// A proof of src ->* dst: node ids plus the edge indices joining them. Simple
// (no repeated nodes); the empty path at a single node is the reflexive proof.
struct ProofPath {
    std::vector<NodeId> nodes;
    std::vector<std::size_t> edges;

    std::size_t length() const { return edges.size(); }

    friend bool operator==(const ProofPath&, const ProofPath&) = default;
};

struct EvolveOptions {
    std::size_t node_budget = 1'000'000;
    // Nonzero: permute the frontier work order before expansion. Output must
    // not change; the determinism tests drive this.
    unsigned shuffle_seed = 0;
};

// Deduplicated multiway evolution graph. Node ids are dense and assigned by
// (generation, string) sort, so identical inputs yield identical graphs
// regardless of expansion schedule or thread count.
class MultiwayGraph {
public:
    const std::vector<StateNode>& nodes() const { return nodes_; }
    const std::vector<RewriteEdge>& edges() const { return edges_; }
    const RuleSystem& system() const { return system_; }
    unsigned depth() const { return depth_; }

    std::optional<NodeId> find_node(const std::string& state) const;
    const StateNode& node(NodeId id) const { return nodes_[id]; }

    // Out-edge indices sorted by destination id.
    const std::vector<std::size_t>& out_edges(NodeId id) const { return adjacency_[id]; }
    // In-edge indices sorted by source id.
    const std::vector<std::size_t>& in_edges(NodeId id) const { return reverse_adjacency_[id]; }
    std::optional<std::size_t> edge_between(NodeId src, NodeId dst) const;

    // Node counts per generation 0..depth.
    std::vector<std::size_t> layer_counts() const;

    // True when some edge witness carries a rule of the given order.
    bool edge_has_order(std::size_t edge_index, int order) const;
    // Vertical edges carry a base-rule witness (order < 2).
    bool edge_is_vertical(std::size_t edge_index) const;

    // A node is interior when it was expanded, i.e. generation < depth.
    bool interior(NodeId id) const { return nodes_[id].generation < depth_; }

private:
    friend MultiwayGraph evolve(const std::vector<std::string>&, const RuleSystem&, unsigned,
                                const EvolveOptions&);
    friend MultiwayGraph graph_from_json(const std::string&);

    void finalize();

    RuleSystem system_;
    unsigned depth_ = 0;
    std::vector<StateNode> nodes_;
    std::vector<RewriteEdge> edges_;
    std::vector<std::vector<std::size_t>> adjacency_;
    std::vector<std::vector<std::size_t>> reverse_adjacency_;
    std::unordered_map<std::string, NodeId> by_string_;
};

// Breadth-first expansion of the initial states for the given number of
// generations. Contains exactly the states reachable in <= generations steps;
// edges are recorded from expanded nodes only (generation < generations).
// Throws BudgetError when the node budget would be exceeded.
MultiwayGraph evolve(const std::vector<std::string>& initial, const RuleSystem& system,
                     unsigned generations, const EvolveOptions& options = {});

// True iff a directed path (possibly empty) joins the two states. Throws
// DomainError for states not present in the graph.
bool reachable(const MultiwayGraph& g, const std::string& from, const std::string& to);

struct PathOptions {
    std::size_t path_budget = 100'000;
    // Nonzero: permute parallel work order in consumers (e.g. auto_homotopy);
    // outputs must not change.
    unsigned shuffle_seed = 0;
};

// All simple directed paths from one state to another of length <= max_len,
// in lexicographic node-id order. Exhaustive; throws BudgetError past the
// path budget.
std::vector<ProofPath> enumerate_paths(const MultiwayGraph& g, const std::string& from,
                                       const std::string& to, std::size_t max_len,
                                       const PathOptions& options = {});

// All unordered pairs of distinct equal-length proof paths, each pair with
// its lexicographically smaller path first, pairs in enumeration order.
std::vector<std::pair<ProofPath, ProofPath>> parallel_path_pairs(
    const MultiwayGraph& g, const std::string& from, const std::string& to, std::size_t max_len,
    const PathOptions& options = {});

}  // namespace multiway
