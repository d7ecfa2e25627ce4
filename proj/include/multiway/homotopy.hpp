#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "multiway/graph.hpp"
#include "multiway/rules.hpp"

namespace multiway {

// Rung rules between two parallel proofs of one proposition. The state-string
// sequences are stored rather than node ids so a spec stays meaningful after
// the graph is rebuilt under an extended rule system.
struct HomotopySpec {
    int order = 2;
    std::vector<std::string> source_states;
    std::vector<std::string> target_states;
    // Forward rung followed by its inverse, per differing interior index.
    std::vector<Rule> rungs;

    bool empty() const { return rungs.empty(); }

    friend bool operator==(const HomotopySpec&, const HomotopySpec&) = default;
};

// A base rule system plus homotopy layers. max_order is 1 for a base-only
// system (paths are its 1-morphisms) and tracks the highest rung order added.
struct ExtendedSystem {
    RuleSystem base;
    std::vector<HomotopySpec> layers;
    RuleSystem combined;
    int max_order = 1;

    static ExtendedSystem from_base(RuleSystem base_rules);
    // Splits an already-mixed rule set (e.g. a parsed annotated file) into
    // base and combined; layers stay empty since files carry no path claims.
    static ExtendedSystem from_rules(const RuleSystem& all_rules);

    std::vector<const HomotopySpec*> layers_of_order(int order) const;
};

// Emits, for every interior index where the two paths pass through different
// states, the whole-string rule source[i] -> target[i] and its inverse, with
// ids h{order}_{i} / h{order}_{i}_inv. Paths must share both endpoints and
// have equal length; order must be >= 2.
HomotopySpec synthesize_rungs(const MultiwayGraph& g, const ProofPath& p, const ProofPath& q,
                              int order);

// Adds a spec's rungs to the combined system. Duplicate rungs (same lhs, rhs,
// order) merge silently; merged rungs are renamed h{order}_{n} with a running
// per-order counter so combined ids stay unique. Rejects order gaps
// (spec.order > max_order + 1).
ExtendedSystem extend_system(ExtendedSystem es, const HomotopySpec& spec);

// One spec per parallel path pair of the proposition, deduplicated by rung
// content, in pair enumeration order.
std::vector<HomotopySpec> auto_homotopy(const MultiwayGraph& g, const std::string& from,
                                        const std::string& to, std::size_t max_len, int order,
                                        const PathOptions& options = {});

struct IterateLimits {
    unsigned generations = 6;
    std::size_t max_len = 6;
    std::size_t node_budget = 1'000'000;
    std::size_t path_budget = 100'000;
};

struct IterateResult {
    ExtendedSystem system;
    int reached_order = 1;
    // False when some order below the target had no admissible parallel
    // pairs; system then holds the highest admissible extension.
    bool admissible = true;
    // Rules added per order, in ascending order.
    std::vector<std::pair<int, std::size_t>> rung_counts;
};

// Iterates rung synthesis up to target_order. Order 2 synthesizes between
// parallel proof paths of the (from, to) proposition; order k >= 3
// synthesizes between parallel paths whose edges are all order-(k-1) rungs,
// over every ordered state pair of the rebuilt graph.
IterateResult iterate_homotopy(ExtendedSystem es, const std::vector<std::string>& initial,
                               const std::string& from, const std::string& to, int target_order,
                               const IterateLimits& limits = {});

}  // namespace multiway
