#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "multiway/graph.hpp"
#include "multiway/homotopy.hpp"

namespace multiway {

// A thin 2-cell: vertical edges l: a->b and m: c->d (base rewrites),
// horizontal edges f: a->c and g: b->d (order-2 rungs). An absent optional is
// an identity side: f,g may be identities when a==c / b==d (endpoint
// triangles and the per-vertical-edge identity square), l,m may be identities
// when a==b / c==d (the per-rung identity square).
struct Square {
    NodeId a = 0, b = 0, c = 0, d = 0;
    std::optional<std::size_t> l, m;  // vertical edge indices
    std::optional<std::size_t> f, g;  // horizontal edge indices

    bool full() const { return l && m && f && g; }
    bool degenerate() const { return !full(); }

    friend bool operator==(const Square&, const Square&) = default;
};

// Replayable failure evidence: the nodes and edges involved plus what is
// missing. Edges reference concrete indices in the verified graph.
struct CheckWitness {
    std::vector<NodeId> nodes;
    std::vector<std::size_t> edges;
    std::string missing;
    std::string detail;
};

struct CheckResult {
    std::string name;
    bool pass = true;
    std::size_t examined = 0;
    std::optional<CheckWitness> witness;
};

struct StructureReport {
    int order = 2;
    std::size_t objects = 0;
    std::size_t vertical_morphisms = 0;
    // Rung edge count per order (2..order).
    std::map<int, std::size_t> horizontal_morphisms;
    // Nondegenerate k-cell count per order: full squares at 2, full cubes at
    // 3, full k-hypercubes above.
    std::map<int, std::size_t> cells;
    std::vector<CheckResult> checks;
    bool groupoid = false;

    bool pass() const;
    const CheckResult* check(const std::string& name) const;
};

// All boundary-complete squares with base-rewrite verticals and order-2 rung
// horizontals: full squares, endpoint triangles (one identity horizontal),
// one identity square per vertical edge and one per rung edge. Thin: one
// square per boundary. Deterministic order.
std::vector<Square> find_squares(const ExtendedSystem& es, const MultiwayGraph& g);

// Double-category law checks over the extended graph:
//   vertical-composition-closure   stacked squares compose; every homotopy
//                                  layer's path pair tiles completely, in
//                                  both orientations
//   horizontal-composition-closure rung chains close (composite rung edge or
//                                  identity) and every rung edge has its
//                                  reverse (interior endpoints)
//   identity-cells                 identity squares for every vertical and
//                                  horizontal morphism
//   interchange-associativity      2x2 square blocks give one boundary in
//                                  either composition order; thinness holds
StructureReport verify_double_category(const ExtendedSystem& es, const MultiwayGraph& g);

// Groupoid checks over strata 1 (base edges) through `order` (rung edges of
// that order), restricted to edges with interior endpoints: every witness
// rule is inverse-paired, the reverse edge exists with the paired witness,
// and rule-then-inverse replays to the original string.
StructureReport verify_groupoid(const ExtendedSystem& es, const MultiwayGraph& g, int order);

// n-fold category checks. n == 2 delegates to verify_double_category; higher
// n adds, per order k in 3..n: k-cell enumeration (direction d edges are
// order-d rungs, direction 1 is the base rewrite), face completeness of every
// claimed order-k layer, and directional composition closure of enumerated
// k-cells. Throws DomainError when n exceeds the system's max order.
StructureReport verify_nfold(const ExtendedSystem& es, const MultiwayGraph& g, int n);

}  // namespace multiway
