#include "multiway/verify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "multiway/errors.hpp"
#include "multiway/rewrite.hpp"

namespace multiway {

namespace {

std::string node_label(const MultiwayGraph& g, NodeId id) {
    return std::to_string(id) + "'" + g.node(id).string + "'";
}

// Edge index u -> v carrying a witness of the given rule order, if any.
std::optional<std::size_t> edge_of_order(const MultiwayGraph& g, NodeId u, NodeId v, int order) {
    auto e = g.edge_between(u, v);
    if (!e) return std::nullopt;
    if (order < 2 ? g.edge_is_vertical(*e) : g.edge_has_order(*e, order)) return e;
    return std::nullopt;
}

struct ClassifiedEdges {
    std::vector<std::size_t> vertical;
    std::map<int, std::vector<std::size_t>> horizontal;  // rung order -> edges
};

ClassifiedEdges classify_edges(const MultiwayGraph& g, int max_order) {
    ClassifiedEdges out;
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        if (g.edge_is_vertical(e)) out.vertical.push_back(e);
        for (int k = 2; k <= max_order; ++k)
            if (g.edge_has_order(e, k)) out.horizontal[k].push_back(e);
    }
    return out;
}

void fill_counts(StructureReport& report, const MultiwayGraph& g, const ClassifiedEdges& edges) {
    report.objects = g.nodes().size();
    report.vertical_morphisms = edges.vertical.size();
    for (const auto& [order, list] : edges.horizontal)
        if (order <= report.order) report.horizontal_morphisms[order] = list.size();
}

CheckWitness square_witness(const MultiwayGraph& g, std::vector<NodeId> nodes,
                            std::vector<std::size_t> present, std::string missing) {
    CheckWitness w;
    w.nodes = std::move(nodes);
    w.edges = std::move(present);
    w.missing = std::move(missing);
    std::ostringstream detail;
    detail << "nodes";
    for (NodeId id : w.nodes) detail << " " << node_label(g, id);
    w.detail = detail.str();
    return w;
}

// Tiles one orientation of a claimed parallel pair of a layer: each step must
// have a side edge of side_order and each differing interior vertex pair a
// rung edge of spec order. Returns the first incomplete square, if any.
std::optional<CheckWitness> tile_layer(const MultiwayGraph& g, const HomotopySpec& spec,
                                       const std::vector<std::string>& lhs_states,
                                       const std::vector<std::string>& rhs_states,
                                       int side_order) {
    std::vector<NodeId> lhs_ids, rhs_ids;
    for (const auto& s : lhs_states) {
        auto id = g.find_node(s);
        if (!id)
            return square_witness(g, {}, {}, "state '" + s + "' missing from the graph");
        lhs_ids.push_back(*id);
    }
    for (const auto& s : rhs_states) {
        auto id = g.find_node(s);
        if (!id)
            return square_witness(g, {}, {}, "state '" + s + "' missing from the graph");
        rhs_ids.push_back(*id);
    }

    for (std::size_t i = 0; i + 1 < lhs_ids.size(); ++i) {
        NodeId a = lhs_ids[i], b = lhs_ids[i + 1];
        NodeId c = rhs_ids[i], d = rhs_ids[i + 1];
        std::vector<std::size_t> present;
        auto l = edge_of_order(g, a, b, side_order);
        auto m = edge_of_order(g, c, d, side_order);
        if (l) present.push_back(*l);
        if (m) present.push_back(*m);
        std::string which = side_order < 2 ? "vertical" : "order-" + std::to_string(side_order);
        if (!l)
            return square_witness(g, {a, b, c, d}, present,
                                  which + " edge " + node_label(g, a) + " -> " + node_label(g, b));
        if (!m)
            return square_witness(g, {a, b, c, d}, present,
                                  which + " edge " + node_label(g, c) + " -> " + node_label(g, d));
        if (a != c) {
            auto f = edge_of_order(g, a, c, spec.order);
            if (!f)
                return square_witness(g, {a, b, c, d}, present,
                                      "order-" + std::to_string(spec.order) + " edge " +
                                          node_label(g, a) + " -> " + node_label(g, c));
            present.push_back(*f);
        }
        if (b != d) {
            auto gg = edge_of_order(g, b, d, spec.order);
            if (!gg)
                return square_witness(g, {a, b, c, d}, present,
                                      "order-" + std::to_string(spec.order) + " edge " +
                                          node_label(g, b) + " -> " + node_label(g, d));
        }
    }
    return std::nullopt;
}

// Corner-array representation of a k-cell: corners indexed by bitmask, bit
// d-1 set = displaced along direction d. Direction 1 edges are base
// rewrites, direction d >= 2 edges are order-d rungs.
using CellCorners = std::vector<NodeId>;

std::vector<CellCorners> full_square_cells(const std::vector<Square>& squares) {
    std::vector<CellCorners> cells;
    for (const Square& s : squares)
        if (s.full()) cells.push_back({s.a, s.b, s.c, s.d});
    return cells;
}

std::vector<CellCorners> glue_cells(const MultiwayGraph& g,
                                    const std::vector<CellCorners>& lower, int direction_order) {
    std::vector<CellCorners> cells;
    for (const CellCorners& c0 : lower)
        for (const CellCorners& c1 : lower) {
            bool ok = true;
            for (std::size_t i = 0; i < c0.size() && ok; ++i)
                if (!edge_of_order(g, c0[i], c1[i], direction_order)) ok = false;
            if (!ok) continue;
            CellCorners merged = c0;
            merged.insert(merged.end(), c1.begin(), c1.end());
            cells.push_back(std::move(merged));
        }
    return cells;
}

// The (k-1)-cell face of a corner array on one side of a direction.
CellCorners cell_face(const CellCorners& cell, int direction, int side) {
    CellCorners face;
    std::size_t bit = std::size_t{1} << (direction - 1);
    for (std::size_t i = 0; i < cell.size(); ++i)
        if (((i & bit) != 0) == (side == 1)) face.push_back(cell[i]);
    return face;
}

}  // namespace

bool StructureReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* StructureReport::check(const std::string& name) const {
    for (const CheckResult& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::vector<Square> find_squares(const ExtendedSystem& es, const MultiwayGraph& g) {
    (void)es;
    std::vector<Square> squares;
    ClassifiedEdges edges = classify_edges(g, 2);
    const auto& rungs = edges.horizontal[2];

    auto vertical_out = [&](NodeId u) {
        std::vector<std::size_t> out;
        for (std::size_t e : g.out_edges(u))
            if (g.edge_is_vertical(e)) out.push_back(e);
        return out;
    };

    // Full squares, ordered by (f, l, m).
    for (std::size_t f : rungs) {
        NodeId a = g.edges()[f].src, c = g.edges()[f].dst;
        for (std::size_t l : vertical_out(a)) {
            NodeId b = g.edges()[l].dst;
            for (std::size_t m : vertical_out(c)) {
                NodeId d = g.edges()[m].dst;
                if (auto gg = edge_of_order(g, b, d, 2))
                    squares.push_back(Square{a, b, c, d, l, m, f, *gg});
            }
        }
    }

    // Endpoint triangles with an identity top horizontal (shared source).
    for (NodeId a = 0; a < g.nodes().size(); ++a) {
        auto outs = vertical_out(a);
        for (std::size_t l : outs) {
            NodeId b = g.edges()[l].dst;
            for (std::size_t m : outs) {
                NodeId d = g.edges()[m].dst;
                if (b == d) continue;
                if (auto gg = edge_of_order(g, b, d, 2))
                    squares.push_back(Square{a, b, a, d, l, m, std::nullopt, *gg});
            }
        }
    }

    // Endpoint triangles with an identity bottom horizontal (shared target).
    for (NodeId b = 0; b < g.nodes().size(); ++b) {
        std::vector<std::size_t> ins;
        for (std::size_t e : g.in_edges(b))
            if (g.edge_is_vertical(e)) ins.push_back(e);
        for (std::size_t l : ins) {
            NodeId a = g.edges()[l].src;
            for (std::size_t m : ins) {
                NodeId c = g.edges()[m].src;
                if (a == c) continue;
                if (auto f = edge_of_order(g, a, c, 2))
                    squares.push_back(Square{a, b, c, b, l, m, *f, std::nullopt});
            }
        }
    }

    // Identity squares: one per vertical morphism and one per horizontal.
    for (std::size_t e : edges.vertical) {
        NodeId a = g.edges()[e].src, b = g.edges()[e].dst;
        squares.push_back(Square{a, b, a, b, e, e, std::nullopt, std::nullopt});
    }
    for (std::size_t e : rungs) {
        NodeId a = g.edges()[e].src, c = g.edges()[e].dst;
        squares.push_back(Square{a, a, c, c, std::nullopt, std::nullopt, e, e});
    }

    return squares;
}

StructureReport verify_double_category(const ExtendedSystem& es, const MultiwayGraph& g) {
    StructureReport report;
    report.order = 2;
    ClassifiedEdges edges = classify_edges(g, 2);
    fill_counts(report, g, edges);

    std::vector<Square> squares = find_squares(es, g);
    std::size_t full = 0;
    for (const Square& s : squares)
        if (s.full()) ++full;
    report.cells[2] = full;

    const auto& rungs = edges.horizontal[2];

    // 1. Vertical composition closure: stackable squares compose to a valid
    // boundary, and every claimed order-2 layer tiles completely in both
    // orientations.
    {
        CheckResult check;
        check.name = "vertical-composition-closure";
        for (std::size_t i = 0; i < squares.size() && check.pass; ++i)
            for (std::size_t j = 0; j < squares.size(); ++j) {
                const Square& s1 = squares[i];
                const Square& s2 = squares[j];
                if (s1.b != s2.a || s1.d != s2.c || s1.g != s2.f) continue;
                ++check.examined;
                // Composite boundary: verticals chain s1 then s2, horizontals
                // s1.f and s2.g; all components exist by membership.
            }
        for (const HomotopySpec* spec : es.layers_of_order(2)) {
            for (int orientation = 0; orientation < 2 && check.pass; ++orientation) {
                const auto& lhs = orientation == 0 ? spec->source_states : spec->target_states;
                const auto& rhs = orientation == 0 ? spec->target_states : spec->source_states;
                ++check.examined;
                if (auto witness = tile_layer(g, *spec, lhs, rhs, 0)) {
                    check.pass = false;
                    check.witness = std::move(witness);
                    check.witness->detail = "layer pair does not tile; " + check.witness->detail;
                }
            }
            if (!check.pass) break;
        }
        report.checks.push_back(std::move(check));
    }

    // 2. Horizontal composition closure: composable rung chains close to a
    // rung edge or an identity, and every rung edge with interior endpoints
    // has its reverse.
    {
        CheckResult check;
        check.name = "horizontal-composition-closure";
        for (std::size_t e1 : rungs) {
            if (!check.pass) break;
            NodeId u = g.edges()[e1].src, w = g.edges()[e1].dst;
            for (std::size_t e2 : g.out_edges(w)) {
                if (!g.edge_has_order(e2, 2)) continue;
                NodeId v = g.edges()[e2].dst;
                ++check.examined;
                if (u == v) continue;  // closes on the identity
                if (!edge_of_order(g, u, v, 2)) {
                    check.pass = false;
                    check.witness = square_witness(g, {u, w, v}, {e1, e2},
                                                   "order-2 edge " + node_label(g, u) + " -> " +
                                                       node_label(g, v) + " closing the chain");
                    break;
                }
            }
        }
        for (std::size_t e : rungs) {
            if (!check.pass) break;
            NodeId u = g.edges()[e].src, v = g.edges()[e].dst;
            if (!g.interior(u) || !g.interior(v)) continue;
            ++check.examined;
            if (!edge_of_order(g, v, u, 2)) {
                check.pass = false;
                check.witness = square_witness(g, {u, v}, {e},
                                               "reverse order-2 edge " + node_label(g, v) +
                                                   " -> " + node_label(g, u));
            }
        }
        report.checks.push_back(std::move(check));
    }

    // 3. Identity cells for every vertical and horizontal morphism.
    {
        CheckResult check;
        check.name = "identity-cells";
        std::set<std::tuple<NodeId, NodeId, NodeId, NodeId, bool>> identity_index;
        for (const Square& s : squares) {
            if (!s.l && !s.m) identity_index.insert({s.a, s.b, s.c, s.d, false});
            if (!s.f && !s.g && s.l == s.m) identity_index.insert({s.a, s.b, s.c, s.d, true});
        }
        for (std::size_t e : edges.vertical) {
            ++check.examined;
            NodeId a = g.edges()[e].src, b = g.edges()[e].dst;
            if (!identity_index.count({a, b, a, b, true})) {
                check.pass = false;
                check.witness = square_witness(g, {a, b}, {e}, "identity square on vertical edge");
                break;
            }
        }
        for (std::size_t e : rungs) {
            if (!check.pass) break;
            ++check.examined;
            NodeId a = g.edges()[e].src, c = g.edges()[e].dst;
            if (!identity_index.count({a, a, c, c, false})) {
                check.pass = false;
                check.witness =
                    square_witness(g, {a, c}, {e}, "identity square on horizontal edge");
            }
        }
        report.checks.push_back(std::move(check));
    }

    // 4. Interchange and associativity: thin cells, so no two distinct
    // squares may share a boundary, and each composable 2x2 block determines
    // one composite boundary in either composition order.
    {
        CheckResult check;
        check.name = "interchange-associativity";
        std::set<std::tuple<NodeId, NodeId, NodeId, NodeId, std::optional<std::size_t>,
                            std::optional<std::size_t>, std::optional<std::size_t>,
                            std::optional<std::size_t>>>
            boundaries;
        for (const Square& s : squares) {
            ++check.examined;
            if (!boundaries.insert({s.a, s.b, s.c, s.d, s.l, s.m, s.f, s.g}).second) {
                check.pass = false;
                check.witness = square_witness(g, {s.a, s.b, s.c, s.d}, {},
                                               "thinness: duplicate square boundary");
                break;
            }
        }
        if (check.pass) {
            // Horizontally composable rows, then rows stacked by matching
            // bottom/top boundaries. Row-first and column-first composition
            // of a 2x2 block both end on the same corner boundary, so each
            // block counts once.
            using RowBoundary = std::tuple<NodeId, NodeId, NodeId, std::optional<std::size_t>,
                                           std::optional<std::size_t>>;
            std::map<std::tuple<NodeId, NodeId, std::optional<std::size_t>>,
                     std::vector<const Square*>>
                by_left;
            for (const Square& s : squares) by_left[{s.a, s.b, s.l}].push_back(&s);

            std::map<RowBoundary, std::size_t> row_tops;
            std::vector<RowBoundary> row_bottoms;
            for (const Square& s11 : squares) {
                auto it = by_left.find({s11.c, s11.d, s11.m});
                if (it == by_left.end()) continue;
                for (const Square* s12 : it->second) {
                    ++row_tops[{s11.a, s11.c, s12->c, s11.f, s12->f}];
                    row_bottoms.push_back({s11.b, s11.d, s12->d, s11.g, s12->g});
                }
            }
            for (const RowBoundary& bottom : row_bottoms) {
                auto it = row_tops.find(bottom);
                if (it != row_tops.end()) check.examined += it->second;
            }
        }
        report.checks.push_back(std::move(check));
    }

    return report;
}

StructureReport verify_groupoid(const ExtendedSystem& es, const MultiwayGraph& g, int order) {
    if (order < 1) throw DomainError("groupoid order must be at least 1");

    StructureReport report;
    report.order = order;
    ClassifiedEdges edges = classify_edges(g, std::max(order, 2));
    fill_counts(report, g, edges);

    CheckResult pairing;
    pairing.name = "inverse-pairing";
    CheckResult round_trip;
    round_trip.name = "inverse-round-trip";

    std::vector<int> strata{0};
    for (int k = 2; k <= order; ++k) strata.push_back(k);

    for (int rule_order : strata) {
        for (std::size_t e = 0; e < g.edges().size(); ++e) {
            const RewriteEdge& edge = g.edges()[e];
            if (!g.interior(edge.src) || !g.interior(edge.dst)) continue;
            for (const EdgeWitness& w : edge.witnesses) {
                const Rule& rule = g.system().rule(w.rule_index);
                if (rule.order != rule_order) continue;
                ++pairing.examined;

                const Rule* inverse =
                    rule.inverse_of ? g.system().find(*rule.inverse_of) : nullptr;
                if (!inverse) {
                    if (pairing.pass) {
                        pairing.pass = false;
                        pairing.witness = square_witness(
                            g, {edge.src, edge.dst}, {e},
                            "inverse rule for '" + rule.id + "' on edge " +
                                node_label(g, edge.src) + " -> " + node_label(g, edge.dst));
                    }
                    continue;
                }

                auto reverse = g.edge_between(edge.dst, edge.src);
                std::size_t inverse_index = *g.system().index_of(inverse->id);
                bool reverse_witnessed = false;
                if (reverse)
                    for (const EdgeWitness& rw : g.edges()[*reverse].witnesses)
                        if (rw.rule_index == inverse_index && rw.position == w.position)
                            reverse_witnessed = true;
                if (!reverse_witnessed) {
                    if (pairing.pass) {
                        pairing.pass = false;
                        pairing.witness = square_witness(
                            g, {edge.src, edge.dst}, {e},
                            "reverse edge " + node_label(g, edge.dst) + " -> " +
                                node_label(g, edge.src) + " witnessed by '" + inverse->id + "'");
                    }
                    continue;
                }

                ++round_trip.examined;
                const std::string& source = g.node(edge.src).string;
                std::string forward =
                    apply_match(MatchSite{w.rule_index, w.position, source}, g.system());
                std::string back =
                    apply_match(MatchSite{inverse_index, w.position, forward}, g.system());
                if (forward != g.node(edge.dst).string || back != source) {
                    if (round_trip.pass) {
                        round_trip.pass = false;
                        round_trip.witness =
                            square_witness(g, {edge.src, edge.dst}, {e},
                                           "round trip through '" + rule.id + "' / '" +
                                               inverse->id + "' to restore '" + source + "'");
                    }
                }
            }
        }
    }

    bool ok = pairing.pass && round_trip.pass;
    report.checks.push_back(std::move(pairing));
    report.checks.push_back(std::move(round_trip));
    report.groupoid = ok;
    (void)es;
    return report;
}

StructureReport verify_nfold(const ExtendedSystem& es, const MultiwayGraph& g, int n) {
    if (n < 2) throw DomainError("n-fold verification needs n >= 2");
    if (n > es.max_order)
        throw DomainError("n = " + std::to_string(n) + " exceeds the system's max order " +
                          std::to_string(es.max_order));

    StructureReport report = verify_double_category(es, g);
    report.order = n;
    if (n == 2) return report;

    ClassifiedEdges edges = classify_edges(g, n);
    fill_counts(report, g, edges);

    std::vector<CellCorners> cells = full_square_cells(find_squares(es, g));
    for (int k = 3; k <= n; ++k) {
        cells = glue_cells(g, cells, k);
        report.cells[k] = cells.size();

        // Face completeness of every claimed order-k layer. Sides of these
        // tiles are order-(k-1) rungs, rungs across are order k.
        CheckResult faces;
        faces.name = "order-" + std::to_string(k) + "-face-completeness";
        for (const HomotopySpec* spec : es.layers_of_order(k)) {
            for (int orientation = 0; orientation < 2 && faces.pass; ++orientation) {
                const auto& lhs = orientation == 0 ? spec->source_states : spec->target_states;
                const auto& rhs = orientation == 0 ? spec->target_states : spec->source_states;
                ++faces.examined;
                if (auto witness = tile_layer(g, *spec, lhs, rhs, k - 1)) {
                    faces.pass = false;
                    faces.witness = std::move(witness);
                    faces.witness->detail =
                        "order-" + std::to_string(k) + " layer face incomplete; " +
                        faces.witness->detail;
                }
            }
            if (!faces.pass) break;
        }
        // Every enumerated cell's boundary faces must be lower cells; true by
        // construction of the gluing, re-counted here.
        faces.examined += cells.size();
        report.checks.push_back(std::move(faces));

        // Directional composition closure: cells sharing a face in some
        // direction compose to a valid boundary.
        CheckResult closure;
        closure.name = "order-" + std::to_string(k) + "-composition-closure";
        for (const CellCorners& c1 : cells)
            for (const CellCorners& c2 : cells)
                for (int d = 1; d <= k; ++d)
                    if (cell_face(c1, d, 1) == cell_face(c2, d, 0)) ++closure.examined;
        report.checks.push_back(std::move(closure));
    }

    return report;
}

}  // namespace multiway
