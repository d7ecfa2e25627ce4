#include <doctest.h>

#include <algorithm>
#include <set>

#include "multiway/errors.hpp"
#include "multiway/exports.hpp"
#include "multiway/verify.hpp"

#include "fixtures.hpp"
#include "oracle.hpp"

using namespace multiway;

namespace {

// A 2x2x2 cube over eight single-character states: direction 1 base rewrites,
// direction 2 order-2 rungs, direction 3 order-3 rungs (rungs paired with
// inverses).
ExtendedSystem cube_system() {
    RuleSystem rules = parse_rules(
        "p -> q\n"
        "r -> s\n"
        "t -> u\n"
        "v -> w\n"
        "@order 2\n"
        "d2a: p -> r\n"
        "d2a_inv: r -> p\n"
        "d2b: q -> s\n"
        "d2b_inv: s -> q\n"
        "d2c: t -> v\n"
        "d2c_inv: v -> t\n"
        "d2d: u -> w\n"
        "d2d_inv: w -> u\n"
        "@order 3\n"
        "d3a: p -> t\n"
        "d3a_inv: t -> p\n"
        "d3b: q -> u\n"
        "d3b_inv: u -> q\n"
        "d3c: r -> v\n"
        "d3c_inv: v -> r\n"
        "d3d: s -> w\n"
        "d3d_inv: w -> s\n");
    return ExtendedSystem::from_rules(rules);
}

std::size_t squares_along_featured_pair(const std::vector<Square>& squares,
                                        const MultiwayGraph& g, bool& four_full,
                                        bool& two_degenerate) {
    std::vector<NodeId> red, yellow;
    for (const auto& s : fixtures::kRedStates) red.push_back(*g.find_node(s));
    for (const auto& s : fixtures::kYellowStates) yellow.push_back(*g.find_node(s));

    std::size_t full = 0, degenerate = 0;
    for (std::size_t i = 0; i + 1 < red.size(); ++i) {
        for (const Square& s : squares) {
            if (s.a != red[i] || s.b != red[i + 1]) continue;
            if (s.c != yellow[i] || s.d != yellow[i + 1]) continue;
            if (!s.l || !s.m) continue;
            if (s.full())
                ++full;
            else
                ++degenerate;
        }
    }
    four_full = full == 4;
    two_degenerate = degenerate == 2;
    return full + degenerate;
}

}  // namespace

TEST_CASE("find_squares on the featured system: census along the pair") {
    ExtendedSystem es = fixtures::featured_pair_system();
    MultiwayGraph g = evolve({"AA"}, es.combined, 6);
    auto squares = find_squares(es, g);

    bool four_full = false, two_degenerate = false;
    std::size_t along = squares_along_featured_pair(squares, g, four_full, two_degenerate);
    CHECK(along == 6);
    CHECK(four_full);
    CHECK(two_degenerate);

    // the first displayed rung pair bounds a full square
    NodeId aab = *g.find_node("AAB"), aabb = *g.find_node("AABB");
    NodeId aba = *g.find_node("ABA"), abba = *g.find_node("ABBA");
    bool present = std::any_of(squares.begin(), squares.end(), [&](const Square& s) {
        return s.full() && s.a == aab && s.b == aabb && s.c == aba && s.d == abba;
    });
    CHECK(present);
}

TEST_CASE("find_squares on the base system yields only identity squares") {
    RuleSystem base = fixtures::base_ab();
    ExtendedSystem es = ExtendedSystem::from_base(base);
    MultiwayGraph g = evolve({"AA"}, base, 4);
    auto squares = find_squares(es, g);
    CHECK(!squares.empty());
    for (const Square& s : squares) {
        CHECK(s.degenerate());
        CHECK(!s.f);
        CHECK(!s.g);
        CHECK(s.l == s.m);
    }
    CHECK(squares.size() == g.edges().size());
}

TEST_CASE("verify_double_category passes on the featured system") {
    ExtendedSystem es = fixtures::featured_pair_system();
    MultiwayGraph g = evolve({"AA"}, es.combined, 6);
    StructureReport report = verify_double_category(es, g);
    CHECK(report.pass());
    REQUIRE(report.checks.size() == 4);
    CHECK(report.check("vertical-composition-closure"));
    CHECK(report.check("horizontal-composition-closure"));
    CHECK(report.check("identity-cells"));
    CHECK(report.check("interchange-associativity"));
    CHECK(report.horizontal_morphisms.at(2) == 10);
}

TEST_CASE("verify_double_category passes vacuously on the base system") {
    RuleSystem base = fixtures::base_ab();
    ExtendedSystem es = ExtendedSystem::from_base(base);
    MultiwayGraph g = evolve({"AA"}, base, 4);
    StructureReport report = verify_double_category(es, g);
    CHECK(report.pass());
    CHECK(report.horizontal_morphisms.empty());
    CHECK(report.cells[2] == 0);
}

TEST_CASE("deleting a rung inverse breaks closure with a replayable witness") {
    ExtendedSystem es = fixtures::featured_pair_system();
    ExtendedSystem mutated = fixtures::remove_rule(es, "h2_3_inv");
    MultiwayGraph g = evolve({"AA"}, mutated.combined, 6);
    StructureReport report = verify_double_category(mutated, g);
    CHECK_FALSE(report.pass());

    const CheckResult* vertical = report.check("vertical-composition-closure");
    const CheckResult* horizontal = report.check("horizontal-composition-closure");
    REQUIRE(vertical);
    REQUIRE(horizontal);
    CHECK_FALSE(vertical->pass);
    CHECK_FALSE(horizontal->pass);

    // the witness replays: every referenced edge reproduces its target
    for (const CheckResult* check : {vertical, horizontal}) {
        REQUIRE(check->witness.has_value());
        for (std::size_t e : check->witness->edges) {
            const RewriteEdge& edge = g.edges()[e];
            for (const EdgeWitness& w : edge.witnesses) {
                MatchSite site{w.rule_index, w.position, g.node(edge.src).string};
                CHECK(apply_match(site, g.system()) == g.node(edge.dst).string);
            }
        }
        for (NodeId id : check->witness->nodes) CHECK(id < g.nodes().size());
    }
}

TEST_CASE("deleting any one rung flips at least one check") {
    ExtendedSystem es = fixtures::featured_pair_system();
    std::vector<std::string> rung_ids;
    for (const Rule& r : es.combined.rules())
        if (r.order == 2) rung_ids.push_back(r.id);
    REQUIRE(rung_ids.size() == 10);

    for (const std::string& id : rung_ids) {
        ExtendedSystem mutated = fixtures::remove_rule(es, id);
        MultiwayGraph g = evolve({"AA"}, mutated.combined, 6);
        StructureReport report = verify_double_category(mutated, g);
        CHECK_FALSE(report.pass());
    }
}

TEST_CASE("verify_groupoid passes with inverses and fails without") {
    ExtendedSystem featured = fixtures::featured_pair_system();
    RuleSystem inverted = invert_system(featured.combined);
    ExtendedSystem es = ExtendedSystem::from_rules(inverted);
    MultiwayGraph g = evolve({"AA"}, es.combined, 7);

    StructureReport report = verify_groupoid(es, g, 2);
    CHECK(report.pass());
    CHECK(report.groupoid);

    // round-trip: apply(apply(s, r), r_inv) == s, checked exhaustively inside;
    // spot-check reachability symmetry on interior nodes
    for (const StateNode& a : g.nodes()) {
        if (!g.interior(a.id)) continue;
        CHECK(reachable(g, "AA", a.string) == reachable(g, a.string, "AA"));
    }

    ExtendedSystem base_only = ExtendedSystem::from_base(fixtures::base_ab());
    MultiwayGraph base_graph = evolve({"AA"}, base_only.combined, 4);
    StructureReport failing = verify_groupoid(base_only, base_graph, 1);
    CHECK_FALSE(failing.pass());
    CHECK_FALSE(failing.groupoid);
    const CheckResult* pairing = failing.check("inverse-pairing");
    REQUIRE(pairing);
    REQUIRE(pairing->witness.has_value());
    REQUIRE(pairing->witness->nodes.size() == 2);
    CHECK(base_graph.node(pairing->witness->nodes[0]).string == "AA");
    CHECK(base_graph.node(pairing->witness->nodes[1]).string == "AAB");
}

TEST_CASE("verify_nfold(2) delegates to verify_double_category") {
    ExtendedSystem es = fixtures::featured_pair_system();
    MultiwayGraph g = evolve({"AA"}, es.combined, 6);
    std::string direct = report_to_json(verify_double_category(es, g));
    std::string via_nfold = report_to_json(verify_nfold(es, g, 2));
    CHECK(direct == via_nfold);
}

TEST_CASE("verify_nfold counts the synthetic cube and matches the oracle") {
    ExtendedSystem es = cube_system();
    MultiwayGraph g = evolve({"p"}, es.combined, 4);
    CHECK(g.nodes().size() == 8);

    StructureReport report = verify_nfold(es, g, 3);
    CHECK(report.pass());
    CHECK(report.cells.at(3) == 4);  // one geometric cube, four orientations
    CHECK(report.cells.at(3) == oracle::cube_count(g));
    CHECK(report.check("order-3-face-completeness"));
    CHECK(report.check("order-3-composition-closure"));

    CHECK_THROWS_AS(verify_nfold(es, g, 4), DomainError);
}

TEST_CASE("verify_nfold(4) enumerates the synthetic 4-hypercube") {
    // Corners of {0,1}^4 as the letters a..p; direction d flips bit d-1.
    // Direction 1 is a base rewrite, directions 2..4 are inverse-paired rungs.
    std::string text;
    auto corner = [](int i) { return std::string(1, static_cast<char>('a' + i)); };
    for (int i = 0; i < 16; ++i)
        if (!(i & 1)) text += corner(i) + " -> " + corner(i | 1) + "\n";
    int serial = 0;
    for (int d = 2; d <= 4; ++d) {
        int bit = 1 << (d - 1);
        text += "@order " + std::to_string(d) + "\n";
        for (int i = 0; i < 16; ++i) {
            if (i & bit) continue;
            std::string id = "h" + std::to_string(d) + "_" + std::to_string(++serial);
            text += id + ": " + corner(i) + " -> " + corner(i | bit) + "\n";
            text += id + "_inv: " + corner(i | bit) + " -> " + corner(i) + "\n";
        }
    }
    ExtendedSystem es = ExtendedSystem::from_rules(parse_rules(text));
    MultiwayGraph g = evolve({"a"}, es.combined, 5);
    CHECK(g.nodes().size() == 16);

    StructureReport report = verify_nfold(es, g, 4);
    CHECK(report.pass());
    CHECK(report.cells.at(2) == 8);
    CHECK(report.cells.at(3) == 8);
    CHECK(report.cells.at(4) == 8);
    CHECK(report.cells.at(3) == oracle::cube_count(g));
}

TEST_CASE("thinness: no two squares share a boundary") {
    ExtendedSystem es = fixtures::featured_pair_system();
    MultiwayGraph g = evolve({"AA"}, es.combined, 6);
    auto squares = find_squares(es, g);
    std::set<std::tuple<NodeId, NodeId, NodeId, NodeId, std::optional<std::size_t>,
                        std::optional<std::size_t>, std::optional<std::size_t>,
                        std::optional<std::size_t>>>
        seen;
    for (const Square& s : squares)
        CHECK(seen.insert({s.a, s.b, s.c, s.d, s.l, s.m, s.f, s.g}).second);
}

TEST_CASE("deleting an order-3 rung breaks face completeness with a witness") {
    IterateLimits limits;
    limits.generations = 6;
    limits.max_len = 6;
    auto result = iterate_homotopy(ExtendedSystem::from_base(fixtures::base_ab()), {"AA"}, "AA",
                                   "ABBBABBB", 3, limits);
    REQUIRE(result.admissible);
    REQUIRE(std::any_of(result.system.layers.begin(), result.system.layers.end(),
                        [](const HomotopySpec& s) { return s.order == 3; }));

    MultiwayGraph intact_graph = evolve({"AA"}, result.system.combined, 6);
    StructureReport intact = verify_nfold(result.system, intact_graph, 3);
    CHECK(intact.pass());
    const CheckResult* faces = intact.check("order-3-face-completeness");
    REQUIRE(faces);
    CHECK(faces->examined > 0);

    std::string victim;
    for (const Rule& r : result.system.combined.rules())
        if (r.order == 3 && !r.id.ends_with("_inv")) {
            victim = r.id;
            break;
        }
    REQUIRE(!victim.empty());

    ExtendedSystem mutated = fixtures::remove_rule(result.system, victim);
    MultiwayGraph g = evolve({"AA"}, mutated.combined, 6);
    StructureReport report = verify_nfold(mutated, g, 3);
    CHECK_FALSE(report.pass());
    const CheckResult* mutated_faces = report.check("order-3-face-completeness");
    REQUIRE(mutated_faces);
    CHECK_FALSE(mutated_faces->pass);
    REQUIRE(mutated_faces->witness.has_value());
    CHECK(mutated_faces->witness->missing.find("order-3 edge") != std::string::npos);
    for (NodeId id : mutated_faces->witness->nodes) CHECK(id < g.nodes().size());
}

TEST_CASE("verify_nfold rejects out-of-range orders") {
    ExtendedSystem es = fixtures::featured_pair_system();
    MultiwayGraph g = evolve({"AA"}, es.combined, 6);
    CHECK_THROWS_AS(verify_nfold(es, g, 1), DomainError);
    CHECK_THROWS_AS(verify_nfold(es, g, 3), DomainError);
}
