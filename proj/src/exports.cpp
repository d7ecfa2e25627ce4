#include "multiway/exports.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "multiway/errors.hpp"

namespace multiway {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string dot_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

ordered_json rules_to_json(const RuleSystem& system) {
    ordered_json rules = ordered_json::array();
    for (const Rule& r : system.rules()) {
        ordered_json entry;
        entry["id"] = r.id;
        entry["lhs"] = r.lhs;
        entry["rhs"] = r.rhs;
        entry["order"] = r.order;
        if (r.inverse_of) entry["inverse_of"] = *r.inverse_of;
        rules.push_back(std::move(entry));
    }
    return rules;
}

}  // namespace

std::string graph_to_json(const MultiwayGraph& g) {
    ordered_json doc;
    doc["rules"] = rules_to_json(g.system());
    doc["depth"] = g.depth();

    ordered_json nodes = ordered_json::array();
    for (const StateNode& n : g.nodes()) {
        ordered_json entry;
        entry["id"] = n.id;
        entry["string"] = n.string;
        entry["generation"] = n.generation;
        nodes.push_back(std::move(entry));
    }
    doc["nodes"] = std::move(nodes);

    ordered_json edges = ordered_json::array();
    for (const RewriteEdge& e : g.edges()) {
        ordered_json entry;
        entry["src"] = e.src;
        entry["dst"] = e.dst;
        ordered_json witnesses = ordered_json::array();
        for (const EdgeWitness& w : e.witnesses) {
            ordered_json witness;
            witness["rule"] = g.system().rule(w.rule_index).id;
            witness["pos"] = w.position;
            witnesses.push_back(std::move(witness));
        }
        entry["witnesses"] = std::move(witnesses);
        edges.push_back(std::move(entry));
    }
    doc["edges"] = std::move(edges);

    return doc.dump(2) + "\n";
}

MultiwayGraph graph_from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid graph JSON: ") + e.what());
    }

    MultiwayGraph g;
    try {
        std::vector<Rule> rules;
        for (const auto& entry : doc.at("rules")) {
            Rule r;
            r.id = entry.at("id").get<std::string>();
            r.lhs = entry.at("lhs").get<std::string>();
            r.rhs = entry.at("rhs").get<std::string>();
            r.order = entry.at("order").get<int>();
            if (entry.contains("inverse_of"))
                r.inverse_of = entry.at("inverse_of").get<std::string>();
            rules.push_back(std::move(r));
        }
        g.system_ = RuleSystem(std::move(rules));
        g.depth_ = doc.at("depth").get<unsigned>();

        for (const auto& entry : doc.at("nodes")) {
            StateNode n;
            n.id = entry.at("id").get<NodeId>();
            n.string = entry.at("string").get<std::string>();
            n.generation = entry.at("generation").get<unsigned>();
            if (n.id != g.nodes_.size())
                throw ParseError("graph JSON nodes must be dense and sorted by id");
            g.nodes_.push_back(std::move(n));
        }

        for (const auto& entry : doc.at("edges")) {
            RewriteEdge e;
            e.src = entry.at("src").get<NodeId>();
            e.dst = entry.at("dst").get<NodeId>();
            if (e.src >= g.nodes_.size() || e.dst >= g.nodes_.size())
                throw ParseError("graph JSON edge endpoint out of range");
            for (const auto& witness : entry.at("witnesses")) {
                std::string rule_id = witness.at("rule").get<std::string>();
                auto index = g.system_.index_of(rule_id);
                if (!index) throw ParseError("graph JSON witness references unknown rule");
                e.witnesses.push_back(EdgeWitness{*index, witness.at("pos").get<std::size_t>()});
            }
            if (e.witnesses.empty()) throw ParseError("graph JSON edge lacks witnesses");
            g.edges_.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid graph JSON: ") + e.what());
    }

    g.finalize();
    return g;
}

std::string graph_to_dot(const MultiwayGraph& g) {
    std::ostringstream out;
    out << "digraph multiway {\n";
    out << "  rankdir=TB;\n";
    for (const StateNode& n : g.nodes())
        out << "  n" << n.id << " [label=\"" << dot_escape(n.string) << "\"];\n";
    for (const RewriteEdge& e : g.edges()) {
        std::vector<std::string> labels;
        int rung_order = 0;
        for (const EdgeWitness& w : e.witnesses) {
            const Rule& rule = g.system().rule(w.rule_index);
            if (std::find(labels.begin(), labels.end(), rule.id) == labels.end())
                labels.push_back(rule.id);
            rung_order = std::max(rung_order, rule.order);
        }
        out << "  n" << e.src << " -> n" << e.dst << " [label=\"";
        for (std::size_t i = 0; i < labels.size(); ++i)
            out << (i ? "," : "") << dot_escape(labels[i]);
        out << "\"";
        if (rung_order >= 2) out << ", order=" << rung_order << ", style=dashed";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

namespace {

ordered_json witness_to_json(const CheckWitness& w) {
    ordered_json out;
    out["nodes"] = w.nodes;
    out["edges"] = w.edges;
    out["missing"] = w.missing;
    out["detail"] = w.detail;
    return out;
}

}  // namespace

std::string report_to_json(const StructureReport& report) {
    ordered_json doc;
    doc["order"] = report.order;

    ordered_json counts;
    counts["objects"] = report.objects;
    counts["vertical_morphisms"] = report.vertical_morphisms;
    ordered_json horizontal;
    for (const auto& [order, count] : report.horizontal_morphisms)
        horizontal[std::to_string(order)] = count;
    counts["horizontal_morphisms"] = std::move(horizontal);
    ordered_json cells;
    for (const auto& [order, count] : report.cells) cells[std::to_string(order)] = count;
    counts["cells"] = std::move(cells);
    doc["counts"] = std::move(counts);

    ordered_json checks = ordered_json::array();
    for (const CheckResult& c : report.checks) {
        ordered_json entry;
        entry["name"] = c.name;
        entry["pass"] = c.pass;
        entry["examined"] = c.examined;
        if (c.witness) entry["witness"] = witness_to_json(*c.witness);
        checks.push_back(std::move(entry));
    }
    doc["checks"] = std::move(checks);
    doc["groupoid"] = report.groupoid;
    doc["pass"] = report.pass();

    return doc.dump(2) + "\n";
}

namespace {

constexpr std::size_t kTextWidth = 120;

std::string clip(const std::string& s) {
    if (s.size() <= kTextWidth) return s;
    return s.substr(0, kTextWidth - 3) + "...";
}

}  // namespace

std::string report_to_text(const StructureReport& report) {
    std::ostringstream out;
    out << clip("structure report: order " + std::to_string(report.order)) << "\n";

    std::ostringstream counts;
    counts << "objects " << report.objects << "  vertical " << report.vertical_morphisms;
    for (const auto& [order, count] : report.horizontal_morphisms)
        counts << "  horizontal[" << order << "] " << count;
    for (const auto& [order, count] : report.cells)
        counts << "  cells[" << order << "] " << count;
    out << clip(counts.str()) << "\n";

    out << clip("check                                     result  examined") << "\n";
    for (const CheckResult& c : report.checks) {
        std::ostringstream line;
        line << std::left << std::setw(42) << c.name << (c.pass ? "pass" : "FAIL") << std::right
             << std::setw(10) << c.examined;
        out << clip(line.str()) << "\n";
        if (c.witness) {
            out << clip("  missing: " + c.witness->missing) << "\n";
            if (!c.witness->detail.empty()) out << clip("  " + c.witness->detail) << "\n";
        }
    }
    out << clip(std::string("groupoid: ") + (report.groupoid ? "yes" : "no")) << "\n";
    out << clip(std::string("overall: ") + (report.pass() ? "pass" : "FAIL")) << "\n";
    return out.str();
}

}  // namespace multiway
