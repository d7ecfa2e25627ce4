#pragma once

#include <string>

#include "multiway/graph.hpp"
#include "multiway/verify.hpp"

namespace multiway {

// Graph as JSON with pinned key order:
//   { "rules": [...], "depth": n, "nodes": [...], "edges": [...] }
// Nodes sorted by id, edges by (src, dst), witnesses by (rule, pos).
// Byte-stable for identical graphs.
std::string graph_to_json(const MultiwayGraph& g);

// Inverse of graph_to_json.
MultiwayGraph graph_from_json(const std::string& text);

// One digraph; node label is the state string, edge label the rule id(s).
// Homotopy rung edges carry an order=k attribute and dashed style.
std::string graph_to_dot(const MultiwayGraph& g);

std::string report_to_json(const StructureReport& report);

// Human-readable pass/fail table, width-capped at 120 columns.
std::string report_to_text(const StructureReport& report);

}  // namespace multiway
