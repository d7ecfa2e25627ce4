#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "multiway/errors.hpp"
#include "multiway/exports.hpp"
#include "multiway/graph.hpp"
#include "multiway/homotopy.hpp"
#include "multiway/rules.hpp"
#include "multiway/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInadmissible = 4;
constexpr int kExitVerification = 5;

struct Config {
    std::string rules_path;
    std::vector<std::string> initial;
    unsigned generations = 0;
    bool generations_set = false;
    std::string from;
    std::string to;
    std::size_t max_len = 6;
    int order = 2;
    std::size_t node_budget = 1'000'000;
    std::size_t path_budget = 100'000;
    std::string format = "json";
    std::string out_path;
    std::vector<std::string> checks;
    bool invert = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw multiway::ParseError("cannot open rules file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const Config& cfg, const std::string& content) {
    if (cfg.out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw multiway::DomainError("cannot open output file '" + cfg.out_path + "'");
    out << content;
}

multiway::RuleSystem load_rules(const Config& cfg) {
    return multiway::parse_rules(read_file(cfg.rules_path));
}

void print_layer_counts(std::ostream& out, const multiway::MultiwayGraph& g) {
    auto layers = g.layer_counts();
    std::size_t edges_total = g.edges().size();
    for (std::size_t gen = 0; gen < layers.size(); ++gen)
        out << "generation " << gen << ": " << layers[gen] << " node(s)\n";
    out << "total: " << g.nodes().size() << " node(s), " << edges_total << " edge(s)\n";
}

int cmd_evolve(const Config& cfg) {
    auto system = load_rules(cfg);
    auto graph = multiway::evolve(cfg.initial, system, cfg.generations,
                                  multiway::EvolveOptions{cfg.node_budget, 0});

    std::string artifact;
    if (cfg.format == "json")
        artifact = multiway::graph_to_json(graph);
    else if (cfg.format == "dot")
        artifact = multiway::graph_to_dot(graph);
    else {
        std::ostringstream text;
        print_layer_counts(text, graph);
        artifact = text.str();
    }
    write_output(cfg, artifact);

    if (cfg.format != "text") print_layer_counts(cfg.out_path.empty() ? std::cerr : std::cout, graph);
    return kExitOk;
}

int cmd_proofs(const Config& cfg) {
    auto system = load_rules(cfg);
    unsigned generations = cfg.generations_set ? cfg.generations
                                               : static_cast<unsigned>(cfg.max_len);
    auto graph = multiway::evolve(cfg.initial, system, generations,
                                  multiway::EvolveOptions{cfg.node_budget, 0});
    auto paths = multiway::enumerate_paths(graph, cfg.from, cfg.to, cfg.max_len,
                                           multiway::PathOptions{cfg.path_budget});

    std::ostringstream out;
    for (const auto& path : paths) {
        out << graph.node(path.nodes[0]).string;
        for (std::size_t i = 0; i < path.edges.size(); ++i) {
            const auto& edge = graph.edges()[path.edges[i]];
            const auto& w = edge.witnesses.front();
            out << " -[" << graph.system().rule(w.rule_index).id << "@" << w.position << "]-> "
                << graph.node(path.nodes[i + 1]).string;
        }
        out << "\n";
    }
    out << paths.size() << " proof(s)\n";
    write_output(cfg, out.str());
    return kExitOk;
}

int cmd_homotopy(const Config& cfg) {
    auto system = load_rules(cfg);
    auto es = multiway::ExtendedSystem::from_rules(system);

    multiway::IterateLimits limits;
    limits.generations = cfg.generations_set ? cfg.generations
                                             : static_cast<unsigned>(cfg.max_len);
    limits.max_len = cfg.max_len;
    limits.node_budget = cfg.node_budget;
    limits.path_budget = cfg.path_budget;

    auto result = multiway::iterate_homotopy(std::move(es), cfg.initial, cfg.from, cfg.to,
                                             cfg.order, limits);

    write_output(cfg, multiway::write_rules(result.system.combined));

    std::ostream& info = cfg.out_path.empty() ? std::cerr : std::cout;
    for (const auto& [order, count] : result.rung_counts)
        info << "order " << order << ": " << count << " rung rule(s)\n";
    if (!result.admissible) {
        info << "inadmissible beyond order " << result.reached_order << "\n";
        return kExitInadmissible;
    }
    return kExitOk;
}

int cmd_verify(const Config& cfg) {
    auto system = load_rules(cfg);
    if (cfg.invert) system = multiway::invert_system(system);
    auto es = multiway::ExtendedSystem::from_rules(system);

    unsigned generations = cfg.generations_set ? cfg.generations
                                               : static_cast<unsigned>(cfg.max_len);
    auto graph = multiway::evolve(cfg.initial, es.combined, generations,
                                  multiway::EvolveOptions{cfg.node_budget, 0});

    std::vector<std::string> checks = cfg.checks;
    if (checks.empty()) {
        checks.push_back(cfg.order >= 3 ? "nfold" : "double");
        checks.push_back("groupoid");
    }

    std::ostringstream out;
    bool all_pass = true;
    for (const std::string& name : checks) {
        multiway::StructureReport report;
        if (name == "double")
            report = multiway::verify_double_category(es, graph);
        else if (name == "groupoid")
            report = multiway::verify_groupoid(es, graph, cfg.order);
        else if (name == "nfold")
            report = multiway::verify_nfold(es, graph, cfg.order);
        else if (name == "squares") {
            auto squares = multiway::find_squares(es, graph);
            std::size_t full = 0;
            for (const auto& s : squares)
                if (s.full()) ++full;
            out << "squares: " << squares.size() << " total, " << full << " full\n";
            continue;
        } else
            throw multiway::DomainError("unknown check '" + name + "'");

        all_pass = all_pass && report.pass();
        out << (cfg.format == "json" ? multiway::report_to_json(report)
                                     : multiway::report_to_text(report));
    }
    write_output(cfg, out.str());
    return all_pass ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiway rewriting graphs, homotopy rule synthesis, structure verification"};
    app.require_subcommand(1);
    app.fallthrough();
    // Config file keys live in a [subcommand] section; flags override them.
    app.set_config("--config");

    Config cfg;
    auto add_common = [&](CLI::App* cmd, bool needs_proposition) {
        cmd->configurable();
        cmd->add_option("-r,--rules", cfg.rules_path, "rules file")->required();
        cmd->add_option("-i,--initial", cfg.initial, "initial state (repeatable)")->required();
        auto* gen = cmd->add_option("-g,--generations", cfg.generations, "generations to expand");
        gen->each([&](const std::string&) { cfg.generations_set = true; });
        cmd->add_option("--node-budget", cfg.node_budget, "node budget");
        cmd->add_option("--path-budget", cfg.path_budget, "path budget");
        cmd->add_option("-o,--out", cfg.out_path, "output path (default stdout)");
        if (needs_proposition) {
            cmd->add_option("--from", cfg.from, "proposition source state")->required();
            cmd->add_option("--to", cfg.to, "proposition target state")->required();
            cmd->add_option("--max-len", cfg.max_len, "maximum proof length");
        }
    };

    auto* evolve_cmd = app.add_subcommand("evolve", "expand a multiway evolution graph");
    add_common(evolve_cmd, false);
    evolve_cmd->get_option("--generations")->required();
    evolve_cmd->add_option("--format", cfg.format, "json | dot | text")
        ->check(CLI::IsMember({"json", "dot", "text"}));

    auto* proofs_cmd = app.add_subcommand("proofs", "enumerate proofs of a proposition");
    add_common(proofs_cmd, true);

    auto* homotopy_cmd = app.add_subcommand("homotopy", "synthesize homotopy rung rules");
    add_common(homotopy_cmd, true);
    homotopy_cmd->add_option("--order", cfg.order, "target homotopy order")
        ->check(CLI::Range(2, 16));

    auto* verify_cmd = app.add_subcommand("verify", "check categorical structure");
    add_common(verify_cmd, false);
    verify_cmd->add_option("--order", cfg.order, "structure order to check")
        ->check(CLI::Range(1, 16));
    verify_cmd->add_option("--check", cfg.checks,
                           "checks to run: double | groupoid | nfold | squares (repeatable)");
    verify_cmd->add_flag("--invert", cfg.invert, "add inverse rules before building");
    auto* verify_format = verify_cmd->add_option("--format", cfg.format, "json | text")
                              ->check(CLI::IsMember({"json", "text"}));

    CLI11_PARSE(app, argc, argv);
    if (verify_cmd->parsed() && verify_format->count() == 0) cfg.format = "text";

    try {
        if (evolve_cmd->parsed()) return cmd_evolve(cfg);
        if (proofs_cmd->parsed()) return cmd_proofs(cfg);
        if (homotopy_cmd->parsed()) return cmd_homotopy(cfg);
        if (verify_cmd->parsed()) return cmd_verify(cfg);
    } catch (const multiway::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const multiway::BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        if (!e.layer_counts().empty()) {
            std::cerr << "completed generations:";
            for (std::size_t count : e.layer_counts()) std::cerr << " " << count;
            std::cerr << "\n";
        }
        return kExitBudget;
    } catch (const multiway::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
