#include "multiway/rules.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

#include "multiway/errors.hpp"

namespace multiway {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    std::size_t end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
}

bool has_whitespace(const std::string& s) {
    return std::any_of(s.begin(), s.end(),
                       [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

// Links rules named `X_inv` to rule `X` when their sides are swapped and the
// orders match. This carries inverse pairing through serialization.
void link_inverse_pairs(std::vector<Rule>& rules) {
    std::map<std::string, std::size_t> by_id;
    for (std::size_t i = 0; i < rules.size(); ++i) by_id.emplace(rules[i].id, i);

    for (auto& rule : rules) {
        if (rule.inverse_of) continue;
        constexpr std::string_view suffix = "_inv";
        if (rule.id.size() <= suffix.size()) continue;
        if (rule.id.compare(rule.id.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
        auto it = by_id.find(rule.id.substr(0, rule.id.size() - suffix.size()));
        if (it == by_id.end()) continue;
        Rule& partner = rules[it->second];
        if (partner.inverse_of) continue;
        if (partner.order != rule.order) continue;
        if (partner.lhs != rule.rhs || partner.rhs != rule.lhs) continue;
        partner.inverse_of = rule.id;
        rule.inverse_of = partner.id;
    }
}

}  // namespace

RuleSystem::RuleSystem(std::vector<Rule> rules) {
    for (auto& r : rules) add(std::move(r));
}

void RuleSystem::add(Rule r) {
    if (r.id.empty()) throw ParseError("rule id must not be empty");
    if (r.lhs.empty()) throw ParseError("rule '" + r.id + "' has an empty lhs");
    if (!index_.emplace(r.id, rules_.size()).second)
        throw ParseError("duplicate rule id '" + r.id + "'");
    rules_.push_back(std::move(r));
}

std::optional<std::size_t> RuleSystem::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const Rule* RuleSystem::find(const std::string& id) const {
    auto idx = index_of(id);
    return idx ? &rules_[*idx] : nullptr;
}

bool RuleSystem::contains(const std::string& lhs, const std::string& rhs, int order) const {
    return std::any_of(rules_.begin(), rules_.end(), [&](const Rule& r) {
        return r.order == order && r.lhs == lhs && r.rhs == rhs;
    });
}

std::string RuleSystem::alphabet() const {
    std::set<char> chars;
    for (const Rule& r : rules_) {
        chars.insert(r.lhs.begin(), r.lhs.end());
        chars.insert(r.rhs.begin(), r.rhs.end());
    }
    return std::string(chars.begin(), chars.end());
}

int RuleSystem::max_rule_order() const {
    int order = 0;
    for (const Rule& r : rules_) order = std::max(order, r.order);
    return order;
}

RuleSystem parse_rules(const std::string& text) {
    std::vector<Rule> rules;
    std::set<std::string> ids;
    int current_order = 0;

    std::istringstream stream(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(stream, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::string line = trim(raw);
        if (line.empty()) continue;

        if (line[0] == '@') {
            std::istringstream ann(line.substr(1));
            std::string keyword;
            long order = 0;
            if (!(ann >> keyword) || keyword != "order" || !(ann >> order))
                throw ParseError("unrecognized annotation '" + line + "'", lineno);
            std::string rest;
            if (ann >> rest)
                throw ParseError("unexpected trailing token '" + rest + "'", lineno);
            if (order < 2) throw ParseError("@order must be at least 2", lineno);
            current_order = static_cast<int>(order);
            continue;
        }

        std::size_t arrow = line.find("->");
        if (arrow == std::string::npos)
            throw ParseError("expected 'lhs -> rhs'", lineno);

        std::string left = trim(line.substr(0, arrow));
        std::string rhs = trim(line.substr(arrow + 2));
        if (has_whitespace(rhs)) throw ParseError("rhs must be a single token", lineno);
        if (rhs.find("->") != std::string::npos)
            throw ParseError("'->' is reserved and cannot appear in rhs", lineno);

        std::string id;
        if (auto colon = left.find(':'); colon != std::string::npos) {
            id = trim(left.substr(0, colon));
            if (!is_identifier(id))
                throw ParseError("rule name '" + id + "' is not an identifier", lineno);
            left = trim(left.substr(colon + 1));
        }
        if (left.empty()) throw ParseError("empty lhs", lineno);
        if (has_whitespace(left)) throw ParseError("lhs must be a single token", lineno);

        if (id.empty()) id = "r" + std::to_string(rules.size() + 1);
        if (!ids.insert(id).second)
            throw ParseError("duplicate rule id '" + id + "'", lineno);

        rules.push_back(Rule{id, left, rhs, current_order, std::nullopt});
    }

    link_inverse_pairs(rules);
    return RuleSystem(std::move(rules));
}

std::string write_rules(const RuleSystem& system) {
    std::map<int, std::vector<const Rule*>> by_order;
    for (const Rule& r : system.rules()) by_order[r.order].push_back(&r);

    std::ostringstream out;
    bool first_block = true;
    for (const auto& [order, rules] : by_order) {
        if (!first_block) out << "\n";
        first_block = false;
        if (order != 0) out << "@order " << order << "\n";
        for (const Rule* r : rules) out << r->id << ": " << r->lhs << " -> " << r->rhs << "\n";
    }
    return out.str();
}

RuleSystem invert_system(const RuleSystem& system) {
    for (const Rule& r : system.rules())
        if (!r.inverse_of && r.rhs.empty())
            throw DomainError("rule '" + r.id + "' has an empty rhs and cannot be inverted");

    std::vector<Rule> rules = system.rules();
    std::size_t original = rules.size();
    for (std::size_t i = 0; i < original; ++i) {
        if (rules[i].inverse_of) continue;
        std::string inverse_id = rules[i].id + "_inv";
        if (std::any_of(rules.begin(), rules.end(),
                        [&](const Rule& r) { return r.id == inverse_id; }))
            throw DomainError("cannot invert: id '" + inverse_id + "' already taken");
        rules[i].inverse_of = inverse_id;
        rules.push_back(Rule{inverse_id, rules[i].rhs, rules[i].lhs, rules[i].order, rules[i].id});
    }
    return RuleSystem(std::move(rules));
}

}  // namespace multiway
