#include "multiway/rewrite.hpp"

#include <algorithm>

#include "multiway/errors.hpp"

namespace multiway {

std::vector<MatchSite> find_matches(const std::string& state, const RuleSystem& system) {
    std::vector<MatchSite> sites;
    for (std::size_t r = 0; r < system.size(); ++r) {
        const Rule& rule = system.rule(r);
        if (rule.whole_string()) {
            if (state == rule.lhs) sites.push_back(MatchSite{r, 0, state});
            continue;
        }
        std::size_t pos = state.find(rule.lhs);
        while (pos != std::string::npos) {
            sites.push_back(MatchSite{r, pos, state});
            pos = state.find(rule.lhs, pos + 1);
        }
    }
    return sites;
}

std::string apply_match(const MatchSite& site, const RuleSystem& system) {
    if (site.rule_index >= system.size())
        throw DomainError("match site references rule index " + std::to_string(site.rule_index) +
                          " outside the system");
    const Rule& rule = system.rule(site.rule_index);
    if (site.position + rule.lhs.size() > site.subject.size() ||
        site.subject.compare(site.position, rule.lhs.size(), rule.lhs) != 0)
        throw DomainError("rule '" + rule.id + "' does not match '" + site.subject +
                          "' at position " + std::to_string(site.position));
    if (rule.whole_string() && (site.position != 0 || rule.lhs.size() != site.subject.size()))
        throw DomainError("rung rule '" + rule.id + "' only applies to the whole state");

    std::string result;
    result.reserve(site.subject.size() - rule.lhs.size() + rule.rhs.size());
    result.append(site.subject, 0, site.position);
    result.append(rule.rhs);
    result.append(site.subject, site.position + rule.lhs.size(), std::string::npos);
    return result;
}

std::vector<std::pair<std::string, std::string>> successors(const std::string& state,
                                                            const RuleSystem& system) {
    std::vector<std::pair<std::size_t, std::string>> indexed;
    for (const MatchSite& site : find_matches(state, system))
        indexed.emplace_back(site.rule_index, apply_match(site, system));
    std::sort(indexed.begin(), indexed.end());
    indexed.erase(std::unique(indexed.begin(), indexed.end()), indexed.end());

    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(indexed.size());
    for (auto& [rule_index, result] : indexed)
        out.emplace_back(system.rule(rule_index).id, std::move(result));
    return out;
}

}  // namespace multiway
