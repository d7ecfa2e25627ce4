#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "multiway/rules.hpp"

namespace multiway {

// A concrete applicable rewrite: the rule's lhs occurs in subject at position.
struct MatchSite {
    std::size_t rule_index = 0;
    std::size_t position = 0;
    std::string subject;

    friend bool operator==(const MatchSite&, const MatchSite&) = default;
};

// All match sites of all rules against a state, ordered by (rule index,
// position). Overlapping occurrences are all reported.
std::vector<MatchSite> find_matches(const std::string& state, const RuleSystem& system);

// Splices the rule's rhs over [position, position+|lhs|). The subject string
// itself is left untouched. Rejects sites whose lhs is not present.
std::string apply_match(const MatchSite& site, const RuleSystem& system);

// The labeled successor set of a state: one (rule id, result) pair per
// distinct outcome, sorted by (rule index, result). Identical pairs arising
// from different positions collapse.
std::vector<std::pair<std::string, std::string>> successors(const std::string& state,
                                                            const RuleSystem& system);

}  // namespace multiway
