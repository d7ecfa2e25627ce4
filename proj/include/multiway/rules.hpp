#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace multiway {

// One rewrite rule. Base rules (order 0) fire on every occurrence of lhs
// inside a state; homotopy rungs (order >= 2) fire only when lhs equals the
// whole state, so a rung never rewrites a fragment of a longer state.
struct Rule {
    std::string id;
    std::string lhs;
    std::string rhs;
    int order = 0;
    std::optional<std::string> inverse_of;

    bool whole_string() const { return order >= 2; }

    friend bool operator==(const Rule&, const Rule&) = default;
};

// Ordered collection of rules with unique ids. The alphabet is inferred from
// the rule strings; it is never declared.
class RuleSystem {
public:
    RuleSystem() = default;
    explicit RuleSystem(std::vector<Rule> rules);

    const std::vector<Rule>& rules() const { return rules_; }
    const Rule& rule(std::size_t index) const { return rules_[index]; }
    std::size_t size() const { return rules_.size(); }
    bool empty() const { return rules_.empty(); }

    std::optional<std::size_t> index_of(const std::string& id) const;
    const Rule* find(const std::string& id) const;
    bool contains(const std::string& lhs, const std::string& rhs, int order) const;

    // Characters appearing in any lhs or rhs, sorted and deduplicated.
    std::string alphabet() const;

    int max_rule_order() const;

    // Appends a rule; rejects duplicate ids.
    void add(Rule r);

    friend bool operator==(const RuleSystem& a, const RuleSystem& b) {
        return a.rules_ == b.rules_;
    }

private:
    std::vector<Rule> rules_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Parses the rules-file format:
//
//   # comment to end of line
//   A -> AB                    one rule per line, whitespace tolerant
//   grow: A -> AB              optional leading `name:` sets the id
//   @order 2                   following rules are homotopy rungs of order 2
//   h2_1: AAB -> ABA
//   h2_1_inv: ABA -> AAB
//
// Unnamed rules get ids r1, r2, ... by file position. A rule named `X_inv`
// whose sides are the swap of rule `X` at the same order is cross-linked as
// its inverse, which is how serialized systems round-trip their pairing.
RuleSystem parse_rules(const std::string& text);

// Serializes a system in the format parse_rules accepts, base rules first,
// then each homotopy layer behind its @order line. Lossless round trip.
std::string write_rules(const RuleSystem& system);

// Appends a reversed rule for every rule lacking a declared inverse and links
// the two. Idempotent. Rejects rules with an empty rhs, whose inverse would
// have an empty lhs.
RuleSystem invert_system(const RuleSystem& system);

}  // namespace multiway
