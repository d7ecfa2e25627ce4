#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace multiway {

// Rules-file syntax or semantic problem. line is 1-based; 0 when the error is
// not tied to a specific line.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& message, std::size_t line = 0)
        : std::runtime_error(line == 0 ? message
                                       : "line " + std::to_string(line) + ": " + message),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Node or path budget exhausted. Carries per-generation node counts gathered
// before the budget tripped, so partial runs stay reportable.
class BudgetError : public std::runtime_error {
public:
    BudgetError(const std::string& message, std::vector<std::size_t> layer_counts)
        : std::runtime_error(message), layer_counts_(std::move(layer_counts)) {}

    const std::vector<std::size_t>& layer_counts() const noexcept { return layer_counts_; }

private:
    std::vector<std::size_t> layer_counts_;
};

// Misuse of an operation: unknown state strings, invalid match sites,
// mismatched path pairs, order gaps, and similar contract violations.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace multiway
