#pragma once

#include <stdexcept>
#include <string>

namespace normcheck {

// Base class for all engine errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Syntax error in a Turtle document or a norm file, with 1-based position.
struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : Error(msg + " (line " + std::to_string(line) + ", column " +
                std::to_string(column) + ")"),
          line(line),
          column(column) {}

    std::size_t line;
    std::size_t column;
};

// Ill-formed shape declarations: unknown constraint components, bad paths,
// rules missing required parts.
struct ShapesError : Error {
    using Error::Error;
};

// A constraint was applied to values it is not defined for, e.g. sh:lessThan
// over non-integer literals.
struct ConstraintTypeError : Error {
    using Error::Error;
};

// A rule set whose negation-as-failure semantics would depend on execution
// order. Carries the ids of the two conflicting rules.
struct StratificationError : Error {
    StratificationError(const std::string& msg, std::string rule_a, std::string rule_b)
        : Error(msg), rule_a(std::move(rule_a)), rule_b(std::move(rule_b)) {}

    std::string rule_a;
    std::string rule_b;
};

// Norm set that cannot be compiled to a runnable shapes document.
struct CompileError : Error {
    using Error::Error;
};

}  // namespace normcheck
