#pragma once

#include <string>
#include <vector>

#include "normcheck/term.hpp"

namespace normcheck {

// A predicate to follow, or an ordered sequence of predicates to follow one
// after the other. Every step is an IRI; a sequence has length >= 2.
class PropertyPath {
public:
    static PropertyPath predicate(Term pred);
    static PropertyPath sequence(std::vector<Term> steps);
    // Builds whichever variant fits the number of steps (>= 1 required).
    static PropertyPath of(std::vector<Term> steps);

    bool is_sequence() const { return steps_.size() > 1; }
    const std::vector<Term>& steps() const { return steps_; }

    // "pred" for a single step, "(p1 p2 ...)" for a sequence.
    std::string display() const;

    friend auto operator<=>(const PropertyPath&, const PropertyPath&) = default;

private:
    explicit PropertyPath(std::vector<Term> steps);

    std::vector<Term> steps_;
};

}  // namespace normcheck
