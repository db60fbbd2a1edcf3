#pragma once

#include <optional>
#include <string>
#include <vector>

#include "normcheck/graph.hpp"
#include "normcheck/shacl.hpp"

namespace normcheck {

// One non-conforming (focus node, constraint) pair.
struct ValidationResult {
    Term focus;
    Term shape_id;
    std::string constraint;     // Constraint::describe() of the failed one
    std::optional<Term> value;  // an offending value, where one exists
    Severity severity;
    std::string message;

    friend bool operator==(const ValidationResult&, const ValidationResult&) = default;
};

struct ValidationReport {
    bool conforms = true;  // true iff no result carries severity Violation
    std::vector<ValidationResult> results;
};

// Checks every constraint of every shape at every focus node (nodes with
// an explicit rdf:type of the shape's target class). Rules are ignored;
// run the inference engine first if derived triples should count.
// Results are sorted by (shape id, focus node), constraints in document
// order within a pair.
ValidationReport validate(const Graph& g, const ShapesDocument& doc);

// The same check, named for the fixture's "exactly one data controller"
// restriction, which ships as an ordinary min/max/class shape.
inline ValidationReport validate_cardinality_restrictions(const Graph& g,
                                                          const ShapesDocument& doc) {
    return validate(g, doc);
}

}  // namespace normcheck
