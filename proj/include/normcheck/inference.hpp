#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "normcheck/graph.hpp"
#include "normcheck/shacl.hpp"

namespace normcheck {

// Position of a rule inside a ShapesDocument.
struct RuleRef {
    std::size_t shape_index;
    std::size_t rule_index;

    friend auto operator<=>(const RuleRef&, const RuleRef&) = default;
};

// All rules sharing one sh:order value, in document order.
struct OrderGroup {
    int order;
    std::vector<RuleRef> rules;
};

// Groups a document's rules by ascending order and checks stratification.
// What a rule reads — condition vocabulary, emission paths, its own target
// class — must be settled when it runs: no other rule at a strictly later
// order may emit into it (strata are never revisited, so the output stays
// a fixpoint), and for a rule whose condition is not monotone under graph
// growth (it contains sh:not, sh:maxCount, sh:lessThan, sh:equals,
// sh:datatype or sh:class) the same holds for rules at its own order.
// Under that discipline negation-as-failure reads a settled lower stratum
// and the final triple set is independent of within-group execution order.
//
// Throws StratificationError naming the two conflicting rules otherwise.
std::vector<OrderGroup> stratify(const ShapesDocument& doc);

// Why an inferred triple exists: the first rule firing that produced it.
struct Provenance {
    std::string rule_id;
    int order;
    Term focus;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct InferenceResult {
    Graph graph;                            // data plus inferred triples
    std::map<Triple, Provenance> provenance;  // inferred triples only
};

// Forward-chains the document's rules over `data`: order groups run lowest
// first, each group iterated to fixpoint, conditions checked against the
// graph as inferred so far. Monotone (output contains data) and guaranteed
// to halt: every emitted term is an existing node or a rule constant.
//
// Requires stratify(doc) to succeed; call it first.
InferenceResult execute_rules(const Graph& data, const ShapesDocument& doc);

}  // namespace normcheck
