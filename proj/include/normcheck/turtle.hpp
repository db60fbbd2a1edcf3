#pragma once

#include <string>
#include <string_view>

#include "normcheck/graph.hpp"

namespace normcheck {

// Parses a document in the supported Turtle subset: @prefix, the `a`
// keyword, prefixed names, absolute IRIs in angle brackets, string/boolean/
// integer literals, `;` and `,` abbreviations, blank nodes (named and
// anonymous property lists) and RDF collections, which are expanded to
// rdf:first/rdf:rest chains.
//
// Blank node labels are freshly allocated per parse, so labels from two
// documents never collide after Graph::merge.
Graph parse_turtle(std::string_view text);
Graph parse_turtle_file(const std::string& path);

// Deterministic serialization: prefix declarations sorted by prefix, then
// one statement per triple in subject/predicate/object order. Re-parsing
// the output yields a graph isomorphic to the input.
std::string serialize_turtle(const Graph& g);

}  // namespace normcheck
