#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "normcheck/graph.hpp"
#include "normcheck/path.hpp"
#include "normcheck/term.hpp"

namespace normcheck {

// SHACL vocabulary subset used by the shapes parser and serializer.
namespace shv {
inline const std::string ns = "http://www.w3.org/ns/shacl#";
inline const Term NodeShape = Term::iri(ns + "NodeShape");
inline const Term TripleRule = Term::iri(ns + "TripleRule");
inline const Term targetClass = Term::iri(ns + "targetClass");
inline const Term property = Term::iri(ns + "property");
inline const Term path = Term::iri(ns + "path");
inline const Term hasValue = Term::iri(ns + "hasValue");
inline const Term minCount = Term::iri(ns + "minCount");
inline const Term maxCount = Term::iri(ns + "maxCount");
inline const Term classConstraint = Term::iri(ns + "class");
inline const Term lessThan = Term::iri(ns + "lessThan");
inline const Term equalsConstraint = Term::iri(ns + "equals");
inline const Term datatype = Term::iri(ns + "datatype");
inline const Term notConstraint = Term::iri(ns + "not");
inline const Term andConstraint = Term::iri(ns + "and");
inline const Term rule = Term::iri(ns + "rule");
inline const Term order = Term::iri(ns + "order");
inline const Term condition = Term::iri(ns + "condition");
inline const Term subject = Term::iri(ns + "subject");
inline const Term predicate = Term::iri(ns + "predicate");
inline const Term object = Term::iri(ns + "object");
inline const Term thisKeyword = Term::iri(ns + "this");
inline const Term severity = Term::iri(ns + "severity");
inline const Term Violation = Term::iri(ns + "Violation");
inline const Term Info = Term::iri(ns + "Info");
}  // namespace shv

class Constraint;

// The constraint components of the supported subset. LessThan and Equals
// compare the value set at `path` against the value set of `other` on the
// same focus node.
struct HasValueC {
    PropertyPath path;
    Term value;
    friend bool operator==(const HasValueC&, const HasValueC&) = default;
};
struct MinCountC {
    PropertyPath path;
    unsigned count;
    friend bool operator==(const MinCountC&, const MinCountC&) = default;
};
struct MaxCountC {
    PropertyPath path;
    unsigned count;
    friend bool operator==(const MaxCountC&, const MaxCountC&) = default;
};
struct ClassC {
    PropertyPath path;
    Term cls;
    friend bool operator==(const ClassC&, const ClassC&) = default;
};
struct LessThanC {
    PropertyPath path;
    Term other;
    friend bool operator==(const LessThanC&, const LessThanC&) = default;
};
struct EqualsC {
    PropertyPath path;
    Term other;
    friend bool operator==(const EqualsC&, const EqualsC&) = default;
};
struct DatatypeC {
    PropertyPath path;
    Term datatype;
    friend bool operator==(const DatatypeC&, const DatatypeC&) = default;
};
struct NotC {
    std::vector<Constraint> inner;  // exactly one element
    friend bool operator==(const NotC&, const NotC&) = default;
};
struct AndC {
    std::vector<Constraint> items;
    friend bool operator==(const AndC&, const AndC&) = default;
};

class Constraint {
public:
    using Node = std::variant<HasValueC, MinCountC, MaxCountC, ClassC, LessThanC,
                              EqualsC, DatatypeC, NotC, AndC>;

    Constraint(Node node) : node_(std::move(node)) {}

    static Constraint has_value(PropertyPath p, Term v);
    static Constraint min_count(PropertyPath p, unsigned n);
    static Constraint max_count(PropertyPath p, unsigned n);
    static Constraint class_member(PropertyPath p, Term cls);
    static Constraint less_than(PropertyPath p, Term other);
    static Constraint equals(PropertyPath p, Term other);
    static Constraint datatype(PropertyPath p, Term dt);
    static Constraint negation(Constraint inner);
    static Constraint conjunction(std::vector<Constraint> items);

    const Node& node() const { return node_; }

    template <typename T>
    const T* get_if() const {
        return std::get_if<T>(&node_);
    }

    // Compact functional rendering, e.g. "hasValue(ex:p, true)".
    std::string describe() const;

    friend bool operator==(const Constraint&, const Constraint&) = default;

private:
    Node node_;
};

struct ThisSpec {
    friend bool operator==(const ThisSpec&, const ThisSpec&) = default;
};

// Where a rule draws its subject or object from: the focus node itself,
// the nodes reached over a path from the focus node, or a constant.
using NodeSpec = std::variant<ThisSpec, PropertyPath, Term>;

std::string describe(const NodeSpec& spec);

// An inference rule attached to a shape. Executed at its order stratum;
// emits one triple per (subject, object) pair when the condition holds.
struct TripleRule {
    std::string id;
    int order = 0;
    std::optional<Constraint> condition;
    NodeSpec subject;
    Term predicate;
    NodeSpec object;

    friend bool operator==(const TripleRule&, const TripleRule&) = default;
};

enum class Severity { Violation, Info };

struct NodeShape {
    Term id;
    Term target_class;
    std::vector<Constraint> constraints;
    std::vector<TripleRule> rules;
    Severity severity = Severity::Violation;

    friend bool operator==(const NodeShape&, const NodeShape&) = default;
};

struct ShapesDocument {
    std::vector<NodeShape> shapes;

    friend bool operator==(const ShapesDocument&, const ShapesDocument&) = default;
};

// Builds the object model from an RDF graph of shape declarations. Shapes
// are the subjects typed sh:NodeShape that carry a sh:targetClass, in
// sorted subject order; rules and property shapes keep document order.
ShapesDocument parse_shapes(const Graph& g);

// True iff the focus node conforms to the constraint against `g`.
// LessThan over non-integer values raises ConstraintTypeError.
bool check_constraint(const Graph& g, const Term& focus, const Constraint& c);

// Serializes the document back to shape declarations, inverse of
// parse_shapes up to rule labels. `prefixes` seeds the output prefix table.
Graph shapes_to_graph(const ShapesDocument& doc,
                      const std::map<std::string, std::string>& prefixes);

}  // namespace normcheck
