#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "normcheck/path.hpp"
#include "normcheck/shacl.hpp"
#include "normcheck/term.hpp"

namespace normcheck {

// Antecedent atoms. Paths anchor at the norm's target individual; the
// intermediate nodes a path crosses are the rule's implicit existentials.
struct ClassAtom {
    PropertyPath path;
    Term cls;
    friend bool operator==(const ClassAtom&, const ClassAtom&) = default;
};
struct CompareAtom {
    enum class Kind { LessThan, Equals };
    Kind kind;
    PropertyPath path;
    Term other;  // predicate on the anchor to compare against
    friend bool operator==(const CompareAtom&, const CompareAtom&) = default;
};
struct CardinalityAtom {
    enum class Kind { Min, Max };
    Kind kind;
    PropertyPath path;
    unsigned count;
    friend bool operator==(const CardinalityAtom&, const CardinalityAtom&) = default;
};

using Atom = std::variant<ClassAtom, CompareAtom, CardinalityAtom>;

// One antecedent conjunct; `negated` realizes negation-as-failure.
struct AntecedentAtom {
    bool negated = false;
    Atom atom;
    friend bool operator==(const AntecedentAtom&, const AntecedentAtom&) = default;
};

// Obligations and permissions require a value; constitutive rules assert
// a new triple.
struct RequireConsequent {
    PropertyPath path;
    Term value;
    friend bool operator==(const RequireConsequent&, const RequireConsequent&) = default;
};
struct AssertConsequent {
    NodeSpec subject;  // ThisSpec or PropertyPath
    Term predicate;
    NodeSpec object;  // constant Term or PropertyPath
    friend bool operator==(const AssertConsequent&, const AssertConsequent&) = default;
};

enum class NormKind { Obligation, Permission, Constitutive };

struct NormRule {
    std::string id;  // resolved to a full IRI during parsing
    NormKind kind;
    Term target;    // anchor class
    int order = 0;  // constitutive rules only
    std::vector<AntecedentAtom> antecedent;
    std::variant<RequireConsequent, AssertConsequent> consequent;

    friend bool operator==(const NormRule&, const NormRule&) = default;
};

struct NormSet {
    std::vector<NormRule> norms;
    std::map<std::string, std::string> prefixes;

    std::vector<const NormRule*> obligations() const { return of_kind(NormKind::Obligation); }
    std::vector<const NormRule*> permissions() const { return of_kind(NormKind::Permission); }
    std::vector<const NormRule*> constitutive() const { return of_kind(NormKind::Constitutive); }

private:
    std::vector<const NormRule*> of_kind(NormKind k) const {
        std::vector<const NormRule*> out;
        for (const NormRule& n : norms)
            if (n.kind == k) out.push_back(&n);
        return out;
    }
};

// Parses the s-expression norm format:
//
//   (:prefix ex "http://example.org/ns#")
//   (norm :id "ex:CheckSomething" :kind obligation :target ex:Thing
//         :require (ex:is-ok true))
//   (norm :id "ex:DeriveFlag" :kind constitutive :order 1 :target ex:Thing
//         :if ((naf (class ex:points-to ex:Excluded)))
//         :assert (self ex:flag true))
//
// `;` starts a line comment. Ids are resolved against the declared
// prefixes. Obligations and permissions take :require, constitutive rules
// take :assert and may carry :order. Errors carry line/column; duplicate
// ids and nested naf are rejected.
NormSet parse_norms(std::string_view text);
NormSet parse_norms_file(const std::string& path);

// Emits the SHACL counterpart of each norm, in document order:
// obligations become Violation-severity hasValue shapes, permissions the
// same at Info severity, constitutive rules one TripleRule each (atoms
// conjoined into the condition, naf becoming sh:not). The compiled rule
// set is checked with stratify; failures surface as CompileError naming
// the offending norms. Obligations/permissions with a non-empty :if are
// rejected: the target class is their only supported guard.
ShapesDocument compile(const NormSet& ns);

}  // namespace normcheck
