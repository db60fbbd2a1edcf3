#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace normcheck {

// Well-known datatype and vocabulary IRIs.
namespace xsd {
inline const std::string ns = "http://www.w3.org/2001/XMLSchema#";
inline const std::string string_type = ns + "string";
inline const std::string boolean_type = ns + "boolean";
inline const std::string integer_type = ns + "integer";
}  // namespace xsd

// An RDF term: IRI, blank node, or typed literal.
//
// Supported literal datatypes are xsd:string, xsd:boolean and xsd:integer.
// Two terms are equal iff kind, lexical content and datatype all match;
// the string "true" is not equal to the boolean true.
class Term {
public:
    enum class Kind { Iri, Blank, Literal };

    Term() : kind_(Kind::Iri) {}

    static Term iri(std::string value) { return Term(Kind::Iri, std::move(value), {}); }
    static Term blank(std::string label) { return Term(Kind::Blank, std::move(label), {}); }
    static Term literal(std::string lexical, std::string datatype) {
        return Term(Kind::Literal, std::move(lexical), std::move(datatype));
    }
    static Term string_lit(std::string value) {
        return Term(Kind::Literal, std::move(value), xsd::string_type);
    }
    static Term boolean(bool v) {
        return Term(Kind::Literal, v ? "true" : "false", xsd::boolean_type);
    }
    static Term integer(long long v) {
        return Term(Kind::Literal, std::to_string(v), xsd::integer_type);
    }

    Kind kind() const { return kind_; }
    bool is_iri() const { return kind_ == Kind::Iri; }
    bool is_blank() const { return kind_ == Kind::Blank; }
    bool is_literal() const { return kind_ == Kind::Literal; }

    // IRI string, blank node label, or literal lexical form.
    const std::string& value() const { return value_; }
    // Datatype IRI; empty for non-literals.
    const std::string& datatype() const { return datatype_; }

    bool is_integer_literal() const { return is_literal() && datatype_ == xsd::integer_type; }
    bool is_boolean_literal() const { return is_literal() && datatype_ == xsd::boolean_type; }

    // Numeric value of an integer literal; nullopt for anything else.
    std::optional<long long> integer_value() const;

    // Canonical rendering: bare IRI, "_:" label, quoted string, or bare
    // boolean/integer lexical form. Used in reports and error messages.
    std::string display() const;

    friend auto operator<=>(const Term&, const Term&) = default;

private:
    Term(Kind kind, std::string value, std::string datatype)
        : kind_(kind), value_(std::move(value)), datatype_(std::move(datatype)) {}

    Kind kind_;
    std::string value_;
    std::string datatype_;
};

// A single RDF statement. Subjects are IRIs or blank nodes, predicates
// always IRIs; the store rejects anything else.
struct Triple {
    Term subject;
    Term predicate;
    Term object;

    friend auto operator<=>(const Triple&, const Triple&) = default;

    std::string display() const;
};

namespace rdf {
inline const std::string ns = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline const Term type = Term::iri(ns + "type");
inline const Term first = Term::iri(ns + "first");
inline const Term rest = Term::iri(ns + "rest");
inline const Term nil = Term::iri(ns + "nil");
}  // namespace rdf

namespace rdfs {
inline const std::string ns = "http://www.w3.org/2000/01/rdf-schema#";
}

}  // namespace normcheck
