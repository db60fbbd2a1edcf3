#pragma once

#include <map>
#include <string>
#include <vector>

#include "normcheck/graph.hpp"
#include "normcheck/shacl.hpp"

namespace normcheck {

// The domain vocabulary the explanation layer is defined over: processings
// point at the communications concerning them, authorities rule on those.
namespace vocab {
inline const std::string ns = "http://example.org/shRIOL#";
inline const Term is_transparent = Term::iri(ns + "is-transparent");
inline const Term is_theme_of = Term::iri(ns + "is-theme-of");
inline const Term is_rejected_by = Term::iri(ns + "is-rejected-by");
inline const Term is_supported_by = Term::iri(ns + "is-supported-by");
}  // namespace vocab

struct CheckOptions {
    std::vector<std::string> data_files;  // merged with blank-node renaming
    std::string norms_file;               // exactly one of these two
    std::string shapes_file;
    bool explain = false;
    bool infer = true;
};

struct Finding {
    Term shape;
    Term focus;
    std::string message;

    friend bool operator==(const Finding&, const Finding&) = default;
};

// One communication about a processing, with the authorities that ruled
// on its clearness.
struct ExplanationEntry {
    Term communication;
    std::vector<Term> rejected_by;
    std::vector<Term> supported_by;

    friend bool operator==(const ExplanationEntry&, const ExplanationEntry&) = default;
};

struct ComplianceReport {
    bool conforms = true;
    std::vector<Finding> violations;
    std::vector<Finding> info;
    std::map<Term, std::vector<ExplanationEntry>> explanations;
    std::size_t inferred = 0;
};

// Everything a check run produces; the report plus the artifacts callers
// may want to write out (post-inference graph, effective shapes).
struct CheckOutcome {
    ComplianceReport report;
    Graph graph;
    ShapesDocument doc;
    std::map<std::string, std::string> shape_prefixes;
};

// Full pipeline: parse and merge data, compile norms (or parse shapes),
// stratify, run inference (unless disabled), validate, and attach
// explanations to transparency violations when requested.
CheckOutcome check(const CheckOptions& options);

// The communications reachable from `focus` over is-theme-of, each with
// its rejecting and supporting authorities, sorted.
std::vector<ExplanationEntry> explain(const Graph& g, const Term& focus);

// Deterministic renderings of the report. JSON carries exactly the keys
// conforms, violations, info, explanations, inferred; keys and result
// lists are sorted, so equal reports serialize byte-identically.
std::string to_json(const ComplianceReport& report);
std::string to_text(const ComplianceReport& report);

}  // namespace normcheck
