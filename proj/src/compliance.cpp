#include "normcheck/compliance.hpp"

#include <json.hpp>

#include "normcheck/errors.hpp"
#include "normcheck/inference.hpp"
#include "normcheck/norms.hpp"
#include "normcheck/turtle.hpp"
#include "normcheck/validator.hpp"

namespace normcheck {

namespace {

bool constraint_mentions(const Constraint& c, const Term& iri) {
    struct Visitor {
        const Term& iri;

        bool in_path(const PropertyPath& p) const {
            for (const Term& step : p.steps())
                if (step == iri) return true;
            return false;
        }
        bool operator()(const HasValueC& c) const { return in_path(c.path); }
        bool operator()(const MinCountC& c) const { return in_path(c.path); }
        bool operator()(const MaxCountC& c) const { return in_path(c.path); }
        bool operator()(const ClassC& c) const { return in_path(c.path) || c.cls == iri; }
        bool operator()(const LessThanC& c) const { return in_path(c.path) || c.other == iri; }
        bool operator()(const EqualsC& c) const { return in_path(c.path) || c.other == iri; }
        bool operator()(const DatatypeC& c) const { return in_path(c.path); }
        bool operator()(const NotC& c) const {
            return constraint_mentions(c.inner.front(), iri);
        }
        bool operator()(const AndC& c) const {
            for (const Constraint& item : c.items)
                if (constraint_mentions(item, iri)) return true;
            return false;
        }
    };
    return std::visit(Visitor{iri}, c.node());
}

bool shape_mentions(const ShapesDocument& doc, const Term& shape_id, const Term& iri) {
    for (const NodeShape& shape : doc.shapes) {
        if (shape.id != shape_id) continue;
        for (const Constraint& c : shape.constraints)
            if (constraint_mentions(c, iri)) return true;
    }
    return false;
}

}  // namespace

std::vector<ExplanationEntry> explain(const Graph& g, const Term& focus) {
    std::vector<ExplanationEntry> out;
    for (const Term& comm :
         g.evaluate_path(focus, PropertyPath::predicate(vocab::is_theme_of))) {
        ExplanationEntry entry{comm, {}, {}};
        if (!comm.is_literal()) {
            for (const Triple& t : g.match(comm, vocab::is_rejected_by, std::nullopt))
                entry.rejected_by.push_back(t.object);
            for (const Triple& t : g.match(comm, vocab::is_supported_by, std::nullopt))
                entry.supported_by.push_back(t.object);
        }
        out.push_back(std::move(entry));
    }
    return out;
}

CheckOutcome check(const CheckOptions& options) {
    if (options.data_files.empty()) throw Error("no data files given");
    if (options.norms_file.empty() == options.shapes_file.empty())
        throw Error("exactly one of a norms file or a shapes file is required");

    Graph data;
    for (const std::string& file : options.data_files) data.merge(parse_turtle_file(file));

    CheckOutcome out;
    if (!options.norms_file.empty()) {
        NormSet norms = parse_norms_file(options.norms_file);
        out.shape_prefixes = norms.prefixes;
        out.doc = compile(norms);
    } else {
        Graph shapes_graph = parse_turtle_file(options.shapes_file);
        out.shape_prefixes = shapes_graph.prefixes();
        out.doc = parse_shapes(shapes_graph);
    }
    stratify(out.doc);  // rejects bad rule sets even when inference is off

    if (options.infer) {
        InferenceResult inferred = execute_rules(data, out.doc);
        out.graph = std::move(inferred.graph);
        out.report.inferred = inferred.provenance.size();
    } else {
        out.graph = std::move(data);
    }

    ValidationReport validation = validate(out.graph, out.doc);
    out.report.conforms = validation.conforms;
    for (const ValidationResult& r : validation.results) {
        Finding finding{r.shape_id, r.focus, r.message};
        if (r.severity == Severity::Violation) {
            if (options.explain && shape_mentions(out.doc, r.shape_id, vocab::is_transparent))
                out.report.explanations.emplace(r.focus, explain(out.graph, r.focus));
            out.report.violations.push_back(std::move(finding));
        } else {
            out.report.info.push_back(std::move(finding));
        }
    }
    return out;
}

namespace {

nlohmann::json findings_json(const std::vector<Finding>& findings) {
    auto arr = nlohmann::json::array();
    for (const Finding& f : findings)
        arr.push_back({{"shape", f.shape.display()},
                       {"focus", f.focus.display()},
                       {"message", f.message}});
    return arr;
}

nlohmann::json terms_json(const std::vector<Term>& terms) {
    auto arr = nlohmann::json::array();
    for (const Term& t : terms) arr.push_back(t.display());
    return arr;
}

}  // namespace

std::string to_json(const ComplianceReport& report) {
    nlohmann::json j;
    j["conforms"] = report.conforms;
    j["violations"] = findings_json(report.violations);
    j["info"] = findings_json(report.info);
    auto explanations = nlohmann::json::object();
    for (const auto& [focus, entries] : report.explanations) {
        auto arr = nlohmann::json::array();
        for (const ExplanationEntry& e : entries)
            arr.push_back({{"communication", e.communication.display()},
                           {"rejectedBy", terms_json(e.rejected_by)},
                           {"supportedBy", terms_json(e.supported_by)}});
        explanations[focus.display()] = std::move(arr);
    }
    j["explanations"] = std::move(explanations);
    j["inferred"] = report.inferred;
    return j.dump(2) + "\n";
}

namespace {

void append_findings(std::string& out, const char* label,
                     const std::vector<Finding>& findings) {
    out += label;
    out += " (" + std::to_string(findings.size()) + ")\n";
    for (const Finding& f : findings) {
        out += "  " + f.focus.display() + " fails " + f.shape.display() + "\n";
        out += "    " + f.message + "\n";
    }
}

std::string join(const std::vector<Term>& terms) {
    if (terms.empty()) return "none";
    std::string out;
    for (const Term& t : terms) {
        if (!out.empty()) out += ", ";
        out += t.display();
    }
    return out;
}

}  // namespace

std::string to_text(const ComplianceReport& report) {
    std::string out = "conforms: ";
    out += report.conforms ? "true" : "false";
    out += "\n";
    append_findings(out, "violations", report.violations);
    append_findings(out, "info", report.info);
    for (const auto& [focus, entries] : report.explanations) {
        out += "explanation for " + focus.display() + "\n";
        for (const ExplanationEntry& e : entries) {
            out += "  communication " + e.communication.display() + "\n";
            out += "    rejected by: " + join(e.rejected_by) + "\n";
            out += "    supported by: " + join(e.supported_by) + "\n";
        }
    }
    out += "inferred triples: " + std::to_string(report.inferred) + "\n";
    return out;
}

}  // namespace normcheck
