#include "normcheck/validator.hpp"

#include <algorithm>

namespace normcheck {

namespace {

std::string render_values(const std::set<Term>& values) {
    if (values.empty()) return "none";
    std::string out;
    for (const Term& v : values) {
        if (!out.empty()) out += ", ";
        out += v.display();
    }
    return out;
}

struct Failure {
    std::string message;
    std::optional<Term> value;
};

// Explains why a constraint known to fail at `focus` fails. Mirrors
// check_constraint; callers must only invoke it on non-conforming pairs.
Failure describe_failure(const Graph& g, const Term& focus, const Constraint& c) {
    struct Visitor {
        const Graph& g;
        const Term& focus;

        Failure operator()(const HasValueC& c) const {
            auto values = g.evaluate_path(focus, c.path);
            return {"path " + c.path.display() + " lacks required value " +
                        c.value.display() + " (values: " + render_values(values) + ")",
                    std::nullopt};
        }
        Failure operator()(const MinCountC& c) const {
            auto n = g.evaluate_path(focus, c.path).size();
            return {"path " + c.path.display() + " has " + std::to_string(n) +
                        " values, requires at least " + std::to_string(c.count),
                    std::nullopt};
        }
        Failure operator()(const MaxCountC& c) const {
            auto n = g.evaluate_path(focus, c.path).size();
            return {"path " + c.path.display() + " has " + std::to_string(n) +
                        " values, allows at most " + std::to_string(c.count),
                    std::nullopt};
        }
        Failure operator()(const ClassC& c) const {
            for (const Term& v : g.evaluate_path(focus, c.path))
                if (v.is_literal() || !g.contains(Triple{v, rdf::type, c.cls}))
                    return {"value " + v.display() + " at path " + c.path.display() +
                                " is not an instance of " + c.cls.display(),
                            v};
            return {"class constraint unexpectedly conforms", std::nullopt};
        }
        Failure operator()(const LessThanC& c) const {
            auto lhs = g.evaluate_path(focus, c.path);
            auto rhs = g.evaluate_path(focus, PropertyPath::predicate(c.other));
            for (const Term& v : lhs)
                for (const Term& w : rhs)
                    if (v.integer_value() >= w.integer_value())
                        return {"value " + v.display() + " at path " + c.path.display() +
                                    " is not less than " + w.display() + " from " +
                                    c.other.display(),
                                v};
            return {"lessThan constraint unexpectedly conforms", std::nullopt};
        }
        Failure operator()(const EqualsC& c) const {
            auto lhs = g.evaluate_path(focus, c.path);
            auto rhs = g.evaluate_path(focus, PropertyPath::predicate(c.other));
            return {"path " + c.path.display() + " values (" + render_values(lhs) +
                        ") differ from " + c.other.display() + " values (" +
                        render_values(rhs) + ")",
                    std::nullopt};
        }
        Failure operator()(const DatatypeC& c) const {
            for (const Term& v : g.evaluate_path(focus, c.path))
                if (!v.is_literal() || v.datatype() != c.datatype.value())
                    return {"value " + v.display() + " at path " + c.path.display() +
                                " does not have datatype " + c.datatype.display(),
                            v};
            return {"datatype constraint unexpectedly conforms", std::nullopt};
        }
        Failure operator()(const NotC& c) const {
            return {"negated constraint " + c.inner.front().describe() + " holds",
                    std::nullopt};
        }
        Failure operator()(const AndC& c) const {
            for (const Constraint& item : c.items)
                if (!check_constraint(g, focus, item))
                    return describe_failure(g, focus, item);
            return {"conjunction unexpectedly conforms", std::nullopt};
        }
    };
    return std::visit(Visitor{g, focus}, c.node());
}

}  // namespace

ValidationReport validate(const Graph& g, const ShapesDocument& doc) {
    ValidationReport report;
    for (const NodeShape& shape : doc.shapes) {
        for (const Term& focus : g.subjects_of_type(shape.target_class)) {
            for (const Constraint& c : shape.constraints) {
                if (check_constraint(g, focus, c)) continue;
                Failure why = describe_failure(g, focus, c);
                report.results.push_back(ValidationResult{
                    focus, shape.id, c.describe(), std::move(why.value), shape.severity,
                    std::move(why.message)});
                if (shape.severity == Severity::Violation) report.conforms = false;
            }
        }
    }
    // stable: constraint document order survives within a (shape, focus) pair
    std::stable_sort(report.results.begin(), report.results.end(),
                     [](const ValidationResult& a, const ValidationResult& b) {
                         if (auto c = a.shape_id <=> b.shape_id; c != 0) return c < 0;
                         return a.focus < b.focus;
                     });
    return report;
}

}  // namespace normcheck
