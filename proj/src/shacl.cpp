#include "normcheck/shacl.hpp"

#include <algorithm>

#include "normcheck/errors.hpp"

namespace normcheck {

Constraint Constraint::has_value(PropertyPath p, Term v) {
    return Constraint(HasValueC{std::move(p), std::move(v)});
}
Constraint Constraint::min_count(PropertyPath p, unsigned n) {
    return Constraint(MinCountC{std::move(p), n});
}
Constraint Constraint::max_count(PropertyPath p, unsigned n) {
    return Constraint(MaxCountC{std::move(p), n});
}
Constraint Constraint::class_member(PropertyPath p, Term cls) {
    return Constraint(ClassC{std::move(p), std::move(cls)});
}
Constraint Constraint::less_than(PropertyPath p, Term other) {
    return Constraint(LessThanC{std::move(p), std::move(other)});
}
Constraint Constraint::equals(PropertyPath p, Term other) {
    return Constraint(EqualsC{std::move(p), std::move(other)});
}
Constraint Constraint::datatype(PropertyPath p, Term dt) {
    return Constraint(DatatypeC{std::move(p), std::move(dt)});
}
Constraint Constraint::negation(Constraint inner) {
    return Constraint(NotC{{std::move(inner)}});
}
Constraint Constraint::conjunction(std::vector<Constraint> items) {
    return Constraint(AndC{std::move(items)});
}

std::string Constraint::describe() const {
    struct Visitor {
        std::string operator()(const HasValueC& c) const {
            return "hasValue(" + c.path.display() + ", " + c.value.display() + ")";
        }
        std::string operator()(const MinCountC& c) const {
            return "minCount(" + c.path.display() + ", " + std::to_string(c.count) + ")";
        }
        std::string operator()(const MaxCountC& c) const {
            return "maxCount(" + c.path.display() + ", " + std::to_string(c.count) + ")";
        }
        std::string operator()(const ClassC& c) const {
            return "class(" + c.path.display() + ", " + c.cls.display() + ")";
        }
        std::string operator()(const LessThanC& c) const {
            return "lessThan(" + c.path.display() + ", " + c.other.display() + ")";
        }
        std::string operator()(const EqualsC& c) const {
            return "equals(" + c.path.display() + ", " + c.other.display() + ")";
        }
        std::string operator()(const DatatypeC& c) const {
            return "datatype(" + c.path.display() + ", " + c.datatype.display() + ")";
        }
        std::string operator()(const NotC& c) const {
            return "not(" + c.inner.front().describe() + ")";
        }
        std::string operator()(const AndC& c) const {
            std::string out = "and(";
            for (std::size_t i = 0; i < c.items.size(); ++i) {
                if (i) out += ", ";
                out += c.items[i].describe();
            }
            return out + ")";
        }
    };
    return std::visit(Visitor{}, node_);
}

std::string describe(const NodeSpec& spec) {
    if (std::holds_alternative<ThisSpec>(spec)) return "this";
    if (const auto* p = std::get_if<PropertyPath>(&spec)) return "path " + p->display();
    return std::get<Term>(spec).display();
}

namespace {

long long integer_or_throw(const Term& t, const Term& focus) {
    auto v = t.integer_value();
    if (!v)
        throw ConstraintTypeError("lessThan applied to non-integer value " + t.display() +
                                  " at focus node " + focus.display());
    return *v;
}

}  // namespace

bool check_constraint(const Graph& g, const Term& focus, const Constraint& c) {
    struct Visitor {
        const Graph& g;
        const Term& focus;

        std::set<Term> values(const PropertyPath& p) const { return g.evaluate_path(focus, p); }

        bool operator()(const HasValueC& c) const { return values(c.path).count(c.value) > 0; }
        bool operator()(const MinCountC& c) const { return values(c.path).size() >= c.count; }
        bool operator()(const MaxCountC& c) const { return values(c.path).size() <= c.count; }
        bool operator()(const ClassC& c) const {
            for (const Term& v : values(c.path)) {
                if (v.is_literal()) return false;
                if (!g.contains(Triple{v, rdf::type, c.cls})) return false;
            }
            return true;
        }
        bool operator()(const LessThanC& c) const {
            // universally quantified over value pairs; vacuously true when
            // either side is empty. Undefined (throws) when any value on a
            // non-vacuous comparison is not an integer — definedness is
            // settled before any pair is compared.
            auto lhs = values(c.path);
            auto rhs = values(PropertyPath::predicate(c.other));
            if (lhs.empty() || rhs.empty()) return true;
            for (const Term& v : lhs) integer_or_throw(v, focus);
            for (const Term& w : rhs) integer_or_throw(w, focus);
            for (const Term& v : lhs)
                for (const Term& w : rhs)
                    if (*v.integer_value() >= *w.integer_value()) return false;
            return true;
        }
        bool operator()(const EqualsC& c) const {
            return values(c.path) == values(PropertyPath::predicate(c.other));
        }
        bool operator()(const DatatypeC& c) const {
            for (const Term& v : values(c.path))
                if (!v.is_literal() || v.datatype() != c.datatype.value()) return false;
            return true;
        }
        bool operator()(const NotC& c) const {
            return !check_constraint(g, focus, c.inner.front());
        }
        bool operator()(const AndC& c) const {
            for (const Constraint& item : c.items)
                if (!check_constraint(g, focus, item)) return false;
            return true;
        }
    };
    return std::visit(Visitor{g, focus}, c.node());
}

// ---------------------------------------------------------------------------
// Parsing shape declarations out of an RDF graph
// ---------------------------------------------------------------------------

namespace {

class ShapesParser {
public:
    explicit ShapesParser(const Graph& g) : g_(g) {}

    ShapesDocument run() {
        ShapesDocument doc;
        for (const Term& subject : g_.subjects_of_type(shv::NodeShape)) {
            auto targets = objects(subject, shv::targetClass);
            if (targets.empty()) continue;  // target-less shapes are inert here
            if (targets.size() > 1)
                throw ShapesError("shape " + subject.display() + " has multiple sh:targetClass");
            if (!targets.front().is_iri())
                throw ShapesError("sh:targetClass of " + subject.display() + " is not an IRI");
            doc.shapes.push_back(parse_shape(subject, targets.front()));
        }
        return doc;
    }

private:
    std::vector<Term> objects(const Term& s, const Term& p) const {
        std::vector<Term> out;
        for (const Triple& t : g_.match(s, p, std::nullopt)) out.push_back(t.object);
        return out;  // match is sorted; blank labels sort in allocation order
    }

    NodeShape parse_shape(const Term& id, const Term& target) {
        NodeShape shape;
        shape.id = id;
        shape.target_class = target;
        shape.severity = parse_severity(id);
        shape.constraints = collect_constraints(id);
        std::size_t rule_index = 0;
        for (const Term& node : objects(id, shv::rule))
            shape.rules.push_back(parse_rule(id, node, rule_index++));
        return shape;
    }

    Severity parse_severity(const Term& shape) const {
        auto values = objects(shape, shv::severity);
        if (values.empty()) return Severity::Violation;
        if (values.size() > 1)
            throw ShapesError("shape " + shape.display() + " has multiple sh:severity");
        if (values.front() == shv::Violation) return Severity::Violation;
        if (values.front() == shv::Info) return Severity::Info;
        throw ShapesError("unsupported sh:severity " + values.front().display());
    }

    // The constraints declared directly on a node, in canonical order:
    // sh:property components first, then sh:not, then sh:and. RDF keeps no
    // edge order, and only within a single predicate does the object label
    // order survive a serialize/parse trip, so kind-major is the one
    // ordering every producer can agree on.
    std::vector<Constraint> collect_constraints(const Term& node) {
        std::vector<Constraint> out;
        for (const Term& ps : objects(node, shv::property)) {
            auto parsed = parse_property_shape(ps);
            out.insert(out.end(), parsed.begin(), parsed.end());
        }
        for (const Term& inner : objects(node, shv::notConstraint))
            out.push_back(Constraint::negation(parse_constraint_node(inner)));
        for (const Term& list : objects(node, shv::andConstraint)) {
            std::vector<Constraint> items;
            for (const Term& member : parse_list(list))
                items.push_back(parse_constraint_node(member));
            out.push_back(Constraint::conjunction(std::move(items)));
        }
        return out;
    }

    // A node used as a single condition: one constraint, or the conjunction
    // of all constraints it declares.
    Constraint parse_constraint_node(const Term& node) {
        std::vector<Constraint> items = collect_constraints(node);
        if (items.empty())
            throw ShapesError("constraint node " + node.display() + " declares no constraint");
        if (items.size() == 1) return std::move(items.front());
        return Constraint::conjunction(std::move(items));
    }

    std::vector<Constraint> parse_property_shape(const Term& ps) {
        PropertyPath path = parse_path_of(ps);
        std::vector<Constraint> out;
        // fixed component order; RDF cannot preserve predicate order anyway
        for (const Term& v : objects(ps, shv::hasValue))
            out.push_back(Constraint::has_value(path, v));
        for (const Term& v : objects(ps, shv::minCount))
            out.push_back(Constraint::min_count(path, count_value(v, ps)));
        for (const Term& v : objects(ps, shv::maxCount))
            out.push_back(Constraint::max_count(path, count_value(v, ps)));
        for (const Term& v : objects(ps, shv::classConstraint))
            out.push_back(Constraint::class_member(path, iri_value(v, "sh:class")));
        for (const Term& v : objects(ps, shv::lessThan))
            out.push_back(Constraint::less_than(path, iri_value(v, "sh:lessThan")));
        for (const Term& v : objects(ps, shv::equalsConstraint))
            out.push_back(Constraint::equals(path, iri_value(v, "sh:equals")));
        for (const Term& v : objects(ps, shv::datatype))
            out.push_back(Constraint::datatype(path, iri_value(v, "sh:datatype")));
        // reject anything we would otherwise silently ignore
        for (const Triple& t : g_.match(ps, std::nullopt, std::nullopt)) {
            const Term& p = t.predicate;
            if (p == shv::path || p == shv::hasValue || p == shv::minCount ||
                p == shv::maxCount || p == shv::classConstraint || p == shv::lessThan ||
                p == shv::equalsConstraint || p == shv::datatype || p == rdf::type)
                continue;
            throw ShapesError("unknown constraint component " + p.display());
        }
        if (out.empty())
            throw ShapesError("property shape " + ps.display() + " declares no constraint");
        return out;
    }

    unsigned count_value(const Term& t, const Term& ps) const {
        auto v = t.integer_value();
        if (!v || *v < 0)
            throw ShapesError("cardinality on " + ps.display() +
                              " must be a non-negative integer, got " + t.display());
        return static_cast<unsigned>(*v);
    }

    Term iri_value(const Term& t, const char* component) const {
        if (!t.is_iri())
            throw ShapesError(std::string(component) + " expects an IRI, got " + t.display());
        return t;
    }

    PropertyPath parse_path_of(const Term& node) {
        auto paths = objects(node, shv::path);
        if (paths.size() != 1)
            throw ShapesError("node " + node.display() + " needs exactly one sh:path");
        return parse_path(paths.front());
    }

    PropertyPath parse_path(const Term& value) {
        if (value.is_iri()) {
            if (value == rdf::nil) throw ShapesError("sh:path list of length < 1");
            return PropertyPath::predicate(value);
        }
        std::vector<Term> steps = parse_list(value);
        if (steps.empty()) throw ShapesError("sh:path list of length < 1");
        for (const Term& s : steps)
            if (!s.is_iri())
                throw ShapesError("sh:path step is not an IRI: " + s.display());
        return PropertyPath::of(std::move(steps));
    }

    std::vector<Term> parse_list(const Term& head) {
        std::vector<Term> out;
        std::set<Term> seen;
        Term cell = head;
        while (cell != rdf::nil) {
            if (!seen.insert(cell).second) throw ShapesError("cyclic RDF list");
            auto firsts = objects(cell, rdf::first);
            auto rests = objects(cell, rdf::rest);
            if (firsts.size() != 1 || rests.size() != 1)
                throw ShapesError("malformed RDF list at " + cell.display());
            out.push_back(firsts.front());
            cell = rests.front();
        }
        return out;
    }

    TripleRule parse_rule(const Term& shape, const Term& node, std::size_t index) {
        if (!g_.contains(Triple{node, rdf::type, shv::TripleRule}))
            throw ShapesError("rule on " + shape.display() + " is not typed sh:TripleRule");
        TripleRule rule;
        rule.id = shape.display() + "#rule" + std::to_string(index);
        auto orders = objects(node, shv::order);
        if (orders.size() > 1) throw ShapesError("rule " + rule.id + " has multiple sh:order");
        if (!orders.empty()) {
            auto v = orders.front().integer_value();
            if (!v) throw ShapesError("sh:order must be an integer on rule " + rule.id);
            rule.order = static_cast<int>(*v);
        }
        auto conditions = objects(node, shv::condition);
        if (conditions.size() == 1) {
            rule.condition = parse_constraint_node(conditions.front());
        } else if (conditions.size() > 1) {
            std::vector<Constraint> items;
            for (const Term& c : conditions) items.push_back(parse_constraint_node(c));
            rule.condition = Constraint::conjunction(std::move(items));
        }
        rule.subject = parse_node_spec(node, shv::subject, rule.id, /*object_position=*/false);
        rule.object = parse_node_spec(node, shv::object, rule.id, /*object_position=*/true);
        auto predicates = objects(node, shv::predicate);
        if (predicates.size() != 1)
            throw ShapesError("rule " + rule.id + " missing sh:predicate");
        if (!predicates.front().is_iri())
            throw ShapesError("sh:predicate of rule " + rule.id + " is not an IRI");
        rule.predicate = predicates.front();
        return rule;
    }

    NodeSpec parse_node_spec(const Term& rule, const Term& role, const std::string& rule_id,
                             bool object_position) {
        auto values = objects(rule, role);
        const char* role_name = role == shv::subject ? "sh:subject" : "sh:object";
        if (values.size() != 1)
            throw ShapesError("rule " + rule_id + " missing " + role_name);
        const Term& v = values.front();
        if (v == shv::thisKeyword) return ThisSpec{};
        if (v.is_blank()) return parse_path_of(v);
        if (v.is_literal() && !object_position)
            throw ShapesError("literal subject in rule " + rule_id);
        return v;
    }

    const Graph& g_;
};

}  // namespace

ShapesDocument parse_shapes(const Graph& g) { return ShapesParser(g).run(); }

// ---------------------------------------------------------------------------
// Serializing shapes back to RDF
// ---------------------------------------------------------------------------

namespace {

class ShapesWriter {
public:
    explicit ShapesWriter(const std::map<std::string, std::string>& prefixes) {
        for (const auto& [prefix, ns] : prefixes) g_.add_prefix(prefix, ns);
        g_.add_prefix("sh", shv::ns);
        g_.add_prefix("rdf", rdf::ns);
        g_.add_prefix("xsd", xsd::ns);
    }

    Graph run(const ShapesDocument& doc) {
        for (const NodeShape& shape : doc.shapes) write_shape(shape);
        return std::move(g_);
    }

private:
    void write_shape(const NodeShape& shape) {
        g_.insert(Triple{shape.id, rdf::type, shv::NodeShape});
        g_.insert(Triple{shape.id, shv::targetClass, shape.target_class});
        if (shape.severity == Severity::Info)
            g_.insert(Triple{shape.id, shv::severity, shv::Info});
        for (const Constraint& c : shape.constraints) write_constraint_under(shape.id, c);
        for (const TripleRule& rule : shape.rules) {
            Term node = g_.fresh_blank();
            g_.insert(Triple{shape.id, shv::rule, node});
            g_.insert(Triple{node, rdf::type, shv::TripleRule});
            g_.insert(Triple{node, shv::order, Term::integer(rule.order)});
            if (rule.condition)
                g_.insert(Triple{node, shv::condition, constraint_node(*rule.condition)});
            g_.insert(Triple{node, shv::subject, node_spec(rule.subject)});
            g_.insert(Triple{node, shv::predicate, rule.predicate});
            g_.insert(Triple{node, shv::object, node_spec(rule.object)});
        }
    }

    // Subjects and objects of rules: sh:this, a path-carrying blank, or a
    // constant. Paths always go through a blank, even single-step ones —
    // a bare IRI in this position reads back as a constant.
    Term node_spec(const NodeSpec& spec) {
        if (std::holds_alternative<ThisSpec>(spec)) return shv::thisKeyword;
        if (const auto* path = std::get_if<PropertyPath>(&spec)) {
            Term node = g_.fresh_blank();
            g_.insert(Triple{node, shv::path, path_node(*path)});
            return node;
        }
        return std::get<Term>(spec);
    }

    // Attaches one constraint to `owner` as sh:property / sh:not / sh:and.
    void write_constraint_under(const Term& owner, const Constraint& c) {
        if (const auto* n = c.get_if<NotC>()) {
            g_.insert(Triple{owner, shv::notConstraint, constraint_node(n->inner.front())});
            return;
        }
        if (const auto* a = c.get_if<AndC>()) {
            std::vector<Term> members;
            for (const Constraint& item : a->items) members.push_back(constraint_node(item));
            g_.insert(Triple{owner, shv::andConstraint, make_list(members)});
            return;
        }
        g_.insert(Triple{owner, shv::property, property_shape(c)});
    }

    // A node holding the given constraint; conjunctions flatten into
    // multiple sh:property entries, matching how parse_shapes reads them.
    Term constraint_node(const Constraint& c) {
        Term node = g_.fresh_blank();
        if (const auto* a = c.get_if<AndC>()) {
            for (const Constraint& item : a->items) write_constraint_under(node, item);
        } else {
            write_constraint_under(node, c);
        }
        return node;
    }

    Term property_shape(const Constraint& c) {
        Term ps = g_.fresh_blank();
        struct Visitor {
            ShapesWriter& w;
            Term ps;
            void component(const PropertyPath& path, const Term& pred, Term value) {
                w.g_.insert(Triple{ps, shv::path, w.path_node(path)});
                w.g_.insert(Triple{ps, pred, std::move(value)});
            }
            void operator()(const HasValueC& c) { component(c.path, shv::hasValue, c.value); }
            void operator()(const MinCountC& c) {
                component(c.path, shv::minCount, Term::integer(c.count));
            }
            void operator()(const MaxCountC& c) {
                component(c.path, shv::maxCount, Term::integer(c.count));
            }
            void operator()(const ClassC& c) { component(c.path, shv::classConstraint, c.cls); }
            void operator()(const LessThanC& c) { component(c.path, shv::lessThan, c.other); }
            void operator()(const EqualsC& c) {
                component(c.path, shv::equalsConstraint, c.other);
            }
            void operator()(const DatatypeC& c) {
                component(c.path, shv::datatype, c.datatype);
            }
            void operator()(const NotC&) { throw Error("not reachable: nested negation"); }
            void operator()(const AndC&) { throw Error("not reachable: nested conjunction"); }
        };
        std::visit(Visitor{*this, ps}, c.node());
        return ps;
    }

    Term path_node(const PropertyPath& path) {
        if (!path.is_sequence()) return path.steps().front();
        return make_list(path.steps());
    }

    Term make_list(const std::vector<Term>& items) {
        Term tail = rdf::nil;
        for (auto it = items.rbegin(); it != items.rend(); ++it) {
            Term cell = g_.fresh_blank();
            g_.insert(Triple{cell, rdf::first, *it});
            g_.insert(Triple{cell, rdf::rest, tail});
            tail = cell;
        }
        return tail;
    }

    Graph g_;
};

}  // namespace

Graph shapes_to_graph(const ShapesDocument& doc,
                      const std::map<std::string, std::string>& prefixes) {
    return ShapesWriter(prefixes).run(doc);
}

}  // namespace normcheck
