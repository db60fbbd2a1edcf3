#include "normcheck/inference.hpp"

#include <algorithm>
#include <set>

#include "normcheck/errors.hpp"

namespace normcheck {

namespace {

// What a rule reads — condition vocabulary, its target class (the focus
// set), and the paths its emission specs walk — and whether it needs that
// read set settled. A condition built only from hasValue / minCount / and
// is monotone: graph growth can only turn it true, and the group fixpoint
// re-runs the rule, so same-order emissions into its reads are harmless.
// Every other component (not, maxCount, lessThan, equals, datatype, class)
// can flip from true to false as triples arrive, so a guarded rule needs
// its reads settled from its own stratum onwards. Either way, nothing a
// rule reads may be emitted at a strictly later order: the engine never
// revisits a finished stratum, so a late emission into an earlier read set
// would mean the output is not a fixpoint.
struct GuardSet {
    bool guarded = false;
    std::set<Term> predicates;
    std::set<Term> classes;
};

void scan_condition(const Constraint& c, GuardSet& out) {
    struct Visitor {
        GuardSet& out;

        void paths(const PropertyPath& p) const {
            for (const Term& step : p.steps()) out.predicates.insert(step);
        }
        void operator()(const HasValueC& c) const { paths(c.path); }
        void operator()(const MinCountC& c) const { paths(c.path); }
        void operator()(const MaxCountC& c) const {
            paths(c.path);
            out.guarded = true;
        }
        void operator()(const ClassC& c) const {
            paths(c.path);
            out.classes.insert(c.cls);
            out.guarded = true;
        }
        void operator()(const LessThanC& c) const {
            paths(c.path);
            out.predicates.insert(c.other);
            out.guarded = true;
        }
        void operator()(const EqualsC& c) const {
            paths(c.path);
            out.predicates.insert(c.other);
            out.guarded = true;
        }
        void operator()(const DatatypeC& c) const {
            paths(c.path);
            out.guarded = true;
        }
        void operator()(const NotC& c) const {
            scan_condition(c.inner.front(), out);
            out.guarded = true;
        }
        void operator()(const AndC& c) const {
            for (const Constraint& item : c.items) scan_condition(item, out);
        }
    };
    std::visit(Visitor{out}, c.node());
}

GuardSet read_set(const NodeShape& shape, const TripleRule& rule) {
    GuardSet out;
    if (rule.condition) scan_condition(*rule.condition, out);
    out.classes.insert(shape.target_class);
    for (const NodeSpec* spec : {&rule.subject, &rule.object})
        if (const auto* p = std::get_if<PropertyPath>(spec))
            for (const Term& step : p->steps()) out.predicates.insert(step);
    return out;
}

// The class a rule asserts membership of, if it emits rdf:type triples.
// A non-constant object makes it a wildcard: it may assert any class.
struct EmittedClass {
    bool any = false;
    std::optional<Term> constant;
};

EmittedClass emitted_class(const TripleRule& rule) {
    EmittedClass out;
    if (rule.predicate != rdf::type) return out;
    if (const auto* t = std::get_if<Term>(&rule.object)) {
        out.constant = *t;
    } else {
        out.any = true;
    }
    return out;
}

}  // namespace

std::vector<OrderGroup> stratify(const ShapesDocument& doc) {
    std::vector<RuleRef> refs;
    for (std::size_t s = 0; s < doc.shapes.size(); ++s)
        for (std::size_t r = 0; r < doc.shapes[s].rules.size(); ++r)
            refs.push_back(RuleRef{s, r});

    auto rule_of = [&doc](const RuleRef& ref) -> const TripleRule& {
        return doc.shapes[ref.shape_index].rules[ref.rule_index];
    };

    for (const RuleRef& a : refs) {
        const TripleRule& ra = rule_of(a);
        GuardSet reads = read_set(doc.shapes[a.shape_index], ra);
        for (const RuleRef& b : refs) {
            // A rule may emit into its own read set: its condition then
            // only flips towards "already emitted", which set semantics
            // absorbs. Distinct rules are the real hazard.
            if (a == b) continue;
            const TripleRule& rb = rule_of(b);
            // Same-order emissions are settled by the group fixpoint for
            // monotone conditions; guarded rules cannot tolerate them.
            if (rb.order < ra.order) continue;
            if (rb.order == ra.order && !reads.guarded) continue;
            auto conflict = [&](const std::string& what) {
                std::string reason =
                    reads.guarded ? "non-monotone condition of rule " + ra.id + " depends on "
                                  : "rule " + ra.id + " reads ";
                throw StratificationError(
                    reason + what + ", emitted by rule " + rb.id + " at order " +
                        std::to_string(rb.order) + " >= " + std::to_string(ra.order),
                    ra.id, rb.id);
            };
            if (reads.predicates.count(rb.predicate))
                conflict("predicate " + rb.predicate.display());
            EmittedClass cls = emitted_class(rb);
            if (cls.any) conflict("class membership (non-constant rdf:type object)");
            if (cls.constant && reads.classes.count(*cls.constant))
                conflict("class " + cls.constant->display());
        }
    }

    std::map<int, OrderGroup> groups;
    for (const RuleRef& ref : refs) {
        const TripleRule& rule = rule_of(ref);
        auto [it, added] = groups.try_emplace(rule.order, OrderGroup{rule.order, {}});
        it->second.rules.push_back(ref);
    }
    std::vector<OrderGroup> out;
    out.reserve(groups.size());
    for (auto& [order, group] : groups) out.push_back(std::move(group));
    return out;
}

namespace {

std::vector<Term> eval_spec(const Graph& g, const Term& focus, const NodeSpec& spec) {
    if (std::holds_alternative<ThisSpec>(spec)) return {focus};
    if (const auto* path = std::get_if<PropertyPath>(&spec)) {
        auto values = g.evaluate_path(focus, *path);
        return {values.begin(), values.end()};
    }
    return {std::get<Term>(spec)};
}

}  // namespace

InferenceResult execute_rules(const Graph& data, const ShapesDocument& doc) {
    InferenceResult result;
    result.graph = data;

    for (const OrderGroup& group : stratify(doc)) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const RuleRef& ref : group.rules) {
                const NodeShape& shape = doc.shapes[ref.shape_index];
                const TripleRule& rule = shape.rules[ref.rule_index];
                // focus set recomputed per pass: rules may type new members
                for (const Term& focus : result.graph.subjects_of_type(shape.target_class)) {
                    if (rule.condition &&
                        !check_constraint(result.graph, focus, *rule.condition))
                        continue;
                    for (const Term& s : eval_spec(result.graph, focus, rule.subject)) {
                        if (s.is_literal()) continue;  // cannot stand as subject
                        for (const Term& o : eval_spec(result.graph, focus, rule.object)) {
                            Triple t{s, rule.predicate, o};
                            if (!result.graph.insert(t)) continue;
                            result.provenance.emplace(
                                std::move(t), Provenance{rule.id, group.order, focus});
                            changed = true;
                        }
                    }
                }
            }
        }
    }
    return result;
}

}  // namespace normcheck
