#include <doctest.h>

#include <algorithm>
#include <random>

#include "normcheck/errors.hpp"
#include "normcheck/inference.hpp"
#include "normcheck/turtle.hpp"
#include "support/testutil.hpp"

using namespace normcheck;

namespace {

const std::string ex = "http://example.org/shRIOL#";
Term iri(const std::string& local) { return Term::iri(ex + local); }

NodeShape rule_shape(const std::string& id, const Term& target, TripleRule rule) {
    rule.id = ex + id;
    NodeShape shape;
    shape.id = iri(id);
    shape.target_class = target;
    shape.rules.push_back(std::move(rule));
    return shape;
}

std::string shape_of(const ShapesDocument& doc, const RuleRef& ref) {
    return doc.shapes[ref.shape_index].id.display();
}

// Triples present in `result` but not in `data`.
std::set<Triple> delta(const Graph& data, const Graph& result) {
    std::set<Triple> out;
    for (const Triple& t : result.triples())
        if (!data.contains(t)) out.insert(t);
    return out;
}

}  // namespace

TEST_CASE("stratify groups by ascending order, document order within") {
    Graph g = parse_turtle_file(std::string(FIXTURES_DIR) + "/shapes.ttl");
    ShapesDocument doc = parse_shapes(g);
    auto groups = stratify(doc);
    REQUIRE(groups.size() == 3);
    CHECK(groups[0].order == 0);
    CHECK(groups[1].order == 1);
    CHECK(groups[2].order == 2);
    // shapes parse sorted by IRI, so document order within a group follows
    REQUIRE(groups[0].rules.size() == 2);
    CHECK(shape_of(doc, groups[0].rules[0]) == ex + "PropagateMinConsentAge");
    CHECK(shape_of(doc, groups[0].rules[1]) == ex + "TransparentUnlessRejected");
    REQUIRE(groups[1].rules.size() == 2);
    CHECK(shape_of(doc, groups[1].rules[0]) == ex + "DetectAgeException");
    CHECK(shape_of(doc, groups[1].rules[1]) == ex + "TransparentByDefault");
    REQUIRE(groups[2].rules.size() == 2);
    CHECK(shape_of(doc, groups[2].rules[0]) == ex + "LawfulHolderConsent");
    CHECK(shape_of(doc, groups[2].rules[1]) == ex + "LawfulWithoutException");
}

TEST_CASE("empty rule set: empty grouping, identity inference") {
    ShapesDocument doc;
    NodeShape constraint_only;
    constraint_only.id = iri("S");
    constraint_only.target_class = iri("T");
    constraint_only.constraints.push_back(
        Constraint::min_count(PropertyPath::predicate(iri("p")), 1));
    doc.shapes.push_back(constraint_only);

    CHECK(stratify(doc).empty());
    Graph g = parse_turtle("@prefix : <" + ex + "> .\n:x a :T ; :q 1 .\n");
    InferenceResult result = execute_rules(g, doc);
    CHECK(result.graph == g);
    CHECK(result.provenance.empty());
}

TEST_CASE("a negation over a later-emitted predicate does not stratify") {
    TripleRule guarded;
    guarded.order = 0;
    guarded.condition = Constraint::negation(
        Constraint::min_count(PropertyPath::predicate(iri("p")), 1));
    guarded.subject = ThisSpec{};
    guarded.predicate = iri("q");
    guarded.object = Term::boolean(true);

    TripleRule emitter;
    emitter.order = 1;
    emitter.subject = ThisSpec{};
    emitter.predicate = iri("p");
    emitter.object = Term::boolean(true);

    ShapesDocument doc;
    doc.shapes.push_back(rule_shape("Guarded", iri("T"), guarded));
    doc.shapes.push_back(rule_shape("Emitter", iri("T"), emitter));

    CHECK_THROWS_AS(stratify(doc), StratificationError);
    try {
        stratify(doc);
        FAIL("expected StratificationError");
    } catch (const StratificationError& e) {
        CHECK(e.rule_a == ex + "Guarded");
        CHECK(e.rule_b == ex + "Emitter");
        CHECK(std::string(e.what()).find(ex + "Guarded") != std::string::npos);
        CHECK(std::string(e.what()).find(ex + "Emitter") != std::string::npos);
    }

    // same-order emission into a negated predicate is just as bad
    doc.shapes[1].rules[0].order = 0;
    CHECK_THROWS_AS(stratify(doc), StratificationError);
    // a strictly lower order settles the predicate before the guard reads it
    doc.shapes[1].rules[0].order = -1;
    CHECK(stratify(doc).size() == 2);
}

TEST_CASE("even a monotone condition must not read later-emitted predicates") {
    // otherwise the engine's output would not be a fixpoint of itself: the
    // order-0 rule would fire on a re-run after the order-1 rule emitted
    TripleRule reader;
    reader.order = 0;
    reader.condition = Constraint::min_count(PropertyPath::predicate(iri("p")), 1);
    reader.subject = ThisSpec{};
    reader.predicate = iri("q");
    reader.object = Term::boolean(true);

    TripleRule emitter;
    emitter.order = 1;
    emitter.subject = ThisSpec{};
    emitter.predicate = iri("p");
    emitter.object = Term::boolean(true);

    ShapesDocument doc;
    doc.shapes.push_back(rule_shape("Reader", iri("T"), reader));
    doc.shapes.push_back(rule_shape("Emitter", iri("T"), emitter));
    CHECK_THROWS_AS(stratify(doc), StratificationError);

    // at the same order the group fixpoint re-runs the reader: fine
    doc.shapes[1].rules[0].order = 0;
    CHECK(stratify(doc).size() == 1);

    Graph g = parse_turtle("@prefix : <" + ex + "> .\n:x a :T .\n");
    InferenceResult result = execute_rules(g, doc);
    CHECK(result.graph.contains(Triple{iri("x"), iri("p"), Term::boolean(true)}));
    CHECK(result.graph.contains(Triple{iri("x"), iri("q"), Term::boolean(true)}));
}

TEST_CASE("a rule may emit into its own guard") {
    // default-style rule: foci not yet marked get marked; set semantics
    // absorbs the self-influence
    TripleRule dflt;
    dflt.order = 0;
    dflt.condition = Constraint::max_count(PropertyPath::predicate(iri("flag")), 0);
    dflt.subject = ThisSpec{};
    dflt.predicate = iri("flag");
    dflt.object = Term::boolean(true);

    ShapesDocument doc;
    doc.shapes.push_back(rule_shape("Default", iri("T"), dflt));
    CHECK(stratify(doc).size() == 1);

    Graph g = parse_turtle("@prefix : <" + ex + "> .\n:x a :T .\n:y a :T ; :flag false .\n");
    InferenceResult result = execute_rules(g, doc);
    CHECK(result.graph.contains(Triple{iri("x"), iri("flag"), Term::boolean(true)}));
    // y already carried a flag value, so the default must not fire
    CHECK(!result.graph.contains(Triple{iri("y"), iri("flag"), Term::boolean(true)}));
    CHECK(result.provenance.size() == 1);
}

TEST_CASE("default rule blocked by a lower-order emission") {
    // the pair behind the transparency verdicts: order 0 marks rejected
    // nodes false, order 1 defaults the untouched rest to true
    Graph g = parse_turtle(
        "@prefix : <" + ex + "> .\n"
        ":p a :AssumedClear ; :is-theme-of :c1 , :c2 .\n"
        ":c2 :is-rejected-by :court .\n"
        ":q a :AssumedClear ; :is-theme-of :c3 .\n");

    TripleRule mark_rejected;
    mark_rejected.order = 0;
    mark_rejected.condition = Constraint::min_count(
        PropertyPath::sequence({iri("is-theme-of"), iri("is-rejected-by")}), 1);
    mark_rejected.subject = ThisSpec{};
    mark_rejected.predicate = iri("is-transparent");
    mark_rejected.object = Term::boolean(false);

    TripleRule default_true;
    default_true.order = 1;
    default_true.condition =
        Constraint::max_count(PropertyPath::predicate(iri("is-transparent")), 0);
    default_true.subject = ThisSpec{};
    default_true.predicate = iri("is-transparent");
    default_true.object = Term::boolean(true);

    ShapesDocument doc;
    doc.shapes.push_back(rule_shape("MarkRejected", iri("AssumedClear"), mark_rejected));
    doc.shapes.push_back(rule_shape("DefaultTrue", iri("AssumedClear"), default_true));

    InferenceResult result = execute_rules(g, doc);
    CHECK(result.graph.contains(Triple{iri("p"), iri("is-transparent"), Term::boolean(false)}));
    CHECK(!result.graph.contains(Triple{iri("p"), iri("is-transparent"), Term::boolean(true)}));
    CHECK(result.graph.contains(Triple{iri("q"), iri("is-transparent"), Term::boolean(true)}));
    CHECK(!result.graph.contains(Triple{iri("q"), iri("is-transparent"), Term::boolean(false)}));
}

TEST_CASE("path subjects fan out, empty paths emit nothing, literals are skipped") {
    TripleRule fanout;
    fanout.order = 0;
    fanout.subject = PropertyPath::predicate(iri("points-at"));
    fanout.predicate = iri("marked");
    fanout.object = Term::boolean(true);

    ShapesDocument doc;
    doc.shapes.push_back(rule_shape("FanOut", iri("T"), fanout));

    Graph g = parse_turtle(
        "@prefix : <" + ex + "> .\n"
        ":a a :T ; :points-at :x , :y , 7 .\n"
        ":b a :T .\n");  // no points-at: vacuous, no emission, no error
    InferenceResult result = execute_rules(g, doc);
    CHECK(result.graph.contains(Triple{iri("x"), iri("marked"), Term::boolean(true)}));
    CHECK(result.graph.contains(Triple{iri("y"), iri("marked"), Term::boolean(true)}));
    // the literal 7 cannot stand as a subject and is skipped silently
    CHECK(result.provenance.size() == 2);
}

TEST_CASE("scenario inference derives the expected verdict triples") {
    Graph data = parse_turtle_file(std::string(FIXTURES_DIR) + "/scenario.ttl");
    ShapesDocument doc =
        parse_shapes(parse_turtle_file(std::string(FIXTURES_DIR) + "/shapes.ttl"));
    InferenceResult result = execute_rules(data, doc);

    Term t = Term::boolean(true), f = Term::boolean(false);
    // consent nodes learn the member state's age threshold
    CHECK(result.graph.contains(
        Triple{iri("HansConsent"), iri("has-min-consent-age"), Term::integer(16)}));
    CHECK(result.graph.contains(
        Triple{iri("PedroConsent"), iri("has-min-consent-age"), Term::integer(13)}));
    CHECK(result.graph.contains(
        Triple{iri("LucaConsent"), iri("has-min-consent-age"), Term::integer(14)}));
    // only Luca (13 < Italy's 14, no parental consent) hits the age exception
    CHECK(result.graph.subjects_of_type(iri("exceptionAgeDS")) ==
          std::vector<Term>{iri("LucaProcessing")});
    // lawfulness: Hans (parental consent) and Pedro (13 >= Spain's 13) pass
    CHECK(result.graph.contains(Triple{iri("HansProcessing"), iri("is-lawful"), t}));
    CHECK(result.graph.contains(Triple{iri("PedroProcessing"), iri("is-lawful"), t}));
    CHECK(!result.graph.contains(Triple{iri("LucaProcessing"), iri("is-lawful"), t}));
    // transparency: Hans's processing has a rejected communication
    CHECK(result.graph.contains(Triple{iri("HansProcessing"), iri("is-transparent"), f}));
    CHECK(!result.graph.contains(Triple{iri("HansProcessing"), iri("is-transparent"), t}));
    CHECK(result.graph.contains(Triple{iri("PedroProcessing"), iri("is-transparent"), t}));
    CHECK(result.graph.contains(Triple{iri("LucaProcessing"), iri("is-transparent"), t}));

    CHECK(result.provenance.size() == 9);
    std::set<Triple> provenance_keys;
    for (const auto& [triple, why] : result.provenance) provenance_keys.insert(triple);
    CHECK(delta(data, result.graph) == provenance_keys);
    for (const auto& [triple, why] : result.provenance) {
        CHECK(!data.contains(triple));
        CHECK(why.rule_id.substr(0, ex.size()) == ex);
    }
}

TEST_CASE("inference is monotone and idempotent on the scenario") {
    Graph data = parse_turtle_file(std::string(FIXTURES_DIR) + "/scenario.ttl");
    ShapesDocument doc =
        parse_shapes(parse_turtle_file(std::string(FIXTURES_DIR) + "/shapes.ttl"));
    InferenceResult once = execute_rules(data, doc);
    for (const Triple& t : data.triples()) CHECK(once.graph.contains(t));
    InferenceResult twice = execute_rules(once.graph, doc);
    CHECK(twice.graph == once.graph);
    CHECK(twice.provenance.empty());
}

TEST_CASE("within a group, rule order does not change the outcome") {
    Graph data = parse_turtle_file(std::string(FIXTURES_DIR) + "/scenario.ttl");
    ShapesDocument doc =
        parse_shapes(parse_turtle_file(std::string(FIXTURES_DIR) + "/shapes.ttl"));
    Graph reference = execute_rules(data, doc).graph;

    std::mt19937 rng(405);
    for (int round = 0; round < 10; ++round) {
        ShapesDocument shuffled = doc;
        std::shuffle(shuffled.shapes.begin(), shuffled.shapes.end(), rng);
        CHECK(execute_rules(data, shuffled).graph == reference);
    }
}

TEST_CASE("random stratified rule sets: monotone, idempotent, bounded, order-free") {
    std::mt19937 rng(406);
    int accepted = 0, attempts = 0;
    while (accepted < 60 && attempts < 20000) {
        ++attempts;
        ShapesDocument doc = test::random_ruleset(rng);
        try {
            stratify(doc);
        } catch (const StratificationError&) {
            continue;
        }
        Graph data = test::random_graph(rng, 20);
        InferenceResult result;
        try {
            result = execute_rules(data, doc);
        } catch (const ConstraintTypeError&) {
            continue;  // lessThan over random non-integers; fine
        }
        ++accepted;

        for (const Triple& t : data.triples()) CHECK(result.graph.contains(t));

        std::set<Term> nodes;
        std::set<Term> predicates;
        for (const Triple& t : result.graph.triples()) {
            nodes.insert(t.subject);
            nodes.insert(t.object);
            predicates.insert(t.predicate);
        }
        CHECK(result.provenance.size() <= nodes.size() * nodes.size() * predicates.size());

        InferenceResult again = execute_rules(result.graph, doc);
        CHECK(again.graph == result.graph);
        CHECK(again.provenance.empty());

        ShapesDocument shuffled = doc;
        std::shuffle(shuffled.shapes.begin(), shuffled.shapes.end(), rng);
        CHECK(execute_rules(data, shuffled).graph == result.graph);
    }
    // rejection sampling must actually find enough passing rule sets
    CHECK(accepted == 60);
}
