#include "support/testutil.hpp"

#include <algorithm>
#include <functional>
#include <utility>

#include "normcheck/errors.hpp"

namespace normcheck::test {

namespace {

std::vector<Term> blank_nodes(const Graph& g) {
    std::set<Term> s;
    for (const Triple& t : g.triples()) {
        if (t.subject.is_blank()) s.insert(t.subject);
        if (t.object.is_blank()) s.insert(t.object);
    }
    return {s.begin(), s.end()};
}

using ColorMap = std::map<Term, int>;

// One signature round: each blank node is described by its current color
// plus the sorted multiset of (role, neighbour key) strings around it.
std::map<Term, std::string> signatures(const Graph& g, const ColorMap& color) {
    auto key = [&color](const Term& t) {
        if (t.is_blank()) return "[" + std::to_string(color.at(t)) + "]";
        return t.display() + "/" + t.datatype();
    };
    std::map<Term, std::vector<std::string>> segs;
    for (const auto& [b, c] : color) segs[b];  // keep isolated blanks present
    for (const Triple& t : g.triples()) {
        if (t.subject.is_blank())
            segs[t.subject].push_back("S(" + key(t.predicate) + "," + key(t.object) + ")");
        if (t.object.is_blank())
            segs[t.object].push_back("O(" + key(t.subject) + "," + key(t.predicate) + ")");
    }
    std::map<Term, std::string> out;
    for (auto& [b, v] : segs) {
        std::sort(v.begin(), v.end());
        std::string s = std::to_string(color.at(b)) + "|";
        for (const std::string& piece : v) s += piece;
        out[b] = std::move(s);
    }
    return out;
}

// Refines both graphs together so the integer colors are comparable across
// them: each round the distinct signature strings of *both* graphs are
// numbered in sorted order. Renaming blank nodes never changes a signature,
// so colors are isomorphism-invariant.
std::pair<ColorMap, ColorMap> joint_colors(const Graph& a, const Graph& b) {
    ColorMap ca, cb;
    for (const Term& t : blank_nodes(a)) ca[t] = 0;
    for (const Term& t : blank_nodes(b)) cb[t] = 0;
    std::size_t rounds = std::max(ca.size(), cb.size());
    for (std::size_t round = 0; round < rounds; ++round) {
        auto sa = signatures(a, ca);
        auto sb = signatures(b, cb);
        std::set<std::string> distinct;
        for (const auto& [t, s] : sa) distinct.insert(s);
        for (const auto& [t, s] : sb) distinct.insert(s);
        std::map<std::string, int> token;
        int next = 0;
        for (const std::string& s : distinct) token[s] = next++;
        for (auto& [t, c] : ca) c = token.at(sa.at(t));
        for (auto& [t, c] : cb) c = token.at(sb.at(t));
    }
    return {std::move(ca), std::move(cb)};
}

}  // namespace

bool isomorphic(const Graph& a, const Graph& b) {
    if (a.size() != b.size()) return false;
    auto [ca, cb] = joint_colors(a, b);
    if (ca.size() != cb.size()) return false;

    // Triples without blank nodes must coincide exactly.
    for (const Triple& t : a.triples())
        if (!t.subject.is_blank() && !t.object.is_blank() && !b.contains(t)) return false;

    std::map<int, std::vector<Term>> classes_b;
    for (const auto& [t, c] : cb) classes_b[c].push_back(t);
    std::map<int, std::size_t> count_a;
    for (const auto& [t, c] : ca) ++count_a[c];
    if (count_a.size() != classes_b.size()) return false;
    for (const auto& [c, n] : count_a) {
        auto it = classes_b.find(c);
        if (it == classes_b.end() || it->second.size() != n) return false;
    }

    // Most constrained first keeps the search shallow.
    std::vector<Term> order;
    for (const auto& [t, c] : ca) order.push_back(t);
    std::sort(order.begin(), order.end(), [&](const Term& x, const Term& y) {
        auto sx = classes_b.at(ca.at(x)).size(), sy = classes_b.at(ca.at(y)).size();
        return sx != sy ? sx < sy : x < y;
    });

    std::map<Term, Term> assign;
    std::set<Term> used;
    auto verify = [&]() {
        std::set<Triple> mapped;
        for (const Triple& t : a.triples()) {
            Triple m = t;
            if (m.subject.is_blank()) m.subject = assign.at(m.subject);
            if (m.object.is_blank()) m.object = assign.at(m.object);
            mapped.insert(std::move(m));
        }
        return mapped == b.triples();
    };
    std::function<bool(std::size_t)> search = [&](std::size_t i) {
        if (i == order.size()) return verify();
        const Term& x = order[i];
        for (const Term& y : classes_b.at(ca.at(x))) {
            if (used.count(y)) continue;
            assign.emplace(x, y);
            used.insert(y);
            if (search(i + 1)) return true;
            assign.erase(x);
            used.erase(y);
        }
        return false;
    };
    return search(0);
}

std::set<Term> brute_path_values(const Graph& g, const Term& start,
                                 const PropertyPath& path) {
    std::set<Term> frontier{start};
    for (const Term& pred : path.steps()) {
        std::set<Term> next;
        for (const Triple& t : g.triples())
            if (t.predicate == pred && frontier.count(t.subject)) next.insert(t.object);
        frontier = std::move(next);
    }
    return frontier;
}

bool brute_check(const Graph& g, const Term& focus, const Constraint& c) {
    struct Visitor {
        const Graph& g;
        const Term& focus;

        std::set<Term> values(const PropertyPath& p) const {
            return brute_path_values(g, focus, p);
        }
        bool has_type(const Term& v, const Term& cls) const {
            for (const Triple& t : g.triples())
                if (t.subject == v && t.predicate == rdf::type && t.object == cls) return true;
            return false;
        }

        bool operator()(const HasValueC& c) const { return values(c.path).count(c.value) > 0; }
        bool operator()(const MinCountC& c) const { return values(c.path).size() >= c.count; }
        bool operator()(const MaxCountC& c) const { return values(c.path).size() <= c.count; }
        bool operator()(const ClassC& c) const {
            for (const Term& v : values(c.path))
                if (v.is_literal() || !has_type(v, c.cls)) return false;
            return true;
        }
        bool operator()(const LessThanC& c) const {
            auto lhs = values(c.path);
            auto rhs = values(PropertyPath::predicate(c.other));
            if (lhs.empty() || rhs.empty()) return true;
            for (const Term& v : lhs)
                if (!v.integer_value())
                    throw ConstraintTypeError("lessThan over non-integer " + v.display());
            for (const Term& w : rhs)
                if (!w.integer_value())
                    throw ConstraintTypeError("lessThan over non-integer " + w.display());
            for (const Term& v : lhs)
                for (const Term& w : rhs)
                    if (!(*v.integer_value() < *w.integer_value())) return false;
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
        bool operator()(const NotC& c) const { return !brute_check(g, focus, c.inner.front()); }
        bool operator()(const AndC& c) const {
            for (const Constraint& item : c.items)
                if (!brute_check(g, focus, item)) return false;
            return true;
        }
    };
    return std::visit(Visitor{g, focus}, c.node());
}

std::optional<bool> outcome_of(const Graph& g, const Term& focus, const Constraint& c,
                               bool (*eval)(const Graph&, const Term&, const Constraint&)) {
    try {
        return eval(g, focus, c);
    } catch (const ConstraintTypeError&) {
        return std::nullopt;
    }
}

std::vector<BruteResult> brute_validate(const Graph& g, const ShapesDocument& doc) {
    std::vector<BruteResult> out;
    for (const NodeShape& shape : doc.shapes) {
        std::set<Term> foci;
        for (const Triple& t : g.triples())
            if (t.predicate == rdf::type && t.object == shape.target_class)
                foci.insert(t.subject);
        for (const Term& focus : foci)
            for (const Constraint& c : shape.constraints)
                if (!brute_check(g, focus, c))
                    out.push_back({shape.id, focus, c.describe(), shape.severity});
    }
    std::stable_sort(out.begin(), out.end(), [](const BruteResult& a, const BruteResult& b) {
        return std::tie(a.shape, a.focus) < std::tie(b.shape, b.focus);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Generators. Small pools on purpose: collisions are what make the random
// cases interesting.
// ---------------------------------------------------------------------------

namespace {

const std::string pool = "http://example.org/pool#";

int roll(std::mt19937& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Term plain_predicate(std::mt19937& rng) {
    return Term::iri(pool + "p" + std::to_string(roll(rng, 0, 4)));
}

Term random_literal(std::mt19937& rng) {
    switch (roll(rng, 0, 3)) {
        case 0: return Term::integer(roll(rng, 0, 5));
        case 1: return Term::boolean(roll(rng, 0, 1) == 1);
        case 2: return Term::string_lit(roll(rng, 0, 1) ? "a" : "b");
        default: return Term::integer(roll(rng, 0, 5));
    }
}

}  // namespace

Term random_node(std::mt19937& rng) {
    int k = roll(rng, 0, 9);
    if (k < 6) return Term::iri(pool + "n" + std::to_string(k));
    return Term::blank("g" + std::to_string(k - 6));
}

Term random_predicate(std::mt19937& rng) {
    if (roll(rng, 0, 5) == 0) return rdf::type;
    return plain_predicate(rng);
}

Term random_class(std::mt19937& rng) {
    return Term::iri(pool + "C" + std::to_string(roll(rng, 0, 3)));
}

Term random_object(std::mt19937& rng) {
    int k = roll(rng, 0, 9);
    if (k < 4) return random_node(rng);
    if (k < 6) return random_class(rng);
    return random_literal(rng);
}

Graph random_graph(std::mt19937& rng, std::size_t max_triples) {
    Graph g;
    int n = roll(rng, 0, static_cast<int>(max_triples));
    for (int i = 0; i < n; ++i) {
        Term s = random_node(rng);
        Term p = random_predicate(rng);
        Term o = (p == rdf::type) ? random_class(rng) : random_object(rng);
        g.insert(Triple{std::move(s), std::move(p), std::move(o)});
    }
    return g;
}

PropertyPath random_path(std::mt19937& rng) {
    std::vector<Term> steps;
    int n = roll(rng, 1, 3);
    for (int i = 0; i < n; ++i) steps.push_back(plain_predicate(rng));
    return PropertyPath::of(std::move(steps));
}

Constraint random_constraint(std::mt19937& rng, int depth) {
    switch (roll(rng, 0, depth > 0 ? 8 : 6)) {
        case 0: return Constraint::has_value(random_path(rng), random_object(rng));
        case 1: return Constraint::min_count(random_path(rng), roll(rng, 0, 3));
        case 2: return Constraint::max_count(random_path(rng), roll(rng, 0, 3));
        case 3: return Constraint::class_member(random_path(rng), random_class(rng));
        case 4: return Constraint::less_than(random_path(rng), plain_predicate(rng));
        case 5: return Constraint::equals(random_path(rng), plain_predicate(rng));
        case 6: {
            Term dt = Term::iri(roll(rng, 0, 1) ? xsd::integer_type : xsd::boolean_type);
            return Constraint::datatype(random_path(rng), dt);
        }
        case 7: return Constraint::negation(random_constraint(rng, depth - 1));
        default: {
            std::vector<Constraint> items;
            int n = roll(rng, 2, 3);
            for (int i = 0; i < n; ++i) items.push_back(random_constraint(rng, depth - 1));
            return Constraint::conjunction(std::move(items));
        }
    }
}

namespace {

// Monotone conditions keep rejection sampling over stratify productive.
Constraint random_monotone(std::mt19937& rng) {
    if (roll(rng, 0, 2) == 0)
        return Constraint::has_value(random_path(rng), random_object(rng));
    return Constraint::min_count(random_path(rng), roll(rng, 1, 2));
}

NodeSpec random_spec(std::mt19937& rng, bool allow_literal) {
    int k = roll(rng, 0, 9);
    if (k < 5) return ThisSpec{};
    if (k < 8) return random_path(rng);
    if (allow_literal && roll(rng, 0, 1)) return random_literal(rng);
    return Term::iri(pool + "n" + std::to_string(roll(rng, 0, 5)));
}

}  // namespace

ShapesDocument random_ruleset(std::mt19937& rng) {
    ShapesDocument doc;
    int shapes = roll(rng, 2, 4);
    for (int i = 0; i < shapes; ++i) {
        NodeShape shape;
        shape.id = Term::iri(pool + "Shape" + std::to_string(i));
        shape.target_class = random_class(rng);
        int rules = roll(rng, 1, 2);
        for (int j = 0; j < rules; ++j) {
            TripleRule rule;
            rule.id = shape.id.value() + "#rule" + std::to_string(j);
            rule.order = roll(rng, 0, 2);
            if (roll(rng, 0, 9) < 6)
                rule.condition = roll(rng, 0, 9) < 7 ? random_monotone(rng)
                                                     : random_constraint(rng, 1);
            rule.subject = random_spec(rng, false);
            if (roll(rng, 0, 7) == 0) {
                rule.predicate = rdf::type;
                rule.object = random_class(rng);
            } else {
                rule.predicate = plain_predicate(rng);
                rule.object = random_spec(rng, true);
            }
            shape.rules.push_back(std::move(rule));
        }
        doc.shapes.push_back(std::move(shape));
    }
    return doc;
}

std::vector<Term> focus_candidates(const Graph& g) {
    std::set<Term> s;
    for (const Triple& t : g.triples()) {
        s.insert(t.subject);
        if (!t.object.is_literal()) s.insert(t.object);
    }
    return {s.begin(), s.end()};
}

}  // namespace normcheck::test
