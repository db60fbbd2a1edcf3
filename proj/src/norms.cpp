#include "normcheck/norms.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "normcheck/errors.hpp"
#include "normcheck/inference.hpp"

namespace normcheck {

namespace {

bool symbol_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == ':' || c == '-' ||
           c == '_' || c == '.';
}

class NormParser {
public:
    explicit NormParser(std::string_view text) : text_(text) {}

    NormSet run() {
        NormSet out;
        std::set<std::string> ids;
        skip_space();
        while (!at_end()) {
            expect('(');
            if (peek_symbol() == ":prefix") {
                parse_prefix(out);
            } else {
                NormRule norm = parse_norm(out.prefixes);
                if (!ids.insert(norm.id).second)
                    fail("duplicate norm id " + norm.id);
                out.norms.push_back(std::move(norm));
            }
            skip_space();
        }
        return out;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, column_);
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space() {
        while (!at_end()) {
            if (std::isspace(static_cast<unsigned char>(peek()))) {
                advance();
            } else if (peek() == ';') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                return;
            }
        }
    }

    void expect(char c) {
        skip_space();
        if (at_end() || peek() != c)
            fail(std::string("expected '") + c + "'" +
                 (at_end() ? " before end of input" : ""));
        advance();
    }

    bool try_consume(char c) {
        skip_space();
        if (at_end() || peek() != c) return false;
        advance();
        return true;
    }

    std::string symbol() {
        skip_space();
        if (at_end() || !symbol_char(peek())) fail("expected a symbol");
        std::string out;
        while (!at_end() && symbol_char(peek())) {
            out += peek();
            advance();
        }
        return out;
    }

    // Next symbol without consuming it; empty when none follows.
    std::string peek_symbol() {
        std::size_t pos = pos_, line = line_, col = column_;
        skip_space();
        std::string out;
        while (!at_end() && symbol_char(peek())) {
            out += peek();
            advance();
        }
        pos_ = pos;
        line_ = line;
        column_ = col;
        return out;
    }

    std::string quoted_string() {
        skip_space();
        if (at_end() || peek() != '"') fail("expected a quoted string");
        advance();
        std::string out;
        while (!at_end() && peek() != '"') {
            if (peek() == '\n') fail("unterminated string");
            out += peek();
            advance();
        }
        if (at_end()) fail("unterminated string");
        advance();
        return out;
    }

    void keyword(const std::string& expected) {
        std::string got = symbol();
        if (got != expected) fail("expected " + expected + ", got " + got);
    }

    long long integer() {
        std::string s = symbol();
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size()) fail("expected an integer, got " + s);
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i])))
                fail("expected an integer, got " + s);
        return std::stoll(s);
    }

    void parse_prefix(NormSet& out) {
        keyword(":prefix");
        std::string name = symbol();
        if (name.find(':') != std::string::npos) fail("prefix name must not contain ':'");
        out.prefixes[name] = quoted_string();
        expect(')');
    }

    Term resolve_curie(const std::string& s, const std::map<std::string, std::string>& prefixes) {
        auto colon = s.find(':');
        if (colon == std::string::npos) fail("expected prefix:local, got " + s);
        auto it = prefixes.find(s.substr(0, colon));
        if (it == prefixes.end()) fail("unknown prefix in " + s);
        return Term::iri(it->second + s.substr(colon + 1));
    }

    Term curie(const std::map<std::string, std::string>& prefixes) {
        return resolve_curie(symbol(), prefixes);
    }

    PropertyPath path(const std::map<std::string, std::string>& prefixes) {
        if (try_consume('(')) {
            std::vector<Term> steps;
            while (!try_consume(')')) steps.push_back(curie(prefixes));
            if (steps.empty()) fail("empty path");
            return PropertyPath::of(std::move(steps));
        }
        return PropertyPath::predicate(curie(prefixes));
    }

    Term literal() {
        skip_space();
        if (!at_end() && peek() == '"') return Term::string_lit(quoted_string());
        std::string s = symbol();
        if (s == "true") return Term::boolean(true);
        if (s == "false") return Term::boolean(false);
        bool numeric = !s.empty();
        for (std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) numeric = false;
        if (numeric && s != "-" && s != "+") return Term::integer(std::stoll(s));
        fail("expected a literal, got " + s);
    }

    AntecedentAtom atom(const std::map<std::string, std::string>& prefixes, bool inside_naf) {
        expect('(');
        std::string head = symbol();
        if (head == "naf") {
            if (inside_naf) fail("naf cannot nest");
            AntecedentAtom out = atom(prefixes, true);
            out.negated = true;
            expect(')');
            return out;
        }
        std::optional<Atom> parsed;
        if (head == "class") {
            parsed = ClassAtom{path(prefixes), curie(prefixes)};
        } else if (head == "less-than") {
            parsed = CompareAtom{CompareAtom::Kind::LessThan, path(prefixes), curie(prefixes)};
        } else if (head == "equals") {
            parsed = CompareAtom{CompareAtom::Kind::Equals, path(prefixes), curie(prefixes)};
        } else if (head == "min" || head == "max") {
            PropertyPath p = path(prefixes);
            long long n = integer();
            if (n < 0) fail("cardinality must be non-negative");
            parsed = CardinalityAtom{head == "min" ? CardinalityAtom::Kind::Min
                                                   : CardinalityAtom::Kind::Max,
                                     std::move(p), static_cast<unsigned>(n)};
        } else {
            fail("unknown atom " + head);
        }
        expect(')');
        return AntecedentAtom{false, std::move(*parsed)};
    }

    NodeSpec subject_spec(const std::map<std::string, std::string>& prefixes) {
        if (peek_symbol() == "self") {
            symbol();
            return ThisSpec{};
        }
        if (try_consume('(')) {
            std::vector<Term> steps;
            while (!try_consume(')')) steps.push_back(curie(prefixes));
            if (steps.empty()) fail("empty path");
            return PropertyPath::of(std::move(steps));
        }
        fail("expected self or a path");
    }

    NodeSpec object_spec(const std::map<std::string, std::string>& prefixes) {
        skip_space();
        if (!at_end() && peek() == '(') {
            expect('(');
            std::vector<Term> steps;
            while (!try_consume(')')) steps.push_back(curie(prefixes));
            if (steps.empty()) fail("empty path");
            return PropertyPath::of(std::move(steps));
        }
        std::string s = peek_symbol();
        if (!s.empty() && s != "true" && s != "false" && s.find(':') != std::string::npos)
            return curie(prefixes);
        return literal();
    }

    NormRule parse_norm(const std::map<std::string, std::string>& prefixes) {
        keyword("norm");

        keyword(":id");
        std::string id = quoted_string();
        if (id.find("://") == std::string::npos)
            id = resolve_curie(id, prefixes).value();

        keyword(":kind");
        std::string kind_name = symbol();
        NormKind kind;
        if (kind_name == "obligation")
            kind = NormKind::Obligation;
        else if (kind_name == "permission")
            kind = NormKind::Permission;
        else if (kind_name == "constitutive")
            kind = NormKind::Constitutive;
        else
            fail("unknown kind " + kind_name);

        int order = 0;
        if (peek_symbol() == ":order") {
            symbol();
            if (kind != NormKind::Constitutive)
                fail(":order is only valid on constitutive norms");
            order = static_cast<int>(integer());
        }

        keyword(":target");
        Term target = curie(prefixes);

        std::vector<AntecedentAtom> antecedent;
        if (peek_symbol() == ":if") {
            symbol();
            expect('(');
            while (!try_consume(')')) antecedent.push_back(atom(prefixes, false));
        }

        std::string conseq = symbol();
        std::optional<std::variant<RequireConsequent, AssertConsequent>> consequent;
        if (conseq == ":require") {
            if (kind == NormKind::Constitutive)
                fail("constitutive norm " + id + " must use :assert");
            expect('(');
            PropertyPath p = path(prefixes);
            Term value = literal();
            expect(')');
            consequent = RequireConsequent{std::move(p), std::move(value)};
        } else if (conseq == ":assert") {
            if (kind != NormKind::Constitutive)
                fail("norm " + id + " must use :require");
            expect('(');
            NodeSpec subject = subject_spec(prefixes);
            Term predicate = curie(prefixes);
            NodeSpec object = object_spec(prefixes);
            expect(')');
            consequent =
                AssertConsequent{std::move(subject), std::move(predicate), std::move(object)};
        } else {
            fail("expected :require or :assert, got " + conseq);
        }

        expect(')');
        return NormRule{std::move(id),         kind,  std::move(target),
                        order, std::move(antecedent), std::move(*consequent)};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

Constraint atom_constraint(const Atom& atom) {
    struct Visitor {
        Constraint operator()(const ClassAtom& a) const {
            return Constraint::class_member(a.path, a.cls);
        }
        Constraint operator()(const CompareAtom& a) const {
            return a.kind == CompareAtom::Kind::LessThan
                       ? Constraint::less_than(a.path, a.other)
                       : Constraint::equals(a.path, a.other);
        }
        Constraint operator()(const CardinalityAtom& a) const {
            return a.kind == CardinalityAtom::Kind::Min
                       ? Constraint::min_count(a.path, a.count)
                       : Constraint::max_count(a.path, a.count);
        }
    };
    return std::visit(Visitor{}, atom);
}

// Conjunction items follow the shape parser's canonical order — positive
// atoms first, negated ones after, atom order within each group — so a
// compiled document compares equal to its emitted-and-reparsed form.
std::optional<Constraint> antecedent_condition(const std::vector<AntecedentAtom>& atoms) {
    if (atoms.empty()) return std::nullopt;
    std::vector<Constraint> items;
    items.reserve(atoms.size());
    for (const AntecedentAtom& a : atoms)
        if (!a.negated) items.push_back(atom_constraint(a.atom));
    for (const AntecedentAtom& a : atoms)
        if (a.negated) items.push_back(Constraint::negation(atom_constraint(a.atom)));
    if (items.size() == 1) return std::move(items.front());
    return Constraint::conjunction(std::move(items));
}

}  // namespace

NormSet parse_norms(std::string_view text) { return NormParser(text).run(); }

NormSet parse_norms_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open norm file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_norms(buf.str());
}

ShapesDocument compile(const NormSet& ns) {
    ShapesDocument doc;
    for (const NormRule& norm : ns.norms) {
        NodeShape shape;
        shape.id = Term::iri(norm.id);
        shape.target_class = norm.target;
        if (norm.kind == NormKind::Constitutive) {
            const auto& conseq = std::get<AssertConsequent>(norm.consequent);
            TripleRule rule;
            rule.id = norm.id;
            rule.order = norm.order;
            rule.condition = antecedent_condition(norm.antecedent);
            rule.subject = conseq.subject;
            rule.predicate = conseq.predicate;
            rule.object = conseq.object;
            shape.rules.push_back(std::move(rule));
        } else {
            if (!norm.antecedent.empty())
                throw CompileError("norm " + norm.id +
                                   " has an antecedent; for obligations and permissions "
                                   "the target class is the only supported guard");
            const auto& conseq = std::get<RequireConsequent>(norm.consequent);
            shape.constraints.push_back(Constraint::has_value(conseq.path, conseq.value));
            shape.severity =
                norm.kind == NormKind::Permission ? Severity::Info : Severity::Violation;
        }
        doc.shapes.push_back(std::move(shape));
    }
    try {
        stratify(doc);
    } catch (const StratificationError& e) {
        throw CompileError("norms " + e.rule_a + " and " + e.rule_b +
                           " do not stratify: " + e.what());
    }
    return doc;
}

}  // namespace normcheck
