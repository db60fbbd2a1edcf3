#include "normcheck/turtle.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "normcheck/errors.hpp"

namespace normcheck {

namespace {

bool is_pn_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
}

bool is_pn_first(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

class TurtleParser {
public:
    explicit TurtleParser(std::string_view text) : text_(text) {}

    Graph run() {
        skip_ws();
        while (!eof()) {
            if (peek() == '@')
                prefix_directive();
            else
                statement();
            skip_ws();
        }
        return std::move(graph_);
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char peek_at(std::size_t off) const {
        return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
    }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws() {
        while (!eof()) {
            char c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    void expect(char c, const char* what) {
        skip_ws();
        if (eof() || peek() != c) fail(std::string("expected '") + c + "' " + what);
        advance();
    }

    // @prefix pfx: <iri> .
    void prefix_directive() {
        for (const char* kw = "@prefix"; *kw; ++kw) {
            if (eof() || peek() != *kw) fail("unknown directive");
            advance();
        }
        skip_ws();
        std::string prefix;
        while (!eof() && is_pn_char(peek())) prefix += advance();
        expect(':', "after prefix name");
        skip_ws();
        std::string iri = iriref();
        expect('.', "after @prefix directive");
        graph_.add_prefix(prefix, iri);
    }

    void statement() {
        skip_ws();
        if (!eof() && peek() == '[') {
            Term node = bnode_property_list();
            skip_ws();
            if (!eof() && peek() != '.') predicate_object_list(node);
            expect('.', "at end of statement");
            return;
        }
        Term subj = subject();
        predicate_object_list(subj);
        expect('.', "at end of statement");
    }

    Term subject() {
        skip_ws();
        if (eof()) fail("unexpected end of input, expected subject");
        char c = peek();
        if (c == '<') return Term::iri(iriref());
        if (c == '[') return bnode_property_list();
        if (c == '_' && peek_at(1) == ':') return labeled_blank();
        if (is_pn_first(c) || c == ':') return prefixed_name();
        fail(std::string("unexpected token at subject position: '") + c + "'");
    }

    void predicate_object_list(const Term& subj) {
        while (true) {
            skip_ws();
            Term pred = verb();
            object_list(subj, pred);
            skip_ws();
            if (!eof() && peek() == ';') {
                advance();
                skip_ws();
                // trailing ';' before '.' or ']' is legal
                if (!eof() && (peek() == '.' || peek() == ']')) return;
                continue;
            }
            return;
        }
    }

    Term verb() {
        skip_ws();
        if (eof()) fail("unexpected end of input, expected predicate");
        char c = peek();
        // bare 'a' abbreviates rdf:type
        if (c == 'a' && !is_pn_char(peek_at(1)) && peek_at(1) != ':') {
            advance();
            return rdf::type;
        }
        if (c == '<') return Term::iri(iriref());
        if (is_pn_first(c) || c == ':') {
            Term t = prefixed_name();
            if (!t.is_iri()) fail("predicate must be an IRI");
            return t;
        }
        fail(std::string("unexpected token at predicate position: '") + c + "'");
    }

    void object_list(const Term& subj, const Term& pred) {
        while (true) {
            Term obj = object();
            graph_.insert(Triple{subj, pred, obj});
            skip_ws();
            if (!eof() && peek() == ',') {
                advance();
                continue;
            }
            return;
        }
    }

    Term object() {
        skip_ws();
        if (eof()) fail("unexpected end of input, expected object");
        char c = peek();
        if (c == '<') return Term::iri(iriref());
        if (c == '"') return string_literal();
        if (c == '(') return collection();
        if (c == '[') return bnode_property_list();
        if (c == '_' && peek_at(1) == ':') return labeled_blank();
        if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c)))
            return integer_literal();
        if (is_pn_first(c) || c == ':') return name_or_boolean();
        fail(std::string("unexpected token at object position: '") + c + "'");
    }

    std::string iriref() {
        skip_ws();
        if (eof() || peek() != '<') fail("expected IRI");
        advance();
        std::string iri;
        while (!eof() && peek() != '>') {
            char c = advance();
            if (c == '\n' || c == ' ') fail("whitespace inside IRI");
            iri += c;
        }
        if (eof()) fail("unterminated IRI");
        advance();
        return iri;
    }

    Term prefixed_name() {
        std::string prefix;
        while (!eof() && is_pn_char(peek())) prefix += advance();
        if (eof() || peek() != ':') fail("expected ':' in prefixed name");
        advance();
        std::string local;
        while (!eof() && is_pn_char(peek())) local += advance();
        auto it = graph_.prefixes().find(prefix);
        if (it == graph_.prefixes().end()) fail("unknown prefix '" + prefix + ":'");
        return Term::iri(it->second + local);
    }

    // A bare name is either true/false or a prefixed name.
    Term name_or_boolean() {
        std::size_t save_pos = pos_, save_line = line_, save_col = col_;
        std::string word;
        while (!eof() && is_pn_char(peek())) word += advance();
        if ((word == "true" || word == "false") && (eof() || peek() != ':'))
            return Term::boolean(word == "true");
        pos_ = save_pos;
        line_ = save_line;
        col_ = save_col;
        return prefixed_name();
    }

    Term labeled_blank() {
        advance();  // '_'
        advance();  // ':'
        std::string label;
        while (!eof() && is_pn_char(peek())) label += advance();
        if (label.empty()) fail("empty blank node label");
        auto it = blank_labels_.find(label);
        if (it == blank_labels_.end())
            it = blank_labels_.emplace(label, graph_.fresh_blank()).first;
        return it->second;
    }

    Term bnode_property_list() {
        advance();  // '['
        Term node = graph_.fresh_blank();
        skip_ws();
        if (!eof() && peek() == ']') {
            advance();
            return node;
        }
        predicate_object_list(node);
        expect(']', "at end of blank node property list");
        return node;
    }

    // ( o1 o2 ... ) expands to an rdf:first/rdf:rest chain ending in rdf:nil.
    Term collection() {
        advance();  // '('
        std::vector<Term> items;
        while (true) {
            skip_ws();
            if (eof()) fail("unterminated collection");
            if (peek() == ')') {
                advance();
                break;
            }
            items.push_back(object());
        }
        Term tail = rdf::nil;
        for (auto it = items.rbegin(); it != items.rend(); ++it) {
            Term cell = graph_.fresh_blank();
            graph_.insert(Triple{cell, rdf::first, *it});
            graph_.insert(Triple{cell, rdf::rest, tail});
            tail = cell;
        }
        return tail;
    }

    Term integer_literal() {
        std::string lex;
        if (peek() == '+' || peek() == '-') lex += advance();
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) lex += advance();
        if (lex.empty() || !std::isdigit(static_cast<unsigned char>(lex.back())))
            fail("malformed integer literal");
        return Term::literal(lex, xsd::integer_type);
    }

    Term string_literal() {
        advance();  // '"'
        std::string value;
        while (true) {
            if (eof()) fail("unterminated string literal");
            char c = advance();
            if (c == '"') break;
            if (c == '\n') fail("newline inside string literal");
            if (c == '\\') {
                if (eof()) fail("unterminated escape");
                char e = advance();
                if (e == '"')
                    value += '"';
                else if (e == '\\')
                    value += '\\';
                else if (e == 'n')
                    value += '\n';
                else
                    fail(std::string("unsupported escape '\\") + e + "'");
                continue;
            }
            value += c;
        }
        // optional ^^datatype
        if (!eof() && peek() == '^' && peek_at(1) == '^') {
            advance();
            advance();
            Term dt = peek() == '<' ? Term::iri(iriref()) : prefixed_name();
            const std::string& iri = dt.value();
            if (iri == xsd::boolean_type) {
                if (value != "true" && value != "false")
                    fail("malformed boolean literal \"" + value + "\"");
                return Term::literal(value, xsd::boolean_type);
            }
            if (iri == xsd::integer_type) {
                Term t = Term::literal(value, xsd::integer_type);
                if (!t.integer_value()) fail("malformed integer literal \"" + value + "\"");
                return t;
            }
            if (iri == xsd::string_type) return Term::literal(value, xsd::string_type);
            fail("unsupported literal datatype <" + iri + ">");
        }
        return Term::literal(value, xsd::string_type);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    Graph graph_;
    std::unordered_map<std::string, Term> blank_labels_;
};

// True when the IRI can be written as prefix:local with the given namespace.
bool splits_as(const std::string& iri, const std::string& ns, std::string& local) {
    if (iri.size() < ns.size() || iri.compare(0, ns.size(), ns) != 0) return false;
    local = iri.substr(ns.size());
    if (local.empty()) return true;
    if (!is_pn_first(local[0])) return false;
    for (char c : local)
        if (!is_pn_char(c)) return false;
    return true;
}

std::string write_term(const Term& t, const std::map<std::string, std::string>& prefixes,
                       bool as_predicate = false) {
    switch (t.kind()) {
        case Term::Kind::Blank:
            return "_:" + t.value();
        case Term::Kind::Iri: {
            if (as_predicate && t == rdf::type) return "a";
            // longest-namespace match wins
            std::string best_prefix, best_local;
            std::size_t best_len = 0;
            for (const auto& [prefix, ns] : prefixes) {
                std::string local;
                if (ns.size() > best_len && splits_as(t.value(), ns, local)) {
                    best_prefix = prefix;
                    best_local = local;
                    best_len = ns.size();
                }
            }
            if (best_len > 0) return best_prefix + ":" + best_local;
            return "<" + t.value() + ">";
        }
        case Term::Kind::Literal:
            break;
    }
    if (t.datatype() == xsd::boolean_type) return t.value();
    if (t.datatype() == xsd::integer_type) {
        // bare integers re-parse with a canonical lexical form only
        auto v = t.integer_value();
        if (v && std::to_string(*v) == t.value()) return t.value();
    }
    std::string out = "\"";
    for (char c : t.value()) {
        if (c == '"' || c == '\\')
            out += std::string("\\") + c;
        else if (c == '\n')
            out += "\\n";
        else if (static_cast<unsigned char>(c) < 0x20)
            throw Error("cannot serialize control character in string literal");
        else
            out += c;
    }
    out += '"';
    if (t.datatype() == xsd::integer_type)
        return out + "^^" + write_term(Term::iri(xsd::integer_type), prefixes);
    return out;
}

}  // namespace

Graph parse_turtle(std::string_view text) { return TurtleParser(text).run(); }

Graph parse_turtle_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_turtle(buf.str());
}

std::string serialize_turtle(const Graph& g) {
    std::ostringstream out;
    auto prefixes = g.prefixes();
    // always declare xsd so non-canonical integers stay readable
    prefixes.try_emplace("xsd", xsd::ns);
    for (const auto& [prefix, ns] : prefixes)
        out << "@prefix " << prefix << ": <" << ns << "> .\n";
    if (!prefixes.empty() && !g.empty()) out << "\n";
    for (const Triple& t : g.triples()) {
        out << write_term(t.subject, prefixes) << ' '
            << write_term(t.predicate, prefixes, /*as_predicate=*/true) << ' '
            << write_term(t.object, prefixes) << " .\n";
    }
    return out.str();
}

}  // namespace normcheck
