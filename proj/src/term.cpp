#include "normcheck/term.hpp"

#include <charconv>

namespace normcheck {

std::optional<long long> Term::integer_value() const {
    if (!is_integer_literal()) return std::nullopt;
    const char* begin = value_.data();
    const char* end = begin + value_.size();
    if (begin != end && *begin == '+') ++begin;  // from_chars rejects a leading '+'
    long long out = 0;
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return out;
}

std::string Term::display() const {
    switch (kind_) {
        case Kind::Iri:
            return value_;
        case Kind::Blank:
            return "_:" + value_;
        case Kind::Literal:
            break;
    }
    if (datatype_ == xsd::boolean_type || datatype_ == xsd::integer_type) return value_;
    std::string out = "\"";
    for (char c : value_) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string Triple::display() const {
    return subject.display() + " " + predicate.display() + " " + object.display();
}

}  // namespace normcheck
