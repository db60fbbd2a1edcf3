#include "normcheck/path.hpp"

#include "normcheck/errors.hpp"

namespace normcheck {

PropertyPath::PropertyPath(std::vector<Term> steps) : steps_(std::move(steps)) {
    if (steps_.empty()) throw Error("property path must have at least one step");
    for (const Term& t : steps_)
        if (!t.is_iri()) throw Error("property path step is not an IRI: " + t.display());
}

PropertyPath PropertyPath::predicate(Term pred) {
    return PropertyPath(std::vector<Term>{std::move(pred)});
}

PropertyPath PropertyPath::sequence(std::vector<Term> steps) {
    if (steps.size() < 2) throw Error("sequence path needs at least two steps");
    return PropertyPath(std::move(steps));
}

PropertyPath PropertyPath::of(std::vector<Term> steps) {
    return PropertyPath(std::move(steps));
}

std::string PropertyPath::display() const {
    if (!is_sequence()) return steps_.front().display();
    std::string out = "(";
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        if (i) out += ' ';
        out += steps_[i].display();
    }
    out += ')';
    return out;
}

}  // namespace normcheck
