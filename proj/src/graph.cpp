#include "normcheck/graph.hpp"

#include <algorithm>
#include <cstdio>

#include "normcheck/errors.hpp"

namespace normcheck {

namespace {

// Smallest possible term: the Iri kind sorts first and "" sorts below any
// other IRI string. Used to seed lower_bound range scans.
const Term kMinTerm = Term::iri("");

}  // namespace

bool Graph::insert(Triple t) {
    if (t.subject.is_literal())
        throw Error("literal in subject position: " + t.display());
    if (!t.predicate.is_iri())
        throw Error("non-IRI in predicate position: " + t.display());
    auto [it, added] = spo_.insert(t);
    if (!added) return false;
    pos_.insert(t);
    osp_.insert(std::move(t));
    return true;
}

bool Graph::remove(const Triple& t) {
    if (spo_.erase(t) == 0) return false;
    pos_.erase(t);
    osp_.erase(t);
    return true;
}

std::vector<Triple> Graph::match(const std::optional<Term>& s,
                                 const std::optional<Term>& p,
                                 const std::optional<Term>& o) const {
    std::vector<Triple> out;
    const bool bs = s.has_value(), bp = p.has_value(), bo = o.has_value();

    if (bs && bp && bo) {
        Triple t{*s, *p, *o};
        if (contains(t)) out.push_back(std::move(t));
    } else if (bs) {
        // SPO covers s, (s,p); OSP covers (s,o).
        if (bo) {
            for (auto it = osp_.lower_bound(Triple{*s, kMinTerm, *o});
                 it != osp_.end() && it->object == *o && it->subject == *s; ++it)
                out.push_back(*it);
        } else {
            for (auto it = spo_.lower_bound(Triple{*s, bp ? *p : kMinTerm, kMinTerm});
                 it != spo_.end() && it->subject == *s && (!bp || it->predicate == *p); ++it)
                out.push_back(*it);
        }
    } else if (bp) {
        for (auto it = pos_.lower_bound(Triple{kMinTerm, *p, bo ? *o : kMinTerm});
             it != pos_.end() && it->predicate == *p && (!bo || it->object == *o); ++it)
            out.push_back(*it);
    } else if (bo) {
        for (auto it = osp_.lower_bound(Triple{kMinTerm, kMinTerm, *o});
             it != osp_.end() && it->object == *o; ++it)
            out.push_back(*it);
    } else {
        return {spo_.begin(), spo_.end()};
    }

    std::sort(out.begin(), out.end());
    return out;
}

std::set<Term> Graph::evaluate_path(const Term& start, const PropertyPath& path) const {
    std::set<Term> frontier{start};
    for (const Term& pred : path.steps()) {
        std::set<Term> next;
        for (const Term& node : frontier) {
            if (node.is_literal()) continue;  // literals have no outgoing edges
            for (const Triple& t : match(node, pred, std::nullopt)) next.insert(t.object);
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return frontier;
}

std::vector<Term> Graph::subjects_of_type(const Term& cls) const {
    std::vector<Term> out;
    for (const Triple& t : match(std::nullopt, rdf::type, cls)) out.push_back(t.subject);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void Graph::merge(const Graph& other) {
    std::map<std::string, Term> renamed;
    auto rename = [&](const Term& t) {
        if (!t.is_blank()) return t;
        auto it = renamed.find(t.value());
        if (it == renamed.end()) it = renamed.emplace(t.value(), fresh_blank()).first;
        return it->second;
    };
    for (const Triple& t : other.triples())
        insert(Triple{rename(t.subject), rename(t.predicate), rename(t.object)});
    for (const auto& [prefix, ns] : other.prefixes()) prefixes_.try_emplace(prefix, ns);
}

Term Graph::fresh_blank() {
    char buf[24];
    std::snprintf(buf, sizeof buf, "b%06llu",
                  static_cast<unsigned long long>(next_blank_++));
    return Term::blank(buf);
}

void Graph::add_prefix(const std::string& prefix, const std::string& ns) {
    prefixes_[prefix] = ns;
}

}  // namespace normcheck
