#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "normcheck/path.hpp"
#include "normcheck/term.hpp"

namespace normcheck {

namespace detail {

// Orderings for the secondary indexes.
struct PosLess {
    bool operator()(const Triple& a, const Triple& b) const {
        if (auto c = a.predicate <=> b.predicate; c != 0) return c < 0;
        if (auto c = a.object <=> b.object; c != 0) return c < 0;
        return a.subject < b.subject;
    }
};

struct OspLess {
    bool operator()(const Triple& a, const Triple& b) const {
        if (auto c = a.object <=> b.object; c != 0) return c < 0;
        if (auto c = a.subject <=> b.subject; c != 0) return c < 0;
        return a.predicate < b.predicate;
    }
};

}  // namespace detail

// In-memory triple set with SPO/POS/OSP indexes and a prefix table.
//
// Construction is single-writer. Once loaded a Graph is treated as
// immutable and may be read from any number of threads; the rule engine
// copies it and extends the copy rather than mutating in place.
class Graph {
public:
    // Returns true if the triple was new. Rejects literal subjects and
    // non-IRI predicates.
    bool insert(Triple t);
    bool remove(const Triple& t);
    bool contains(const Triple& t) const { return spo_.count(t) > 0; }

    std::size_t size() const { return spo_.size(); }
    bool empty() const { return spo_.empty(); }

    // All triples in subject, predicate, object order.
    const std::set<Triple>& triples() const { return spo_; }

    // Triples agreeing with every bound position, in SPO order. Any pattern
    // with at least one bound position is answered from an index.
    std::vector<Triple> match(const std::optional<Term>& s,
                              const std::optional<Term>& p,
                              const std::optional<Term>& o) const;

    // Nodes reachable from `start` by following the path's predicates in
    // order. Unreachable yields the empty set.
    std::set<Term> evaluate_path(const Term& start, const PropertyPath& path) const;

    // Subjects carrying an explicit rdf:type edge to `cls`, sorted.
    std::vector<Term> subjects_of_type(const Term& cls) const;

    // Copies another graph's triples in, renaming its blank nodes apart so
    // labels from separately parsed documents never collide.
    void merge(const Graph& other);

    // A blank node with a label unused so far in this graph. Labels are
    // zero-padded so lexicographic order matches allocation order.
    Term fresh_blank();

    void add_prefix(const std::string& prefix, const std::string& ns);
    const std::map<std::string, std::string>& prefixes() const { return prefixes_; }

    friend bool operator==(const Graph& a, const Graph& b) { return a.spo_ == b.spo_; }

private:
    std::set<Triple> spo_;
    std::set<Triple, detail::PosLess> pos_;
    std::set<Triple, detail::OspLess> osp_;
    std::map<std::string, std::string> prefixes_;
    std::uint64_t next_blank_ = 0;
};

}  // namespace normcheck
