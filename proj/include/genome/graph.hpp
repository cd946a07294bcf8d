#pragma once
// Indexed in-memory triple store with set semantics.
//
// Three full indexes (subject, predicate, object) are kept in lockstep with
// the triple set; match() picks the most selective one. Mutation is
// single-owner, queries are pure reads on a snapshot.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "genome/prefix_map.hpp"
#include "genome/term.hpp"

namespace genome {

class Graph {
public:
    using TripleSet = std::set<Triple>;

    bool insert(const Triple& t) {
        auto [it, added] = triples_.insert(t);
        if (added) {
            by_subject_[t.subject].insert(t);
            by_predicate_[t.predicate].insert(t);
            by_object_[t.object].insert(t);
        }
        return added;
    }

    bool insert(Term s, Term p, Term o) {
        return insert(Triple(std::move(s), std::move(p), std::move(o)));
    }

    bool erase(const Triple& t) {
        if (triples_.erase(t) == 0) return false;
        erase_from_index(by_subject_, t.subject, t);
        erase_from_index(by_predicate_, t.predicate, t);
        erase_from_index(by_object_, t.object, t);
        return true;
    }

    bool contains(const Triple& t) const { return triples_.count(t) != 0; }

    std::size_t size() const { return triples_.size(); }
    bool empty() const { return triples_.empty(); }

    const TripleSet& triples() const { return triples_; }
    TripleSet::const_iterator begin() const { return triples_.begin(); }
    TripleSet::const_iterator end() const { return triples_.end(); }

    PrefixMap& prefixes() { return prefixes_; }
    const PrefixMap& prefixes() const { return prefixes_; }

    // Pattern match; absent arguments are wildcards. Results come back in
    // triple order, so identical queries always produce identical output.
    std::vector<Triple> match(const std::optional<Term>& s,
                              const std::optional<Term>& p,
                              const std::optional<Term>& o) const {
        const TripleSet* pool = &triples_;
        if (s) {
            auto it = by_subject_.find(*s);
            if (it == by_subject_.end()) return {};
            pool = &it->second;
        } else if (o) {
            auto it = by_object_.find(*o);
            if (it == by_object_.end()) return {};
            pool = &it->second;
        } else if (p) {
            auto it = by_predicate_.find(*p);
            if (it == by_predicate_.end()) return {};
            pool = &it->second;
        }
        std::vector<Triple> out;
        for (const auto& t : *pool) {
            if (s && t.subject != *s) continue;
            if (p && t.predicate != *p) continue;
            if (o && t.object != *o) continue;
            out.push_back(t);
        }
        return out;
    }

    // Objects o with (s, p, o) in the graph.
    std::vector<Term> objects_of(const Term& s, const Term& p) const {
        std::vector<Term> out;
        for (const auto& t : match(s, p, std::nullopt)) out.push_back(t.object);
        return out;
    }

    // Subjects s with (s, p, o) in the graph.
    std::vector<Term> subjects_of(const Term& p, const Term& o) const {
        std::vector<Term> out;
        for (const auto& t : match(std::nullopt, p, o)) out.push_back(t.subject);
        return out;
    }

private:
    static void erase_from_index(std::map<Term, TripleSet>& index, const Term& key,
                                 const Triple& t) {
        auto it = index.find(key);
        if (it == index.end()) return;
        it->second.erase(t);
        if (it->second.empty()) index.erase(it);
    }

    TripleSet triples_;
    std::map<Term, TripleSet> by_subject_;
    std::map<Term, TripleSet> by_predicate_;
    std::map<Term, TripleSet> by_object_;
    PrefixMap prefixes_;
};

namespace detail {

inline Term map_blank(const Term& t, const std::map<std::string, std::string>& mapping) {
    if (!t.is_blank()) return t;
    auto it = mapping.find(t.value);
    return it == mapping.end() ? t : Term::blank(it->second);
}

// Backtracking search for a blank-label bijection making the blank-containing
// triples of a equal to those of b. Counts of blank occurrences per position
// prune most mismatches before the search starts.
inline bool blank_bijection_exists(const std::vector<Triple>& a, const std::vector<Triple>& b,
                                   const std::vector<std::string>& blanks_a,
                                   const std::vector<std::string>& blanks_b) {
    std::set<Triple> target(b.begin(), b.end());
    std::map<std::string, std::string> mapping;
    std::vector<bool> used(blanks_b.size(), false);

    auto consistent = [&](void) {
        for (const auto& t : a) {
            bool ground = (!t.subject.is_blank() || mapping.count(t.subject.value)) &&
                          (!t.object.is_blank() || mapping.count(t.object.value));
            if (!ground) continue;
            Triple mapped(map_blank(t.subject, mapping), t.predicate, map_blank(t.object, mapping));
            if (!target.count(mapped)) return false;
        }
        return true;
    };

    std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
        if (i == blanks_a.size()) return consistent();
        for (std::size_t j = 0; j < blanks_b.size(); ++j) {
            if (used[j]) continue;
            mapping[blanks_a[i]] = blanks_b[j];
            used[j] = true;
            if (consistent() && assign(i + 1)) return true;
            used[j] = false;
            mapping.erase(blanks_a[i]);
        }
        return false;
    };
    return assign(0);
}

}  // namespace detail

// Graph isomorphism under a bijection of blank-node labels. Prefix maps are
// not part of graph identity.
inline bool graph_equal(const Graph& g1, const Graph& g2) {
    if (g1.size() != g2.size()) return false;

    std::vector<Triple> blank1, blank2;
    std::set<Triple> ground1, ground2;
    std::set<std::string> labels1, labels2;
    auto split = [](const Graph& g, std::vector<Triple>& blank, std::set<Triple>& ground,
                    std::set<std::string>& labels) {
        for (const auto& t : g) {
            if (t.subject.is_blank() || t.object.is_blank()) {
                blank.push_back(t);
                if (t.subject.is_blank()) labels.insert(t.subject.value);
                if (t.object.is_blank()) labels.insert(t.object.value);
            } else {
                ground.insert(t);
            }
        }
    };
    split(g1, blank1, ground1, labels1);
    split(g2, blank2, ground2, labels2);

    if (ground1 != ground2) return false;
    if (blank1.size() != blank2.size()) return false;
    if (labels1.size() != labels2.size()) return false;
    if (labels1.empty()) return true;

    std::vector<std::string> la(labels1.begin(), labels1.end());
    std::vector<std::string> lb(labels2.begin(), labels2.end());
    return detail::blank_bijection_exists(blank1, blank2, la, lb);
}

}  // namespace genome
