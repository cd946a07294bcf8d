#pragma once
// Competency-question corpus: parsing, duplicate detection, basic-graph-
// pattern evaluation, the per-asker coverage table, and the coverage
// decision.
//
// Percent cells carry 4 decimal places, rounded half-up, computed in exact
// integer arithmetic so table reproduction is bit-stable.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "genome/graph.hpp"
#include "genome/turtle.hpp"

namespace genome {

// --- basic graph patterns ---------------------------------------------------

struct PatternSlot {
    bool is_variable = false;
    std::string var;
    Term term = Term::iri("urn:genome-kit:unset");

    static PatternSlot variable(std::string name) {
        PatternSlot s;
        s.is_variable = true;
        s.var = std::move(name);
        return s;
    }
    static PatternSlot ground(Term t) {
        PatternSlot s;
        s.term = std::move(t);
        return s;
    }
};

struct TriplePattern {
    PatternSlot subject, predicate, object;
};

struct Bgp {
    std::vector<TriplePattern> patterns;
};

using Binding = std::map<std::string, Term>;

namespace detail {

inline bool unify(const PatternSlot& slot, const Term& value, Binding& b) {
    if (!slot.is_variable) return slot.term == value;
    auto it = b.find(slot.var);
    if (it != b.end()) return it->second == value;
    b.emplace(slot.var, value);
    return true;
}

inline std::optional<Term> bound_or_ground(const PatternSlot& slot, const Binding& b) {
    if (!slot.is_variable) return slot.term;
    auto it = b.find(slot.var);
    if (it != b.end()) return it->second;
    return std::nullopt;
}

}  // namespace detail

// Conjunctive join with duplicate solutions removed; solutions ordered by
// their variable bindings.
inline std::vector<Binding> eval_pattern(const Graph& g, const Bgp& q) {
    if (q.patterns.empty()) return {};
    std::vector<Binding> frontier{Binding{}};
    for (const auto& pat : q.patterns) {
        std::vector<Binding> next;
        for (const auto& b : frontier) {
            auto s = detail::bound_or_ground(pat.subject, b);
            auto p = detail::bound_or_ground(pat.predicate, b);
            auto o = detail::bound_or_ground(pat.object, b);
            for (const auto& t : g.match(s, p, o)) {
                Binding extended = b;
                if (detail::unify(pat.subject, t.subject, extended) &&
                    detail::unify(pat.predicate, t.predicate, extended) &&
                    detail::unify(pat.object, t.object, extended))
                    next.push_back(std::move(extended));
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) return {};
    }
    std::set<Binding> dedup(frontier.begin(), frontier.end());
    return {dedup.begin(), dedup.end()};
}

// --- corpus ------------------------------------------------------------------

enum class CqKind { factual, descriptive };

struct Cq {
    std::string id;
    std::string asker;
    CqKind kind = CqKind::factual;
    std::optional<std::string> dup_of;
    std::string text;
    std::optional<Bgp> pattern;
};

namespace detail {

inline std::vector<std::string> split_pattern_tokens(const std::string& text, std::size_t line) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t') {
            ++i;
            continue;
        }
        if (c == '"') {
            std::string tok = "\"";
            ++i;
            while (i < text.size() && text[i] != '"') {
                if (text[i] == '\\' && i + 1 < text.size()) tok.push_back(text[i++]);
                tok.push_back(text[i++]);
            }
            if (i >= text.size()) throw ParseError("unterminated literal in pattern", line, 1);
            tok.push_back('"');
            ++i;
            tokens.push_back(std::move(tok));
            continue;
        }
        if (c == '<') {
            auto close = text.find('>', i);
            if (close == std::string::npos) throw ParseError("unterminated IRI in pattern", line, 1);
            tokens.push_back(text.substr(i, close - i + 1));
            i = close + 1;
            continue;
        }
        std::string tok;
        while (i < text.size() && text[i] != ' ' && text[i] != '\t') tok.push_back(text[i++]);
        tokens.push_back(std::move(tok));
    }
    return tokens;
}

inline PatternSlot parse_pattern_term(const std::string& tok, const PrefixMap& prefixes,
                                      std::size_t line) {
    if (tok.starts_with('?')) {
        if (tok.size() == 1) throw ParseError("empty variable name in pattern", line, 1);
        return PatternSlot::variable(tok.substr(1));
    }
    if (tok.starts_with('<') && tok.ends_with('>')) {
        std::string iri = tok.substr(1, tok.size() - 2);
        if (iri.find(':') == std::string::npos)
            throw ParseError("relative IRI <" + iri + "> in pattern", line, 1);
        return PatternSlot::ground(Term::iri(iri));
    }
    if (tok.starts_with('"')) {
        if (tok.size() < 2 || !tok.ends_with('"'))
            throw ParseError("malformed literal in pattern", line, 1);
        std::string lexical;
        for (std::size_t i = 1; i + 1 < tok.size(); ++i) {
            if (tok[i] == '\\' && i + 2 < tok.size()) ++i;
            lexical.push_back(tok[i]);
        }
        return PatternSlot::ground(Term::literal(lexical));
    }
    try {
        return PatternSlot::ground(Term::iri(prefixes.expand(tok)));
    } catch (const std::exception& e) {
        throw ParseError(e.what(), line, 1);
    }
}

inline Bgp parse_bgp(const std::string& text, const PrefixMap& prefixes, std::size_t line) {
    Bgp bgp;
    auto tokens = split_pattern_tokens(text, line);
    std::size_t i = 0;
    while (i < tokens.size()) {
        if (tokens.size() - i < 4)
            throw ParseError("pattern needs 'term term term .' groups", line, 1);
        TriplePattern tp;
        tp.subject = parse_pattern_term(tokens[i++], prefixes, line);
        tp.predicate = parse_pattern_term(tokens[i++], prefixes, line);
        tp.object = parse_pattern_term(tokens[i++], prefixes, line);
        if (!tp.predicate.is_variable && !tp.predicate.term.is_iri())
            throw ParseError("pattern predicate must be an IRI or variable", line, 1);
        if (tokens[i++] != ".") throw ParseError("expected '.' after triple pattern", line, 1);
        bgp.patterns.push_back(std::move(tp));
    }
    if (bgp.patterns.empty()) throw ParseError("empty pattern", line, 1);
    return bgp;
}

}  // namespace detail

// Format: optional head block of "@prefix p: <iri>" lines, then one record
// per line with tab-separated fields id, asker, kind, dup_of(-), text,
// pattern(-). '#' starts a comment line.
inline std::vector<Cq> parse_cq_corpus(std::string_view document) {
    std::vector<Cq> corpus;
    PrefixMap prefixes;
    std::set<std::string> ids;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= document.size()) {
        auto end = document.find('\n', start);
        std::string line(document.substr(
            start, end == std::string_view::npos ? std::string_view::npos : end - start));
        start = end == std::string_view::npos ? document.size() + 1 : end + 1;
        ++line_no;

        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.starts_with('#')) continue;

        if (line.starts_with("@prefix")) {
            std::istringstream ss(line.substr(7));
            std::string label, iri;
            ss >> label >> iri;
            if (label.empty() || label.back() != ':' || iri.size() < 2 || iri.front() != '<' ||
                iri.back() != '>')
                throw ParseError("malformed @prefix line in corpus", line_no, 1);
            prefixes.declare(label.substr(0, label.size() - 1), iri.substr(1, iri.size() - 2));
            continue;
        }

        std::vector<std::string> fields;
        std::size_t f = 0;
        while (true) {
            auto tab = line.find('\t', f);
            fields.push_back(line.substr(f, tab == std::string::npos ? std::string::npos : tab - f));
            if (tab == std::string::npos) break;
            f = tab + 1;
        }
        if (fields.size() != 6)
            throw ParseError("record needs 6 tab-separated fields, found " +
                                 std::to_string(fields.size()),
                             line_no, 1);

        Cq cq;
        cq.id = fields[0];
        cq.asker = fields[1];
        if (cq.id.empty()) throw ParseError("empty CQ id", line_no, 1);
        if (cq.asker.empty()) throw ParseError("empty asker code", line_no, 1);
        if (!ids.insert(cq.id).second) throw ParseError("duplicate CQ id '" + cq.id + "'", line_no, 1);

        if (fields[2] == "factual")
            cq.kind = CqKind::factual;
        else if (fields[2] == "descriptive")
            cq.kind = CqKind::descriptive;
        else
            throw ParseError("kind must be 'factual' or 'descriptive', got '" + fields[2] + "'",
                             line_no, 1);

        if (fields[3] != "-") {
            if (fields[3] == cq.id) throw ParseError("CQ cannot duplicate itself", line_no, 1);
            cq.dup_of = fields[3];
        }
        cq.text = fields[4];
        if (fields[5] != "-") cq.pattern = detail::parse_bgp(fields[5], prefixes, line_no);
        corpus.push_back(std::move(cq));
    }

    for (const auto& cq : corpus)
        if (cq.dup_of && !ids.contains(*cq.dup_of))
            throw ParseError("dup_of references unknown id '" + *cq.dup_of + "' (CQ " + cq.id + ")",
                             0, 0);
    return corpus;
}

namespace detail {

inline std::string normalize_text(const std::string& s) {
    std::string out;
    bool pending_space = false;
    for (char c : s) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::isalnum(u)) {
            if (pending_space && !out.empty()) out.push_back(' ');
            pending_space = false;
            out.push_back(static_cast<char>(std::tolower(u)));
        } else if (std::isspace(u) || std::ispunct(u)) {
            pending_space = true;
        } else {
            if (pending_space && !out.empty()) out.push_back(' ');
            pending_space = false;
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace detail

// Marks exact text duplicates (after normalization) with dup_of pointing at
// the first occurrence. Manually set dup_of fields are left alone.
inline std::vector<Cq> dedup_corpus(std::vector<Cq> corpus) {
    std::map<std::string, std::string> first_seen;
    for (auto& cq : corpus) {
        std::string key = detail::normalize_text(cq.text);
        auto it = first_seen.find(key);
        if (it == first_seen.end()) {
            first_seen.emplace(std::move(key), cq.id);
        } else if (!cq.dup_of && it->second != cq.id) {
            cq.dup_of = it->second;
        }
    }
    return corpus;
}

// --- coverage arithmetic ------------------------------------------------------

struct CoverageRow {
    std::string asker;
    long long asked = 0;
    long long repeats = 0;
    long long unique = 0;
    long long answered = 0;
    double pct = 0.0;
    long long unanswered = 0;
};

// 100 * answered / unique at 4 decimal places, half-up, in exact integers:
// the half-up quotient of a/b is (2a + b) / 2b in integer division.
inline double coverage_pct(long long answered, long long unique) {
    if (unique <= 0) return 0.0;
    long long scaled = (2 * (answered * 1000000LL) + unique) / (2 * unique);
    return static_cast<double>(scaled) / 10000.0;
}

inline CoverageRow make_row(std::string asker, long long asked, long long repeats,
                            long long answered) {
    CoverageRow r;
    r.asker = std::move(asker);
    r.asked = asked;
    r.repeats = repeats;
    r.unique = asked - repeats;
    r.answered = answered;
    r.pct = coverage_pct(answered, r.unique);
    r.unanswered = r.unique - answered;
    return r;
}

struct CoverageTable {
    std::vector<CoverageRow> rows;
    CoverageRow total;
    long long descriptive_count = 0;
    CoverageRow considered;
};

struct AskerTally {
    std::string asker;
    long long asked = 0;
    long long repeats = 0;
    long long answered = 0;
};

// The pure arithmetic path: per-asker counts in, full table out.
inline CoverageTable build_coverage_table(const std::vector<AskerTally>& tallies,
                                          long long descriptive_count) {
    CoverageTable t;
    long long asked = 0, repeats = 0, answered = 0;
    for (const auto& a : tallies) {
        t.rows.push_back(make_row(a.asker, a.asked, a.repeats, a.answered));
        asked += a.asked;
        repeats += a.repeats;
        answered += a.answered;
    }
    t.total = make_row("Total", asked, repeats, answered);
    t.descriptive_count = descriptive_count;
    t.considered = make_row("Considered", asked - descriptive_count, repeats, answered);
    return t;
}

// Full evaluation: group by asker in corpus order, answer each unique factual
// CQ against the graph, then run the arithmetic path. Descriptive CQs count
// as asked but are excluded from the considered totals; a descriptive CQ that
// is also a duplicate is only subtracted once (as a repeat).
inline CoverageTable evaluate_corpus(const Graph& g, const std::vector<Cq>& corpus) {
    std::vector<std::string> asker_order;
    std::map<std::string, AskerTally> tallies;
    long long descriptive_count = 0;

    for (const auto& cq : corpus) {
        if (!tallies.contains(cq.asker)) {
            asker_order.push_back(cq.asker);
            tallies[cq.asker].asker = cq.asker;
        }
        auto& tally = tallies[cq.asker];
        ++tally.asked;
        if (cq.dup_of) {
            ++tally.repeats;
            continue;
        }
        if (cq.kind == CqKind::descriptive) {
            ++descriptive_count;
            continue;
        }
        if (cq.pattern && !eval_pattern(g, *cq.pattern).empty()) ++tally.answered;
    }

    std::vector<AskerTally> ordered;
    for (const auto& asker : asker_order) ordered.push_back(tallies.at(asker));
    return build_coverage_table(ordered, descriptive_count);
}

// --- decision -------------------------------------------------------------------

enum class Satisfaction { satisfactory, needs_enrichment, unsatisfactory };

inline std::string to_string(Satisfaction s) {
    switch (s) {
        case Satisfaction::satisfactory: return "satisfactory";
        case Satisfaction::needs_enrichment: return "needs_enrichment";
        case Satisfaction::unsatisfactory: return "unsatisfactory";
    }
    return "unsatisfactory";
}

struct Decision {
    Satisfaction value = Satisfaction::unsatisfactory;
    double coverage = 0.0;
    double lower = 0.30;
    double upper = 0.85;
};

inline Decision decide_satisfaction(const CoverageTable& t, double lower = 0.30,
                                    double upper = 0.85) {
    if (!(0.0 <= lower && lower < upper && upper <= 1.0))
        throw std::invalid_argument("thresholds must satisfy 0 <= lower < upper <= 1");
    Decision d;
    d.coverage = t.considered.pct / 100.0;
    d.lower = lower;
    d.upper = upper;
    if (d.coverage >= upper)
        d.value = Satisfaction::satisfactory;
    else if (d.coverage < lower)
        d.value = Satisfaction::unsatisfactory;
    else
        d.value = Satisfaction::needs_enrichment;
    return d;
}

}  // namespace genome
