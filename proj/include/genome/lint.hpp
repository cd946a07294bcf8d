#pragma once
// Ontological review rules. Each rule is a pure function from a schema view
// (plus config) to findings; run_lint concatenates them and sorts the result
// so identical inputs produce identical reports.
//
// Catalog:
//   DR01  object property missing domain or range        error
//   ML01  missing hypernym link / flat outlier           warning / info
//   PN01  IRI punned as both class and individual        warning
//   RG01  rigid class under anti-rigid parent; untagged  error / warning
//         role-named class
//   SV01  untyped individual                             info
//   UA01  upper-ontology alignment status                info (warning when
//         the run is a data-integration profile and nothing aligns)
//   XR01  external vocabulary reuse inventory            info

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "genome/schema_view.hpp"

namespace genome {

enum class Severity { info, warning, error };

inline std::string to_string(Severity s) {
    switch (s) {
        case Severity::info: return "info";
        case Severity::warning: return "warning";
        case Severity::error: return "error";
    }
    return "info";
}

struct LintFix {
    std::vector<Triple> additions;
    std::vector<Triple> removals;
};

struct LintFinding {
    std::string rule_id;
    Severity severity = Severity::info;
    Term subject = Term::iri(std::string(vocab::genome_ns) + "ontology");
    std::string message;
    std::optional<LintFix> fix;
};

struct LintConfig {
    std::optional<Term> default_domain;
    std::optional<Term> default_range;
    std::vector<std::string> role_lexicon = {"charioteer", "teacher", "king"};
    std::vector<std::string> upper_namespaces;
    bool data_integration_profile = false;
    double profile_threshold = 0.5;
};

struct LintReport {
    std::vector<LintFinding> findings;
    std::map<Severity, int> counts;
    ProfileResult profile;

    int count(Severity s) const {
        auto it = counts.find(s);
        return it == counts.end() ? 0 : it->second;
    }
};

namespace detail {

inline Term report_subject(const SchemaView&) {
    return Term::iri(std::string(vocab::genome_ns) + "ontology");
}

inline std::string fold_case(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace detail

// DR01: every object property carries both a domain and a range.
inline std::vector<LintFinding> rule_domain_range(const SchemaView& v,
                                                  const LintConfig& cfg = {}) {
    std::vector<LintFinding> out;
    for (const auto& prop : v.object_properties) {
        bool has_domain = v.domains.contains(prop) && !v.domains.at(prop).empty();
        bool has_range = v.ranges.contains(prop) && !v.ranges.at(prop).empty();
        if (!has_domain) {
            LintFinding f{"DR01", Severity::error, prop,
                          "object property <" + prop.value + "> has no rdfs:domain", {}};
            if (cfg.default_domain) {
                f.fix = LintFix{{Triple(prop, vocab::domain(), *cfg.default_domain)}, {}};
                f.message += "; fix assigns the configured default domain";
            }
            out.push_back(std::move(f));
        }
        if (!has_range) {
            LintFinding f{"DR01", Severity::error, prop,
                          "object property <" + prop.value + "> has no rdfs:range", {}};
            if (cfg.default_range) {
                f.fix = LintFix{{Triple(prop, vocab::range(), *cfg.default_range)}, {}};
                f.message += "; fix assigns the configured default range";
            }
            out.push_back(std::move(f));
        }
    }
    return out;
}

// ML01 part (a): matrix-driven hypernym check. For each family with at least
// one member present, every present member must sit under the family
// property. Part (b): once the property hierarchy shows depth >= 2 anywhere,
// properties attached to nothing at all (no parent, no child, no family) are
// flagged as modulation outliers.
inline std::vector<LintFinding> rule_missing_link(const SchemaView& v,
                                                  const RelationshipMatrix& m) {
    std::vector<LintFinding> out;

    auto all_properties = [&]() {
        std::set<Term> props = v.object_properties;
        props.insert(v.data_properties.begin(), v.data_properties.end());
        return props;
    }();

    for (const auto& [family, members] : m.families) {
        std::vector<Term> present;
        for (const auto& member : members)
            if (all_properties.contains(member)) present.push_back(member);
        if (present.empty()) continue;

        bool family_declared = all_properties.contains(family);
        for (const auto& member : present) {
            bool linked = v.property_parents.contains(member) &&
                          v.property_parents.at(member).contains(family);
            if (family_declared && linked) continue;
            LintFix fix;
            if (!family_declared) {
                fix.additions.push_back(
                    Triple(family, vocab::type(), Term::iri(vocab::owl_object_property)));
                // Give the new hypernym the member's domain/range so the fix
                // does not trade a missing link for a missing domain.
                if (auto it = v.domains.find(member); it != v.domains.end())
                    for (const auto& d : it->second)
                        fix.additions.push_back(Triple(family, vocab::domain(), d));
                if (auto it = v.ranges.find(member); it != v.ranges.end())
                    for (const auto& r : it->second)
                        fix.additions.push_back(Triple(family, vocab::range(), r));
            }
            if (!linked) fix.additions.push_back(Triple(member, vocab::subproperty_of(), family));
            out.push_back({"ML01", Severity::warning, member,
                           "property <" + member.value + "> is not modulated under its hypernym <" +
                               family.value + ">",
                           std::move(fix)});
        }
    }

    // Depth of a property: longest parent chain above it.
    std::map<Term, std::size_t> depth_memo;
    std::function<std::size_t(const Term&, std::set<Term>&)> depth =
        [&](const Term& p, std::set<Term>& seen) -> std::size_t {
        if (auto it = depth_memo.find(p); it != depth_memo.end()) return it->second;
        if (!seen.insert(p).second) return 0;  // cycle guard
        std::size_t best = 0;
        if (auto it = v.property_parents.find(p); it != v.property_parents.end())
            for (const auto& parent : it->second) best = std::max(best, 1 + depth(parent, seen));
        seen.erase(p);
        depth_memo[p] = best;
        return best;
    };

    std::size_t max_depth = 0;
    std::set<Term> has_child;
    for (const auto& [child, parents] : v.property_parents)
        for (const auto& parent : parents) has_child.insert(parent);
    for (const auto& p : all_properties) {
        std::set<Term> seen;
        max_depth = std::max(max_depth, depth(p, seen));
    }

    if (max_depth >= 2) {
        for (const auto& p : all_properties) {
            bool has_parent = v.property_parents.contains(p) && !v.property_parents.at(p).empty();
            if (has_parent || has_child.contains(p)) continue;
            if (m.in_any_family(p)) continue;
            out.push_back({"ML01", Severity::info, p,
                           "property <" + p.value +
                               "> stands outside the hierarchy although modulation depth " +
                               std::to_string(max_depth) + " exists elsewhere",
                           std::nullopt});
        }
    }
    return out;
}

// RG01: a rigid class may not specialize an anti-rigid one. Additionally,
// classes whose name matches the role lexicon should be tagged anti-rigid.
inline std::vector<LintFinding> rule_rigidity(const SchemaView& v, const LintConfig& cfg = {}) {
    std::vector<LintFinding> out;
    for (const auto& [child, parents] : v.class_parents) {
        if (v.rigidity_of(child) != Rigidity::rigid) continue;
        for (const auto& parent : parents) {
            if (v.rigidity_of(parent) != Rigidity::anti_rigid) continue;
            out.push_back({"RG01", Severity::error, child,
                           "rigid class <" + child.value + "> is subsumed by anti-rigid <" +
                               parent.value + ">",
                           std::nullopt});
        }
    }
    for (const auto& cls : v.classes) {
        if (v.rigidity_of(cls) != Rigidity::unspecified) continue;
        std::string name = detail::fold_case(
            v.labels.contains(cls) ? v.labels.at(cls) : cls.local_name());
        for (const auto& word : cfg.role_lexicon) {
            if (name != detail::fold_case(word)) continue;
            out.push_back({"RG01", Severity::warning, cls,
                           "class <" + cls.value + "> looks like a role (\"" + word +
                               "\") but carries no anti-rigid tag",
                           LintFix{{Triple(cls, Term::iri(vocab::genome_rigidity),
                                           Term::literal("antiRigid"))},
                                   {}}});
            break;
        }
    }
    return out;
}

// PN01: one IRI playing both class and individual.
inline std::vector<LintFinding> rule_punning(const SchemaView& v) {
    std::vector<LintFinding> out;
    for (const auto& cls : v.classes) {
        if (!v.individuals.contains(cls)) continue;
        out.push_back({"PN01", Severity::warning, cls,
                       "<" + cls.value + "> is used both as a class and as an individual",
                       std::nullopt});
    }
    return out;
}

// UA01: single status finding about upper-ontology alignment.
inline std::vector<LintFinding> rule_upper_alignment(const SchemaView& v,
                                                     const LintConfig& cfg = {}) {
    if (cfg.upper_namespaces.empty()) {
        return {{"UA01", Severity::info, detail::report_subject(v),
                 "alignment check skipped: no upper-ontology namespaces configured",
                 std::nullopt}};
    }
    std::vector<std::string> hits;
    for (const auto& [child, parents] : v.class_parents)
        for (const auto& parent : parents)
            for (const auto& ns : cfg.upper_namespaces)
                if (parent.value.starts_with(ns))
                    hits.push_back(child.value + " -> " + parent.value);
    std::sort(hits.begin(), hits.end());
    if (!hits.empty()) {
        std::string msg = "aligned=true; " + std::to_string(hits.size()) + " upper link(s): ";
        for (std::size_t i = 0; i < hits.size(); ++i) msg += (i ? ", " : "") + hits[i];
        return {{"UA01", Severity::info, detail::report_subject(v), msg, std::nullopt}};
    }
    Severity sev = cfg.data_integration_profile ? Severity::warning : Severity::info;
    return {{"UA01", sev, detail::report_subject(v),
             "aligned=false: no class subclasses into a configured upper-ontology namespace",
             std::nullopt}};
}

// XR01: which non-local vocabularies the schema leans on, and how much.
inline std::vector<LintFinding> rule_external_reuse(const SchemaView& v) {
    // Local namespace: the most common namespace among declared classes and
    // properties (lexicographically first on ties).
    std::map<std::string, std::size_t> local_votes;
    auto vote = [&](const std::set<Term>& terms) {
        for (const auto& t : terms)
            if (t.is_iri() && !detail::is_infrastructure_iri(t.value))
                ++local_votes[t.namespace_part()];
    };
    vote(v.classes);
    vote(v.object_properties);
    vote(v.data_properties);
    std::string local_ns;
    std::size_t best = 0;
    for (const auto& [ns, n] : local_votes) {
        if (n > best) {
            best = n;
            local_ns = ns;
        }
    }

    struct Usage {
        std::size_t schema = 0;
        std::size_t annotation = 0;
    };
    std::map<std::string, Usage> uses;
    auto tally = [&](const Term& t, bool annotation) {
        if (!t.is_iri()) return;
        if (detail::is_infrastructure_iri(t.value)) return;
        std::string ns = t.namespace_part();
        if (ns.empty() || ns == local_ns) return;
        (annotation ? uses[ns].annotation : uses[ns].schema)++;
    };
    auto schema_row = [&](const Term& a, const Term& b) {
        tally(a, false);
        tally(b, false);
    };
    for (const auto& [child, parents] : v.class_parents)
        for (const auto& parent : parents) schema_row(child, parent);
    for (const auto& [child, parents] : v.property_parents)
        for (const auto& parent : parents) schema_row(child, parent);
    for (const auto& [prop, ds] : v.domains)
        for (const auto& d : ds) schema_row(prop, d);
    for (const auto& [prop, rs] : v.ranges)
        for (const auto& r : rs) schema_row(prop, r);
    for (const auto& [ind, ts] : v.types)
        for (const auto& t : ts) tally(t, false);
    for (const auto& [term, _] : v.labels) tally(term, true);

    std::string msg;
    if (uses.empty()) {
        msg = "no external vocabulary reuse detected";
    } else {
        msg = std::to_string(uses.size()) + " external namespace(s): ";
        bool first = true;
        for (const auto& [ns, u] : uses) {
            if (!first) msg += ", ";
            first = false;
            msg += "<" + ns + "> x" + std::to_string(u.schema + u.annotation);
            if (u.schema == 0) msg += " (annotation-only)";
        }
    }
    return {{"XR01", Severity::info, detail::report_subject(v), msg, std::nullopt}};
}

// SV01: individuals that exist only through assertions, never typed.
inline std::vector<LintFinding> rule_untyped_individuals(const SchemaView& v) {
    std::vector<LintFinding> out;
    for (const auto& ind : v.untyped_individuals) {
        out.push_back({"SV01", Severity::info, ind,
                       "<" + ind.value + "> is used as an individual but has no type assertion",
                       std::nullopt});
    }
    return out;
}

inline LintReport run_lint(const SchemaView& v, const RelationshipMatrix& m,
                           const LintConfig& cfg = {}) {
    LintReport report;
    auto take = [&](std::vector<LintFinding> fs) {
        for (auto& f : fs) report.findings.push_back(std::move(f));
    };
    take(rule_domain_range(v, cfg));
    take(rule_missing_link(v, m));
    take(rule_punning(v));
    take(rule_rigidity(v, cfg));
    take(rule_untyped_individuals(v));
    take(rule_upper_alignment(v, cfg));
    take(rule_external_reuse(v));

    std::stable_sort(report.findings.begin(), report.findings.end(),
                     [](const LintFinding& a, const LintFinding& b) {
                         if (a.rule_id != b.rule_id) return a.rule_id < b.rule_id;
                         if (a.subject != b.subject) return a.subject < b.subject;
                         return a.message < b.message;
                     });
    for (const auto& f : report.findings) ++report.counts[f.severity];
    report.profile = classify_profile(v, cfg.profile_threshold);
    return report;
}

}  // namespace genome
