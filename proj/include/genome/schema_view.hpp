#pragma once
// Ontology-level view over a triple graph: class and property hierarchies,
// domains/ranges, individuals, rigidity tags, plus the profile metrics used
// to classify what kind of ontology this is. Also the relationship-matrix
// parser (hypernym families like parent over father/mother).

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "genome/graph.hpp"
#include "genome/turtle.hpp"
#include "genome/vocab.hpp"

namespace genome {

enum class Rigidity { rigid, anti_rigid, unspecified };

struct ProfileMetrics {
    std::size_t subclass_axioms = 0;
    std::size_t data_property_assertions = 0;
    std::size_t lexical_annotations = 0;
    std::size_t total_axioms = 0;
};

enum class OntologyProfile { classification, descriptive, domain_linguistic, mixed };

inline std::string to_string(OntologyProfile p) {
    switch (p) {
        case OntologyProfile::classification: return "classification";
        case OntologyProfile::descriptive: return "descriptive";
        case OntologyProfile::domain_linguistic: return "domain_linguistic";
        case OntologyProfile::mixed: return "mixed";
    }
    return "mixed";
}

struct SchemaView {
    std::set<Term> classes;
    std::map<Term, std::set<Term>> class_parents;
    std::set<Term> object_properties;
    std::set<Term> data_properties;
    std::set<Term> annotation_properties;
    std::map<Term, std::set<Term>> property_parents;
    std::map<Term, std::set<Term>> domains;
    std::map<Term, std::set<Term>> ranges;
    std::set<Term> individuals;
    std::map<Term, std::set<Term>> types;
    std::map<Term, Rigidity> rigidity;
    std::map<Term, std::string> labels;
    std::set<Term> untyped_individuals;
    ProfileMetrics metrics;

    bool is_property(const Term& t) const {
        return object_properties.contains(t) || data_properties.contains(t) ||
               annotation_properties.contains(t);
    }

    Rigidity rigidity_of(const Term& t) const {
        auto it = rigidity.find(t);
        return it == rigidity.end() ? Rigidity::unspecified : it->second;
    }
};

namespace detail {

inline bool in_namespace(const std::string& iri, std::string_view ns) {
    return iri.starts_with(ns);
}

// rdf/rdfs/owl/xsd plus the tool's own namespace: vocabulary, not domain content.
inline bool is_infrastructure_iri(const std::string& iri) {
    return in_namespace(iri, vocab::rdf_ns) || in_namespace(iri, vocab::rdfs_ns) ||
           in_namespace(iri, vocab::owl_ns) || in_namespace(iri, vocab::xsd_ns) ||
           in_namespace(iri, vocab::genome_ns);
}

inline bool is_metamodel_class(const std::string& iri) {
    return in_namespace(iri, vocab::owl_ns) || in_namespace(iri, vocab::rdfs_ns) ||
           in_namespace(iri, vocab::rdf_ns);
}

}  // namespace detail

inline SchemaView build_schema_view(const Graph& g) {
    SchemaView v;

    // Pass 1: read declarations and explicit axioms off the graph.
    for (const auto& t : g) {
        const std::string& p = t.predicate.value;
        if (p == vocab::rdf_type) {
            if (!t.object.is_iri()) continue;
            const std::string& o = t.object.value;
            if (o == vocab::owl_class || o == vocab::rdfs_class) {
                v.classes.insert(t.subject);
            } else if (o == vocab::owl_object_property) {
                v.object_properties.insert(t.subject);
            } else if (o == vocab::owl_datatype_property) {
                v.data_properties.insert(t.subject);
            } else if (o == vocab::owl_annotation_property) {
                v.annotation_properties.insert(t.subject);
            } else if (o == vocab::owl_named_individual) {
                v.individuals.insert(t.subject);
            } else if (o == vocab::owl_ontology) {
                // document header node, neither schema nor data
            } else if (!detail::is_metamodel_class(o)) {
                v.types[t.subject].insert(t.object);
                v.individuals.insert(t.subject);
                v.classes.insert(t.object);
            }
        } else if (p == vocab::rdfs_subclass_of) {
            if (t.object.is_iri() || t.object.is_blank()) {
                v.classes.insert(t.subject);
                v.classes.insert(t.object);
                v.class_parents[t.subject].insert(t.object);
            }
        } else if (p == vocab::rdfs_subproperty_of) {
            if (t.object.is_iri()) v.property_parents[t.subject].insert(t.object);
        } else if (p == vocab::rdfs_domain) {
            if (t.object.is_iri()) {
                v.domains[t.subject].insert(t.object);
                v.classes.insert(t.object);
            }
        } else if (p == vocab::rdfs_range) {
            if (t.object.is_iri()) {
                v.ranges[t.subject].insert(t.object);
                if (!detail::in_namespace(t.object.value, vocab::xsd_ns))
                    v.classes.insert(t.object);
            }
        } else if (p == vocab::rdfs_label) {
            if (t.object.is_literal() && !v.labels.contains(t.subject))
                v.labels[t.subject] = t.object.value;
        } else if (p == vocab::genome_rigidity) {
            if (t.object.is_literal()) {
                if (t.object.value == "rigid")
                    v.rigidity[t.subject] = Rigidity::rigid;
                else if (t.object.value == "antiRigid")
                    v.rigidity[t.subject] = Rigidity::anti_rigid;
            }
        }
    }

    // Pass 2a: classify properties known only from domain/range/subPropertyOf
    // axioms. A key with only datatype ranges is a data property, anything
    // else defaults to an object property.
    auto ensure_property = [&](const Term& prop) {
        if (v.is_property(prop)) return;
        auto rit = v.ranges.find(prop);
        bool datatype_ranged = rit != v.ranges.end() && !rit->second.empty();
        if (datatype_ranged) {
            for (const auto& r : rit->second)
                if (!detail::in_namespace(r.value, vocab::xsd_ns)) datatype_ranged = false;
        }
        (datatype_ranged ? v.data_properties : v.object_properties).insert(prop);
    };
    for (const auto& [prop, _] : v.domains) ensure_property(prop);
    for (const auto& [prop, _] : v.ranges) ensure_property(prop);
    for (const auto& [child, parents] : v.property_parents) {
        ensure_property(child);
        bool child_is_data = v.data_properties.contains(child);
        for (const auto& parent : parents) {
            if (v.is_property(parent)) continue;
            (child_is_data ? v.data_properties : v.object_properties).insert(parent);
        }
    }

    // Pass 2b: entity-level assertions make their subjects (and IRI objects)
    // individuals, unless the term already plays a schema role.
    auto note_individual = [&](const Term& t) {
        if (!t.is_iri() && !t.is_blank()) return;
        if (t.is_iri() && detail::is_infrastructure_iri(t.value)) return;
        if (v.classes.contains(t) || v.is_property(t)) return;
        v.individuals.insert(t);
        if (!v.types.contains(t)) v.untyped_individuals.insert(t);
    };
    for (const auto& t : g) {
        if (detail::is_infrastructure_iri(t.predicate.value)) continue;
        if (v.annotation_properties.contains(t.predicate)) continue;
        note_individual(t.subject);
        if (t.object.is_iri() || t.object.is_blank()) note_individual(t.object);
    }

    // Explicitly typed individuals are never "untyped", even when the type
    // came from owl:NamedIndividual alone.
    for (const auto& t : g) {
        if (t.predicate.value == vocab::rdf_type && t.object.is_iri() &&
            t.object.value == vocab::owl_named_individual)
            v.untyped_individuals.erase(t.subject);
    }

    // Profile metrics over the raw triple set.
    v.metrics.total_axioms = g.size();
    for (const auto& t : g) {
        const std::string& p = t.predicate.value;
        if (p == vocab::rdfs_subclass_of) {
            ++v.metrics.subclass_axioms;
        } else if (p == vocab::rdfs_label || p == vocab::rdfs_comment ||
                   v.annotation_properties.contains(t.predicate)) {
            ++v.metrics.lexical_annotations;
        } else if (t.object.is_literal() && !detail::is_infrastructure_iri(p)) {
            ++v.metrics.data_property_assertions;
        }
    }
    return v;
}

struct ProfileResult {
    OntologyProfile value = OntologyProfile::mixed;
    ProfileMetrics metrics;
    double threshold = 0.5;
};

// Shares are taken over schema-signal axioms (taxonomic + attributive +
// lexical), so a pure taxonomy scores 1.0 regardless of instance data volume.
inline ProfileResult classify_profile(const SchemaView& v, double threshold = 0.5) {
    ProfileResult r;
    r.metrics = v.metrics;
    r.threshold = threshold;
    double denom = static_cast<double>(v.metrics.subclass_axioms +
                                       v.metrics.data_property_assertions +
                                       v.metrics.lexical_annotations);
    if (denom == 0.0) {
        r.value = OntologyProfile::mixed;
        return r;
    }
    double sub = v.metrics.subclass_axioms / denom;
    double dat = v.metrics.data_property_assertions / denom;
    double lex = v.metrics.lexical_annotations / denom;
    if (sub >= threshold)
        r.value = OntologyProfile::classification;
    else if (dat >= threshold)
        r.value = OntologyProfile::descriptive;
    else if (lex >= threshold)
        r.value = OntologyProfile::domain_linguistic;
    else
        r.value = OntologyProfile::mixed;
    return r;
}

struct RelationshipMatrix {
    std::map<Term, std::set<Term>> families;
    std::set<std::pair<Term, Term>> inverse_pairs;

    bool in_any_family(const Term& t) const {
        for (const auto& [family, members] : families)
            if (family == t || members.contains(t)) return true;
        return false;
    }
};

// Lines: "@prefix p: <iri>", "family = member, member, ...",
// "a <-> b" for inverse pairs, "#" comments.
inline RelationshipMatrix parse_relationship_matrix(std::string_view text) {
    RelationshipMatrix m;
    PrefixMap prefixes;
    std::map<Term, Term> member_home;

    auto resolve = [&](std::string token, std::size_t line) -> Term {
        if (token.size() >= 2 && token.front() == '<' && token.back() == '>') {
            std::string iri = token.substr(1, token.size() - 2);
            if (iri.find(':') == std::string::npos)
                throw ParseError("relative IRI <" + iri + "> in matrix", line, 1);
            return Term::iri(iri);
        }
        try {
            return Term::iri(prefixes.expand(token));
        } catch (const std::exception& e) {
            throw ParseError(e.what(), line, 1);
        }
    };

    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        std::string line(text.substr(start, end == std::string_view::npos ? std::string_view::npos
                                                                          : end - start));
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;

        bool in_iri = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '<') in_iri = true;
            else if (line[i] == '>') in_iri = false;
            else if (line[i] == '#' && !in_iri) { line.resize(i); break; }
        }
        line = trim(line);
        if (line.empty()) continue;

        if (line.starts_with("@prefix")) {
            std::istringstream ss(line.substr(7));
            std::string label, iri;
            ss >> label >> iri;
            if (label.empty() || label.back() != ':' || iri.size() < 2 || iri.front() != '<' ||
                iri.back() != '>')
                throw ParseError("malformed @prefix line in matrix", line_no, 1);
            prefixes.declare(label.substr(0, label.size() - 1), iri.substr(1, iri.size() - 2));
            continue;
        }

        if (auto arrow = line.find("<->"); arrow != std::string::npos) {
            Term a = resolve(trim(line.substr(0, arrow)), line_no);
            Term b = resolve(trim(line.substr(arrow + 3)), line_no);
            m.inverse_pairs.insert(a <= b ? std::pair{a, b} : std::pair{b, a});
            continue;
        }

        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'family = member, ...' in matrix", line_no, 1);
        Term family = resolve(trim(line.substr(0, eq)), line_no);

        std::string rest = line.substr(eq + 1);
        std::size_t mstart = 0;
        while (mstart <= rest.size()) {
            auto comma = rest.find(',', mstart);
            std::string token = trim(rest.substr(
                mstart, comma == std::string::npos ? std::string::npos : comma - mstart));
            mstart = comma == std::string::npos ? rest.size() + 1 : comma + 1;
            if (token.empty()) continue;
            Term member = resolve(token, line_no);
            if (member == family)
                throw ParseError("family " + family.value + " lists itself as a member", line_no, 1);
            if (auto it = member_home.find(member);
                it != member_home.end() && it->second != family)
                throw ParseError("member " + member.value + " belongs to two families", line_no, 1);
            member_home.emplace(member, family);
            m.families[family].insert(member);
        }
    }
    return m;
}

}  // namespace genome
