#pragma once
// Spreadsheet-driven population: KR rows become individuals and assertions.
// Predicates resolve through the config map, then by local-name match against
// declared properties, then by auto-declaration (left without domain/range on
// purpose: the domain/range lint picks them up for the enrichment loop).

#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "genome/graph.hpp"
#include "genome/kr_template.hpp"
#include "genome/schema_view.hpp"
#include "genome/vocab.hpp"

namespace genome {

// Deterministic slug: alphanumeric runs keep their interior casing, each run
// starts uppercase, everything else is dropped.
inline std::string mint_iri(const std::string& name, const std::string& ns) {
    std::string slug;
    bool run_start = true;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            slug.push_back(run_start
                               ? static_cast<char>(std::toupper(static_cast<unsigned char>(c)))
                               : c);
            run_start = false;
        } else {
            run_start = true;
        }
    }
    if (slug.empty()) throw std::invalid_argument("name '" + name + "' mints an empty IRI slug");
    return ns + slug;
}

struct PopulateConfig {
    std::string base_namespace;
    bool strict = false;
    Term character_class = Term::iri("http://genome-kit.org/ns#Character");
    std::map<std::string, Term> predicate_map;
    bool auto_declare = true;
    std::map<std::string, Term> class_hints;
};

struct PopulationReport {
    long long individuals_created = 0;
    long long assertions_added = 0;
    std::vector<Term> predicates_auto_declared;
    std::vector<std::string> warnings;
};

// Lines "phraseToken = prefixed:property" with a "@prefix p: <iri>" head
// block, '#' comments.
inline std::map<std::string, Term> parse_predicate_map(std::string_view text) {
    std::map<std::string, Term> out;
    PrefixMap prefixes;
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
        line = detail::trim_ws(line);
        if (line.empty()) continue;
        if (line.starts_with("@prefix")) {
            std::istringstream ss(line.substr(7));
            std::string label, iri;
            ss >> label >> iri;
            if (label.empty() || label.back() != ':' || iri.size() < 2 || iri.front() != '<' ||
                iri.back() != '>')
                throw std::invalid_argument("predicate map line " + std::to_string(line_no) +
                                            ": malformed @prefix");
            prefixes.declare(label.substr(0, label.size() - 1), iri.substr(1, iri.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("predicate map line " + std::to_string(line_no) +
                                        ": expected 'token = property'");
        std::string token = detail::trim_ws(line.substr(0, eq));
        std::string target = detail::trim_ws(line.substr(eq + 1));
        if (token.empty() || target.empty())
            throw std::invalid_argument("predicate map line " + std::to_string(line_no) +
                                        ": empty token or property");
        if (target.front() == '<' && target.back() == '>')
            out[token] = Term::iri(target.substr(1, target.size() - 2));
        else
            out[token] = Term::iri(prefixes.expand(target));
    }
    return out;
}

inline PopulationReport populate_graph(Graph& g, const std::vector<KrRow>& rows,
                                       const PopulateConfig& cfg) {
    if (cfg.base_namespace.find(':') == std::string::npos)
        throw std::invalid_argument("base namespace must be an absolute IRI");

    PopulationReport report;
    std::size_t before = g.size();

    SchemaView view = build_schema_view(g);
    if (cfg.strict && !view.classes.contains(cfg.character_class))
        throw std::runtime_error("strict mode: character class <" + cfg.character_class.value +
                                 "> is not declared in the ontology");

    std::map<std::string, Term> by_local_name;
    auto index_properties = [&](const std::set<Term>& props) {
        for (const auto& p : props) by_local_name.emplace(p.local_name(), p);
    };
    index_properties(view.object_properties);
    index_properties(view.data_properties);

    std::set<Term> auto_declared;
    auto resolve_predicate = [&](const std::string& token) -> Term {
        if (auto it = cfg.predicate_map.find(token); it != cfg.predicate_map.end())
            return it->second;
        if (auto it = by_local_name.find(token); it != by_local_name.end()) return it->second;
        Term minted = Term::iri(cfg.base_namespace + token);
        if (cfg.auto_declare) {
            if (g.insert(minted, vocab::type(), Term::iri(vocab::owl_object_property)) &&
                auto_declared.insert(minted).second) {
                report.predicates_auto_declared.push_back(minted);
                report.warnings.push_back("auto-declared object property <" + minted.value +
                                          "> (no domain/range)");
            }
            return minted;
        }
        if (cfg.strict)
            throw std::runtime_error("strict mode: phrase predicate '" + token +
                                     "' resolves to no declared property");
        report.warnings.push_back("predicate '" + token + "' used without declaration");
        return minted;
    };

    auto seen_before = [&](const Term& t) {
        return !g.match(t, std::nullopt, std::nullopt).empty() ||
               !g.match(std::nullopt, std::nullopt, t).empty();
    };

    std::set<Term> created;
    auto mint_individual = [&](const std::string& name) {
        Term t = Term::iri(mint_iri(name, cfg.base_namespace));
        if (!created.contains(t) && !seen_before(t)) created.insert(t);
        return t;
    };

    g.insert(cfg.character_class, vocab::type(), Term::iri(vocab::owl_class));

    for (const auto& row : rows) {
        Term character = mint_individual(row.character);
        g.insert(character, vocab::type(), cfg.character_class);

        auto assert_phrase = [&](const RelationPhrase& phrase) {
            Term predicate = resolve_predicate(phrase.predicate);
            for (const auto& [_, object_name] : expand_relation(phrase)) {
                Term object = mint_individual(object_name);
                g.insert(character, predicate, object);
                if (auto hint = cfg.class_hints.find(object_name); hint != cfg.class_hints.end())
                    g.insert(object, vocab::type(), hint->second);
            }
        };

        assert_phrase(row.primary);
        std::string primary_text = row.primary.predicate;
        for (std::size_t i = 0; i < row.primary.objects.size(); ++i)
            primary_text += (i ? " and " : " ") + row.primary.objects[i];
        g.insert(character, Term::iri(vocab::genome_primary_definition),
                 Term::literal(primary_text));

        for (const auto& phrase : row.secondary) assert_phrase(phrase);
    }

    report.individuals_created = static_cast<long long>(created.size());
    report.assertions_added = static_cast<long long>(g.size() - before);
    return report;
}

}  // namespace genome
