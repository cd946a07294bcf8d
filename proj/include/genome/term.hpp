#pragma once
// RDF terms and triples. Plain value types with total ordering so that
// graphs, indexes and serializer output are deterministic.

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace genome {

enum class TermKind { iri, literal, blank };

namespace rdf {
inline constexpr const char* lang_string = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
}
namespace xsd {
inline constexpr const char* string_type = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr const char* integer_type = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr const char* decimal_type = "http://www.w3.org/2001/XMLSchema#decimal";
}

// One RDF term. value holds the IRI, the literal lexical form, or the blank
// label depending on kind. datatype/lang are meaningful for literals only.
struct Term {
    TermKind kind = TermKind::iri;
    std::string value;
    std::string datatype;
    std::string lang;

    static Term iri(std::string v) {
        if (v.find(':') == std::string::npos)
            throw std::invalid_argument("IRI is not absolute: " + v);
        Term t;
        t.kind = TermKind::iri;
        t.value = std::move(v);
        return t;
    }

    static Term literal(std::string lexical, std::string dt = xsd::string_type) {
        Term t;
        t.kind = TermKind::literal;
        t.value = std::move(lexical);
        t.datatype = std::move(dt);
        return t;
    }

    // Language-tagged string; datatype is fixed to rdf:langString.
    static Term lang_literal(std::string lexical, std::string language) {
        if (language.empty())
            throw std::invalid_argument("language tag must be non-empty");
        Term t;
        t.kind = TermKind::literal;
        t.value = std::move(lexical);
        t.datatype = rdf::lang_string;
        t.lang = std::move(language);
        return t;
    }

    static Term blank(std::string label) {
        Term t;
        t.kind = TermKind::blank;
        t.value = std::move(label);
        return t;
    }

    bool is_iri() const { return kind == TermKind::iri; }
    bool is_literal() const { return kind == TermKind::literal; }
    bool is_blank() const { return kind == TermKind::blank; }

    // Local name of an IRI: the part after the last '#' or '/',
    // falling back to the part after the scheme ':'.
    std::string local_name() const {
        auto pos = value.find_last_of("#/");
        if (pos == std::string::npos) pos = value.find_last_of(':');
        return pos == std::string::npos ? value : value.substr(pos + 1);
    }

    std::string namespace_part() const {
        auto pos = value.find_last_of("#/");
        if (pos == std::string::npos) pos = value.find_last_of(':');
        return pos == std::string::npos ? std::string{} : value.substr(0, pos + 1);
    }

    friend auto operator<=>(const Term&, const Term&) = default;
};

struct Triple {
    Term subject;
    Term predicate;
    Term object;

    Triple() = default;
    Triple(Term s, Term p, Term o)
        : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
        if (subject.is_literal())
            throw std::invalid_argument("triple subject must be an IRI or blank node");
        if (!predicate.is_iri())
            throw std::invalid_argument("triple predicate must be an IRI");
    }

    friend auto operator<=>(const Triple&, const Triple&) = default;
};

}  // namespace genome
