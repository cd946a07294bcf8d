#pragma once
// Turtle subset reader and writer.
//
// Accepted grammar: @prefix/@base directives, "subject predicate-object-list ."
// statements, ';' predicate lists, ',' object lists, the keyword 'a', IRIs in
// <>, prefixed names, blank nodes (_:label and anonymous []), quoted strings
// with \" \\ \n \t escapes plus optional @lang or ^^datatype, bare integers
// and decimals, and # comments. Collections and quoted triples are rejected.
//
// The writer emits a deterministic document: prefixes sorted by label, then
// statements grouped by subject and ordered lexicographically on expanded
// IRIs at every level.

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "genome/graph.hpp"
#include "genome/term.hpp"
#include "genome/vocab.hpp"

namespace genome {

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t line, std::size_t col)
        : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) +
                             ": " + message),
          line_(line),
          col_(col) {}

    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    std::size_t line_;
    std::size_t col_;
};

namespace detail {

class TurtleReader {
public:
    TurtleReader(std::string_view text, std::optional<std::string> base,
                 std::vector<std::string>* warnings)
        : text_(text), warnings_(warnings) {
        if (base) graph_.prefixes().set_base(*base);
    }

    Graph run() {
        for (;;) {
            skip_ws();
            if (eof()) break;
            if (peek() == '@') {
                parse_directive();
            } else {
                parse_statement();
            }
        }
        return std::move(graph_);
    }

private:
    // --- character stream -------------------------------------------------
    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char peek2() const { return pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0'; }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, line_, col_);
    }

    void skip_ws() {
        while (!eof()) {
            char c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else {
                break;
            }
        }
    }

    void expect(char c, const char* what) {
        if (eof() || peek() != c) fail(std::string("expected '") + c + "' " + what);
        advance();
    }

    // --- directives ---------------------------------------------------------
    void parse_directive() {
        std::size_t line = line_, col = col_;
        advance();  // '@'
        std::string word = read_bare_word();
        if (word == "prefix") {
            skip_ws();
            std::string label = read_prefix_label();
            skip_ws();
            std::string ns = read_iri_ref();
            skip_ws();
            expect('.', "after @prefix directive");
            if (graph_.prefixes().declare(label, ns) && warnings_) {
                warnings_->push_back("duplicate @prefix declaration for '" + label +
                                     ":' at line " + std::to_string(line) + "; last one wins");
            }
        } else if (word == "base") {
            skip_ws();
            std::string base = read_iri_ref_raw();
            if (base.find(':') == std::string::npos)
                throw ParseError("@base IRI must be absolute", line, col);
            graph_.prefixes().set_base(base);
            skip_ws();
            expect('.', "after @base directive");
        } else {
            throw ParseError("unknown directive '@" + word + "'", line, col);
        }
    }

    // --- statements ---------------------------------------------------------
    void parse_statement() {
        Term subject = parse_subject();
        parse_predicate_object_list(subject);
        skip_ws();
        expect('.', "at end of statement");
    }

    void parse_predicate_object_list(const Term& subject) {
        for (;;) {
            skip_ws();
            Term predicate = parse_verb();
            parse_object_list(subject, predicate);
            skip_ws();
            if (!eof() && peek() == ';') {
                advance();
                skip_ws();
                // Turtle allows a dangling ';' before the closing '.'.
                if (!eof() && (peek() == '.' || peek() == ';')) {
                    while (!eof() && peek() == ';') {
                        advance();
                        skip_ws();
                    }
                    return;
                }
                continue;
            }
            return;
        }
    }

    void parse_object_list(const Term& subject, const Term& predicate) {
        for (;;) {
            skip_ws();
            Term object = parse_object();
            graph_.insert(Triple(subject, predicate, object));
            skip_ws();
            if (!eof() && peek() == ',') {
                advance();
                continue;
            }
            return;
        }
    }

    Term parse_subject() {
        skip_ws();
        if (eof()) fail("expected subject");
        char c = peek();
        if (c == '(') fail("collections '( ... )' are not supported by the Turtle subset");
        if (c == '<' && peek2() == '<') fail("quoted triples are not supported by the Turtle subset");
        if (c == '<') return Term::iri(read_iri_resolved());
        if (c == '_') return parse_blank_label();
        if (c == '[') return parse_anon_blank();
        if (c == '"') fail("literal cannot be a subject");
        return parse_prefixed_name();
    }

    Term parse_verb() {
        if (eof()) fail("expected predicate");
        char c = peek();
        if (c == '<') return Term::iri(read_iri_resolved());
        if (c == 'a' && !is_local_char(peek2()) && peek2() != ':') {
            advance();
            return Term::iri(vocab::rdf_type);
        }
        return parse_prefixed_name();
    }

    Term parse_object() {
        if (eof()) fail("expected object");
        char c = peek();
        if (c == '(') fail("collections '( ... )' are not supported by the Turtle subset");
        if (c == '<' && peek2() == '<') fail("quoted triples are not supported by the Turtle subset");
        if (c == '<') return Term::iri(read_iri_resolved());
        if (c == '_') return parse_blank_label();
        if (c == '[') return parse_anon_blank();
        if (c == '"') return parse_string_literal();
        if (c == '+' || c == '-' || std::isdigit(static_cast<unsigned char>(c)))
            return parse_number();
        return parse_prefixed_name();
    }

    // --- terms ----------------------------------------------------------------
    std::string read_iri_ref_raw() {
        expect('<', "to open IRI");
        std::string iri;
        while (!eof() && peek() != '>') {
            char c = advance();
            if (c == '\n') fail("newline inside IRI");
            iri.push_back(c);
        }
        expect('>', "to close IRI");
        return iri;
    }

    std::string read_iri_ref() {
        std::string iri = read_iri_ref_raw();
        if (iri.find(':') == std::string::npos) fail("namespace IRI must be absolute: <" + iri + ">");
        return iri;
    }

    std::string read_iri_resolved() {
        std::size_t line = line_, col = col_;
        std::string iri = read_iri_ref_raw();
        if (iri.find(':') != std::string::npos) return iri;
        const auto& base = graph_.prefixes().base();
        if (!base) throw ParseError("relative IRI <" + iri + "> with no @base", line, col);
        return resolve_against(*base, iri);
    }

    static std::string resolve_against(const std::string& base, const std::string& rel) {
        if (rel.empty()) return base;
        if (rel.front() == '#') {
            auto hash = base.find('#');
            return (hash == std::string::npos ? base : base.substr(0, hash)) + rel;
        }
        if (base.ends_with('/') || base.ends_with('#')) return base + rel;
        auto slash = base.find_last_of('/');
        if (slash != std::string::npos && slash > base.find("://") + 2)
            return base.substr(0, slash + 1) + rel;
        return base + "/" + rel;
    }

    static bool is_name_start(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
               static_cast<unsigned char>(c) >= 0x80;
    }

    static bool is_local_char(char c) {
        return is_name_start(c) || c == '-';
    }

    std::string read_prefix_label() {
        std::string label;
        while (!eof() && is_local_char(peek())) label.push_back(advance());
        expect(':', "after prefix label");
        return label;
    }

    std::string read_bare_word() {
        std::string word;
        while (!eof() && std::isalpha(static_cast<unsigned char>(peek()))) word.push_back(advance());
        return word;
    }

    Term parse_prefixed_name() {
        std::size_t line = line_, col = col_;
        std::string prefix;
        while (!eof() && is_local_char(peek())) prefix.push_back(advance());
        if (eof() || peek() != ':') {
            throw ParseError("expected a term, found '" + prefix + "'", line, col);
        }
        advance();  // ':'
        std::string local;
        while (!eof()) {
            char c = peek();
            if (is_local_char(c)) {
                local.push_back(advance());
            } else if (c == '.' && is_local_char(peek2())) {
                // A dot is part of the local name only when more name follows;
                // otherwise it terminates the statement.
                local.push_back(advance());
            } else {
                break;
            }
        }
        if (!graph_.prefixes().has(prefix))
            throw ParseError("undefined prefix '" + prefix + ":'", line, col);
        return Term::iri(graph_.prefixes().at(prefix) + local);
    }

    Term parse_blank_label() {
        advance();  // '_'
        expect(':', "after '_' in blank node label");
        std::string label;
        while (!eof() && (is_local_char(peek()) || (peek() == '.' && is_local_char(peek2()))))
            label.push_back(advance());
        if (label.empty()) fail("empty blank node label");
        return Term::blank(label);
    }

    Term parse_anon_blank() {
        std::size_t line = line_, col = col_;
        advance();  // '['
        skip_ws();
        if (eof() || peek() != ']')
            throw ParseError("property lists inside '[ ... ]' are not supported by the Turtle subset",
                             line, col);
        advance();  // ']'
        return Term::blank("anon" + std::to_string(anon_counter_++));
    }

    Term parse_string_literal() {
        advance();  // '"'
        std::string lexical;
        for (;;) {
            if (eof()) fail("unterminated string literal");
            char c = advance();
            if (c == '"') break;
            if (c == '\n' || c == '\r') fail("raw line break inside string literal");
            if (c == '\\') {
                if (eof()) fail("unterminated escape sequence");
                char e = advance();
                switch (e) {
                    case '"': lexical.push_back('"'); break;
                    case '\\': lexical.push_back('\\'); break;
                    case 'n': lexical.push_back('\n'); break;
                    case 't': lexical.push_back('\t'); break;
                    default: fail(std::string("unsupported escape '\\") + e + "'");
                }
            } else {
                lexical.push_back(c);
            }
        }
        if (!eof() && peek() == '@') {
            advance();
            std::string lang;
            while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-'))
                lang.push_back(advance());
            if (lang.empty()) fail("empty language tag");
            return Term::lang_literal(lexical, lang);
        }
        if (!eof() && peek() == '^') {
            advance();
            expect('^', "in '^^' datatype marker");
            skip_ws();
            Term dt = (!eof() && peek() == '<') ? Term::iri(read_iri_resolved()) : parse_prefixed_name();
            return Term::literal(lexical, dt.value);
        }
        return Term::literal(lexical);
    }

    Term parse_number() {
        std::string lexical;
        if (peek() == '+' || peek() == '-') lexical.push_back(advance());
        bool saw_digit = false, saw_dot = false;
        while (!eof()) {
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                saw_digit = true;
                lexical.push_back(advance());
            } else if (c == '.' && !saw_dot && std::isdigit(static_cast<unsigned char>(peek2()))) {
                saw_dot = true;
                lexical.push_back(advance());
            } else {
                break;
            }
        }
        if (!saw_digit) fail("malformed numeric literal");
        return Term::literal(lexical, saw_dot ? xsd::decimal_type : xsd::integer_type);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    std::size_t anon_counter_ = 0;
    Graph graph_;
    std::vector<std::string>* warnings_;
};

inline bool lexical_is_integer(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

inline bool lexical_is_decimal(const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos || dot + 1 >= s.size()) return false;
    std::string frac = s.substr(dot + 1);
    std::string whole = s.substr(0, dot);
    if (whole.empty() || frac.empty()) return false;
    for (char c : frac)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return lexical_is_integer(whole);
}

inline bool valid_pn_local(const std::string& local) {
    if (local.empty()) return true;  // "p:" is a valid prefixed name
    if (local.front() == '.' || local.front() == '-' || local.back() == '.') return false;
    for (char c : local) {
        bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
                  c == '.' || static_cast<unsigned char>(c) >= 0x80;
        if (!ok) return false;
    }
    return true;
}

inline void append_escaped(std::string& out, const std::string& lexical) {
    for (char c : lexical) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out.push_back(c);
        }
    }
}

inline std::string render_term(const Term& t, const PrefixMap& prefixes,
                               bool predicate_position = false) {
    switch (t.kind) {
        case TermKind::iri: {
            if (predicate_position && t.value == vocab::rdf_type) return "a";
            if (auto compacted = prefixes.compact(t.value)) {
                if (valid_pn_local(compacted->second))
                    return compacted->first + ":" + compacted->second;
            }
            return "<" + t.value + ">";
        }
        case TermKind::blank:
            return "_:" + t.value;
        case TermKind::literal: {
            if (t.datatype == xsd::integer_type && lexical_is_integer(t.value)) return t.value;
            if (t.datatype == xsd::decimal_type && lexical_is_decimal(t.value)) return t.value;
            std::string out = "\"";
            append_escaped(out, t.value);
            out += "\"";
            if (!t.lang.empty()) {
                out += "@" + t.lang;
            } else if (t.datatype != xsd::string_type) {
                out += "^^" + render_term(Term::iri(t.datatype), prefixes);
            }
            return out;
        }
    }
    return {};
}

}  // namespace detail

inline Graph parse_turtle(std::string_view document, std::optional<std::string> base = std::nullopt,
                          std::vector<std::string>* warnings = nullptr) {
    return detail::TurtleReader(document, std::move(base), warnings).run();
}

inline std::string serialize_turtle(const Graph& g) {
    const PrefixMap& prefixes = g.prefixes();
    std::string out;
    if (prefixes.base()) out += "@base <" + *prefixes.base() + "> .\n";
    for (const auto& [label, ns] : prefixes.entries())
        out += "@prefix " + label + ": <" + ns + "> .\n";
    if (!prefixes.empty() && !g.empty()) out += "\n";

    // Group by subject, then predicate; sets already iterate in term order.
    std::map<Term, std::map<Term, std::vector<Term>>> grouped;
    for (const auto& t : g) grouped[t.subject][t.predicate].push_back(t.object);

    for (const auto& [subject, po] : grouped) {
        out += detail::render_term(subject, prefixes) + " ";
        bool first_pred = true;
        for (const auto& [predicate, objects] : po) {
            if (!first_pred) out += " ;\n    ";
            first_pred = false;
            out += detail::render_term(predicate, prefixes, true) + " ";
            bool first_obj = true;
            for (const auto& object : objects) {
                if (!first_obj) out += " , ";
                first_obj = false;
                out += detail::render_term(object, prefixes);
            }
        }
        out += " .\n";
    }
    return out;
}

}  // namespace genome
