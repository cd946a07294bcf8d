#pragma once
// KR template: a CSV of characters, one primary definition each, and any
// number of secondary relation phrases.
//
// Phrase grammar: first token is the predicate, the rest splits on the word
// "and" into object names; "brother of X" is normalized to "brotherOf X"
// first; multi-word names are title-cased and concatenated ("Vaishnava
// Sacrifice" -> VaishnavaSacrifice).

#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace genome {

struct RelationPhrase {
    std::string predicate;
    std::vector<std::string> objects;
};

struct KrRow {
    long long serial = 0;
    std::string character;
    RelationPhrase primary;
    std::vector<RelationPhrase> secondary;
};

struct KrTemplate {
    std::vector<KrRow> rows;
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
};

namespace detail {

// RFC 4180: quoted fields may contain commas, line breaks, and "" escapes.
inline std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool row_started = false;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
        row_started = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                row_started = true;
                break;
            case ',':
                end_field();
                row_started = true;
                break;
            case '\r':
                break;
            case '\n':
                if (row_started || !field.empty() || !record.empty()) end_record();
                break;
            default:
                field.push_back(c);
                row_started = true;
        }
    }
    if (row_started || !field.empty() || !record.empty()) end_record();
    return records;
}

inline std::string trim_ws(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

inline std::string title_case(std::string word) {
    if (!word.empty())
        word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
    return word;
}

// "Vaishnava Sacrifice" -> "VaishnavaSacrifice"; interior camel case survives.
inline std::string join_name(const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) out += title_case(w);
    return out;
}

}  // namespace detail

// Tokenize one phrase cell. Returns false (with reason) on malformed cells.
inline bool parse_relation_phrase(const std::string& cell, RelationPhrase& out,
                                  std::string& reason) {
    std::vector<std::string> tokens;
    std::istringstream ss(cell);
    for (std::string tok; ss >> tok;) tokens.push_back(tok);
    if (tokens.empty()) {
        reason = "empty phrase";
        return false;
    }

    // "brother of Duryodhana" -> "brotherOf Duryodhana"
    if (tokens.size() >= 2 && tokens[1] == "of") {
        tokens[0] += "Of";
        tokens.erase(tokens.begin() + 1);
    }

    out.predicate = tokens[0];
    out.objects.clear();

    std::vector<std::string> current;
    auto flush = [&]() -> bool {
        if (current.empty()) return false;
        out.objects.push_back(detail::join_name(current));
        current.clear();
        return true;
    };
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (tokens[i] == "and") {
            if (!flush()) {
                reason = "dangling 'and' in phrase";
                return false;
            }
        } else {
            current.push_back(tokens[i]);
        }
    }
    if (!flush()) {
        reason = out.objects.empty() ? "phrase has no object" : "dangling 'and' in phrase";
        return false;
    }
    return true;
}

inline std::vector<std::pair<std::string, std::string>> expand_relation(const RelationPhrase& r) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& obj : r.objects) out.emplace_back(r.predicate, obj);
    return out;
}

// Header: "Sl. No,Characters,Primary Definition,Secondary Relation..." with
// any number of trailing relation columns. Per-row validation problems are
// aggregated; rows that parse cleanly are kept.
inline KrTemplate parse_kr_template(std::string_view csv_document) {
    KrTemplate result;
    auto records = detail::parse_csv(csv_document);
    if (records.empty()) {
        result.errors.push_back("row 1: missing header row");
        return result;
    }

    const auto& header = records[0];
    if (header.size() < 3 || detail::trim_ws(header[0]) != "Sl. No" ||
        detail::trim_ws(header[1]) != "Characters" ||
        detail::trim_ws(header[2]) != "Primary Definition") {
        result.errors.push_back(
            "row 1: header must start with 'Sl. No,Characters,Primary Definition'");
        return result;
    }

    // Object names are matched against characters in joined form, so
    // "Vaishnava Sacrifice" the character would match object VaishnavaSacrifice.
    auto joined = [](const std::string& name) {
        std::vector<std::string> words;
        std::istringstream ss(name);
        for (std::string w; ss >> w;) words.push_back(w);
        return detail::join_name(words);
    };

    std::set<long long> serials;
    std::set<std::string> character_names;
    for (std::size_t r = 1; r < records.size(); ++r)
        character_names.insert(joined(detail::trim_ws(records[r].size() > 1 ? records[r][1] : "")));

    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        std::string where = "row " + std::to_string(r + 1);
        KrRow row;
        bool ok = true;

        std::string serial_cell = detail::trim_ws(rec.empty() ? "" : rec[0]);
        try {
            std::size_t consumed = 0;
            row.serial = std::stoll(serial_cell, &consumed);
            if (consumed != serial_cell.size()) throw std::invalid_argument(serial_cell);
        } catch (const std::exception&) {
            result.errors.push_back(where + ": serial '" + serial_cell + "' is not an integer");
            ok = false;
        }
        if (ok && !serials.insert(row.serial).second) {
            result.errors.push_back(where + ": duplicate serial " + std::to_string(row.serial));
            ok = false;
        }

        row.character = detail::trim_ws(rec.size() > 1 ? rec[1] : "");
        if (row.character.empty()) {
            result.errors.push_back(where + ": missing character name");
            ok = false;
        }

        std::string primary_cell = detail::trim_ws(rec.size() > 2 ? rec[2] : "");
        std::string reason;
        if (primary_cell.empty()) {
            result.errors.push_back(where + ": missing primary definition");
            ok = false;
        } else if (!parse_relation_phrase(primary_cell, row.primary, reason)) {
            result.errors.push_back(where + ": primary definition: " + reason);
            ok = false;
        }

        for (std::size_t c = 3; c < rec.size(); ++c) {
            std::string cell = detail::trim_ws(rec[c]);
            if (cell.empty()) continue;
            RelationPhrase phrase;
            if (!parse_relation_phrase(cell, phrase, reason)) {
                result.errors.push_back(where + ", column " + std::to_string(c + 1) + ": " + reason);
                ok = false;
                continue;
            }
            row.secondary.push_back(std::move(phrase));
        }

        if (!ok) continue;

        auto warn_unknown = [&](const RelationPhrase& phrase) {
            for (const auto& obj : phrase.objects) {
                if (character_names.contains(obj)) continue;
                result.warnings.push_back(where + ": object '" + obj +
                                          "' is not an enumerated character");
            }
        };
        warn_unknown(row.primary);
        for (const auto& phrase : row.secondary) warn_unknown(phrase);

        result.rows.push_back(std::move(row));
    }
    return result;
}

}  // namespace genome
