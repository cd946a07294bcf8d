#pragma once
// Enrichment patches, the evaluate->enrich->re-evaluate loop, and the final
// FEKR export with coverage provenance.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "genome/cq.hpp"
#include "genome/graph.hpp"
#include "genome/lint.hpp"
#include "genome/schema_view.hpp"
#include "genome/turtle.hpp"
#include "genome/vocab.hpp"

namespace genome {

enum class Provenance { external, internal };

inline std::string to_string(Provenance p) {
    return p == Provenance::external ? "external" : "internal";
}

struct Patch {
    Graph additions;
    Graph removals;
    Provenance provenance = Provenance::external;
    std::string note;

    bool empty() const { return additions.empty() && removals.empty(); }
};

inline Patch parse_patch(std::string_view add_doc, std::string_view remove_doc,
                         Provenance provenance, std::string note) {
    Patch p;
    p.additions = parse_turtle(add_doc);
    p.removals = parse_turtle(remove_doc);
    p.provenance = provenance;
    p.note = std::move(note);
    for (const auto& t : p.additions)
        if (p.removals.contains(t))
            throw std::invalid_argument("patch adds and removes the same triple");
    return p;
}

// Patch directory: add.ttl / remove.ttl (absent = empty) plus patch.toml with
// provenance and note keys.
inline Patch load_patch_dir(const std::filesystem::path& dir) {
    auto read_optional = [](const std::filesystem::path& p) -> std::string {
        if (!std::filesystem::exists(p)) return {};
        std::ifstream in(p);
        if (!in) throw std::runtime_error("cannot read " + p.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };

    std::filesystem::path meta_path = dir / "patch.toml";
    if (!std::filesystem::exists(meta_path))
        throw std::runtime_error("patch directory " + dir.string() + " has no patch.toml");

    Provenance provenance = Provenance::external;
    std::string note;
    std::ifstream meta(meta_path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(meta, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r\"");
            auto e = s.find_last_not_of(" \t\r\"");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "provenance") {
            if (value == "external")
                provenance = Provenance::external;
            else if (value == "internal")
                provenance = Provenance::internal;
            else
                throw std::runtime_error(meta_path.string() + ":" + std::to_string(line_no) +
                                         ": provenance must be external or internal");
        } else if (key == "note") {
            note = value;
        }
    }

    return parse_patch(read_optional(dir / "add.ttl"), read_optional(dir / "remove.ttl"),
                       provenance, std::move(note));
}

struct ApplyReport {
    long long removed = 0;
    long long added = 0;
    std::vector<std::string> warnings;
};

// Removals land first so a patch can move a triple in one step. Absent
// removals warn; duplicate additions are no-ops.
inline ApplyReport apply_patch(Graph& g, const Patch& p) {
    ApplyReport report;
    for (const auto& t : p.removals) {
        if (g.erase(t))
            ++report.removed;
        else
            report.warnings.push_back("removal not present: <" + t.subject.value + "> <" +
                                      t.predicate.value + "> ...");
    }
    for (const auto& t : p.additions)
        if (g.insert(t)) ++report.added;
    return report;
}

// Folds every auto-fix in the report into one internal patch. Error- and
// warning-level findings without a fix are named in the note.
inline Patch suggest_internal_fixes(const LintReport& report) {
    Patch p;
    p.provenance = Provenance::internal;
    std::size_t fixed = 0;
    std::vector<std::string> unfixable;
    for (const auto& f : report.findings) {
        if (f.fix) {
            ++fixed;
            for (const auto& t : f.fix->additions) p.additions.insert(t);
            for (const auto& t : f.fix->removals) p.removals.insert(t);
        } else if (f.severity != Severity::info) {
            unfixable.push_back(f.rule_id + " <" + f.subject.value + ">");
        }
    }
    for (const auto& t : p.additions)
        if (p.removals.contains(t))
            throw std::runtime_error("conflicting lint fixes add and remove the same triple");
    p.note = "internal fixes for " + std::to_string(fixed) + " finding(s)";
    if (!unfixable.empty()) {
        p.note += "; unfixable:";
        for (const auto& u : unfixable) p.note += " " + u;
    }
    return p;
}

struct IterationRecord {
    int index = 0;
    double coverage = 0.0;
    Decision decision;
    std::vector<std::string> patches_applied;
    int lint_error_count = 0;
};

struct IterateConfig {
    double lower = 0.30;
    double upper = 0.85;
    int max_iters = 10;
    bool apply_internal_fixes = true;
    LintConfig lint;
};

struct IterateResult {
    std::vector<IterationRecord> records;
    Decision final_decision;
    bool truncated = false;
};

// One pass = evaluate, decide, lint; then, when enrichment is needed and
// material exists, apply the next queued patch plus the lint auto-fixes.
inline IterateResult run_iteration(Graph& g, const std::vector<Cq>& corpus,
                                   const RelationshipMatrix& matrix, std::vector<Patch> queue,
                                   const IterateConfig& cfg = {}) {
    if (cfg.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");

    IterateResult result;
    std::size_t next_patch = 0;
    for (int pass = 1; pass <= cfg.max_iters; ++pass) {
        CoverageTable table = evaluate_corpus(g, corpus);
        Decision decision = decide_satisfaction(table, cfg.lower, cfg.upper);
        LintReport lint = run_lint(build_schema_view(g), matrix, cfg.lint);

        IterationRecord record;
        record.index = pass;
        record.coverage = decision.coverage;
        record.decision = decision;
        record.lint_error_count = lint.count(Severity::error);
        result.final_decision = decision;

        if (decision.value != Satisfaction::needs_enrichment || next_patch >= queue.size()) {
            result.records.push_back(std::move(record));
            return result;
        }

        const Patch& patch = queue[next_patch++];
        apply_patch(g, patch);
        record.patches_applied.push_back(patch.note.empty() ? to_string(patch.provenance)
                                                            : patch.note);
        if (cfg.apply_internal_fixes) {
            Patch fixes = suggest_internal_fixes(lint);
            if (!fixes.empty()) {
                apply_patch(g, fixes);
                record.patches_applied.push_back(fixes.note);
            }
        }
        result.records.push_back(std::move(record));
    }
    result.truncated = true;
    return result;
}

struct FekrMetadata {
    std::string status = "FEKR";
    double coverage = 0.0;
    int iterations = 0;
    std::string timestamp;
};

// The only way to mint FEKR metadata is through a satisfactory decision.
inline FekrMetadata make_fekr_metadata(const Decision& decision, int iterations,
                                       std::string timestamp) {
    if (decision.value != Satisfaction::satisfactory)
        throw std::runtime_error("FEKR export refused: decision is " + to_string(decision.value) +
                                 " (coverage " + std::to_string(decision.coverage) +
                                 " below upper threshold " + std::to_string(decision.upper) + ")");
    FekrMetadata meta;
    meta.coverage = decision.coverage;
    meta.iterations = iterations;
    meta.timestamp = std::move(timestamp);
    return meta;
}

// Percent formatting shared by reports and export: 4 decimals, half-up
// upstream, trailing zeros (and a bare dot) trimmed.
inline std::string format_pct(double pct) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", pct);
    std::string s = buf;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

inline std::string export_fekr(const Graph& g, const FekrMetadata& meta) {
    if (meta.status != "FEKR")
        throw std::runtime_error("export requires FEKR status metadata");

    Graph out = g;
    Term header = Term::iri("urn:genome-kit:fekr");
    auto declared = out.match(std::nullopt, vocab::type(), Term::iri(vocab::owl_ontology));
    if (!declared.empty() && declared.front().subject.is_iri()) {
        header = declared.front().subject;
    } else {
        out.insert(header, vocab::type(), Term::iri(vocab::owl_ontology));
    }

    out.prefixes().declare("genome", vocab::genome_ns);
    out.prefixes().declare("xsd", vocab::xsd_ns);
    out.insert(header, Term::iri(vocab::genome_coverage_percent),
               Term::literal(format_pct(meta.coverage * 100.0), xsd::decimal_type));
    out.insert(header, Term::iri(vocab::genome_iteration_count),
               Term::literal(std::to_string(meta.iterations), xsd::integer_type));
    out.insert(header, Term::iri(vocab::genome_exported_at),
               Term::literal(meta.timestamp, std::string(vocab::xsd_ns) + "dateTime"));
    return serialize_turtle(out);
}

}  // namespace genome
