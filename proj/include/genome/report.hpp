#pragma once
// Rendering: coverage tables and lint reports as Markdown (human) and JSON
// (machine), and the JSON-to-table reader used for round-tripping.

#include <string>
#include <vector>

#include <json.hpp>

#include "genome/cq.hpp"
#include "genome/enrich.hpp"
#include "genome/lint.hpp"

namespace genome {

inline std::string render_coverage_markdown(const CoverageTable& t) {
    std::string out;
    out += "| Questions By | Questions | Repetition | Unique questions | Answered | % Answered | "
           "Unanswered |\n";
    out += "| --- | --- | --- | --- | --- | --- | --- |\n";
    auto row = [&](const CoverageRow& r) {
        out += "| " + r.asker + " | " + std::to_string(r.asked) + " | " +
               std::to_string(r.repeats) + " | " + std::to_string(r.unique) + " | " +
               std::to_string(r.answered) + " | " + format_pct(r.pct) + " | " +
               std::to_string(r.unanswered) + " |\n";
    };
    for (const auto& r : t.rows) row(r);
    row(t.total);
    out += "| Descriptive Questions | " + std::to_string(t.descriptive_count) +
           " |  |  |  |  |  |\n";
    row(t.considered);
    return out;
}

namespace detail {

inline nlohmann::json row_to_json(const CoverageRow& r) {
    return {{"asker", r.asker},         {"asked", r.asked},
            {"repeats", r.repeats},     {"unique", r.unique},
            {"answered", r.answered},   {"pct_answered", r.pct},
            {"unanswered", r.unanswered}};
}

inline CoverageRow row_from_json(const nlohmann::json& j) {
    CoverageRow r;
    r.asker = j.at("asker").get<std::string>();
    r.asked = j.at("asked").get<long long>();
    r.repeats = j.at("repeats").get<long long>();
    r.unique = j.at("unique").get<long long>();
    r.answered = j.at("answered").get<long long>();
    r.pct = j.at("pct_answered").get<double>();
    r.unanswered = j.at("unanswered").get<long long>();
    return r;
}

}  // namespace detail

inline std::string render_coverage_json(const CoverageTable& t) {
    nlohmann::json j;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : t.rows) j["rows"].push_back(detail::row_to_json(r));
    j["total"] = detail::row_to_json(t.total);
    j["descriptive_count"] = t.descriptive_count;
    j["considered"] = detail::row_to_json(t.considered);
    return j.dump(2) + "\n";
}

inline CoverageTable parse_coverage_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    CoverageTable t;
    for (const auto& r : j.at("rows")) t.rows.push_back(detail::row_from_json(r));
    t.total = detail::row_from_json(j.at("total"));
    t.descriptive_count = j.at("descriptive_count").get<long long>();
    t.considered = detail::row_from_json(j.at("considered"));
    return t;
}

inline std::string render_decision(const Decision& d) {
    return "decision: " + to_string(d.value) + " (coverage " + format_pct(d.coverage * 100.0) +
           "%, thresholds " + format_pct(d.lower * 100.0) + "%.." + format_pct(d.upper * 100.0) +
           "%)\n";
}

inline std::string render_lint_markdown(const LintReport& report) {
    std::string out;
    out += "# Review report\n\n";
    out += "profile: " + to_string(report.profile.value) +
           " (subclass " + std::to_string(report.profile.metrics.subclass_axioms) +
           ", data " + std::to_string(report.profile.metrics.data_property_assertions) +
           ", lexical " + std::to_string(report.profile.metrics.lexical_annotations) +
           ", total axioms " + std::to_string(report.profile.metrics.total_axioms) + ")\n\n";
    out += "findings: " + std::to_string(report.findings.size()) + " (errors " +
           std::to_string(report.count(Severity::error)) + ", warnings " +
           std::to_string(report.count(Severity::warning)) + ", info " +
           std::to_string(report.count(Severity::info)) + ")\n\n";
    for (const auto& f : report.findings) {
        out += "- [" + f.rule_id + "][" + to_string(f.severity) + "] " + f.message;
        if (f.fix)
            out += " (auto-fix: +" + std::to_string(f.fix->additions.size()) + "/-" +
                   std::to_string(f.fix->removals.size()) + " triples)";
        out += "\n";
    }
    return out;
}

inline std::string render_lint_json(const LintReport& report) {
    nlohmann::json j;
    j["profile"] = {{"value", to_string(report.profile.value)},
                    {"threshold", report.profile.threshold},
                    {"metrics",
                     {{"subclass_axioms", report.profile.metrics.subclass_axioms},
                      {"data_property_assertions", report.profile.metrics.data_property_assertions},
                      {"lexical_annotations", report.profile.metrics.lexical_annotations},
                      {"total_axioms", report.profile.metrics.total_axioms}}}};
    j["counts"] = {{"error", report.count(Severity::error)},
                   {"warning", report.count(Severity::warning)},
                   {"info", report.count(Severity::info)}};
    j["findings"] = nlohmann::json::array();
    for (const auto& f : report.findings) {
        nlohmann::json fj = {{"rule_id", f.rule_id},
                             {"severity", to_string(f.severity)},
                             {"subject", f.subject.value},
                             {"message", f.message},
                             {"has_fix", f.fix.has_value()}};
        j["findings"].push_back(std::move(fj));
    }
    return j.dump(2) + "\n";
}

inline std::string render_iteration_log_markdown(const IterateResult& result) {
    std::string out;
    out += "| Pass | Coverage | Decision | Lint errors | Patches applied |\n";
    out += "| --- | --- | --- | --- | --- |\n";
    for (const auto& r : result.records) {
        std::string patches;
        for (std::size_t i = 0; i < r.patches_applied.size(); ++i)
            patches += (i ? "; " : "") + r.patches_applied[i];
        out += "| " + std::to_string(r.index) + " | " + format_pct(r.coverage * 100.0) + "% | " +
               to_string(r.decision.value) + " | " + std::to_string(r.lint_error_count) + " | " +
               (patches.empty() ? "-" : patches) + " |\n";
    }
    out += "\nfinal " + render_decision(result.final_decision);
    if (result.truncated) out += "note: iteration budget exhausted before a terminal decision\n";
    return out;
}

inline std::string render_iteration_log_json(const IterateResult& result) {
    nlohmann::json j;
    j["records"] = nlohmann::json::array();
    for (const auto& r : result.records) {
        j["records"].push_back({{"index", r.index},
                                {"coverage", r.coverage},
                                {"decision", to_string(r.decision.value)},
                                {"lint_error_count", r.lint_error_count},
                                {"patches_applied", r.patches_applied}});
    }
    j["final_decision"] = to_string(result.final_decision.value);
    j["final_coverage"] = result.final_decision.coverage;
    j["truncated"] = result.truncated;
    return j.dump(2) + "\n";
}

}  // namespace genome
