// genome: command-line front end over the library. One subcommand per
// pipeline stage; option precedence is flags > config file (GENOME_CONFIG or
// --config) > defaults.

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "genome/cq.hpp"
#include "genome/enrich.hpp"
#include "genome/graph.hpp"
#include "genome/kr_template.hpp"
#include "genome/lint.hpp"
#include "genome/populate.hpp"
#include "genome/report.hpp"
#include "genome/schema_view.hpp"
#include "genome/turtle.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

struct Options {
    std::string ontology;
    std::string corpus;
    std::string matrix;
    std::vector<std::string> patches;
    std::string template_path;
    double lower = 0.30;
    double upper = 0.85;
    std::string format = "markdown";
    std::string out;
    int max_iters = 10;
    bool strict = false;
    std::string base;
    std::vector<std::string> upper_namespaces;
    std::string timestamp;
    bool print_config = false;
};

[[noreturn]] void fail(int code, const std::string& message) {
    std::cerr << "genome: " << message << "\n";
    std::exit(code);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(kExitIo, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

genome::Graph load_graph(const std::string& path) {
    try {
        return genome::parse_turtle(slurp(path));
    } catch (const genome::ParseError& e) {
        fail(kExitIo, path + ": " + e.what());
    }
}

std::vector<genome::Cq> load_corpus(const std::string& path) {
    try {
        return genome::dedup_corpus(genome::parse_cq_corpus(slurp(path)));
    } catch (const genome::ParseError& e) {
        fail(kExitIo, path + ": " + e.what());
    }
}

genome::RelationshipMatrix load_matrix(const std::string& path) {
    if (path.empty()) return {};
    try {
        return genome::parse_relationship_matrix(slurp(path));
    } catch (const genome::ParseError& e) {
        fail(kExitIo, path + ": " + e.what());
    }
}

std::vector<genome::Patch> load_patches(const std::vector<std::string>& dirs) {
    std::vector<genome::Patch> patches;
    for (const auto& dir : dirs) {
        try {
            patches.push_back(genome::load_patch_dir(dir));
        } catch (const std::exception& e) {
            fail(kExitIo, std::string(e.what()));
        }
    }
    return patches;
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(kExitIo, "cannot write " + path);
    out << text;
}

std::string now_utc() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

void print_next_action(const genome::Decision& d) {
    if (d.value == genome::Satisfaction::unsatisfactory)
        std::cerr << "genome: next action: coverage fell below the lower threshold; return to "
                     "conceptual analysis and rebuild the model before enriching again\n";
}

genome::LintConfig lint_config(const Options& opt) {
    genome::LintConfig cfg;
    cfg.upper_namespaces = opt.upper_namespaces;
    return cfg;
}

int run_review(const Options& opt) {
    genome::Graph g = load_graph(opt.ontology);
    genome::RelationshipMatrix matrix = load_matrix(opt.matrix);
    genome::LintReport report = genome::run_lint(genome::build_schema_view(g), matrix,
                                                 lint_config(opt));
    write_out(opt.out, opt.format == "json" ? genome::render_lint_json(report)
                                            : genome::render_lint_markdown(report));
    return report.count(genome::Severity::error) > 0 ? kExitValidation : 0;
}

int run_evaluate(const Options& opt) {
    genome::Graph g = load_graph(opt.ontology);
    std::vector<genome::Cq> corpus = load_corpus(opt.corpus);
    genome::CoverageTable table = genome::evaluate_corpus(g, corpus);
    genome::Decision decision = genome::decide_satisfaction(table, opt.lower, opt.upper);
    if (opt.format == "json") {
        nlohmann::json j = nlohmann::json::parse(genome::render_coverage_json(table));
        j["decision"] = {{"value", genome::to_string(decision.value)},
                         {"coverage", decision.coverage},
                         {"lower", decision.lower},
                         {"upper", decision.upper}};
        write_out(opt.out, j.dump(2) + "\n");
    } else {
        write_out(opt.out, genome::render_coverage_markdown(table) + "\n" +
                               genome::render_decision(decision));
    }
    print_next_action(decision);
    return 0;
}

int run_populate(const Options& opt) {
    genome::Graph g = load_graph(opt.ontology);
    genome::KrTemplate kr = genome::parse_kr_template(slurp(opt.template_path));
    for (const auto& w : kr.warnings) std::cerr << "genome: warning: " << w << "\n";
    if (!kr.errors.empty()) {
        for (const auto& e : kr.errors) std::cerr << "genome: " << e << "\n";
        return kExitValidation;
    }

    genome::PopulateConfig cfg;
    cfg.strict = opt.strict;
    if (!opt.base.empty())
        cfg.base_namespace = opt.base;
    else if (g.prefixes().has(""))
        cfg.base_namespace = g.prefixes().at("");
    else
        fail(kExitValidation, "populate needs --base or a default (:) prefix in the ontology");

    genome::PopulationReport report = genome::populate_graph(g, kr.rows, cfg);
    for (const auto& w : report.warnings) std::cerr << "genome: warning: " << w << "\n";
    if (opt.format == "json") {
        nlohmann::json j;
        j["individuals_created"] = report.individuals_created;
        j["assertions_added"] = report.assertions_added;
        j["auto_declared"] = nlohmann::json::array();
        for (const auto& p : report.predicates_auto_declared) j["auto_declared"].push_back(p.value);
        j["warnings"] = report.warnings;
        std::cerr << j.dump(2) << "\n";
    } else {
        std::cerr << "individuals created: " << report.individuals_created << "\n"
                  << "assertions added: " << report.assertions_added << "\n"
                  << "auto-declared properties: " << report.predicates_auto_declared.size() << "\n";
    }
    write_out(opt.out, genome::serialize_turtle(g));
    return 0;
}

int run_enrich(const Options& opt) {
    if (opt.patches.empty()) fail(kExitValidation, "enrich needs at least one --patch directory");
    genome::Graph g = load_graph(opt.ontology);
    for (const auto& patch : load_patches(opt.patches)) {
        genome::ApplyReport report = genome::apply_patch(g, patch);
        for (const auto& w : report.warnings) std::cerr << "genome: warning: " << w << "\n";
        std::cerr << "applied " << (patch.note.empty() ? to_string(patch.provenance) : patch.note)
                  << ": +" << report.added << " -" << report.removed << "\n";
    }
    write_out(opt.out, genome::serialize_turtle(g));
    return 0;
}

genome::IterateConfig iterate_config(const Options& opt) {
    genome::IterateConfig cfg;
    cfg.lower = opt.lower;
    cfg.upper = opt.upper;
    cfg.max_iters = opt.max_iters;
    cfg.lint = lint_config(opt);
    return cfg;
}

int run_iterate(const Options& opt) {
    genome::Graph g = load_graph(opt.ontology);
    std::vector<genome::Cq> corpus = load_corpus(opt.corpus);
    genome::RelationshipMatrix matrix = load_matrix(opt.matrix);
    genome::IterateResult result = genome::run_iteration(g, corpus, matrix,
                                                         load_patches(opt.patches),
                                                         iterate_config(opt));
    write_out(opt.out, opt.format == "json" ? genome::render_iteration_log_json(result)
                                            : genome::render_iteration_log_markdown(result));
    print_next_action(result.final_decision);
    return 0;
}

int run_export(const Options& opt) {
    genome::Graph g = load_graph(opt.ontology);
    std::vector<genome::Cq> corpus = load_corpus(opt.corpus);
    genome::Decision decision;
    int iterations = 0;
    if (opt.patches.empty()) {
        decision = genome::decide_satisfaction(genome::evaluate_corpus(g, corpus), opt.lower,
                                               opt.upper);
    } else {
        genome::RelationshipMatrix matrix = load_matrix(opt.matrix);
        genome::IterateResult result = genome::run_iteration(g, corpus, matrix,
                                                             load_patches(opt.patches),
                                                             iterate_config(opt));
        decision = result.final_decision;
        iterations = static_cast<int>(result.records.size());
    }
    print_next_action(decision);
    genome::FekrMetadata meta = genome::make_fekr_metadata(
        decision, iterations, opt.timestamp.empty() ? now_utc() : opt.timestamp);
    write_out(opt.out, genome::export_fekr(g, meta));
    return 0;
}

void require(const std::string& value, const std::string& what) {
    if (value.empty()) fail(kExitValidation, what);
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"ontology pipeline for epic knowledge modelling"};
    app.name("genome");
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "configuration file (key=value)")->envname("GENOME_CONFIG");

    app.add_option("--ontology", opt.ontology, "Turtle ontology file");
    app.add_option("--corpus", opt.corpus, "competency question corpus (TSV)");
    app.add_option("--matrix", opt.matrix, "relationship matrix file");
    app.add_option("--patch", opt.patches, "patch directory, repeatable; applied in order");
    app.add_option("--template", opt.template_path, "KR template CSV file");
    app.add_option("--lower", opt.lower, "unsatisfactory threshold, fraction")
        ->capture_default_str();
    app.add_option("--upper", opt.upper, "satisfactory threshold, fraction")
        ->capture_default_str();
    app.add_option("--format", opt.format, "report format")
        ->check(CLI::IsMember({"markdown", "json"}))
        ->capture_default_str();
    app.add_option("--out", opt.out, "output file, default stdout");
    app.add_option("--max-iters", opt.max_iters, "iteration budget")->capture_default_str();
    app.add_flag("--strict", opt.strict, "strict population guards");
    app.add_option("--base", opt.base,
                   "namespace for minted individuals, default: the ontology's default prefix");
    app.add_option("--upper-namespace", opt.upper_namespaces,
                   "upper ontology namespace to check alignment against, repeatable");
    app.add_option("--timestamp", opt.timestamp, "export timestamp, default: current UTC time");
    app.add_flag("--print-config", opt.print_config, "dump the effective configuration and exit")
        ->configurable(false);

    auto* review = app.add_subcommand("review", "lint the ontology and classify its profile");
    auto* evaluate = app.add_subcommand("evaluate", "score the corpus and decide satisfaction");
    auto* populate = app.add_subcommand("populate", "build individuals from a KR template");
    auto* enrich = app.add_subcommand("enrich", "apply patches and write the result");
    auto* iterate = app.add_subcommand("iterate", "run the evaluate-enrich loop and log it");
    auto* fekr = app.add_subcommand("export", "export the model with coverage provenance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::FileError& e) {
        app.exit(e);
        return kExitIo;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    if (opt.print_config) {
        std::cout << app.config_to_str(true, false);
        return 0;
    }

    try {
        if (review->parsed()) {
            require(opt.ontology, "review needs --ontology");
            return run_review(opt);
        }
        if (evaluate->parsed()) {
            require(opt.ontology, "evaluate needs --ontology");
            require(opt.corpus, "evaluate needs --corpus");
            return run_evaluate(opt);
        }
        if (populate->parsed()) {
            require(opt.ontology, "populate needs --ontology");
            require(opt.template_path, "populate needs --template");
            return run_populate(opt);
        }
        if (enrich->parsed()) {
            require(opt.ontology, "enrich needs --ontology");
            return run_enrich(opt);
        }
        if (iterate->parsed()) {
            require(opt.ontology, "iterate needs --ontology");
            require(opt.corpus, "iterate needs --corpus");
            return run_iterate(opt);
        }
        require(opt.ontology, "export needs --ontology");
        require(opt.corpus, "export needs --corpus");
        (void)fekr;
        return run_export(opt);
    } catch (const std::exception& e) {
        std::cerr << "genome: " << e.what() << "\n";
        return kExitValidation;
    }
}
