#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "genome/enrich.hpp"
#include "genome/turtle.hpp"

using namespace genome;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string fixture_path(const std::string& name) {
    return std::string(GENOME_FIXTURE_DIR) + "/" + name;
}

Graph fixture_graph() { return parse_turtle(slurp(fixture_path("mini_mahabharata.ttl"))); }

std::vector<Cq> fixture_corpus() {
    return dedup_corpus(parse_cq_corpus(slurp(fixture_path("cq_corpus.tsv"))));
}

RelationshipMatrix fixture_matrix() {
    return parse_relationship_matrix(slurp(fixture_path("relationship_matrix.txt")));
}

Patch fixture_patch() { return load_patch_dir(fixture_path("patches/external")); }

Term epic(const std::string& local) { return Term::iri("http://example.org/epic#" + local); }

fs::path make_temp_dir(const std::string& tag) {
    static int counter = 0;
    fs::path dir = fs::temp_directory_path() / ("genome_enrich_" + tag + "_" +
                                                std::to_string(counter++));
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    out << content;
}

TEST(Patch, AddAndRemoveMustBeDisjoint) {
    std::string doc = "@prefix : <http://e/> .\n:a :p :b .\n";
    EXPECT_THROW(parse_patch(doc, doc, Provenance::external, ""), std::invalid_argument);

    Patch ok = parse_patch(doc, "@prefix : <http://e/> .\n:a :p :c .\n", Provenance::internal,
                           "swap object");
    EXPECT_EQ(ok.provenance, Provenance::internal);
    EXPECT_EQ(ok.note, "swap object");
    EXPECT_EQ(ok.additions.size(), 1u);
    EXPECT_EQ(ok.removals.size(), 1u);
    EXPECT_FALSE(ok.empty());
}

TEST(Patch, LoadFixtureDirectory) {
    Patch p = fixture_patch();
    EXPECT_EQ(p.provenance, Provenance::external);
    EXPECT_EQ(p.note, "roles, spouse/sibling relations, skills and gender");
    EXPECT_EQ(p.additions.size(), 29u);
    EXPECT_TRUE(p.removals.empty());
    EXPECT_TRUE(p.additions.contains(
        Triple(epic("Arjuna"), epic("hasSpouse"), epic("Draupadi"))));
}

TEST(Patch, DirectoryNeedsMetadata) {
    fs::path dir = make_temp_dir("no_toml");
    write_file(dir / "add.ttl", "@prefix : <http://e/> .\n:a :p :b .\n");
    EXPECT_THROW(load_patch_dir(dir), std::runtime_error);
    fs::remove_all(dir);
}

TEST(Patch, DirectoryRejectsBadProvenance) {
    fs::path dir = make_temp_dir("bad_prov");
    write_file(dir / "patch.toml", "provenance = \"upstream\"\n");
    EXPECT_THROW(load_patch_dir(dir), std::runtime_error);
    fs::remove_all(dir);
}

TEST(Patch, MissingTurtleFilesMeanEmptySides) {
    fs::path dir = make_temp_dir("meta_only");
    write_file(dir / "patch.toml", "# comment\nprovenance = \"internal\"\nnote = \"noop\"\n");
    Patch p = load_patch_dir(dir);
    EXPECT_TRUE(p.empty());
    EXPECT_EQ(p.provenance, Provenance::internal);
    EXPECT_EQ(p.note, "noop");
    fs::remove_all(dir);
}

TEST(ApplyPatch, RemovalsLandBeforeAdditions) {
    Graph g = parse_turtle("@prefix : <http://e/> .\n:a :p :b .\n");
    Patch move = parse_patch("@prefix : <http://e/> .\n:a :p :c .\n",
                             "@prefix : <http://e/> .\n:a :p :b .\n", Provenance::external, "");
    ApplyReport r = apply_patch(g, move);
    EXPECT_EQ(r.removed, 1);
    EXPECT_EQ(r.added, 1);
    EXPECT_TRUE(r.warnings.empty());
    EXPECT_EQ(g.size(), 1u);
    EXPECT_TRUE(g.contains(Triple(Term::iri("http://e/a"), Term::iri("http://e/p"),
                                  Term::iri("http://e/c"))));

    // Reapplying: the removal is gone (warning), the addition a duplicate.
    ApplyReport again = apply_patch(g, move);
    EXPECT_EQ(again.removed, 0);
    EXPECT_EQ(again.added, 0);
    ASSERT_EQ(again.warnings.size(), 1u);
    EXPECT_NE(again.warnings[0].find("removal not present"), std::string::npos);
    EXPECT_EQ(g.size(), 1u);
}

TEST(ApplyPatch, RandomizedSetSemantics) {
    std::mt19937 rng(9001);
    auto term = [&](int i) { return Term::iri("http://e/t" + std::to_string(i)); };
    std::vector<Triple> pool;
    for (int s = 0; s < 4; ++s)
        for (int p = 0; p < 2; ++p)
            for (int o = 0; o < 4; ++o) pool.push_back(Triple(term(s), term(10 + p), term(o)));

    for (int round = 0; round < 100; ++round) {
        Graph g;
        for (const auto& t : pool)
            if (rng() % 2) g.insert(t);

        Patch p;
        for (const auto& t : pool) {
            switch (rng() % 4) {
                case 0: p.additions.insert(t); break;
                case 1: p.removals.insert(t); break;
                default: break;
            }
        }

        std::set<Triple> expected(g.begin(), g.end());
        long long expect_removed = 0, expect_added = 0;
        for (const auto& t : p.removals) expect_removed += expected.erase(t) ? 1 : 0;
        for (const auto& t : p.additions) expect_added += expected.insert(t).second ? 1 : 0;

        ApplyReport r = apply_patch(g, p);
        EXPECT_EQ(r.removed, expect_removed);
        EXPECT_EQ(r.added, expect_added);
        EXPECT_EQ(std::set<Triple>(g.begin(), g.end()), expected);

        ApplyReport again = apply_patch(g, p);
        EXPECT_EQ(again.added, 0);
        EXPECT_EQ(std::set<Triple>(g.begin(), g.end()), expected);
    }
}

TEST(InternalFixes, FoldsLintFixesIntoOnePatch) {
    Graph g = parse_turtle(slurp(fixture_path("seeded_defects.ttl")));
    LintConfig cfg;
    cfg.default_domain = epic("Person");
    cfg.default_range = epic("Person");
    LintReport report = run_lint(build_schema_view(g), fixture_matrix(), cfg);

    Patch fixes = suggest_internal_fixes(report);
    EXPECT_EQ(fixes.provenance, Provenance::internal);
    EXPECT_EQ(fixes.note,
              "internal fixes for 6 finding(s); unfixable: PN01 "
              "<http://example.org/epic#Pandavas> RG01 <http://example.org/epic#Person>");
    EXPECT_TRUE(fixes.removals.empty());
    EXPECT_TRUE(fixes.additions.contains(Triple(epic("commands"), vocab::range(), epic("Person"))));
    EXPECT_TRUE(fixes.additions.contains(Triple(epic("servesAt"), vocab::domain(), epic("Person"))));
    EXPECT_TRUE(fixes.additions.contains(
        Triple(epic("husbandOf"), vocab::subproperty_of(), epic("hasSpouse"))));
    EXPECT_TRUE(fixes.additions.contains(
        Triple(epic("wifeOf"), vocab::subproperty_of(), epic("hasSpouse"))));

    apply_patch(g, fixes);
    LintReport after = run_lint(build_schema_view(g), fixture_matrix(), cfg);
    EXPECT_TRUE(suggest_internal_fixes(after).additions.empty());
}

TEST(InternalFixes, ConflictingFixesThrow) {
    LintReport report;
    Triple t(epic("a"), epic("p"), epic("b"));
    report.findings.push_back({"XX01", Severity::warning, epic("a"), "add", LintFix{{t}, {}}});
    report.findings.push_back({"XX02", Severity::warning, epic("a"), "remove", LintFix{{}, {t}}});
    EXPECT_THROW(suggest_internal_fixes(report), std::runtime_error);
}

TEST(Iterate, SatisfactoryBaselineStopsImmediately) {
    Graph g = fixture_graph();
    auto corpus = fixture_corpus();
    corpus.resize(13);  // the thirteen baseline-answerable questions
    IterateResult r = run_iteration(g, corpus, fixture_matrix(), {fixture_patch()});
    ASSERT_EQ(r.records.size(), 1u);
    EXPECT_EQ(r.final_decision.value, Satisfaction::satisfactory);
    EXPECT_DOUBLE_EQ(r.records[0].coverage, 1.0);
    EXPECT_TRUE(r.records[0].patches_applied.empty());
    EXPECT_FALSE(r.truncated);
    // Queue untouched: the spouse assertions never landed.
    EXPECT_FALSE(g.contains(Triple(epic("Arjuna"), epic("hasSpouse"), epic("Draupadi"))));
}

TEST(Iterate, UnsatisfactoryBaselineDoesNotPatch) {
    Graph g = fixture_graph();
    auto full = fixture_corpus();
    std::vector<Cq> unanswerable(full.begin() + 13, full.begin() + 26);  // cq14..cq26
    IterateResult r = run_iteration(g, unanswerable, fixture_matrix(), {fixture_patch()});
    ASSERT_EQ(r.records.size(), 1u);
    EXPECT_EQ(r.final_decision.value, Satisfaction::unsatisfactory);
    EXPECT_TRUE(r.records[0].patches_applied.empty());
}

TEST(Iterate, EmptyQueueStopsTheLoop) {
    Graph g = fixture_graph();
    IterateResult r = run_iteration(g, fixture_corpus(), fixture_matrix(), {});
    ASSERT_EQ(r.records.size(), 1u);
    EXPECT_EQ(r.final_decision.value, Satisfaction::needs_enrichment);
    EXPECT_FALSE(r.truncated);
}

TEST(Iterate, EnrichmentTrajectoryToSatisfactory) {
    Graph g = fixture_graph();
    IterateResult r = run_iteration(g, fixture_corpus(), fixture_matrix(), {fixture_patch()});

    ASSERT_EQ(r.records.size(), 2u);
    EXPECT_FALSE(r.truncated);

    const IterationRecord& first = r.records[0];
    EXPECT_EQ(first.index, 1);
    EXPECT_NEAR(first.coverage, 0.481481, 1e-12);
    EXPECT_EQ(first.decision.value, Satisfaction::needs_enrichment);
    EXPECT_EQ(first.lint_error_count, 0);
    ASSERT_EQ(first.patches_applied.size(), 2u);
    EXPECT_EQ(first.patches_applied[0], "roles, spouse/sibling relations, skills and gender");
    EXPECT_EQ(first.patches_applied[1], "internal fixes for 2 finding(s)");

    const IterationRecord& second = r.records[1];
    EXPECT_EQ(second.index, 2);
    EXPECT_NEAR(second.coverage, 0.925926, 1e-12);
    EXPECT_EQ(second.decision.value, Satisfaction::satisfactory);
    EXPECT_EQ(second.lint_error_count, 0);
    EXPECT_TRUE(second.patches_applied.empty());

    EXPECT_LT(first.coverage, second.coverage);
    EXPECT_EQ(r.final_decision.value, Satisfaction::satisfactory);

    // The internal ML01 fix is what answered the two modulation questions.
    EXPECT_TRUE(g.contains(Triple(epic("husbandOf"), vocab::subproperty_of(), epic("hasSpouse"))));
    EXPECT_TRUE(g.contains(Triple(epic("wifeOf"), vocab::subproperty_of(), epic("hasSpouse"))));
}

TEST(Iterate, InternalFixesCanBeDisabled) {
    Graph g = fixture_graph();
    IterateConfig cfg;
    cfg.apply_internal_fixes = false;
    IterateResult r = run_iteration(g, fixture_corpus(), fixture_matrix(), {fixture_patch()}, cfg);

    ASSERT_EQ(r.records.size(), 2u);
    ASSERT_EQ(r.records[0].patches_applied.size(), 1u);
    EXPECT_FALSE(g.contains(Triple(epic("husbandOf"), vocab::subproperty_of(), epic("hasSpouse"))));
    // cq22/cq23 stay unanswered: 23 of 27 instead of 25 of 27.
    EXPECT_NEAR(r.records[1].coverage, 0.851852, 1e-12);
    EXPECT_EQ(r.final_decision.value, Satisfaction::satisfactory);
}

TEST(Iterate, MaxItersTruncates) {
    Graph g = fixture_graph();
    IterateConfig cfg;
    cfg.max_iters = 1;
    IterateResult r = run_iteration(g, fixture_corpus(), fixture_matrix(), {fixture_patch()}, cfg);
    ASSERT_EQ(r.records.size(), 1u);
    EXPECT_TRUE(r.truncated);
    EXPECT_EQ(r.final_decision.value, Satisfaction::needs_enrichment);

    cfg.max_iters = 0;
    EXPECT_THROW(run_iteration(g, fixture_corpus(), fixture_matrix(), {}, cfg),
                 std::invalid_argument);
}

TEST(Fekr, MetadataRequiresSatisfactoryDecision) {
    Decision blocked;
    blocked.value = Satisfaction::needs_enrichment;
    blocked.coverage = 0.481481;
    try {
        make_fekr_metadata(blocked, 1, "2026-08-16T00:00:00Z");
        FAIL() << "expected refusal";
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("refused"), std::string::npos);
    }

    Decision good;
    good.value = Satisfaction::satisfactory;
    good.coverage = 0.886905;
    FekrMetadata meta = make_fekr_metadata(good, 3, "2026-08-16T00:00:00Z");
    EXPECT_EQ(meta.status, "FEKR");
    EXPECT_DOUBLE_EQ(meta.coverage, 0.886905);
    EXPECT_EQ(meta.iterations, 3);
    EXPECT_EQ(meta.timestamp, "2026-08-16T00:00:00Z");
}

TEST(Fekr, FormatPctTrimsTrailingZeros) {
    EXPECT_EQ(format_pct(80.0), "80");
    EXPECT_EQ(format_pct(56.25), "56.25");
    EXPECT_EQ(format_pct(46.9697), "46.9697");
    EXPECT_EQ(format_pct(92.5926), "92.5926");
    EXPECT_EQ(format_pct(100.0), "100");
    EXPECT_EQ(format_pct(0.0), "0");
    EXPECT_EQ(format_pct(33.33330001), "33.3333");
}

TEST(Fekr, ExportCarriesProvenanceAndRoundTrips) {
    Graph g = fixture_graph();
    Decision good;
    good.value = Satisfaction::satisfactory;
    good.coverage = 0.886905;
    FekrMetadata meta = make_fekr_metadata(good, 3, "2026-08-16T12:00:00Z");

    std::string doc = export_fekr(g, meta);
    EXPECT_NE(doc.find("88.6905"), std::string::npos);

    Graph exported = parse_turtle(doc);
    Term header = Term::iri("http://example.org/epic");
    auto literal_of = [&](const char* prop) {
        auto hits = exported.match(header, Term::iri(prop), std::nullopt);
        EXPECT_EQ(hits.size(), 1u);
        return hits.empty() ? Term::literal("") : hits.front().object;
    };
    EXPECT_EQ(literal_of(vocab::genome_coverage_percent),
              Term::literal("88.6905", xsd::decimal_type));
    EXPECT_EQ(literal_of(vocab::genome_iteration_count), Term::literal("3", xsd::integer_type));
    EXPECT_EQ(literal_of(vocab::genome_exported_at),
              Term::literal("2026-08-16T12:00:00Z", std::string(vocab::xsd_ns) + "dateTime"));

    // Strip the three provenance triples: what remains is the input graph.
    for (const char* prop : {vocab::genome_coverage_percent, vocab::genome_iteration_count,
                             vocab::genome_exported_at})
        for (const auto& t : exported.match(header, Term::iri(prop), std::nullopt))
            exported.erase(t);
    EXPECT_TRUE(graph_equal(exported, g));
}

TEST(Fekr, ExportSynthesizesHeaderWhenMissing) {
    Graph g = parse_turtle("@prefix : <http://e/> .\n:a :p :b .\n");
    Decision good;
    good.value = Satisfaction::satisfactory;
    good.coverage = 0.925926;
    std::string doc = export_fekr(g, make_fekr_metadata(good, 2, "2026-08-16T00:00:00Z"));

    Graph exported = parse_turtle(doc);
    Term header = Term::iri("urn:genome-kit:fekr");
    EXPECT_TRUE(exported.contains(Triple(header, vocab::type(), Term::iri(vocab::owl_ontology))));
    EXPECT_EQ(exported.match(header, Term::iri(vocab::genome_coverage_percent), std::nullopt).size(),
              1u);

    FekrMetadata tampered = make_fekr_metadata(good, 2, "t");
    tampered.status = "DRAFT";
    EXPECT_THROW(export_fekr(g, tampered), std::runtime_error);
}

}  // namespace
