#include <gtest/gtest.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "genome/cq.hpp"
#include "genome/enrich.hpp"
#include "genome/graph.hpp"
#include "genome/kr_template.hpp"
#include "genome/lint.hpp"
#include "genome/populate.hpp"
#include "genome/schema_view.hpp"
#include "genome/stats.hpp"
#include "genome/turtle.hpp"
#include "genome/vocab.hpp"
#include "oracles.hpp"

using namespace genome;

namespace {

// Prints the per-criterion verdict line when the test body ends.
class Criterion {
  public:
    Criterion(int number, const char* label) : number_(number), label_(label) {
        start_ = std::chrono::steady_clock::now();
    }
    ~Criterion() {
        double ms = elapsed_ms();
        std::printf("criterion %d (%s): %s [%.0f ms]\n", number_, label_,
                    ::testing::Test::HasFailure() ? "FAIL" : "PASS", ms);
        std::fflush(stdout);
    }
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

  private:
    int number_;
    const char* label_;
    std::chrono::steady_clock::time_point start_;
};

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(GENOME_FIXTURE_DIR) + "/" + name, std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Graph load_fixture(const std::string& name) { return parse_turtle(slurp(name)); }

std::vector<Cq> fixture_corpus() { return dedup_corpus(parse_cq_corpus(slurp("cq_corpus.tsv"))); }

RelationshipMatrix fixture_matrix() {
    return parse_relationship_matrix(slurp("relationship_matrix.txt"));
}

void expect_row(const CoverageRow& r, long long asked, long long repeats, long long unique,
                long long answered, double pct, long long unanswered) {
    EXPECT_EQ(r.asked, asked) << r.asker;
    EXPECT_EQ(r.repeats, repeats) << r.asker;
    EXPECT_EQ(r.unique, unique) << r.asker;
    EXPECT_EQ(r.answered, answered) << r.asker;
    EXPECT_EQ(r.pct, pct) << r.asker;
    EXPECT_EQ(r.unanswered, unanswered) << r.asker;
}

long long answered_count(const Graph& g, const std::vector<Cq>& corpus) {
    long long n = 0;
    for (const auto& cq : corpus)
        if (cq.pattern && !eval_pattern(g, *cq.pattern).empty()) ++n;
    return n;
}

TEST(Acceptance, BaselineCoverageArithmetic) {
    Criterion c(1, "baseline coverage arithmetic");
    CoverageTable t = build_coverage_table({{"MP", 67, 1, 31},
                                            {"KPT", 37, 5, 18},
                                            {"AP", 23, 1, 8},
                                            {"RPU", 17, 3, 5},
                                            {"RA", 20, 1, 7},
                                            {"KMP", 19, 2, 8},
                                            {"VKM", 20, 2, 10}},
                                           12);
    ASSERT_EQ(t.rows.size(), 7u);
    expect_row(t.rows[0], 67, 1, 66, 31, 46.9697, 35);
    expect_row(t.rows[1], 37, 5, 32, 18, 56.25, 14);
    expect_row(t.rows[2], 23, 1, 22, 8, 36.3636, 14);
    expect_row(t.rows[3], 17, 3, 14, 5, 35.7143, 9);
    expect_row(t.rows[4], 20, 1, 19, 7, 36.8421, 12);
    expect_row(t.rows[5], 19, 2, 17, 8, 47.0588, 9);
    expect_row(t.rows[6], 20, 2, 18, 10, 55.5556, 8);
    expect_row(t.total, 203, 15, 188, 87, 46.2766, 101);
    EXPECT_EQ(t.descriptive_count, 12);
    expect_row(t.considered, 191, 15, 176, 87, 49.4318, 89);
    EXPECT_LT(c.elapsed_ms(), 1000.0);
}

TEST(Acceptance, EnrichedCoverageArithmetic) {
    Criterion c(2, "enriched coverage arithmetic");
    CoverageTable t = build_coverage_table({{"MP", 65, 5, 48},
                                            {"KPT", 39, 3, 29},
                                            {"AP", 24, 2, 17},
                                            {"RPU", 19, 2, 14},
                                            {"RA", 18, 4, 11},
                                            {"KMP", 17, 3, 13},
                                            {"VKM", 21, 2, 17}},
                                           14);
    ASSERT_EQ(t.rows.size(), 7u);
    expect_row(t.rows[0], 65, 5, 60, 48, 80.0, 12);
    expect_row(t.rows[1], 39, 3, 36, 29, 80.5556, 7);
    expect_row(t.rows[2], 24, 2, 22, 17, 77.2727, 5);
    expect_row(t.rows[3], 19, 2, 17, 14, 82.3529, 3);
    expect_row(t.rows[4], 18, 4, 14, 11, 78.5714, 3);
    expect_row(t.rows[5], 17, 3, 14, 13, 92.8571, 1);
    expect_row(t.rows[6], 21, 2, 19, 17, 89.4737, 2);
    expect_row(t.total, 203, 21, 182, 149, 81.8681, 33);
    EXPECT_EQ(t.descriptive_count, 14);
    expect_row(t.considered, 189, 21, 168, 149, 88.6905, 19);
    EXPECT_LT(c.elapsed_ms(), 1000.0);
}

TEST(Acceptance, DeskScaleEnrichmentTrajectory) {
    Criterion c(3, "desk-scale enrichment trajectory");
    Graph g = load_fixture("mini_mahabharata.ttl");
    std::vector<Cq> corpus = fixture_corpus();

    Decision baseline = decide_satisfaction(evaluate_corpus(g, corpus), 0.30, 0.85);
    EXPECT_EQ(baseline.value, Satisfaction::needs_enrichment);

    IterateConfig cfg;
    IterateResult result = run_iteration(
        g, corpus, fixture_matrix(),
        {load_patch_dir(std::string(GENOME_FIXTURE_DIR) + "/patches/external")}, cfg);
    EXPECT_EQ(result.final_decision.value, Satisfaction::satisfactory);
    EXPECT_GT(result.final_decision.coverage, 0.85);
    ASSERT_EQ(result.records.size(), 2u);
    ASSERT_EQ(result.records[0].patches_applied.size(), 2u);

    FekrMetadata meta = make_fekr_metadata(result.final_decision,
                                           static_cast<int>(result.records.size()),
                                           "2026-08-16T00:00:00Z");
    std::string doc = export_fekr(g, meta);
    EXPECT_NE(doc.find("genome:coveragePercent"), std::string::npos);
    EXPECT_NE(doc.find("92.5926"), std::string::npos);
    EXPECT_LT(c.elapsed_ms(), 2000.0);
}

TEST(Acceptance, LintPrecisionOnSeededDefects) {
    Criterion c(4, "lint precision on seeded defects");
    RelationshipMatrix matrix = fixture_matrix();

    LintReport seeded = run_lint(build_schema_view(load_fixture("seeded_defects.ttl")), matrix, {});
    std::multiset<std::pair<std::string, std::string>> defects;
    for (const auto& f : seeded.findings)
        if (f.severity != Severity::info) defects.emplace(f.rule_id, f.subject.local_name());
    std::multiset<std::pair<std::string, std::string>> expected = {
        {"DR01", "commands"},  {"DR01", "protects"}, {"DR01", "ridesWith"}, {"DR01", "servesAt"},
        {"ML01", "husbandOf"}, {"ML01", "wifeOf"},   {"PN01", "Pandavas"},  {"RG01", "Person"}};
    EXPECT_EQ(defects, expected);

    LintReport clean = run_lint(build_schema_view(load_fixture("clean.ttl")), matrix, {});
    EXPECT_EQ(clean.count(Severity::error), 0);
}

TEST(Acceptance, PatternEvaluationMatchesBruteForce) {
    Criterion c(5, "pattern evaluation matches brute force");
    std::mt19937 rng(424242);
    auto e = [](const std::string& l) { return Term::iri("http://a/" + l); };
    std::vector<Term> nodes, preds;
    for (int i = 0; i < 10; ++i) nodes.push_back(e("n" + std::to_string(i)));
    for (int i = 0; i < 4; ++i) preds.push_back(e("p" + std::to_string(i)));
    std::vector<Term> lits = {Term::literal("x"), Term::literal("y"), Term::literal("z")};
    std::vector<std::string> vars = {"a", "b", "c"};
    auto pick = [&](const auto& pool) { return pool[rng() % pool.size()]; };

    for (int round = 0; round < 100; ++round) {
        Graph g;
        int triples = 50 + static_cast<int>(rng() % 151);
        for (int i = 0; i < triples; ++i) {
            Term o = rng() % 4 == 0 ? pick(lits) : pick(nodes);
            g.insert(Triple(pick(nodes), pick(preds), o));
        }
        ASSERT_LE(g.size(), 200u);

        auto slot = [&](bool allow_lit) -> PatternSlot {
            if (rng() % 5 < 2) return PatternSlot::variable(pick(vars));
            if (allow_lit && rng() % 4 == 0) return PatternSlot::ground(pick(lits));
            if (rng() % 3 == 0) return PatternSlot::ground(pick(preds));
            return PatternSlot::ground(pick(nodes));
        };
        Bgp q;
        int npat = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < npat; ++i) q.patterns.push_back({slot(false), slot(false), slot(true)});

        ASSERT_EQ(eval_pattern(g, q), oracles::brute_force_bgp(g, q)) << "round " << round;
    }
    EXPECT_LT(c.elapsed_ms(), 10000.0);
}

TEST(Acceptance, StatisticalReferenceAgreement) {
    Criterion c(6, "statistical reference agreement");
    constexpr double kTol = 1e-9;
    auto check = [&](const std::vector<double>& a, const std::vector<double>& b, TTestMode mode,
                     double t, double p) {
        TTestResult r = significance_test(a, b, mode);
        EXPECT_NEAR(r.t, t, kTol);
        EXPECT_NEAR(r.p, p, kTol);
        EXPECT_FALSE(r.degenerate);
    };

    check({1, 2, 3, 4, 5}, {2, 4, 6, 8, 10}, TTestMode::welch, -1.8973665961010275,
          0.10753119493062718);
    check({1, 2, 3, 4, 5}, {2, 4, 6, 8, 10}, TTestMode::paired, -4.242640687119285,
          0.013235599563682695);
    check({10.1, 10.2, 9.9, 10.0}, {10.0, 10.1, 10.2, 9.8}, TTestMode::welch, 0.23354968324844447,
          0.8236578021069945);
    check({10.1, 10.2, 9.9, 10.0}, {10.0, 10.1, 10.2, 9.8}, TTestMode::paired, 0.22549380840084865,
          0.8360832258079627);
    check({1e-7, 2e-7, 3e-7}, {4e-7, 5e-7, 6e-7}, TTestMode::welch, -3.6742346141747677,
          0.021311641128756713);
    check({3, 5, 7, 9}, {4, 4, 8, 10}, TTestMode::welch, -0.2526455763199557, 0.8091561082881229);
    check({3, 5, 7, 9}, {4, 4, 8, 10}, TTestMode::paired, -1.0, 0.39100221895577053);
    check({12.5, 14.0, 13.1, 12.8, 13.9, 14.2}, {11.9, 13.5, 12.7, 12.6, 13.2, 13.8},
          TTestMode::welch, 1.1566693386808524, 0.2743108808131678);
    check({12.5, 14.0, 13.1, 12.8, 13.9, 14.2}, {11.9, 13.5, 12.7, 12.6, 13.2, 13.8},
          TTestMode::paired, 6.527533657682199, 0.0012621617796234846);
    check({1, 2, 3, 4, 5, 6}, {10, 20, 30}, TTestMode::welch, -2.833200844809105,
          0.10124973055841663);

    std::vector<double> before = {46.9697, 56.25, 36.3636, 35.7143, 36.8421, 47.0588, 55.5556};
    std::vector<double> after = {80.0, 80.5556, 77.2727, 82.3529, 78.5714, 92.8571, 89.4737};
    TTestResult welch = significance_test(before, after, TTestMode::welch);
    TTestResult paired = significance_test(before, after, TTestMode::paired);
    EXPECT_NEAR(welch.t, -9.453319508779114, kTol);
    EXPECT_NEAR(welch.p, 1.976514264456542e-06, kTol);
    EXPECT_NEAR(paired.t, -12.539028228163437, kTol);
    EXPECT_NEAR(paired.p, 1.5740017764001596e-05, kTol);
    std::printf("note: the methodology's reported significance (t=-5.40, p=0.00083) leaves its "
                "input sample unspecified and cannot be recomputed; the coverage vectors give\n");
    std::printf("note: welch t=%.6f p=%.3e, paired t=%.6f p=%.3e\n", welch.t, welch.p, paired.t,
                paired.p);

    TTestResult same = significance_test({5, 6, 7}, {5, 6, 7}, TTestMode::welch);
    EXPECT_EQ(same.t, 0.0);
    EXPECT_EQ(same.p, 1.0);
}

TEST(Acceptance, RoundTripsAndIdempotence) {
    Criterion c(7, "round-trips and idempotence");
    namespace fs = std::filesystem;
    int round_tripped = 0;
    for (const auto& entry : fs::recursive_directory_iterator(GENOME_FIXTURE_DIR)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".ttl") continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        Graph parsed = parse_turtle(buf.str());
        Graph reparsed = parse_turtle(serialize_turtle(parsed));
        EXPECT_TRUE(graph_equal(parsed, reparsed)) << entry.path();
        ++round_tripped;
    }
    EXPECT_GE(round_tripped, 5);

    KrTemplate kr = parse_kr_template(slurp("kr_template.csv"));
    ASSERT_TRUE(kr.errors.empty());
    Graph populated;
    PopulateConfig pcfg;
    pcfg.base_namespace = "http://example.org/fig2#";
    populate_graph(populated, kr.rows, pcfg);
    PopulationReport second = populate_graph(populated, kr.rows, pcfg);
    EXPECT_EQ(second.individuals_created, 0);
    EXPECT_EQ(second.assertions_added, 0);

    Patch external = load_patch_dir(std::string(GENOME_FIXTURE_DIR) + "/patches/external");
    Graph once = load_fixture("mini_mahabharata.ttl");
    apply_patch(once, external);
    Graph twice = load_fixture("mini_mahabharata.ttl");
    apply_patch(twice, external);
    apply_patch(twice, external);
    EXPECT_TRUE(graph_equal(once, twice));

    Graph g = load_fixture("mini_mahabharata.ttl");
    std::vector<Cq> corpus = fixture_corpus();
    std::vector<Term> subjects, predicates, objects;
    for (const auto& t : g) {
        subjects.push_back(t.subject);
        predicates.push_back(t.predicate);
        if (!t.object.is_literal()) objects.push_back(t.object);
    }
    std::mt19937 rng(7171);
    auto pick = [&](const auto& pool) { return pool[rng() % pool.size()]; };
    long long answered = answered_count(g, corpus);
    for (int round = 0; round < 50; ++round) {
        Patch p;
        int n = 1 + static_cast<int>(rng() % 6);
        for (int i = 0; i < n; ++i)
            p.additions.insert(Triple(pick(subjects), pick(predicates), pick(objects)));
        apply_patch(g, p);
        long long now = answered_count(g, corpus);
        ASSERT_GE(now, answered) << "round " << round;
        answered = now;
    }
}

TEST(Acceptance, TemplatePopulationAssertionSet) {
    Criterion c(8, "template population assertion set");
    const std::string ns = "http://example.org/fig2#";
    auto n = [&](const std::string& local) { return Term::iri(ns + local); };
    Term character = Term::iri("http://genome-kit.org/ns#Character");
    Term type = vocab::type();
    Term obj_prop = Term::iri(vocab::owl_object_property);
    Term primary_def = Term::iri(vocab::genome_primary_definition);

    KrTemplate kr = parse_kr_template(slurp("kr_template.csv"));
    ASSERT_TRUE(kr.errors.empty());
    ASSERT_EQ(kr.rows.size(), 6u);

    Graph g;
    PopulateConfig cfg;
    cfg.base_namespace = ns;
    PopulationReport report = populate_graph(g, kr.rows, cfg);
    EXPECT_EQ(report.individuals_created, 16);
    EXPECT_EQ(report.assertions_added, 38);

    Graph expected;
    expected.insert(character, type, Term::iri(vocab::owl_class));
    for (const char* p : {"kingOf", "sonOf", "performed", "wifeOf", "daughterOf", "teacherOf",
                          "killed", "fatherOf", "brotherOf", "killedBy"})
        expected.insert(n(p), type, obj_prop);

    expected.insert(n("Dhritarashtra"), type, character);
    expected.insert(n("Dhritarashtra"), n("kingOf"), n("Hastinapur"));
    expected.insert(n("Dhritarashtra"), primary_def, Term::literal("kingOf Hastinapur"));
    expected.insert(n("Dhritarashtra"), n("sonOf"), n("Vichitravirya"));
    expected.insert(n("Dhritarashtra"), n("sonOf"), n("Ambika"));
    expected.insert(n("Dhritarashtra"), n("performed"), n("VaishnavaSacrifice"));

    expected.insert(n("Draupadi"), type, character);
    expected.insert(n("Draupadi"), n("wifeOf"), n("Pandavas"));
    expected.insert(n("Draupadi"), primary_def, Term::literal("wifeOf Pandavas"));
    expected.insert(n("Draupadi"), n("daughterOf"), n("Drupada"));

    expected.insert(n("Drona"), type, character);
    expected.insert(n("Drona"), n("teacherOf"), n("Kauravas"));
    expected.insert(n("Drona"), n("teacherOf"), n("Pandavas"));
    expected.insert(n("Drona"), primary_def, Term::literal("teacherOf Kauravas and Pandavas"));
    expected.insert(n("Drona"), n("killed"), n("Abhimanyu"));

    expected.insert(n("Drupada"), type, character);
    expected.insert(n("Drupada"), n("fatherOf"), n("Draupadi"));
    expected.insert(n("Drupada"), primary_def, Term::literal("fatherOf Draupadi"));
    expected.insert(n("Drupada"), n("kingOf"), n("Panchala"));

    expected.insert(n("Duhsasana"), type, character);
    expected.insert(n("Duhsasana"), n("brotherOf"), n("Duryodhana"));
    expected.insert(n("Duhsasana"), primary_def, Term::literal("brotherOf Duryodhana"));
    expected.insert(n("Duhsasana"), n("killedBy"), n("Bhima"));

    expected.insert(n("Durdhara"), type, character);
    expected.insert(n("Durdhara"), n("brotherOf"), n("Duryodhana"));
    expected.insert(n("Durdhara"), primary_def, Term::literal("brotherOf Duryodhana"));
    expected.insert(n("Durdhara"), n("killedBy"), n("Bhima"));

    EXPECT_EQ(expected.size(), 38u);
    EXPECT_TRUE(graph_equal(g, expected));
    EXPECT_TRUE(g.contains(Triple(n("Dhritarashtra"), n("sonOf"), n("Vichitravirya"))));
    EXPECT_TRUE(g.contains(Triple(n("Dhritarashtra"), n("sonOf"), n("Ambika"))));
}

}  // namespace
