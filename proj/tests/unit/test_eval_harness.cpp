#include "stmtsim/benchmark.hpp"
#include "stmtsim/metrics.hpp"
#include "stmtsim/report.hpp"
#include "stmtsim/scoring.hpp"

#include "confusion_tables.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

using namespace stmtsim;

namespace {

std::string record_line(const std::string &id, const std::string &l, const std::string &p, const std::string &ann)
{
    return R"({"id":")" + id + R"(","source":"s","nl":"n","label_stmt":")" + l + R"(","pred_stmt":")" + p
           + R"(","annotation":")" + ann + "\"}\n";
}

// Kappa from raw agreement counts, written independently of compute_metrics.
double kappa_by_counting(const ConfusionMatrix &cm)
{
    const double n = static_cast<double>(cm.total());
    const double agree = static_cast<double>(cm.tp + cm.tn) / n;
    const double pred_true = static_cast<double>(cm.tp + cm.fp) / n;
    const double truth_true = static_cast<double>(cm.tp + cm.fn) / n;
    const double chance = pred_true * truth_true + (1 - pred_true) * (1 - truth_true);
    return chance == 1 ? 0 : (agree - chance) / (1 - chance);
}

} // namespace

TEST_CASE("binarization")
{
    using L = AnnotationLabel;
    using P = BinarizationPolicy;
    CHECK(binarize(L::B, P::Strict));
    CHECK_FALSE(binarize(L::D, P::Strict));
    CHECK(binarize(L::D, P::HumanInLoop));
    CHECK_FALSE(binarize(L::E, P::HumanInLoop));
    for (auto l : {L::A, L::B, L::C, L::D, L::E})
        if (binarize(l, P::Strict))
            CHECK(binarize(l, P::HumanInLoop));
    CHECK(parse_annotation("c") == L::C);
    CHECK_FALSE(parse_annotation("f"));
    CHECK(parse_policy("human_in_loop") == P::HumanInLoop);
}

TEST_CASE("benchmark loading")
{
    auto two = parse_benchmark(record_line("1", "a = b", "b = a", "a") + "\n" + record_line("2", "x", "y", "e"));
    REQUIRE(two.size() == 2);
    CHECK(two[1].annotation == AnnotationLabel::E);

    std::string missing = record_line("1", "a", "b", "a") + R"({"id":"2","source":"s","nl":"n","label_stmt":"a","pred_stmt":"b"})";
    try {
        parse_benchmark(missing);
        FAIL("expected FormatError");
    } catch (const FormatError &e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_benchmark(record_line("1", "a", "b", "a") + record_line("1", "c", "d", "b")), DuplicateIdError);
    CHECK_THROWS_AS(parse_benchmark(record_line("1", "", "b", "a")), FormatError);
    CHECK_THROWS_AS(parse_benchmark("{not json\n"), FormatError);
    CHECK_THROWS_AS(load_benchmark("/nonexistent/file.jsonl"), IoError);

    auto fixture = load_benchmark(STMTSIM_DATA_DIR "/fixture_benchmark.jsonl");
    CHECK(fixture.size() == 12);
    std::set<char> labels;
    for (const auto &r : fixture)
        labels.insert(annotation_char(r.annotation));
    CHECK(labels == std::set<char>{'a', 'b', 'c', 'd', 'e'});
}

TEST_CASE("metric arithmetic reproduces published rows")
{
    for (const auto &row : testing::kPublishedRows) {
        CAPTURE(row.benchmark);
        CAPTURE(row.metric);
        auto m = compute_metrics(row.cm);
        REQUIRE(m.precision);
        REQUIRE(m.recall);
        CHECK(std::abs(*m.precision * 100 - row.precision) <= 0.005);
        CHECK(std::abs(*m.recall * 100 - row.recall) <= 0.005);
        CHECK(std::abs(m.accuracy * 100 - row.accuracy) <= 0.005);
        CHECK(std::abs(m.kappa - row.kappa) <= 0.005);
    }
}

TEST_CASE("metric examples")
{
    auto perfect = compute_metrics({10, 10, 0, 0});
    CHECK(perfect.accuracy == 1.0);
    CHECK(perfect.kappa == 1.0);

    auto all_true = compute_metrics({80, 0, 71, 0});
    CHECK(all_true.kappa == 0.0);
    CHECK(*all_true.recall == 1.0);

    auto no_positive = compute_metrics({0, 5, 0, 3});
    CHECK_FALSE(no_positive.precision);
    CHECK(no_positive.recall == 0.0);
    CHECK_THROWS_AS(require_defined(no_positive), DegenerateError);
    CHECK(no_positive.kappa == 0.0);

    auto one_class = compute_metrics({4, 0, 0, 0});
    CHECK(one_class.kappa == 0.0);
    CHECK_THROWS_AS(compute_metrics({0, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("kappa stays within bounds and matches a counting formula")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        ConfusionMatrix cm{rng() % 30, rng() % 30, rng() % 30, rng() % 30};
        if (cm.total() == 0)
            continue;
        auto m = compute_metrics(cm);
        CHECK(m.kappa >= -1.0);
        CHECK(m.kappa <= 1.0);
        CHECK(std::abs(m.kappa - kappa_by_counting(cm)) < 1e-12);
        if (cm.tp + cm.fp == 0 || cm.tn + cm.fn == 0)
            CHECK(m.kappa == 0.0);
    }
}

TEST_CASE("threshold sweep examples")
{
    auto two = threshold_sweep({1, 0}, {true, false});
    REQUIRE(two.rows.size() == 3);
    CHECK(two.rows[0].threshold == -std::numeric_limits<double>::infinity());
    CHECK(two.rows[1].threshold == 0.5);
    CHECK(std::isinf(two.rows[2].threshold));
    REQUIRE(two.best_by_accuracy);
    CHECK(*two.best_by_accuracy == 1);
    CHECK(two.rows[1].metrics.accuracy == 1.0);
    CHECK(two.best_by_kappa == two.best_by_accuracy);

    auto flat = threshold_sweep({0.4, 0.4, 0.4}, {true, false, true});
    REQUIRE(flat.rows.size() == 2);
    CHECK(flat.rows[0].metrics.cm == ConfusionMatrix{2, 0, 1, 0});
    CHECK(flat.rows[1].metrics.cm == ConfusionMatrix{0, 1, 0, 2});

    auto same = threshold_sweep({0.1, 0.9}, {true, true});
    CHECK_FALSE(same.best_by_kappa);
    CHECK(same.best_by_accuracy);
    CHECK(*same.best_by_accuracy == 0);

    // accuracy 2/3 at -inf and at 0.5: the larger threshold wins
    auto tie = threshold_sweep({0.2, 0.4, 0.6}, {true, false, true});
    REQUIRE(tie.best_by_accuracy);
    CHECK(tie.rows[0].metrics.accuracy == tie.rows[2].metrics.accuracy);
    CHECK(tie.rows[*tie.best_by_accuracy].threshold == 0.5);

    CHECK_THROWS_AS(threshold_sweep({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(threshold_sweep({1}, {true, false}), std::invalid_argument);
}

TEST_CASE("sweep equals evaluation of every score partition")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 6;
        std::vector<double> scores(n);
        std::vector<bool> truths(n);
        for (std::size_t i = 0; i < n; ++i) {
            scores[i] = static_cast<double>(rng() % 5) / 4;
            truths[i] = rng() % 2;
        }
        auto sweep = threshold_sweep(scores, truths);
        // every "score >= s" partition, plus the empty one
        std::set<std::vector<bool>> partitions;
        for (double s : scores) {
            std::vector<bool> p(n);
            for (std::size_t i = 0; i < n; ++i)
                p[i] = scores[i] >= s;
            partitions.insert(p);
        }
        partitions.insert(std::vector<bool>(n, false));
        CHECK(sweep.rows.size() == partitions.size());
        for (std::size_t r = 0; r + 1 < sweep.rows.size(); ++r)
            CHECK(sweep.rows[r].threshold < sweep.rows[r + 1].threshold);
        std::set<std::vector<bool>> seen;
        for (const auto &row : sweep.rows) {
            std::vector<bool> p(n);
            for (std::size_t i = 0; i < n; ++i)
                p[i] = scores[i] >= row.threshold;
            seen.insert(p);
            // inserting a threshold just above this one never changes the matrix
            const double nudged = std::nextafter(row.threshold, std::numeric_limits<double>::infinity());
            if (std::isfinite(row.threshold))
                CHECK(confusion_at(scores, truths, nudged) == row.metrics.cm);
        }
        CHECK(seen == partitions);
        double best_acc = 0;
        for (const auto &row : sweep.rows)
            best_acc = std::max(best_acc, row.metrics.accuracy);
        CHECK(sweep.rows[*sweep.best_by_accuracy].metrics.accuracy == best_acc);
    }
}

TEST_CASE("scoring")
{
    auto records = parse_benchmark(record_line("same", "theorem t : 1 + 1 = 2 := by sorry", "theorem u : 1 + 1 = 2 := by sorry", "a")
                                   + record_line("comm", "a + b = c", "b + a = c", "a")
                                   + record_line("bad", "a ⊕ b", "a ⊕ c", "e"));
    ScoringOptions ted;
    ted.metric = ScoreMetric::Ted;
    auto t = score_dataset(records, ted);
    REQUIRE(t.size() == 3);
    CHECK(t[0].score == 1.0);
    CHECK(*t[1].score < 1.0);
    CHECK(t[2].degraded);
    CHECK(t[2].score);

    ScoringOptions trans;
    trans.budget.max_wall_time.reset();
    auto s = score_dataset(records, trans);
    CHECK(s[0].score == 1.0);
    CHECK(s[1].score == 1.0);
    CHECK(s[1].proved_equal);
    CHECK(s[2].degraded);

    std::map<std::string, double> ext{{"same", 0.9}, {"comm", 0.2}};
    ScoringOptions external;
    external.metric = ScoreMetric::External;
    external.external = &ext;
    auto e = score_dataset(records, external);
    CHECK(e[0].score == 0.9);
    CHECK_FALSE(e[2].score);
    CHECK_FALSE(e[2].error.empty());

    ScoringOptions bad;
    bad.budget.max_expanded_nodes = 0;
    CHECK_THROWS_AS(score_dataset(records, bad), BudgetError);

    auto scores = parse_external_scores("{\"id\":\"a\",\"score\":0.5}\n\n{\"id\":\"b\",\"score\":1}\n");
    CHECK(scores.size() == 2);
    CHECK_THROWS_AS(parse_external_scores("{\"id\":\"a\"}\n"), FormatError);
}

TEST_CASE("scoring does not depend on the job count")
{
    auto records = load_benchmark(STMTSIM_DATA_DIR "/fixture_benchmark.jsonl");
    ScoringOptions one;
    one.budget.max_wall_time.reset();
    one.budget.max_expanded_nodes = 500;
    ScoringOptions many = one;
    many.jobs = 8;
    std::vector<bool> truths;
    for (const auto &r : records)
        truths.push_back(binarize(r.annotation, BinarizationPolicy::Strict));
    CHECK(emit_scores(score_dataset(records, one), truths, ReportFormat::Json)
          == emit_scores(score_dataset(records, many), truths, ReportFormat::Json));
}

TEST_CASE("reports")
{
    auto m = compute_metrics({235, 59, 38, 41});
    auto csv = emit_report(m, ReportFormat::Csv);
    CHECK(csv.rfind("threshold,tp,tn,fp,fn,precision,recall,accuracy,kappa\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    CHECK(csv.find(",235,59,38,41,") != std::string::npos);

    auto sweep = threshold_sweep({0.2, 0.7, 0.7, 1.0}, {false, true, false, true});
    auto sweep_csv = emit_report(sweep, ReportFormat::Csv);
    CHECK(std::count(sweep_csv.begin(), sweep_csv.end(), '\n') == 1 + static_cast<long>(sweep.rows.size()));
    CHECK(sweep_csv.find("\n-inf,") != std::string::npos);
    CHECK(sweep_csv.find("\ninf,") != std::string::npos);
    CHECK(sweep_csv.find("n/a") != std::string::npos);

    auto json = emit_report(sweep, ReportFormat::Json);
    auto back = load_sweep_json(json);
    CHECK(emit_report(back, ReportFormat::Json) == json);
    CHECK(back.rows.size() == sweep.rows.size());
    CHECK(back.best_by_kappa == sweep.best_by_kappa);
    CHECK(back.rows[2].metrics.kappa == sweep.rows[2].metrics.kappa);

    std::vector<ScoreEntry> entries{{"x,1", 0.5, false, true, ""}, {"y", std::nullopt, false, false, "no \"score\""}};
    auto sc = emit_scores(entries, {true, false}, ReportFormat::Csv);
    CHECK(sc
          == "id,truth,score,degraded,proved,error\n\"x,1\",true,0.5,false,true,\n"
             "y,false,n/a,false,false,\"no \"\"score\"\"\"\n");
}
