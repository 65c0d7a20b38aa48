#include <doctest.h>
#include <algorithm>

#include <random>
#include <sstream>

#include "frauddet/evaluate.hpp"
#include "support/synthetic.hpp"

using namespace frauddet;

TEST_CASE("stratified folds partition the data evenly") {
    const Dataset data = testsupport::imbalanced_gaussians(100, 0.3, 2.0, 2, 1);
    const auto folds = stratified_folds(data.labels, 10, 5);
    REQUIRE(folds.size() == 10);
    std::vector<bool> seen(100, false);
    for (const auto& fold : folds) {
        CHECK(fold.size() == 10);
        for (std::size_t i : fold) {
            CHECK_FALSE(seen[i]);
            seen[i] = true;
        }
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
}

TEST_CASE("fold sizes and class counts stay within one") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<std::size_t> n0_dist(20, 200), n1_dist(7, 60);
        const std::size_t n0 = n0_dist(rng), n1 = n1_dist(rng);
        std::vector<int> labels(n0, 0);
        labels.insert(labels.end(), n1, 1);
        std::shuffle(labels.begin(), labels.end(), rng);

        const std::size_t folds = 2 + trial % 6;
        const auto assignment = stratified_folds(labels, folds, trial);

        std::vector<std::size_t> sizes, ones;
        for (const auto& fold : assignment) {
            sizes.push_back(fold.size());
            std::size_t one = 0;
            for (std::size_t i : fold) one += labels[i] == 1;
            ones.push_back(one);
        }
        const auto [min_size, max_size] = std::minmax_element(sizes.begin(), sizes.end());
        CHECK(*max_size - *min_size <= 1);
        const auto [min_one, max_one] = std::minmax_element(ones.begin(), ones.end());
        CHECK(*max_one - *min_one <= 1);
    }
}

TEST_CASE("stratified folds reject classes smaller than the fold count") {
    std::vector<int> labels(30, 0);
    labels[0] = labels[1] = 1;
    CHECK_THROWS_AS(stratified_folds(labels, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(stratified_folds(labels, 1, 1), std::invalid_argument);
}

TEST_CASE("kfold on a mirror-symmetric dataset gives identical folds") {
    // Two interleaved mirror-image blocks and a distance-based learner: with
    // folds = 2, each training half predicts the held half identically.
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int rep = 0; rep < 2; ++rep)
        for (int i = 0; i < 12; ++i) {
            const int y = i % 2;
            rows.push_back({static_cast<double>(i), y == 1 ? 10.0 : -10.0});
            labels.push_back(y);
        }
    const Dataset data = testsupport::to_dataset(rows, labels);

    ModelSpec spec = spec_from_acronym("KNN");
    spec.hyperparameters["k"] = 1;
    EvalOptions options;
    options.rebalance_classical = false;
    const KFoldResult result = kfold_evaluate(spec, data, 2, 3, options);
    REQUIRE(result.fold_rows.size() == 2);
    CHECK(*result.fold_rows[0].acc == *result.fold_rows[1].acc);
    CHECK(*result.fold_rows[0].sens == *result.fold_rows[1].sens);
}

TEST_CASE("kfold aggregate pools fold confusions") {
    const Dataset data = testsupport::imbalanced_gaussians(150, 0.2, 2.0, 2, 9);
    ModelSpec spec = spec_from_acronym("LR");
    const KFoldResult result = kfold_evaluate(spec, data, 5, 17);
    REQUIRE(result.fold_counts.size() == 5);
    ConfusionCounts sum;
    for (const ConfusionCounts& c : result.fold_counts) sum += c;
    CHECK(sum.tp == result.pooled.tp);
    CHECK(sum.tn == result.pooled.tn);
    CHECK(sum.fp == result.pooled.fp);
    CHECK(sum.fn == result.pooled.fn);
    CHECK(result.pooled.total() == data.size());
    const MetricsRow expected = metrics(sum);
    CHECK(*result.aggregate.acc == *expected.acc);
}

TEST_CASE("kfold accepts ensemble and mixed targets") {
    const Dataset data = testsupport::imbalanced_gaussians(120, 0.25, 2.5, 2, 30);

    EnsembleTemplate ensemble;
    ensemble.rule = AggregationRule::OrLogic;
    ensemble.members = {spec_from_acronym("KNN"), spec_from_acronym("NB")};
    const KFoldResult e = kfold_evaluate(ensemble, data, 4, 8);
    CHECK(e.pooled.total() == data.size());

    MixedTemplate mixed;
    mixed.k = 2;
    mixed.predictor = spec_from_acronym("KNN");
    const KFoldResult m = kfold_evaluate(mixed, data, 4, 8);
    CHECK(m.pooled.total() == data.size());
}

TEST_CASE("kfold rows carry the per-fold breakdown into the CSV") {
    const Dataset data = testsupport::imbalanced_gaussians(100, 0.3, 2.5, 2, 61);
    ModelSpec spec = spec_from_acronym("KNN");
    spec.hyperparameters["k"] = 3;
    const KFoldResult result = kfold_evaluate(spec, data, 5, 2);
    const ReportRow row = kfold_report_row("KNN", result);
    CHECK(row.fold_metrics.size() == 5);

    std::ostringstream out;
    write_report_csv(out, build_report({row}));
    const std::string text = out.str();
    CHECK(text.find("KNN,") != std::string::npos);
    CHECK(text.find("KNN[fold 1],") != std::string::npos);
    CHECK(text.find("KNN[fold 5],") != std::string::npos);
}

TEST_CASE("holdout_search returns the single grid point unchanged") {
    const Dataset data = testsupport::two_blob_classes(60, 5.0, 0.6, 12);
    ModelSpec tmpl = spec_from_acronym("KNN");
    const HyperGrid grid = {{"k", {3.0}}};
    const SearchResult result = holdout_search(grid, tmpl, data, 0.3, 5);
    CHECK(result.best.param("k") == 3.0);
    CHECK(result.candidates.size() == 1);
    CHECK(result.best_f1.has_value());

    CHECK_THROWS_AS(holdout_search({}, tmpl, data, 0.3, 5), std::invalid_argument);
}

TEST_CASE("holdout_search prefers k = 1 over majority-vote-sized K") {
    // planted blobs, n = 600 with a 5:1 class skew: K = 500 reaches far past
    // the fraud blob and votes the global majority, so F1 collapses
    std::mt19937_64 rng(23);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    testsupport::add_blob(rows, labels, {0.0, 0.0}, 0.7, 500, 0, rng);
    testsupport::add_blob(rows, labels, {8.0, 8.0}, 0.7, 100, 1, rng);
    const Dataset data = testsupport::to_dataset(rows, labels);
    ModelSpec tmpl = spec_from_acronym("KNN");
    const HyperGrid grid = {{"k", {1.0, 500.0}}};
    EvalOptions options;
    options.rebalance_classical = false;
    const SearchResult result = holdout_search(grid, tmpl, data, 0.1, 31, options);
    CHECK(result.best.param("k") == 1.0);
    REQUIRE(result.candidates.size() == 2);
    REQUIRE(result.candidates[0].f1.has_value());
    CHECK(*result.candidates[0].f1 > result.candidates[1].f1.value_or(-1.0));
}

TEST_CASE("holdout_search result equals the max over re-evaluated candidates") {
    const Dataset data = testsupport::imbalanced_gaussians(250, 0.3, 1.2, 3, 44);
    ModelSpec tmpl = spec_from_acronym("GBT");
    tmpl.seed = 4;
    const HyperGrid grid = {{"rounds", {5.0, 20.0}}, {"depth", {1.0, 3.0}}};
    const SearchResult result = holdout_search(grid, tmpl, data, 0.25, 77);
    REQUIRE(result.candidates.size() == 4);

    // grid order: earlier keys vary slowest (depth, then rounds)
    CHECK(result.candidates[0].spec.param("depth") == 1.0);
    CHECK(result.candidates[0].spec.param("rounds") == 5.0);
    CHECK(result.candidates[1].spec.param("rounds") == 20.0);

    double best = -1.0;
    for (const SearchCandidate& candidate : result.candidates)
        if (candidate.f1) best = std::max(best, *candidate.f1);
    CHECK(result.best_f1.has_value());
    CHECK(*result.best_f1 == best);

    // re-running reproduces the same choice bit for bit
    const SearchResult again = holdout_search(grid, tmpl, data, 0.25, 77);
    CHECK(again.best == result.best);
    CHECK(again.best_f1 == result.best_f1);
}
