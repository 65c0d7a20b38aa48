#include <doctest.h>
#include <algorithm>
#include <sstream>

#include <random>

#include "frauddet/metrics.hpp"
#include "frauddet/mixed.hpp"
#include "support/synthetic.hpp"

using namespace frauddet;

namespace {

/// Four separated blobs; fraud sits on a blob-specific side so per-cluster
/// rules differ.
Dataset clustered_fraud(std::size_t per_cluster, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 0.4);
    const double centers[4][2] = {{0, 0}, {10, 0}, {0, 10}, {10, 10}};
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int c = 0; c < 4; ++c) {
        for (std::size_t i = 0; i < per_cluster; ++i) {
            const bool fraud = i < per_cluster / 5;
            const double sign = c % 2 == 0 ? 1.0 : -1.0;
            rows.push_back({centers[c][0] + noise(rng) + (fraud ? sign * 1.5 : 0.0),
                            centers[c][1] + noise(rng)});
            labels.push_back(fraud);
        }
    }
    return testsupport::to_dataset(rows, labels);
}

}  // namespace

TEST_CASE("fit_mixed with k = 1 equals the flat pipeline") {
    const Dataset train = testsupport::imbalanced_gaussians(200, 0.2, 1.5, 3, 40);

    ModelSpec spec = spec_from_acronym("GBT");
    spec.seed = 99;
    spec.hyperparameters["rounds"] = 20;

    MixedOptions options;
    options.rebalance_classical = true;
    options.rebalance_seed = 1234;
    const MixedModel mixed = fit_mixed(train, 1, spec, 7, options);

    const Dataset rebalanced = rebalance(train, 1234);
    const auto flat = fit_classifier(spec, rebalanced);

    const Dataset probe = testsupport::imbalanced_gaussians(100, 0.2, 1.5, 3, 41);
    CHECK(predict_mixed(mixed, probe.features) == flat->predict(probe.features));
}

TEST_CASE("fit_mixed with k = 1 equals the flat pipeline for class-weighted models") {
    const Dataset train = testsupport::imbalanced_gaussians(150, 0.25, 1.5, 2, 50);
    ModelSpec spec = spec_from_acronym("LR-m");
    spec.seed = 5;
    const MixedModel mixed = fit_mixed(train, 1, spec, 3);
    const auto flat = fit_classifier(spec, train);
    const Dataset probe = testsupport::imbalanced_gaussians(60, 0.25, 1.5, 2, 51);
    CHECK(predict_mixed(mixed, probe.features) == flat->predict(probe.features));
}

TEST_CASE("single-class blob gets a constant predictor") {
    std::mt19937_64 rng(30);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    // blob A: all genuine; blob B: mixed classes
    testsupport::add_blob(rows, labels, {0.0, 0.0}, 0.3, 30, 0, rng);
    testsupport::add_blob(rows, labels, {8.0, 8.0}, 0.3, 20, 0, rng);
    testsupport::add_blob(rows, labels, {8.0, 8.0}, 0.3, 12, 1, rng);
    const Dataset train = testsupport::to_dataset(rows, labels);

    ModelSpec spec = spec_from_acronym("KNN");
    spec.hyperparameters["k"] = 3;
    const MixedModel model = fit_mixed(train, 2, spec, 77);

    const std::size_t blob_a = kmeans_assign_row(model.kmeans, std::vector<double>{0.0, 0.0});
    const std::size_t blob_b = kmeans_assign_row(model.kmeans, std::vector<double>{8.0, 8.0});
    REQUIRE(blob_a != blob_b);
    REQUIRE(model.clusters[blob_a].is_constant());
    CHECK(model.clusters[blob_a].constant->label == 0);
    CHECK(model.clusters[blob_a].constant->reason ==
          ConstantPredictor::Reason::SingleClassCluster);
    CHECK_FALSE(model.clusters[blob_b].is_constant());

    // any object routed to the constant cluster gets its label, whatever the
    // features look like
    const Matrix weird = Matrix::from_rows({{-2.0, 1.5}});
    CHECK(predict_mixed(model, weird) == std::vector<int>{0});
}

TEST_CASE("small clusters fall back to the majority label") {
    std::mt19937_64 rng(31);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    testsupport::add_blob(rows, labels, {0.0, 0.0}, 0.3, 40, 0, rng);
    testsupport::add_blob(rows, labels, {0.0, 0.0}, 0.3, 15, 1, rng);
    // distant 6-point blob with both classes, below the min size of 10
    testsupport::add_blob(rows, labels, {20.0, 20.0}, 0.1, 4, 1, rng);
    testsupport::add_blob(rows, labels, {20.0, 20.0}, 0.1, 2, 0, rng);
    const Dataset train = testsupport::to_dataset(rows, labels);

    ModelSpec spec = spec_from_acronym("NB");
    const MixedModel model = fit_mixed(train, 2, spec, 13);
    const std::size_t tiny =
        kmeans_assign_row(model.kmeans, std::vector<double>{20.0, 20.0});
    REQUIRE(model.clusters[tiny].is_constant());
    CHECK(model.clusters[tiny].constant->label == 1);
    CHECK(model.clusters[tiny].constant->reason == ConstantPredictor::Reason::BelowMinSize);
}

TEST_CASE("prediction covers every row exactly once and is deterministic") {
    const Dataset train = clustered_fraud(100, 3);
    ModelSpec spec = spec_from_acronym("KNN");
    spec.hyperparameters["k"] = 5;
    const MixedModel model = fit_mixed(train, 4, spec, 11);

    std::mt19937_64 rng(90);
    std::uniform_real_distribution<double> u(-2.0, 12.0);
    Matrix probes(1000, 2);
    for (std::size_t i = 0; i < probes.rows(); ++i) {
        probes(i, 0) = u(rng);
        probes(i, 1) = u(rng);
    }
    const auto first = predict_mixed(model, probes);
    CHECK(first.size() == probes.rows());
    for (int label : first) CHECK((label == 0 || label == 1));

    const MixedModel again = fit_mixed(train, 4, spec, 11);
    CHECK(predict_mixed(again, probes) == first);

    CHECK_THROWS_AS(predict_mixed(model, Matrix(3, 5, 0.0)), std::invalid_argument);
}

TEST_CASE("training partition covers each object once") {
    const Dataset train = clustered_fraud(60, 8);
    ModelSpec spec = spec_from_acronym("NB");
    const MixedModel model = fit_mixed(train, 4, spec, 2);
    std::size_t covered = 0;
    for (const ClusterPredictor& cluster : model.clusters) covered += cluster.train_size;
    CHECK(covered == train.size());
    CHECK(model.clusters.size() == 4);
}

TEST_CASE("CCK-OR inherits per-cluster sensitivity dominance") {
    const Dataset train = clustered_fraud(120, 17);
    const Dataset probe = clustered_fraud(80, 18);

    EnsembleTemplate ensemble;
    ensemble.rule = AggregationRule::OrLogic;
    for (const char* name : {"KNN", "LR", "NB"}) {
        ModelSpec member = spec_from_acronym(name);
        member.seed = 70;
        ensemble.members.push_back(member);
    }

    const MixedModel or_model = fit_mixed(train, 4, ensemble, 21);
    const auto or_predictions = predict_mixed(or_model, probe.features);

    const auto probe_assignment = kmeans_assign(or_model.kmeans, probe.features);
    for (std::size_t c = 0; c < 4; ++c) {
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < probe.size(); ++i)
            if (probe_assignment[i] == c) rows.push_back(i);
        if (rows.empty()) continue;
        std::vector<int> actual, joined;
        for (std::size_t i : rows) {
            actual.push_back(probe.labels[i]);
            joined.push_back(or_predictions[i]);
        }
        if (std::count(actual.begin(), actual.end(), 1) == 0) continue;
        const MetricsRow or_row = metrics(confusion(joined, actual));

        const ClusterPredictor& predictor = or_model.clusters[c];
        if (predictor.is_constant()) continue;
        for (const auto& member : predictor.models) {
            std::vector<int> member_votes;
            for (std::size_t i : rows)
                member_votes.push_back(member->predict_row(probe.features.row(i)));
            const MetricsRow member_row = metrics(confusion(member_votes, actual));
            CHECK(*or_row.sens >= *member_row.sens);
        }
    }
}

TEST_CASE("mixed summary CSV names each cluster") {
    const Dataset train = clustered_fraud(60, 5);
    ModelSpec spec = spec_from_acronym("KNN");
    spec.hyperparameters["k"] = 3;
    const MixedModel model = fit_mixed(train, 4, spec, 6);
    std::ostringstream out;
    write_mixed_summary(out, model);
    const std::string text = out.str();
    CHECK(text.rfind("cluster,size,fraud_count,predictor_kind\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 5);  // header + 4 clusters
}
