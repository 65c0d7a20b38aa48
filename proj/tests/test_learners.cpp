#include <doctest.h>
#include <algorithm>

#include <cmath>
#include <random>
#include <sstream>

#include "frauddet/classifier.hpp"
#include "frauddet/gradient_boosted_trees.hpp"
#include "frauddet/knn.hpp"
#include "frauddet/logistic_regression.hpp"
#include "frauddet/naive_bayes.hpp"
#include "frauddet/random_forest.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

using namespace frauddet;

TEST_CASE("compute_class_weights follows w_c = n / (2 n_c)") {
    std::vector<int> balanced(100);
    for (int i = 50; i < 100; ++i) balanced[i] = 1;
    const ClassWeights unit = compute_class_weights(balanced);
    CHECK(unit.w0 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(unit.w1 == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<int> ninety(100);
    for (int i = 90; i < 100; ++i) ninety[i] = 1;
    const ClassWeights skew = compute_class_weights(ninety);
    CHECK(skew.w0 == doctest::Approx(100.0 / 180.0).epsilon(1e-12));
    CHECK(skew.w1 == doctest::Approx(5.0).epsilon(1e-12));

    std::vector<int> extreme(1000);
    extreme[0] = 1;
    const ClassWeights heavy = compute_class_weights(extreme);
    CHECK(heavy.w0 == doctest::Approx(1000.0 / 1998.0).epsilon(1e-12));
    CHECK(heavy.w1 == doctest::Approx(500.0).epsilon(1e-12));

    CHECK_THROWS_AS(compute_class_weights({0, 0, 0}), std::invalid_argument);
}

TEST_CASE("class weight normalization n0 w0 + n1 w1 = n") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> count(1, 500);
    for (int trial = 0; trial < 50; ++trial) {
        const int n0 = count(rng), n1 = count(rng);
        std::vector<int> labels(n0, 0);
        labels.insert(labels.end(), n1, 1);
        const ClassWeights w = compute_class_weights(labels);
        CHECK(n0 * w.w0 + n1 * w.w1 == doctest::Approx(n0 + n1).epsilon(1e-9));
    }
}

TEST_CASE("ModelSpec validation and roster") {
    CHECK(default_roster().size() == 13);
    CHECK(default_roster().front().acronym() == "NB");
    CHECK(default_roster().back().acronym() == "MLP-l-m");

    ModelSpec nb_m = spec_from_acronym("NB");
    nb_m.variant = Variant::ClassWeighted;
    CHECK_THROWS_AS(nb_m.validate(), std::invalid_argument);

    ModelSpec knn = spec_from_acronym("KNN");
    knn.optimizer = MlpOptimizer::AdamSgd;
    CHECK_THROWS_AS(knn.validate(), std::invalid_argument);

    ModelSpec mlp = spec_from_acronym("MLP-A");
    mlp.optimizer.reset();
    CHECK_THROWS_AS(mlp.validate(), std::invalid_argument);

    ModelSpec bad_key = spec_from_acronym("KNN");
    bad_key.hyperparameters["gamma"] = 1.0;
    CHECK_THROWS_AS(bad_key.validate(), std::invalid_argument);

    CHECK_THROWS_AS(spec_from_acronym("SVM"), std::invalid_argument);
}

TEST_CASE("ModelSpec text block round-trips") {
    ModelSpec spec = spec_from_acronym("MLP-l-m");
    spec.seed = 77;
    spec.hyperparameters["hidden"] = 32;
    std::stringstream block;
    write_spec(block, spec);
    const ModelSpec back = read_spec(block);
    CHECK(back == spec);
}

TEST_CASE("fit_classifier rejects degenerate training sets") {
    const ModelSpec spec = spec_from_acronym("KNN");
    CHECK_THROWS_AS(fit_classifier(spec, Dataset{}), std::invalid_argument);
    const Dataset single_class = testsupport::to_dataset({{0.0}, {1.0}}, {0, 0});
    CHECK_THROWS_AS(fit_classifier(spec, single_class), std::invalid_argument);
}

TEST_CASE("KNN nearest neighbor basics") {
    const Dataset train = testsupport::to_dataset({{0, 0}, {1, 1}}, {0, 1});
    ModelSpec spec = spec_from_acronym("KNN");
    spec.hyperparameters["k"] = 1;
    const auto model = fit_classifier(spec, train);
    const Matrix query = Matrix::from_rows({{0.1, 0.1}});
    CHECK(model->predict(query) == std::vector<int>{0});

    // dimension mismatch and the empty matrix contract
    CHECK_THROWS_AS(model->predict(Matrix::from_rows({{1, 2, 3}})), std::invalid_argument);
    CHECK(model->predict(Matrix{}).empty());

    ModelSpec bad = spec;
    bad.hyperparameters["k"] = 3;  // k > n
    CHECK_THROWS_AS(fit_classifier(bad, train), std::invalid_argument);
}

TEST_CASE("KNN agrees with the exhaustive distance-sort oracle") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 30; ++i) {
        rows.push_back({u(rng), u(rng)});
        labels.push_back(i % 3 == 0);
    }
    const Dataset train = testsupport::to_dataset(rows, labels);

    for (std::size_t k : {1, 3, 5}) {
        ModelSpec spec = spec_from_acronym("KNN");
        spec.hyperparameters["k"] = static_cast<double>(k);
        const auto model = fit_classifier(spec, train);

        ModelSpec weighted_spec = spec_from_acronym("KNN-m");
        weighted_spec.hyperparameters["k"] = static_cast<double>(k);
        const auto weighted = fit_classifier(weighted_spec, train);
        const ClassWeights w = compute_class_weights(train.labels);

        for (int q = 0; q < 20; ++q) {
            const std::vector<double> query = {u(rng), u(rng)};
            const Matrix m = Matrix::from_rows({query});
            CHECK(model->predict(m)[0] ==
                  testsupport::knn_oracle(train.features, train.labels, query, k));
            CHECK(weighted->predict(m)[0] ==
                  testsupport::knn_oracle(train.features, train.labels, query, k, w));
        }
    }
}

TEST_CASE("KNN with K = n applies the vote rule globally") {
    // 18 genuine vs 12 fraud: classical majority is genuine everywhere;
    // weighted votes tie (n/2 each) and the tie resolves to fraud.
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 30; ++i) {
        rows.push_back({u(rng), u(rng)});
        labels.push_back(i < 12);
    }
    const Dataset train = testsupport::to_dataset(rows, labels);

    ModelSpec spec = spec_from_acronym("KNN");
    spec.hyperparameters["k"] = 30;
    const auto classical = fit_classifier(spec, train);

    ModelSpec weighted_spec = spec_from_acronym("KNN-m");
    weighted_spec.hyperparameters["k"] = 30;
    const auto weighted = fit_classifier(weighted_spec, train);

    const Matrix queries = Matrix::from_rows({{0.5, 0.5}, {0.0, 1.0}, {0.9, 0.1}});
    for (int label : classical->predict(queries)) CHECK(label == 0);
    for (int label : weighted->predict(queries)) CHECK(label == 1);
}

TEST_CASE("NB separates two distant Gaussians") {
    std::mt19937_64 rng(12);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    for (int i = 0; i < 50; ++i) {
        rows.push_back({noise(rng)});
        labels.push_back(0);
    }
    for (int i = 0; i < 50; ++i) {
        rows.push_back({10.0 + noise(rng)});
        labels.push_back(1);
    }
    const Dataset train = testsupport::to_dataset(rows, labels);
    const auto model = fit_classifier(spec_from_acronym("NB"), train);

    const Matrix query = Matrix::from_rows({{9.8}});
    CHECK(model->predict(query) == std::vector<int>{1});
    CHECK(model->score(query)[0] > 0.99);

    // cross-check the posterior against a hand-rolled Bayes computation on the
    // fitted parameters
    const auto& nb = dynamic_cast<const NaiveBayesClassifier&>(*model);
    auto log_lik = [&](int c, double x) {
        const double var = nb.variances()[c][0];
        const double diff = x - nb.means()[c][0];
        return -0.5 * (std::log(2.0 * std::acos(-1.0) * var) + diff * diff / var) +
               std::log(0.5);
    };
    const double l0 = log_lik(0, 9.8), l1 = log_lik(1, 9.8);
    const double posterior = std::exp(l1) / (std::exp(l0) + std::exp(l1));
    CHECK(model->score(query)[0] == doctest::Approx(posterior).epsilon(1e-9));
}

TEST_CASE("NB variance floor keeps constant features finite") {
    const Dataset train =
        testsupport::to_dataset({{1, 0}, {1, 1}, {1, 0}, {1, 1}}, {0, 1, 0, 1});
    const auto model = fit_classifier(spec_from_acronym("NB"), train);
    const auto scores = model->score(Matrix::from_rows({{1, 0.5}}));
    CHECK(std::isfinite(scores[0]));
}

TEST_CASE("LR reaches high accuracy on separable data") {
    const Dataset train = testsupport::separable_2d(200, 1.0, 9);
    const auto model = fit_classifier(spec_from_acronym("LR"), train);
    const std::vector<int> predicted = model->predict(train.features);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < train.size(); ++i)
        correct += predicted[i] == train.labels[i];
    const double accuracy = static_cast<double>(correct) / 200.0;

    // brute-force search over the 2-D coefficient grid: some linear rule
    // separates this data perfectly, and LR must get within a point of it
    double best_grid = 0.0;
    for (double w0 = -2.0; w0 <= 2.0; w0 += 0.25)
        for (double w1 = -2.0; w1 <= 2.0; w1 += 0.25)
            for (double b = -2.0; b <= 2.0; b += 0.25) {
                std::size_t hits = 0;
                for (std::size_t i = 0; i < train.size(); ++i) {
                    const double z =
                        w0 * train.features(i, 0) + w1 * train.features(i, 1) + b;
                    hits += (z >= 0.0 ? 1 : 0) == train.labels[i];
                }
                best_grid = std::max(best_grid, static_cast<double>(hits) / 200.0);
            }
    CHECK(best_grid == 1.0);
    CHECK(accuracy >= 0.99);
}

TEST_CASE("LR zero coefficients score one half") {
    const LogisticRegressionClassifier zero(spec_from_acronym("LR"), 2, {0.0, 0.0, 0.0});
    const auto scores = zero.score(Matrix::from_rows({{0.3, 0.7}, {5, -2}}));
    CHECK(scores[0] == 0.5);
    CHECK(scores[1] == 0.5);
}

TEST_CASE("LR objective trace is non-decreasing") {
    const Dataset train = testsupport::imbalanced_gaussians(300, 0.3, 1.0, 3, 6);
    for (const char* name : {"LR", "LR-m"}) {
        const auto model = fit_classifier(spec_from_acronym(name), train);
        const auto& lr = dynamic_cast<const LogisticRegressionClassifier&>(*model);
        REQUIRE(lr.objective_trace().size() > 1);
        for (std::size_t i = 1; i < lr.objective_trace().size(); ++i)
            CHECK(lr.objective_trace()[i] >= lr.objective_trace()[i - 1]);
    }
}

TEST_CASE("RF basics") {
    const Dataset train = testsupport::two_blob_classes(30, 6.0, 0.5, 10);
    ModelSpec spec = spec_from_acronym("RF");
    spec.hyperparameters["trees"] = 25;
    spec.seed = 5;
    const auto model = fit_classifier(spec, train);
    const std::vector<int> predictions = model->predict(train.features);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < train.size(); ++i)
        correct += predictions[i] == train.labels[i];
    CHECK(correct >= 58);  // near-perfect on well-separated blobs

    // single-class training data at the forest level: constant output
    const Dataset one_class = testsupport::to_dataset({{0.0}, {0.5}, {1.0}}, {1, 1, 1});
    const RandomForestClassifier constant(spec, one_class);
    const auto labels = constant.predict(Matrix::from_rows({{0.2}, {0.9}}));
    CHECK(labels == std::vector<int>{1, 1});
}

TEST_CASE("learners are deterministic given spec, data, seed") {
    const Dataset train = testsupport::imbalanced_gaussians(120, 0.25, 2.0, 3, 33);
    const Dataset probe = testsupport::imbalanced_gaussians(40, 0.25, 2.0, 3, 44);
    for (const char* name : {"KNN", "NB", "LR", "RF", "GBT", "MLP-A", "MLP-l"}) {
        ModelSpec spec = spec_from_acronym(name);
        spec.seed = 2024;
        if (spec.family == Family::RF) spec.hyperparameters["trees"] = 10;
        if (spec.family == Family::GBT) spec.hyperparameters["rounds"] = 10;
        if (spec.family == Family::MLP) {
            spec.hyperparameters["hidden"] = 8;
            spec.hyperparameters["epochs"] = 3;
        }
        const auto a = fit_classifier(spec, train);
        const auto b = fit_classifier(spec, train);
        CHECK(a->score(probe.features) == b->score(probe.features));
    }
}

TEST_CASE("predict and predict_score stay consistent") {
    const Dataset train = testsupport::imbalanced_gaussians(100, 0.3, 1.5, 2, 21);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-2.0, 4.0);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 100; ++i) rows.push_back({u(rng), u(rng)});
    const Matrix probe = Matrix::from_rows(rows);

    for (const char* name : {"KNN", "KNN-m", "NB", "LR", "RF", "GBT", "MLP-A"}) {
        ModelSpec spec = spec_from_acronym(name);
        spec.seed = 1;
        if (spec.family == Family::RF) spec.hyperparameters["trees"] = 15;
        if (spec.family == Family::GBT) spec.hyperparameters["rounds"] = 15;
        if (spec.family == Family::MLP) {
            spec.hyperparameters["hidden"] = 8;
            spec.hyperparameters["epochs"] = 5;
        }
        const auto model = fit_classifier(spec, train);
        const auto scores = model->score(probe);
        const auto labels = model->predict(probe);
        for (std::size_t i = 0; i < scores.size(); ++i) {
            CHECK(scores[i] >= 0.0);
            CHECK(scores[i] <= 1.0);
            CHECK(labels[i] == (scores[i] >= 0.5 ? 1 : 0));
        }
    }
}

TEST_CASE("GBT loss trace is non-increasing") {
    const Dataset train = testsupport::imbalanced_gaussians(200, 0.2, 1.5, 3, 14);
    for (const char* name : {"GBT", "GBT-m"}) {
        ModelSpec spec = spec_from_acronym(name);
        spec.hyperparameters["rounds"] = 40;
        const auto model = fit_classifier(spec, train);
        const auto& gbt = dynamic_cast<const GbtClassifier&>(*model);
        REQUIRE(gbt.loss_trace().size() == 41);
        for (std::size_t i = 1; i < gbt.loss_trace().size(); ++i)
            CHECK(gbt.loss_trace()[i] <= gbt.loss_trace()[i - 1]);
        // it actually learns something
        CHECK(gbt.loss_trace().back() < gbt.loss_trace().front());
    }
}

TEST_CASE("classifiers round-trip through save/load") {
    const Dataset train = testsupport::imbalanced_gaussians(80, 0.25, 2.0, 2, 55);
    const Dataset probe = testsupport::imbalanced_gaussians(30, 0.25, 2.0, 2, 56);
    for (const char* name : {"KNN-m", "NB", "LR-m", "RF", "GBT-m", "MLP-A", "MLP-l-m"}) {
        ModelSpec spec = spec_from_acronym(name);
        spec.seed = 7;
        if (spec.family == Family::RF) spec.hyperparameters["trees"] = 8;
        if (spec.family == Family::GBT) spec.hyperparameters["rounds"] = 8;
        if (spec.family == Family::MLP) {
            spec.hyperparameters["hidden"] = 6;
            spec.hyperparameters["epochs"] = 2;
        }
        const auto model = fit_classifier(spec, train);
        std::stringstream file;
        model->save(file);
        const auto restored = load_classifier(file);
        CHECK(restored->spec() == model->spec());
        CHECK(restored->score(probe.features) == model->score(probe.features));
    }
}
