#include "frauddet/random_forest.hpp"

#include <cmath>
#include <numeric>
#include <ostream>

#include <json.hpp>

#include "frauddet/random.hpp"
#include "tree_serialization.hpp"

namespace frauddet {

RandomForestClassifier::RandomForestClassifier(ModelSpec spec, const Dataset& train)
    : FittedClassifier(spec, train.dim()) {
    const std::size_t n = train.size();
    const std::size_t d = train.dim();
    const auto n_trees = static_cast<std::size_t>(spec.param("trees"));
    const auto max_depth = static_cast<std::size_t>(spec.param("max_depth"));
    if (n_trees < 1) throw std::invalid_argument("RF: trees must be >= 1");
    const auto mtry = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(d))));

    if (spec.variant == Variant::ClassWeighted) weights_ = compute_class_weights(train.labels);
    std::vector<double> sample_weights(n);
    for (std::size_t i = 0; i < n; ++i) sample_weights[i] = weights_.of(train.labels[i]);

    importance_.assign(d, 0.0);
    trees_.reserve(n_trees);
    for (std::size_t t = 0; t < n_trees; ++t) {
        auto rng = make_rng(derive_seed(spec.seed, t + 1));
        std::vector<std::size_t> bootstrap(n);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (std::size_t i = 0; i < n; ++i) bootstrap[i] = pick(rng);
        trees_.push_back(grow_classification_tree(train.features, train.labels, sample_weights,
                                                  bootstrap, mtry, max_depth, rng,
                                                  &importance_));
    }
    for (double& v : importance_) v /= static_cast<double>(n_trees);
}

RandomForestClassifier::RandomForestClassifier(ModelSpec spec, std::size_t dim,
                                               std::vector<DecisionTree> trees,
                                               ClassWeights weights)
    : FittedClassifier(spec, dim), trees_(std::move(trees)), weights_(weights) {}

double RandomForestClassifier::do_score(std::span<const double> row) const {
    // Each tree casts one vote, weighted by the class weight of its vote.
    double vote1 = 0.0, total = 0.0;
    for (const DecisionTree& tree : trees_) {
        const int label = tree.eval(row) >= 0.5 ? 1 : 0;
        const double w = weights_.of(label);
        total += w;
        if (label == 1) vote1 += w;
    }
    return vote1 / total;
}

RandomForestClassifier::Importances RandomForestClassifier::feature_importances() const {
    Importances result;
    result.scores = importance_;
    const double sum = std::accumulate(result.scores.begin(), result.scores.end(), 0.0);
    if (sum <= 0.0) {
        result.no_splits = true;
        result.scores.assign(result.scores.size(),
                             1.0 / static_cast<double>(result.scores.size()));
    } else {
        for (double& v : result.scores) v /= sum;
    }
    return result;
}

void RandomForestClassifier::save_state(std::ostream& out) const {
    nlohmann::json j;
    j["w0"] = weights_.w0;
    j["w1"] = weights_.w1;
    auto& trees = j["trees"] = nlohmann::json::array();
    for (const DecisionTree& t : trees_) trees.push_back(tree_to_json(t));
    out << j << "\n";
}

}  // namespace frauddet
