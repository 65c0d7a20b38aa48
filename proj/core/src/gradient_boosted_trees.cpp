#include "frauddet/gradient_boosted_trees.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "tree_serialization.hpp"

namespace frauddet {

namespace {

constexpr double kShrinkage = 0.1;

double stable_sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double logistic_nll(double z, int y) {
    const double margin = y == 1 ? z : -z;
    return margin >= 0.0 ? std::log1p(std::exp(-margin)) : -margin + std::log1p(std::exp(margin));
}

}  // namespace

GbtClassifier::GbtClassifier(ModelSpec spec, const Dataset& train)
    : FittedClassifier(spec, train.dim()) {
    const std::size_t n = train.size();
    const auto rounds = static_cast<std::size_t>(spec.param("rounds"));
    const auto depth = static_cast<std::size_t>(spec.param("depth"));
    if (depth < 1) throw std::invalid_argument("GBT: depth must be >= 1");

    ClassWeights weights;
    if (spec.variant == Variant::ClassWeighted) weights = compute_class_weights(train.labels);
    std::vector<double> w(n);
    double w_total = 0.0, w_positive = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = weights.of(train.labels[i]);
        w_total += w[i];
        if (train.labels[i] == 1) w_positive += w[i];
    }
    const double p0 = w_positive / w_total;
    base_logit_ = std::log(p0 / (1.0 - p0));

    std::vector<double> logit(n, base_logit_);
    auto mean_loss = [&](const std::vector<double>& z) {
        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) loss += w[i] * logistic_nll(z[i], train.labels[i]);
        loss /= static_cast<double>(n);
        if (!std::isfinite(loss))
            throw std::runtime_error("GBT: non-finite training loss");
        return loss;
    };

    double loss = mean_loss(logit);
    trace_.push_back(loss);

    std::vector<double> grad(n), hess(n), candidate(n);
    for (std::size_t round = 0; round < rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            const double p = stable_sigmoid(logit[i]);
            grad[i] = w[i] * (static_cast<double>(train.labels[i]) - p);
            hess[i] = std::max(w[i] * p * (1.0 - p), 1e-12);
        }
        DecisionTree tree = grow_gradient_tree(train.features, grad, hess, depth);

        // Shrink further if the round would raise the loss; a zero-scale round
        // leaves the model unchanged, so the trace never increases.
        double scale = kShrinkage;
        double new_loss = loss;
        for (int attempt = 0; attempt < 30; ++attempt) {
            for (std::size_t i = 0; i < n; ++i)
                candidate[i] = logit[i] + scale * tree.eval(train.features.row(i));
            new_loss = mean_loss(candidate);
            if (new_loss <= loss) break;
            scale *= 0.5;
        }
        if (new_loss > loss) {
            scale = 0.0;
            new_loss = loss;
            candidate = logit;
        }
        trees_.push_back(std::move(tree));
        stage_scales_.push_back(scale);
        logit.swap(candidate);
        loss = new_loss;
        trace_.push_back(loss);
    }
}

GbtClassifier::GbtClassifier(ModelSpec spec, std::size_t dim, double base_logit,
                             std::vector<DecisionTree> trees, std::vector<double> stage_scales)
    : FittedClassifier(spec, dim),
      base_logit_(base_logit),
      trees_(std::move(trees)),
      stage_scales_(std::move(stage_scales)) {}

double GbtClassifier::logit_row(std::span<const double> row) const {
    double z = base_logit_;
    for (std::size_t t = 0; t < trees_.size(); ++t)
        z += stage_scales_[t] * trees_[t].eval(row);
    return z;
}

double GbtClassifier::do_score(std::span<const double> row) const {
    return stable_sigmoid(logit_row(row));
}

void GbtClassifier::save_state(std::ostream& out) const {
    nlohmann::json j;
    j["base_logit"] = base_logit_;
    j["scales"] = stage_scales_;
    auto& trees = j["trees"] = nlohmann::json::array();
    for (const DecisionTree& t : trees_) trees.push_back(tree_to_json(t));
    out << j << "\n";
}

}  // namespace frauddet
