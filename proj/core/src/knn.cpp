#include "frauddet/knn.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace frauddet {

namespace {

ClassWeights weights_for(const ModelSpec& spec, const std::vector<int>& labels) {
    if (spec.variant == Variant::ClassWeighted) return compute_class_weights(labels);
    return ClassWeights{};
}

}  // namespace

KnnClassifier::KnnClassifier(ModelSpec spec, const Dataset& train)
    : FittedClassifier(spec, train.dim()),
      points_(train.features),
      labels_(train.labels),
      weights_(weights_for(spec, train.labels)) {
    const double k_param = spec.param("k");
    k_ = static_cast<std::size_t>(k_param);
    if (k_ < 1 || k_ > train.size())
        throw std::invalid_argument("KNN: k must be in [1, n], got " + std::to_string(k_));
}

KnnClassifier::KnnClassifier(ModelSpec spec, Matrix points, std::vector<int> labels,
                             ClassWeights weights)
    : FittedClassifier(spec, points.cols()),
      points_(std::move(points)),
      labels_(std::move(labels)),
      weights_(weights),
      k_(static_cast<std::size_t>(spec.param("k"))) {}

double KnnClassifier::do_score(std::span<const double> row) const {
    const std::size_t n = points_.rows();
    std::vector<std::pair<double, std::size_t>> dist(n);
    for (std::size_t i = 0; i < n; ++i)
        dist[i] = {squared_distance(row, points_.row(i)), i};
    // (distance, index) order makes neighbor choice deterministic under ties.
    std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k_ - 1),
                     dist.end());
    double vote1 = 0.0, total = 0.0;
    for (std::size_t i = 0; i < k_; ++i) {
        const int label = labels_[dist[i].second];
        const double w = weights_.of(label);
        total += w;
        if (label == 1) vote1 += w;
    }
    return vote1 / total;
}

void KnnClassifier::save_state(std::ostream& out) const {
    nlohmann::json j;
    auto& points = j["points"] = nlohmann::json::array();
    for (std::size_t i = 0; i < points_.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (double v : points_.row(i)) row.push_back(v);
        points.push_back(std::move(row));
    }
    j["labels"] = labels_;
    j["w0"] = weights_.w0;
    j["w1"] = weights_.w1;
    out << j << "\n";
}

}  // namespace frauddet
