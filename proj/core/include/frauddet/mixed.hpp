#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "frauddet/ensemble.hpp"
#include "frauddet/kmeans.hpp"

namespace frauddet {

/// Degenerate-cluster fallback: always answers `label`.
struct ConstantPredictor {
    enum class Reason { SingleClassCluster, EmptyCluster, BelowMinSize };
    int label = 0;
    Reason reason = Reason::EmptyCluster;
};

/// What to fit in each cluster: a single model or an ensemble of models.
struct EnsembleTemplate {
    AggregationRule rule = AggregationRule::MajorityVote;
    std::vector<ModelSpec> members;  // evaluation order
};
using PredictorTemplate = std::variant<ModelSpec, EnsembleTemplate>;

/// The supervised stage attached to one cluster.
struct ClusterPredictor {
    std::optional<ConstantPredictor> constant;
    AggregationRule rule = AggregationRule::MajorityVote;  // used when models.size() > 1
    std::vector<std::shared_ptr<const FittedClassifier>> models;
    std::size_t train_size = 0;
    std::size_t fraud_count = 0;

    int predict_row(std::span<const double> row) const;
    bool is_constant() const { return constant.has_value(); }
};

struct MixedModel {
    KMeansModel kmeans;
    std::vector<ClusterPredictor> clusters;  // one per cluster index
};

struct MixedOptions {
    /// Clusters smaller than this, or holding one class, get a constant
    /// predictor of their majority label.
    std::size_t min_cluster_size = 10;
    /// Train classical-variant members on a per-cluster rebalanced copy;
    /// class-weighted members always see the original cluster data.
    bool rebalance_classical = true;
    /// Base seed for per-cluster rebalancing; cluster 0 uses it unchanged so
    /// a k=1 mixed fit reproduces the flat pipeline bit for bit.
    std::uint64_t rebalance_seed = 0;
    std::size_t kmeans_max_iter = 300;
    double kmeans_tol = 1e-4;
};

/// Seed for per-cluster work derived from a base seed; cluster 0 keeps the
/// base so k=1 pipelines collapse to their flat equivalents.
std::uint64_t cluster_seed(std::uint64_t base, std::size_t cluster);

/// K-means on the training features, then one predictor per cluster fitted
/// on that cluster's rows only. Member seeds are derived per cluster from the
/// template specs' seeds.
MixedModel fit_mixed(const Dataset& train, std::size_t k, const PredictorTemplate& tmpl,
                     std::uint64_t seed, const MixedOptions& options = {});

/// Routes each row to its nearest-centroid cluster and applies that cluster's
/// predictor; output order matches input order.
std::vector<int> predict_mixed(const MixedModel& model, const Matrix& features);

/// (cluster, size, fraud_count, predictor_kind) rows.
void write_mixed_summary(std::ostream& out, const MixedModel& model);

}  // namespace frauddet
