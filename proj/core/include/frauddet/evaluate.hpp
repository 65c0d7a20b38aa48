#pragma once

#include <map>

#include "frauddet/metrics.hpp"
#include "frauddet/mixed.hpp"
#include "frauddet/report.hpp"

namespace frauddet {

/// Mixed-learning configuration evaluated as one unit.
struct MixedTemplate {
    std::size_t k = 1;
    PredictorTemplate predictor;
};

/// Anything the harness can cross-validate.
using EvalTarget = std::variant<ModelSpec, EnsembleTemplate, MixedTemplate>;

struct EvalOptions {
    bool rebalance_classical = true;  // classical variants train on rebalanced data
    bool scale = true;                // fit a min-max scaler on the training part
    std::size_t min_cluster_size = 10;
};

/// Stratified fold assignment: per-class indices are shuffled and dealt
/// round-robin with a cursor that runs on across classes, so both fold sizes
/// and per-class counts differ by at most one.
std::vector<std::vector<std::size_t>> stratified_folds(const std::vector<int>& labels,
                                                       std::size_t folds, std::uint64_t seed);

struct KFoldResult {
    std::vector<ConfusionCounts> fold_counts;
    std::vector<MetricsRow> fold_rows;
    ConfusionCounts pooled;      // element-wise sum over folds
    MetricsRow aggregate;        // metrics of the pooled counts
};

/// Per fold: fit on the other folds with fold-local scaling and rebalancing,
/// test on the held fold. The aggregate row pools confusion counts across
/// folds, which stays defined even when a fold holds no fraud.
KFoldResult kfold_evaluate(const EvalTarget& target, const Dataset& data, std::size_t folds,
                           std::uint64_t seed, const EvalOptions& options = {});

/// Report row carrying the pooled aggregate plus the per-fold breakdown.
ReportRow kfold_report_row(std::string label, const KFoldResult& result);

/// Hyperparameter values to sweep, keyed by the family's documented names.
using HyperGrid = std::map<std::string, std::vector<double>>;

struct SearchCandidate {
    ModelSpec spec;
    std::optional<double> f1;
};

struct SearchResult {
    ModelSpec best;
    std::optional<double> best_f1;
    std::vector<SearchCandidate> candidates;  // grid order
};

/// Exhaustive Cartesian-product search over `grid`, each candidate fitted on
/// the holdout-train portion and scored by F1 on the holdout-test portion.
/// An undefined F1 ranks below every defined one; ties keep the earlier
/// candidate in grid order.
SearchResult holdout_search(const HyperGrid& grid, const ModelSpec& tmpl, const Dataset& data,
                            double test_fraction, std::uint64_t seed,
                            const EvalOptions& options = {});

}  // namespace frauddet
