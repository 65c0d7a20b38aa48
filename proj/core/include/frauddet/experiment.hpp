#pragma once

#include <map>

#include "frauddet/evaluate.hpp"
#include "frauddet/feature_select.hpp"
#include "frauddet/report.hpp"

namespace frauddet {

/// Everything a sweep needs, loadable from a flat key-value file. CLI flags
/// override file values; `seed` is mandatory for reproducible sweeps.
struct ExperimentConfig {
    std::string data_path;
    std::string label_column = "Class";
    std::string validation_path;        // empty: carve a stratified split instead
    double validation_fraction = 0.2;   // used when validation_path is empty
    std::uint64_t seed = 0;
    bool feature_selection = true;
    std::size_t bins = 10;
    bool rebalance = true;
    std::vector<std::size_t> k_values = {2, 3, 4, 5};
    std::vector<std::string> roster;    // empty: the 13-model table roster
    std::vector<AggregationRule> rules = {AggregationRule::MajorityVote,
                                          AggregationRule::OrLogic};
    bool search = true;
    double search_fraction = 0.3;       // holdout fraction inside the search
    std::map<std::string, HyperGrid> grids;  // by family name; empty: defaults
    std::size_t folds = 10;
    std::string out_dir = "out";
    unsigned jobs = 1;
    std::vector<std::string> exclude_columns;  // e.g. a timestamp column

    std::vector<std::string> roster_names() const;
    void validate() const;
};

ExperimentConfig load_config(const std::string& path);

/// Canonical serialization; reruns of one config hash identically.
void write_config(std::ostream& out, const ExperimentConfig& config);
std::string config_hash(const ExperimentConfig& config);

/// Versioned default search grids per family (see the project README).
HyperGrid default_grid(Family family);

struct ExperimentOutcome {
    EvaluationReport report;
    FeatureVerdict selection;
    std::vector<std::string> selection_feature_names;
    bool selection_ran = false;
    std::size_t skipped_ensembles = 0;
    std::vector<std::pair<std::string, std::string>> failures;  // label -> error
    std::string cluster_summary_csv;  // mixed runs: per-cluster sizes and kinds
    std::string centroids_text;       // mixed runs: fitted K-means centroids
};

/// Load, scale, select features, search hyperparameters, fit the roster, and
/// evaluate individuals plus every enumerated ensemble on the validation set.
/// Classical variants train on rebalanced data, class-weighted variants on
/// the original. A failing configuration is recorded and skipped, never fatal
/// to the sweep.
ExperimentOutcome run_flat_experiment(const ExperimentConfig& config);

/// The cluster-then-classify sweep: for each k, K-means partitions the
/// training data and every roster model and enumerated ensemble is fitted per
/// cluster and evaluated on the validation set. One report per k; k = 1
/// reproduces the flat report exactly.
std::map<std::size_t, ExperimentOutcome> run_mixed_experiment(const ExperimentConfig& config);

/// Scores rows in parallel; the result equals model.predict(features).
std::vector<int> parallel_predict(const FittedClassifier& model, const Matrix& features,
                                  unsigned jobs);

/// Writes reports, selection/composition CSVs, and the run manifest under
/// config.out_dir. Returns the file names written.
std::vector<std::string> write_experiment_outputs(
    const ExperimentConfig& config, const ExperimentOutcome* flat,
    const std::map<std::size_t, ExperimentOutcome>* mixed);

}  // namespace frauddet
