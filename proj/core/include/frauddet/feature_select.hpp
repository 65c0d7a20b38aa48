#pragma once

#include <iosfwd>
#include <vector>

#include "frauddet/dataset.hpp"
#include "frauddet/model_spec.hpp"

namespace frauddet {

/// Outcome of the three-way relevance vote. A feature's final mask bit is set
/// iff at least two of the three per-method votes are set.
struct FeatureVerdict {
    std::vector<double> pearson;
    std::vector<double> mutual_information;
    std::vector<double> importance;
    std::vector<bool> vote_pearson;
    std::vector<bool> vote_mi;
    std::vector<bool> vote_importance;
    std::vector<bool> relevant;
    bool importance_degenerate = false;  // forest found no split; scores uniform

    /// Indices of the selected features, ascending.
    std::vector<std::size_t> selected_indices() const;
};

/// |Pearson correlation| between each feature and the label vector.
/// Constant features score 0. Requires both classes present and n >= 2.
std::vector<double> pearson_scores(const Dataset& data);

/// I(binned feature; label) in bits under equal-width binning of the
/// feature's observed range.
std::vector<double> mutual_information_scores(const Dataset& data, std::size_t bins = 10);

struct ImportanceScores {
    std::vector<double> scores;  // sums to 1
    bool degenerate = false;     // no split anywhere: scores are uniform
};

/// Mean impurity-decrease importances from a random forest fitted on `data`.
/// `forest_config` must name the RF family.
ImportanceScores importance_scores(const Dataset& data, const ModelSpec& forest_config,
                                   std::uint64_t seed);

/// Scores each feature with all three methods, votes "relevant" when a score
/// exceeds its method's mean score, and combines votes 2-of-3. If no feature
/// wins the vote, the one with the best summed rank is forced relevant.
FeatureVerdict select_features(const Dataset& data, std::size_t bins,
                               const ModelSpec& forest_config, std::uint64_t seed);

/// (feature_name, pearson, mi, importance, vote_p, vote_mi, vote_fi, relevant)
void write_selection_csv(std::ostream& out, const Dataset& data, const FeatureVerdict& verdict);

}  // namespace frauddet
