#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frauddet/matrix.hpp"

namespace frauddet {

/// Labeled transaction set. Labels are 1 = fraud, 0 = genuine.
struct Dataset {
    Matrix features;
    std::vector<int> labels;
    std::vector<std::string> feature_names;

    std::size_t size() const { return labels.size(); }
    std::size_t dim() const { return features.cols(); }

    std::size_t count_label(int label) const;

    /// Rows of this dataset at `indices`, in that order.
    Dataset take(std::span<const std::size_t> indices) const;

    /// Throws if any declared invariant is violated (shape mismatch,
    /// non-binary label, non-finite feature value).
    void validate() const;
};

/// Per-feature min/max fitted on training data only.
struct ScalerParams {
    std::vector<double> mins;
    std::vector<double> maxs;
};

struct SplitSpec {
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
    std::uint64_t seed = 0;
};

/// Parses a comma-delimited file with a header row into a Dataset.
/// Every non-label column must be numeric; the label column must hold the
/// literals "0"/"1". Errors carry the offending row/column.
Dataset load_csv(const std::string& path, const std::string& label_column = "Class");

ScalerParams fit_scaler(const Dataset& train);

/// x' = (x - min) / (max - min), clipped to [0, 1]. Constant columns map to 0.
Dataset apply_scaler(const ScalerParams& params, const Dataset& data);

/// Oversamples the minority class with replacement until class counts are
/// equal. Original rows are retained in order; copies are appended.
Dataset rebalance(const Dataset& train, std::uint64_t seed);

/// Stratified random split; class proportions preserved to within one object.
SplitSpec split_holdout(const Dataset& data, double test_fraction, std::uint64_t seed);

}  // namespace frauddet
