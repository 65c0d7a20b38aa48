#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "frauddet/matrix.hpp"

namespace frauddet {

/// Binary tree over feature thresholds, stored as a flat node array.
/// A node with feature < 0 is a leaf; `value` is the leaf payload (vote label
/// for classification trees, additive logit step for boosting trees).
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    double value = 0.0;
};

struct DecisionTree {
    std::vector<TreeNode> nodes;

    double eval(std::span<const double> row) const {
        std::int32_t idx = 0;
        while (nodes[idx].feature >= 0)
            idx = row[static_cast<std::size_t>(nodes[idx].feature)] <= nodes[idx].threshold
                      ? nodes[idx].left
                      : nodes[idx].right;
        return nodes[idx].value;
    }
};

/// Grows a classification tree by weighted Gini impurity. `mtry` features are
/// drawn without replacement at every node. Leaves vote the class with the
/// larger weighted count, ties to fraud. Per-feature impurity decreases,
/// weighted by node share, accumulate into `importance` when provided.
DecisionTree grow_classification_tree(const Matrix& features, const std::vector<int>& labels,
                                      const std::vector<double>& sample_weights,
                                      std::span<const std::size_t> row_indices, std::size_t mtry,
                                      std::size_t max_depth, std::mt19937_64& rng,
                                      std::vector<double>* importance = nullptr);

/// Grows a regression tree on gradient/hessian pairs: splits maximize
/// G_L^2/H_L + G_R^2/H_R - G^2/H, leaves carry the Newton step G/H. With the
/// logistic-loss convention g = w*(y - p), h = w*p*(1-p), adding a leaf value
/// to the logit moves the model toward the labels.
DecisionTree grow_gradient_tree(const Matrix& features, const std::vector<double>& gradients,
                                const std::vector<double>& hessians, std::size_t max_depth);

}  // namespace frauddet
