#include "frauddet/decision_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stack>

namespace frauddet {

namespace {

/// Midpoint of two distinct sorted values, nudged so `x <= t` keeps the left
/// value on the left even when the midpoint rounds up to the right value.
double split_threshold(double lo, double hi) {
    const double mid = lo + 0.5 * (hi - lo);
    return mid < hi ? mid : lo;
}

struct SplitChoice {
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

struct Work {
    std::vector<std::size_t> rows;
    std::size_t depth = 0;
    std::int32_t parent = -1;
    bool is_left = false;
};

/// Links a freshly created node to its parent slot; -1 parent is the root.
void link(DecisionTree& tree, const Work& work, std::int32_t idx) {
    if (work.parent < 0) return;
    (work.is_left ? tree.nodes[work.parent].left : tree.nodes[work.parent].right) = idx;
}

void sort_by_feature(const Matrix& features, std::size_t f, std::vector<std::size_t>& rows) {
    std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
        const double va = features(a, f), vb = features(b, f);
        return va < vb || (va == vb && a < b);
    });
}

}  // namespace

DecisionTree grow_classification_tree(const Matrix& features, const std::vector<int>& labels,
                                      const std::vector<double>& sample_weights,
                                      std::span<const std::size_t> row_indices, std::size_t mtry,
                                      std::size_t max_depth, std::mt19937_64& rng,
                                      std::vector<double>* importance) {
    mtry = std::min(std::max<std::size_t>(mtry, 1), features.cols());
    double root_weight = 0.0;
    for (std::size_t i : row_indices) root_weight += sample_weights[i];

    std::vector<std::size_t> feature_pool(features.cols());
    std::iota(feature_pool.begin(), feature_pool.end(), 0);

    DecisionTree tree;
    std::stack<Work> pending;
    pending.push({{row_indices.begin(), row_indices.end()}, 0, -1, false});

    while (!pending.empty()) {
        Work work = std::move(pending.top());
        pending.pop();

        double w0 = 0.0, w1 = 0.0;
        for (std::size_t i : work.rows) (labels[i] == 1 ? w1 : w0) += sample_weights[i];

        SplitChoice best;
        const bool splittable = w0 > 0.0 && w1 > 0.0 && work.rows.size() >= 2 &&
                                (max_depth == 0 || work.depth < max_depth);
        if (splittable) {
            const double total = w0 + w1;
            const double parent_gini =
                1.0 - (w0 / total) * (w0 / total) - (w1 / total) * (w1 / total);

            // Draw mtry candidate features without replacement.
            for (std::size_t c = 0; c < mtry; ++c) {
                std::uniform_int_distribution<std::size_t> pick(c, feature_pool.size() - 1);
                std::swap(feature_pool[c], feature_pool[pick(rng)]);
            }

            std::vector<std::size_t> sorted;
            for (std::size_t c = 0; c < mtry; ++c) {
                const std::size_t f = feature_pool[c];
                sorted = work.rows;
                sort_by_feature(features, f, sorted);
                double left0 = 0.0, left1 = 0.0;
                for (std::size_t s = 0; s + 1 < sorted.size(); ++s) {
                    const std::size_t i = sorted[s];
                    (labels[i] == 1 ? left1 : left0) += sample_weights[i];
                    const double v = features(i, f);
                    const double next = features(sorted[s + 1], f);
                    if (v == next) continue;
                    const double wl = left0 + left1;
                    const double wr = total - wl;
                    if (wl <= 0.0 || wr <= 0.0) continue;
                    const double gini_l =
                        1.0 - (left0 / wl) * (left0 / wl) - (left1 / wl) * (left1 / wl);
                    const double r0 = w0 - left0, r1 = w1 - left1;
                    const double gini_r = 1.0 - (r0 / wr) * (r0 / wr) - (r1 / wr) * (r1 / wr);
                    const double gain =
                        parent_gini - (wl / total) * gini_l - (wr / total) * gini_r;
                    if (gain > best.gain + 1e-15) {
                        best = {static_cast<int>(f), split_threshold(v, next), gain};
                    }
                }
            }
        }

        if (best.feature < 0) {
            TreeNode leaf;
            leaf.value = w1 >= w0 ? 1.0 : 0.0;  // tie prefers fraud
            tree.nodes.push_back(leaf);
            link(tree, work, static_cast<std::int32_t>(tree.nodes.size() - 1));
            continue;
        }

        if (importance)
            (*importance)[static_cast<std::size_t>(best.feature)] +=
                ((w0 + w1) / root_weight) * best.gain;

        Work left_work, right_work;
        left_work.depth = right_work.depth = work.depth + 1;
        for (std::size_t i : work.rows)
            (features(i, static_cast<std::size_t>(best.feature)) <= best.threshold
                 ? left_work.rows
                 : right_work.rows)
                .push_back(i);
        work.rows.clear();
        work.rows.shrink_to_fit();

        TreeNode node;
        node.feature = best.feature;
        node.threshold = best.threshold;
        tree.nodes.push_back(node);
        const auto idx = static_cast<std::int32_t>(tree.nodes.size() - 1);
        link(tree, work, idx);

        left_work.parent = right_work.parent = idx;
        left_work.is_left = true;
        pending.push(std::move(right_work));
        pending.push(std::move(left_work));  // left built first, matching reading order
    }
    return tree;
}

DecisionTree grow_gradient_tree(const Matrix& features, const std::vector<double>& gradients,
                                const std::vector<double>& hessians, std::size_t max_depth) {
    DecisionTree tree;
    std::stack<Work> pending;
    Work root;
    root.rows.resize(features.rows());
    std::iota(root.rows.begin(), root.rows.end(), 0);
    pending.push(std::move(root));

    while (!pending.empty()) {
        Work work = std::move(pending.top());
        pending.pop();

        double gs = 0.0, hs = 0.0;
        for (std::size_t i : work.rows) {
            gs += gradients[i];
            hs += hessians[i];
        }

        SplitChoice best;
        best.gain = 1e-12;
        if (work.rows.size() >= 2 && work.depth < max_depth) {
            const double parent_score = gs * gs / std::max(hs, 1e-12);
            std::vector<std::size_t> sorted;
            for (std::size_t f = 0; f < features.cols(); ++f) {
                sorted = work.rows;
                sort_by_feature(features, f, sorted);
                double gl = 0.0, hl = 0.0;
                for (std::size_t s = 0; s + 1 < sorted.size(); ++s) {
                    const std::size_t i = sorted[s];
                    gl += gradients[i];
                    hl += hessians[i];
                    const double v = features(i, f);
                    const double next = features(sorted[s + 1], f);
                    if (v == next) continue;
                    const double gr = gs - gl, hr = hs - hl;
                    const double gain = gl * gl / std::max(hl, 1e-12) +
                                        gr * gr / std::max(hr, 1e-12) - parent_score;
                    if (gain > best.gain) {
                        best = {static_cast<int>(f), split_threshold(v, next), gain};
                    }
                }
            }
        }

        if (best.feature < 0) {
            TreeNode leaf;
            leaf.value = gs / std::max(hs, 1e-12);
            tree.nodes.push_back(leaf);
            link(tree, work, static_cast<std::int32_t>(tree.nodes.size() - 1));
            continue;
        }

        Work left_work, right_work;
        left_work.depth = right_work.depth = work.depth + 1;
        for (std::size_t i : work.rows)
            (features(i, static_cast<std::size_t>(best.feature)) <= best.threshold
                 ? left_work.rows
                 : right_work.rows)
                .push_back(i);
        work.rows.clear();
        work.rows.shrink_to_fit();

        TreeNode node;
        node.feature = best.feature;
        node.threshold = best.threshold;
        tree.nodes.push_back(node);
        const auto idx = static_cast<std::int32_t>(tree.nodes.size() - 1);
        link(tree, work, idx);

        left_work.parent = right_work.parent = idx;
        left_work.is_left = true;
        pending.push(std::move(right_work));
        pending.push(std::move(left_work));
    }
    return tree;
}

}  // namespace frauddet
