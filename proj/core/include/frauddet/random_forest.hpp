#pragma once

#include "frauddet/classifier.hpp"
#include "frauddet/decision_tree.hpp"

namespace frauddet {

/// Bootstrap-aggregated classification trees: "trees" of them (default 100),
/// each grown on n draws with replacement, ceil(sqrt(d)) candidate features
/// per split, depth unlimited unless "max_depth" > 0. The class-weighted
/// variant uses weighted Gini inside the trees and weights each tree's vote
/// by the class weight of the voted class.
class RandomForestClassifier final : public FittedClassifier {
public:
    RandomForestClassifier(ModelSpec spec, const Dataset& train);
    RandomForestClassifier(ModelSpec spec, std::size_t dim, std::vector<DecisionTree> trees,
                           ClassWeights weights);

    const std::vector<DecisionTree>& trees() const { return trees_; }

    /// Mean impurity-decrease importance per feature, normalized to sum 1.
    /// When no tree found any split the scores are uniform and the flag set.
    struct Importances {
        std::vector<double> scores;
        bool no_splits = false;
    };
    Importances feature_importances() const;

protected:
    double do_score(std::span<const double> row) const override;
    void save_state(std::ostream& out) const override;

private:
    std::vector<DecisionTree> trees_;
    std::vector<double> importance_;
    ClassWeights weights_;
};

}  // namespace frauddet
