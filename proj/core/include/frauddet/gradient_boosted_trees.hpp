#pragma once

#include "frauddet/classifier.hpp"
#include "frauddet/decision_tree.hpp"

namespace frauddet {

/// Gradient-boosted trees under logistic loss: "rounds" boosting rounds
/// (default 100) of depth-"depth" trees (default 3), shrinkage 0.1. The
/// class-weighted variant multiplies each object's loss term by its class
/// weight. If a round would raise the training loss its contribution is
/// halved until it does not, so the recorded loss trace is non-increasing.
class GbtClassifier final : public FittedClassifier {
public:
    GbtClassifier(ModelSpec spec, const Dataset& train);
    GbtClassifier(ModelSpec spec, std::size_t dim, double base_logit,
                  std::vector<DecisionTree> trees, std::vector<double> stage_scales);

    /// Mean weighted logistic loss after each round (index 0: base model).
    const std::vector<double>& loss_trace() const { return trace_; }
    double base_logit() const { return base_logit_; }

    /// Raw additive logit for one observation; the score is its sigmoid.
    double logit_row(std::span<const double> row) const;

protected:
    double do_score(std::span<const double> row) const override;
    void save_state(std::ostream& out) const override;

private:
    double base_logit_ = 0.0;
    std::vector<DecisionTree> trees_;
    std::vector<double> stage_scales_;
    std::vector<double> trace_;
};

}  // namespace frauddet
