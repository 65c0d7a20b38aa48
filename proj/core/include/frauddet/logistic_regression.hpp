#pragma once

#include "frauddet/classifier.hpp"

namespace frauddet {

/// Logistic regression fitted by batch gradient ascent on the mean weighted
/// log-likelihood, with an optional L2 penalty on the non-bias coefficients
/// (hyperparameter "lambda", default 0). Base learning rate 0.1, at most 5000
/// iterations, stop when the gradient max-norm drops below 1e-6. A step that
/// would lower the objective is halved until it does not, which keeps the
/// recorded objective trace non-decreasing.
class LogisticRegressionClassifier final : public FittedClassifier {
public:
    LogisticRegressionClassifier(ModelSpec spec, const Dataset& train);
    LogisticRegressionClassifier(ModelSpec spec, std::size_t dim, std::vector<double> beta);

    /// Coefficients; the last entry is the intercept.
    const std::vector<double>& coefficients() const { return beta_; }

    /// Objective value per iteration (index 0 is the initial value). Equals
    /// the mean weighted log-likelihood when lambda = 0.
    const std::vector<double>& objective_trace() const { return trace_; }

protected:
    double do_score(std::span<const double> row) const override;
    void save_state(std::ostream& out) const override;

private:
    std::vector<double> beta_;
    std::vector<double> trace_;
};

}  // namespace frauddet
