#pragma once

#include "frauddet/classifier.hpp"

namespace frauddet {

/// Shape of the one-hidden-layer network: dim -> hidden (ReLU) -> 1 (sigmoid).
/// Parameters are flattened as [W1 (hidden*dim), b1 (hidden), W2 (hidden), b2].
struct MlpShape {
    std::size_t dim = 0;
    std::size_t hidden = 0;

    std::size_t parameter_count() const { return hidden * dim + hidden + hidden + 1; }
};

/// Mean weighted cross-entropy over the batch and its gradient, computed by
/// backpropagation through the stable logit formulation. Returns the loss.
double mlp_loss_and_gradient(const MlpShape& shape, std::span<const double> params,
                             const Matrix& features, const std::vector<int>& labels,
                             const std::vector<double>& sample_weights,
                             std::span<double> grad_out);

/// Glorot-uniform initial parameters, deterministic given the seed.
std::vector<double> mlp_init_params(const MlpShape& shape, std::uint64_t seed);

/// One-hidden-layer perceptron. The adam_sgd variant runs minibatch Adam
/// (step 1e-3, decay 0.9/0.999, batch 128) for "epochs" epochs; the lbfgs
/// variant runs full-batch L-BFGS (history 10, at most 200 iterations, strong
/// Wolfe line search). Cross-entropy loss, optionally class-weighted.
class MlpClassifier final : public FittedClassifier {
public:
    MlpClassifier(ModelSpec spec, const Dataset& train);
    MlpClassifier(ModelSpec spec, MlpShape shape, std::vector<double> params);

    const MlpShape& shape() const { return shape_; }
    const std::vector<double>& parameters() const { return params_; }

    double logit_row(std::span<const double> row) const;

protected:
    double do_score(std::span<const double> row) const override;
    void save_state(std::ostream& out) const override;

private:
    MlpShape shape_;
    std::vector<double> params_;
};

}  // namespace frauddet
