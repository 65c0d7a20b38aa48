#pragma once

#include "frauddet/classifier.hpp"

namespace frauddet {

/// K-nearest-neighbors on Euclidean distance. Each neighbor's vote counts the
/// class weight of the neighbor's class (unit weights for the classical
/// variant); the score is the weighted fraud share of the K votes. Neighbor
/// order is resolved by (distance, training index), so equal distances pick
/// the earlier training row.
class KnnClassifier final : public FittedClassifier {
public:
    KnnClassifier(ModelSpec spec, const Dataset& train);
    KnnClassifier(ModelSpec spec, Matrix points, std::vector<int> labels, ClassWeights weights);

    std::size_t k() const { return k_; }
    const ClassWeights& class_weights() const { return weights_; }

protected:
    double do_score(std::span<const double> row) const override;
    void save_state(std::ostream& out) const override;

private:
    Matrix points_;
    std::vector<int> labels_;
    ClassWeights weights_;
    std::size_t k_ = 1;
};

}  // namespace frauddet
