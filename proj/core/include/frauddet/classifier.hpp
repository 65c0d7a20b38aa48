#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "frauddet/dataset.hpp"
#include "frauddet/model_spec.hpp"

namespace frauddet {

/// A trained binary classifier. Immutable after fitting; safe to share across
/// threads. The decision rule is predict(x) = 1 iff score(x) >= 0.5, so ties
/// at the threshold resolve to the fraud class.
class FittedClassifier {
public:
    virtual ~FittedClassifier() = default;

    const ModelSpec& spec() const { return spec_; }
    std::size_t dim() const { return dim_; }

    /// Fraud score in [0, 1] for one observation.
    double score_row(std::span<const double> row) const;

    std::vector<double> score(const Matrix& features) const;
    std::vector<int> predict(const Matrix& features) const;
    int predict_row(std::span<const double> row) const { return score_row(row) >= 0.5 ? 1 : 0; }

    /// Versioned text serialization; restored by load_classifier.
    void save(std::ostream& out) const;

protected:
    FittedClassifier(ModelSpec spec, std::size_t dim) : spec_(std::move(spec)), dim_(dim) {}

    virtual double do_score(std::span<const double> row) const = 0;
    virtual void save_state(std::ostream& out) const = 0;

private:
    ModelSpec spec_;
    std::size_t dim_;
};

/// Fits the family named by `spec` on `train`. Class-weighted variants derive
/// w_c = n/(2 n_c) from the training labels; classical variants use unit
/// weights. Training must contain both classes.
std::unique_ptr<FittedClassifier> fit_classifier(const ModelSpec& spec, const Dataset& train);

/// Restores a classifier persisted with FittedClassifier::save.
std::unique_ptr<FittedClassifier> load_classifier(std::istream& in);

}  // namespace frauddet
