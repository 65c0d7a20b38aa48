#pragma once

#include <array>

#include "frauddet/classifier.hpp"

namespace frauddet {

/// Gaussian naive Bayes: per class, each feature gets an independent normal
/// likelihood. Variances are floored at 1e-9 times the largest per-feature
/// training variance (1e-9 absolute when every variance is zero) so a
/// constant feature cannot produce a singular likelihood.
class NaiveBayesClassifier final : public FittedClassifier {
public:
    NaiveBayesClassifier(ModelSpec spec, const Dataset& train);
    NaiveBayesClassifier(ModelSpec spec, std::size_t dim, std::array<double, 2> log_priors,
                         std::array<std::vector<double>, 2> means,
                         std::array<std::vector<double>, 2> variances);

    const std::array<std::vector<double>, 2>& means() const { return means_; }
    const std::array<std::vector<double>, 2>& variances() const { return variances_; }

protected:
    double do_score(std::span<const double> row) const override;
    void save_state(std::ostream& out) const override;

private:
    std::array<double, 2> log_priors_{};
    std::array<std::vector<double>, 2> means_;
    std::array<std::vector<double>, 2> variances_;
};

}  // namespace frauddet
