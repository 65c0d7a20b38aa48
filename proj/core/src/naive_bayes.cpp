#include "frauddet/naive_bayes.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include <json.hpp>

namespace frauddet {

NaiveBayesClassifier::NaiveBayesClassifier(ModelSpec spec, const Dataset& train)
    : FittedClassifier(spec, train.dim()) {
    const std::size_t n = train.size();
    const std::size_t d = train.dim();
    std::size_t counts[2] = {0, 0};
    for (int y : train.labels) counts[y]++;

    for (int c = 0; c < 2; ++c) {
        log_priors_[c] = std::log(static_cast<double>(counts[c]) / static_cast<double>(n));
        means_[c].assign(d, 0.0);
        variances_[c].assign(d, 0.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const int c = train.labels[i];
        for (std::size_t j = 0; j < d; ++j) means_[c][j] += train.features(i, j);
    }
    for (int c = 0; c < 2; ++c)
        for (std::size_t j = 0; j < d; ++j) means_[c][j] /= static_cast<double>(counts[c]);
    for (std::size_t i = 0; i < n; ++i) {
        const int c = train.labels[i];
        for (std::size_t j = 0; j < d; ++j) {
            const double diff = train.features(i, j) - means_[c][j];
            variances_[c][j] += diff * diff;
        }
    }
    for (int c = 0; c < 2; ++c)
        for (std::size_t j = 0; j < d; ++j) variances_[c][j] /= static_cast<double>(counts[c]);

    // Floor variances relative to the widest overall feature variance.
    double max_var = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += train.features(i, j);
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double diff = train.features(i, j) - mean;
            var += diff * diff;
        }
        max_var = std::max(max_var, var / static_cast<double>(n));
    }
    const double floor = max_var > 0.0 ? 1e-9 * max_var : 1e-9;
    for (int c = 0; c < 2; ++c)
        for (std::size_t j = 0; j < d; ++j)
            variances_[c][j] = std::max(variances_[c][j], floor);
}

NaiveBayesClassifier::NaiveBayesClassifier(ModelSpec spec, std::size_t dim,
                                           std::array<double, 2> log_priors,
                                           std::array<std::vector<double>, 2> means,
                                           std::array<std::vector<double>, 2> variances)
    : FittedClassifier(spec, dim),
      log_priors_(log_priors),
      means_(std::move(means)),
      variances_(std::move(variances)) {}

double NaiveBayesClassifier::do_score(std::span<const double> row) const {
    double log_post[2];
    for (int c = 0; c < 2; ++c) {
        double lp = log_priors_[c];
        for (std::size_t j = 0; j < row.size(); ++j) {
            const double var = variances_[c][j];
            const double diff = row[j] - means_[c][j];
            lp += -0.5 * (std::log(2.0 * std::numbers::pi * var) + diff * diff / var);
        }
        log_post[c] = lp;
    }
    // P(y=1 | x) without overflow: sigmoid of the log-posterior gap.
    const double gap = log_post[1] - log_post[0];
    if (gap >= 0.0) return 1.0 / (1.0 + std::exp(-gap));
    const double e = std::exp(gap);
    return e / (1.0 + e);
}

void NaiveBayesClassifier::save_state(std::ostream& out) const {
    nlohmann::json j;
    j["log_prior0"] = log_priors_[0];
    j["log_prior1"] = log_priors_[1];
    j["mean0"] = means_[0];
    j["mean1"] = means_[1];
    j["var0"] = variances_[0];
    j["var1"] = variances_[1];
    out << j << "\n";
}

}  // namespace frauddet
