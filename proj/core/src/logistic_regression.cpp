#include "frauddet/logistic_regression.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace frauddet {

namespace {

constexpr double kLearningRate = 0.1;
constexpr std::size_t kMaxIterations = 5000;
constexpr double kGradientTolerance = 1e-6;

double stable_sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

/// -log(sigmoid(z)) if y = 1 else -log(1 - sigmoid(z)), computed stably.
double logistic_nll(double z, int y) {
    const double margin = y == 1 ? z : -z;
    return margin >= 0.0 ? std::log1p(std::exp(-margin)) : -margin + std::log1p(std::exp(margin));
}

}  // namespace

LogisticRegressionClassifier::LogisticRegressionClassifier(ModelSpec spec, const Dataset& train)
    : FittedClassifier(spec, train.dim()) {
    const std::size_t n = train.size();
    const std::size_t d = train.dim();
    const double lambda = spec.param("lambda");

    ClassWeights weights;
    if (spec.variant == Variant::ClassWeighted) weights = compute_class_weights(train.labels);

    beta_.assign(d + 1, 0.0);  // last entry is the intercept

    // Mean weighted log-likelihood minus the L2 penalty (bias unpenalized).
    auto objective_and_gradient = [&](const std::vector<double>& beta,
                                      std::vector<double>& grad) {
        double obj = 0.0;
        grad.assign(d + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto x = train.features.row(i);
            double z = beta[d];
            for (std::size_t j = 0; j < d; ++j) z += beta[j] * x[j];
            const int y = train.labels[i];
            const double w = weights.of(y);
            obj -= w * logistic_nll(z, y);
            const double residual = w * (static_cast<double>(y) - stable_sigmoid(z));
            for (std::size_t j = 0; j < d; ++j) grad[j] += residual * x[j];
            grad[d] += residual;
        }
        const auto dn = static_cast<double>(n);
        obj /= dn;
        for (std::size_t j = 0; j <= d; ++j) grad[j] /= dn;
        if (lambda > 0.0) {
            for (std::size_t j = 0; j < d; ++j) {
                obj -= 0.5 * lambda * beta[j] * beta[j] / dn;
                grad[j] -= lambda * beta[j] / dn;
            }
        }
        if (!std::isfinite(obj))
            throw std::runtime_error("LR: non-finite objective during optimization");
        return obj;
    };

    std::vector<double> grad, candidate(d + 1), grad_scratch;
    double obj = objective_and_gradient(beta_, grad);
    trace_.push_back(obj);

    for (std::size_t iter = 0; iter < kMaxIterations; ++iter) {
        double max_grad = 0.0;
        for (double g : grad) max_grad = std::max(max_grad, std::abs(g));
        if (max_grad < kGradientTolerance) break;

        double step = kLearningRate;
        double new_obj = obj;
        bool advanced = false;
        while (step > 1e-15) {
            for (std::size_t j = 0; j <= d; ++j) candidate[j] = beta_[j] + step * grad[j];
            new_obj = objective_and_gradient(candidate, grad_scratch);
            if (new_obj >= obj) {
                advanced = true;
                break;
            }
            step *= 0.5;
        }
        if (!advanced) break;
        beta_.swap(candidate);
        grad.swap(grad_scratch);
        obj = new_obj;
        trace_.push_back(obj);
    }
}

LogisticRegressionClassifier::LogisticRegressionClassifier(ModelSpec spec, std::size_t dim,
                                                           std::vector<double> beta)
    : FittedClassifier(spec, dim), beta_(std::move(beta)) {}

double LogisticRegressionClassifier::do_score(std::span<const double> row) const {
    double z = beta_.back();
    for (std::size_t j = 0; j < row.size(); ++j) z += beta_[j] * row[j];
    return stable_sigmoid(z);
}

void LogisticRegressionClassifier::save_state(std::ostream& out) const {
    nlohmann::json j;
    j["beta"] = beta_;
    out << j << "\n";
}

}  // namespace frauddet
