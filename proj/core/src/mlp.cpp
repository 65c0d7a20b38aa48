#include "frauddet/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "frauddet/lbfgs.hpp"
#include "frauddet/random.hpp"

namespace frauddet {

namespace {

constexpr double kAdamStep = 1e-3;
constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEpsilon = 1e-8;
constexpr std::size_t kAdamBatch = 128;
constexpr std::size_t kLbfgsMaxIterations = 200;

double stable_sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double logistic_nll(double z, int y) {
    const double margin = y == 1 ? z : -z;
    return margin >= 0.0 ? std::log1p(std::exp(-margin)) : -margin + std::log1p(std::exp(margin));
}

struct ParamView {
    std::span<const double> w1, b1, w2;
    double b2;
};

ParamView view(const MlpShape& shape, std::span<const double> params) {
    const std::size_t h = shape.hidden, d = shape.dim;
    return {params.subspan(0, h * d), params.subspan(h * d, h),
            params.subspan(h * d + h, h), params[h * d + 2 * h]};
}

double forward_logit(const MlpShape& shape, std::span<const double> params,
                     std::span<const double> x) {
    const auto p = view(shape, params);
    double z2 = p.b2;
    for (std::size_t r = 0; r < shape.hidden; ++r) {
        double z1 = p.b1[r];
        const std::size_t base = r * shape.dim;
        for (std::size_t j = 0; j < shape.dim; ++j) z1 += p.w1[base + j] * x[j];
        if (z1 > 0.0) z2 += p.w2[r] * z1;
    }
    return z2;
}

}  // namespace

double mlp_loss_and_gradient(const MlpShape& shape, std::span<const double> params,
                             const Matrix& features, const std::vector<int>& labels,
                             const std::vector<double>& sample_weights,
                             std::span<double> grad_out) {
    const std::size_t n = features.rows();
    const std::size_t h = shape.hidden, d = shape.dim;
    const auto p = view(shape, params);

    std::fill(grad_out.begin(), grad_out.end(), 0.0);
    auto g_w1 = grad_out.subspan(0, h * d);
    auto g_b1 = grad_out.subspan(h * d, h);
    auto g_w2 = grad_out.subspan(h * d + h, h);
    double& g_b2 = grad_out[h * d + 2 * h];

    std::vector<double> z1(h), a1(h);
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = features.row(i);
        double z2 = p.b2;
        for (std::size_t r = 0; r < h; ++r) {
            double z = p.b1[r];
            const std::size_t base = r * d;
            for (std::size_t j = 0; j < d; ++j) z += p.w1[base + j] * x[j];
            z1[r] = z;
            a1[r] = z > 0.0 ? z : 0.0;
            z2 += p.w2[r] * a1[r];
        }
        const double w = sample_weights[i];
        loss += w * logistic_nll(z2, labels[i]);

        const double dz2 = w * (stable_sigmoid(z2) - static_cast<double>(labels[i]));
        g_b2 += dz2;
        for (std::size_t r = 0; r < h; ++r) {
            g_w2[r] += dz2 * a1[r];
            if (z1[r] > 0.0) {
                const double dz1 = dz2 * p.w2[r];
                g_b1[r] += dz1;
                const std::size_t base = r * d;
                for (std::size_t j = 0; j < d; ++j) g_w1[base + j] += dz1 * x[j];
            }
        }
    }
    const auto dn = static_cast<double>(n);
    for (double& g : grad_out) g /= dn;
    loss /= dn;
    if (!std::isfinite(loss)) throw std::runtime_error("MLP: non-finite training loss");
    return loss;
}

std::vector<double> mlp_init_params(const MlpShape& shape, std::uint64_t seed) {
    auto rng = make_rng(seed);
    std::vector<double> params(shape.parameter_count(), 0.0);
    const double limit1 =
        std::sqrt(6.0 / static_cast<double>(shape.dim + shape.hidden));
    const double limit2 = std::sqrt(6.0 / static_cast<double>(shape.hidden + 1));
    std::uniform_real_distribution<double> u1(-limit1, limit1), u2(-limit2, limit2);
    for (std::size_t i = 0; i < shape.hidden * shape.dim; ++i) params[i] = u1(rng);
    for (std::size_t r = 0; r < shape.hidden; ++r)
        params[shape.hidden * shape.dim + shape.hidden + r] = u2(rng);
    return params;  // biases start at zero
}

MlpClassifier::MlpClassifier(ModelSpec spec, const Dataset& train)
    : FittedClassifier(spec, train.dim()) {
    shape_ = MlpShape{train.dim(), static_cast<std::size_t>(spec.param("hidden"))};
    if (shape_.hidden < 1) throw std::invalid_argument("MLP: hidden must be >= 1");
    const std::size_t n = train.size();

    ClassWeights weights;
    if (spec.variant == Variant::ClassWeighted) weights = compute_class_weights(train.labels);
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = weights.of(train.labels[i]);

    params_ = mlp_init_params(shape_, derive_seed(spec.seed, 0x6d6c70));

    if (spec.optimizer == MlpOptimizer::Lbfgs) {
        LbfgsOptions options;
        options.history = 10;
        options.max_iterations = kLbfgsMaxIterations;
        lbfgs_minimize(
            [&](std::span<const double> x, std::span<double> grad) {
                return mlp_loss_and_gradient(shape_, x, train.features, train.labels, w, grad);
            },
            params_, options);
        return;
    }

    // Minibatch Adam over shuffled epochs.
    const auto epochs = static_cast<std::size_t>(spec.param("epochs"));
    auto rng = make_rng(derive_seed(spec.seed, 0x6164616d));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    const std::size_t np = params_.size();
    std::vector<double> m(np, 0.0), v(np, 0.0), grad(np);
    Matrix batch_x;
    std::vector<int> batch_y;
    std::vector<double> batch_w;
    std::size_t step = 0;
    for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t start = 0; start < n; start += kAdamBatch) {
            const std::size_t stop = std::min(start + kAdamBatch, n);
            batch_x = Matrix(stop - start, shape_.dim);
            batch_y.clear();
            batch_w.clear();
            for (std::size_t b = start; b < stop; ++b) {
                const std::size_t i = order[b];
                auto dst = batch_x.row(b - start);
                const auto src = train.features.row(i);
                std::copy(src.begin(), src.end(), dst.begin());
                batch_y.push_back(train.labels[i]);
                batch_w.push_back(w[i]);
            }
            mlp_loss_and_gradient(shape_, params_, batch_x, batch_y, batch_w, grad);
            ++step;
            const double bias1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(step));
            const double bias2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(step));
            for (std::size_t j = 0; j < np; ++j) {
                m[j] = kAdamBeta1 * m[j] + (1.0 - kAdamBeta1) * grad[j];
                v[j] = kAdamBeta2 * v[j] + (1.0 - kAdamBeta2) * grad[j] * grad[j];
                params_[j] -=
                    kAdamStep * (m[j] / bias1) / (std::sqrt(v[j] / bias2) + kAdamEpsilon);
            }
        }
    }
}

MlpClassifier::MlpClassifier(ModelSpec spec, MlpShape shape, std::vector<double> params)
    : FittedClassifier(spec, shape.dim), shape_(shape), params_(std::move(params)) {}

double MlpClassifier::logit_row(std::span<const double> row) const {
    return forward_logit(shape_, params_, row);
}

double MlpClassifier::do_score(std::span<const double> row) const {
    return stable_sigmoid(logit_row(row));
}

void MlpClassifier::save_state(std::ostream& out) const {
    nlohmann::json j;
    j["hidden"] = shape_.hidden;
    j["params"] = params_;
    out << j << "\n";
}

}  // namespace frauddet
