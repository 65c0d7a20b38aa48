#include "frauddet/evaluate.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "frauddet/random.hpp"

namespace frauddet {

std::vector<std::vector<std::size_t>> stratified_folds(const std::vector<int>& labels,
                                                       std::size_t folds, std::uint64_t seed) {
    if (folds < 2) throw std::invalid_argument("stratified_folds: folds must be >= 2");
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
    for (int c = 0; c < 2; ++c)
        if (by_class[c].size() < folds)
            throw std::invalid_argument("stratified_folds: class " + std::to_string(c) +
                                        " has fewer objects than folds");

    auto rng = make_rng(seed);
    std::vector<std::vector<std::size_t>> out(folds);
    std::size_t cursor = 0;
    for (int c = 0; c < 2; ++c) {
        std::shuffle(by_class[c].begin(), by_class[c].end(), rng);
        for (std::size_t i : by_class[c]) out[cursor++ % folds].push_back(i);
    }
    for (auto& fold : out) std::sort(fold.begin(), fold.end());
    return out;
}

namespace {

constexpr std::uint64_t kRebalanceTag = 0x7265626c;
constexpr std::uint64_t kFoldTag = 0x666f6c64;

/// Fits the target on `train` and predicts `test` features. `context_seed`
/// keys rebalancing and per-fit seed derivation for this train/test pass.
std::vector<int> fit_and_predict(const EvalTarget& target, const Dataset& train,
                                 const Matrix& test_features, std::uint64_t context_seed,
                                 const EvalOptions& options) {
    Dataset rebalanced;
    bool have_rebalanced = false;
    auto training_view = [&](const ModelSpec& spec) -> const Dataset& {
        if (spec.variant == Variant::Classical && options.rebalance_classical) {
            if (!have_rebalanced) {
                rebalanced = rebalance(train, derive_seed(context_seed, kRebalanceTag));
                have_rebalanced = true;
            }
            return rebalanced;
        }
        return train;
    };
    auto with_seed = [&](const ModelSpec& base) {
        ModelSpec spec = base;
        spec.seed = derive_seed(base.seed, kFoldTag, context_seed);
        return spec;
    };

    if (const auto* single = std::get_if<ModelSpec>(&target)) {
        const ModelSpec spec = with_seed(*single);
        return fit_classifier(spec, training_view(spec))->predict(test_features);
    }
    if (const auto* ensemble = std::get_if<EnsembleTemplate>(&target)) {
        std::vector<std::unique_ptr<FittedClassifier>> fitted;
        std::vector<const FittedClassifier*> members;
        for (const ModelSpec& base : ensemble->members) {
            const ModelSpec spec = with_seed(base);
            fitted.push_back(fit_classifier(spec, training_view(spec)));
            members.push_back(fitted.back().get());
        }
        EnsembleSpec spec;
        spec.rule = ensemble->rule;
        spec.members.resize(members.size());
        std::iota(spec.members.begin(), spec.members.end(), 0);
        return predict_ensemble(spec, members, test_features);
    }
    const auto& mixed = std::get<MixedTemplate>(target);
    MixedOptions mixed_options;
    mixed_options.min_cluster_size = options.min_cluster_size;
    mixed_options.rebalance_classical = options.rebalance_classical;
    mixed_options.rebalance_seed = derive_seed(context_seed, kRebalanceTag);

    PredictorTemplate tmpl = mixed.predictor;
    if (auto* single = std::get_if<ModelSpec>(&tmpl)) {
        *single = with_seed(*single);
    } else {
        for (ModelSpec& member : std::get<EnsembleTemplate>(tmpl).members)
            member = with_seed(member);
    }
    const MixedModel model =
        fit_mixed(train, mixed.k, tmpl, derive_seed(context_seed, 0x6b6d), mixed_options);
    return predict_mixed(model, test_features);
}

}  // namespace

KFoldResult kfold_evaluate(const EvalTarget& target, const Dataset& data, std::size_t folds,
                           std::uint64_t seed, const EvalOptions& options) {
    const auto fold_indices = stratified_folds(data.labels, folds, seed);

    KFoldResult result;
    for (std::size_t f = 0; f < folds; ++f) {
        std::vector<std::size_t> train_rows;
        for (std::size_t other = 0; other < folds; ++other)
            if (other != f)
                train_rows.insert(train_rows.end(), fold_indices[other].begin(),
                                  fold_indices[other].end());
        std::sort(train_rows.begin(), train_rows.end());

        Dataset train = data.take(train_rows);
        Dataset test = data.take(fold_indices[f]);
        if (options.scale) {
            const ScalerParams scaler = fit_scaler(train);
            train = apply_scaler(scaler, train);
            test = apply_scaler(scaler, test);
        }

        const std::vector<int> predicted =
            fit_and_predict(target, train, test.features, derive_seed(seed, f + 1), options);
        const ConfusionCounts counts = confusion(predicted, test.labels);
        result.fold_counts.push_back(counts);
        result.fold_rows.push_back(metrics(counts));
        result.pooled += counts;
    }
    result.aggregate = metrics(result.pooled);
    return result;
}

ReportRow kfold_report_row(std::string label, const KFoldResult& result) {
    ReportRow row;
    row.label = std::move(label);
    row.metrics = result.aggregate;
    row.fold_metrics = result.fold_rows;
    return row;
}

namespace {

/// Cartesian product of the grid in deterministic order: keys ascending (the
/// map order), values as listed, earlier keys vary slowest.
std::vector<std::map<std::string, double>> grid_points(const HyperGrid& grid) {
    std::vector<std::map<std::string, double>> points{{}};
    for (const auto& [key, values] : grid) {
        if (values.empty()) throw std::invalid_argument("holdout_search: empty value list");
        std::vector<std::map<std::string, double>> expanded;
        expanded.reserve(points.size() * values.size());
        for (const auto& point : points)
            for (double v : values) {
                auto next = point;
                next[key] = v;
                expanded.push_back(std::move(next));
            }
        points = std::move(expanded);
    }
    return points;
}

}  // namespace

SearchResult holdout_search(const HyperGrid& grid, const ModelSpec& tmpl, const Dataset& data,
                            double test_fraction, std::uint64_t seed,
                            const EvalOptions& options) {
    if (grid.empty()) throw std::invalid_argument("holdout_search: empty grid");

    const SplitSpec split = split_holdout(data, test_fraction, seed);
    Dataset train = data.take(split.train_indices);
    Dataset test = data.take(split.test_indices);
    if (options.scale) {
        const ScalerParams scaler = fit_scaler(train);
        train = apply_scaler(scaler, train);
        test = apply_scaler(scaler, test);
    }

    SearchResult result;
    bool first = true;
    for (const auto& point : grid_points(grid)) {
        ModelSpec candidate = tmpl;
        for (const auto& [key, value] : point) candidate.hyperparameters[key] = value;
        candidate.validate();

        const std::vector<int> predicted =
            fit_and_predict(candidate, train, test.features, derive_seed(seed, 0x6873), options);
        const MetricsRow row = metrics(confusion(predicted, test.labels));

        result.candidates.push_back({candidate, row.f1});
        // Undefined F1 ranks below any defined value; ties keep the earlier
        // candidate.
        const bool better =
            first || (row.f1.has_value() &&
                      (!result.best_f1.has_value() || *row.f1 > *result.best_f1));
        if (better) {
            result.best = candidate;
            result.best_f1 = row.f1;
            first = false;
        }
    }
    return result;
}

}  // namespace frauddet
