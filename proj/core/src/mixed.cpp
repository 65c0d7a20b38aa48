#include "frauddet/mixed.hpp"

#include <ostream>

#include "frauddet/random.hpp"

namespace frauddet {

std::uint64_t cluster_seed(std::uint64_t base, std::size_t cluster) {
    return cluster == 0 ? base : derive_seed(base, 0x636c7573, cluster);
}

int ClusterPredictor::predict_row(std::span<const double> row) const {
    if (constant) return constant->label;
    if (models.size() == 1) return models.front()->predict_row(row);
    if (rule == AggregationRule::OrLogic) {
        for (const auto& model : models)
            if (model->predict_row(row) == 1) return 1;  // short-circuit
        return 0;
    }
    std::size_t ones = 0;
    for (const auto& model : models)
        ones += static_cast<std::size_t>(model->predict_row(row));
    return 2 * ones > models.size() ? 1 : 0;
}

MixedModel fit_mixed(const Dataset& train, std::size_t k, const PredictorTemplate& tmpl,
                     std::uint64_t seed, const MixedOptions& options) {
    if (const auto* ensemble = std::get_if<EnsembleTemplate>(&tmpl)) {
        if (ensemble->rule == AggregationRule::MajorityVote && ensemble->members.size() % 2 == 0)
            throw std::invalid_argument("fit_mixed: majority vote needs an odd member count");
        if (ensemble->members.empty())
            throw std::invalid_argument("fit_mixed: ensemble template has no members");
    }
    MixedModel model;
    model.kmeans =
        fit_kmeans(train.features, k, seed, options.kmeans_max_iter, options.kmeans_tol);
    const std::vector<std::size_t> assignment = kmeans_assign(model.kmeans, train.features);

    std::vector<std::vector<std::size_t>> rows_of(k);
    for (std::size_t i = 0; i < assignment.size(); ++i)
        rows_of[assignment[i]].push_back(i);  // ascending: cluster data keeps row order

    model.clusters.resize(k);
    for (std::size_t c = 0; c < k; ++c) {
        ClusterPredictor& predictor = model.clusters[c];
        const auto& rows = rows_of[c];
        predictor.train_size = rows.size();

        if (rows.empty()) {
            predictor.constant =
                ConstantPredictor{0, ConstantPredictor::Reason::EmptyCluster};
            continue;
        }
        Dataset cluster_data = train.take(rows);
        predictor.fraud_count = cluster_data.count_label(1);

        const std::size_t genuine = predictor.train_size - predictor.fraud_count;
        const int majority = predictor.fraud_count > genuine ? 1 : 0;
        if (predictor.fraud_count == 0 || genuine == 0) {
            predictor.constant = ConstantPredictor{
                majority, ConstantPredictor::Reason::SingleClassCluster};
            continue;
        }
        if (rows.size() < options.min_cluster_size) {
            predictor.constant =
                ConstantPredictor{majority, ConstantPredictor::Reason::BelowMinSize};
            continue;
        }

        // Rebalancing and class weights reflect this cluster's own imbalance.
        Dataset rebalanced;
        bool have_rebalanced = false;
        auto training_view = [&](const ModelSpec& spec) -> const Dataset& {
            if (spec.variant == Variant::Classical && options.rebalance_classical) {
                if (!have_rebalanced) {
                    rebalanced =
                        rebalance(cluster_data, cluster_seed(options.rebalance_seed, c));
                    have_rebalanced = true;
                }
                return rebalanced;
            }
            return cluster_data;
        };
        auto fit_member = [&](const ModelSpec& base) {
            ModelSpec spec = base;
            spec.seed = cluster_seed(base.seed, c);
            return std::shared_ptr<const FittedClassifier>(
                fit_classifier(spec, training_view(spec)));
        };

        if (const auto* single = std::get_if<ModelSpec>(&tmpl)) {
            predictor.models.push_back(fit_member(*single));
        } else {
            const auto& ensemble = std::get<EnsembleTemplate>(tmpl);
            predictor.rule = ensemble.rule;
            for (const ModelSpec& member : ensemble.members)
                predictor.models.push_back(fit_member(member));
        }
    }
    return model;
}

std::vector<int> predict_mixed(const MixedModel& model, const Matrix& features) {
    if (features.rows() > 0 && features.cols() != model.kmeans.centroids.cols())
        throw std::invalid_argument("predict_mixed: dimension mismatch");
    std::vector<int> out(features.rows());
    for (std::size_t i = 0; i < features.rows(); ++i) {
        const auto row = features.row(i);
        const std::size_t c = kmeans_assign_row(model.kmeans, row);
        out[i] = model.clusters[c].predict_row(row);
    }
    return out;
}

void write_mixed_summary(std::ostream& out, const MixedModel& model) {
    out << "cluster,size,fraud_count,predictor_kind\n";
    for (std::size_t c = 0; c < model.clusters.size(); ++c) {
        const ClusterPredictor& predictor = model.clusters[c];
        std::string kind;
        if (predictor.constant) {
            kind = "constant_" + std::to_string(predictor.constant->label);
            switch (predictor.constant->reason) {
                case ConstantPredictor::Reason::SingleClassCluster: kind += "_single_class"; break;
                case ConstantPredictor::Reason::EmptyCluster: kind += "_empty"; break;
                case ConstantPredictor::Reason::BelowMinSize: kind += "_below_min_size"; break;
            }
        } else if (predictor.models.size() == 1) {
            kind = predictor.models.front()->spec().acronym();
        } else {
            kind = to_string(predictor.rule);
            for (const auto& m : predictor.models) kind += " " + m->spec().acronym();
        }
        out << c << ',' << predictor.train_size << ',' << predictor.fraud_count << ','
            << kind << '\n';
    }
}

}  // namespace frauddet
