#include "frauddet/feature_select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "frauddet/random_forest.hpp"

namespace frauddet {

std::vector<std::size_t> FeatureVerdict::selected_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < relevant.size(); ++j)
        if (relevant[j]) out.push_back(j);
    return out;
}

std::vector<double> pearson_scores(const Dataset& data) {
    const std::size_t n = data.size();
    const std::size_t d = data.dim();
    if (n < 2) throw std::invalid_argument("pearson_scores: need at least two objects");
    const std::size_t n1 = data.count_label(1);
    if (n1 == 0 || n1 == n)
        throw std::invalid_argument("pearson_scores: labels are single-class");

    const double y_mean = static_cast<double>(n1) / static_cast<double>(n);
    double y_var = 0.0;
    for (int y : data.labels) {
        const double diff = static_cast<double>(y) - y_mean;
        y_var += diff * diff;
    }

    std::vector<double> scores(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        double x_mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) x_mean += data.features(i, j);
        x_mean /= static_cast<double>(n);
        double x_var = 0.0, cov = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dx = data.features(i, j) - x_mean;
            x_var += dx * dx;
            cov += dx * (static_cast<double>(data.labels[i]) - y_mean);
        }
        scores[j] = x_var > 0.0 ? std::abs(cov / std::sqrt(x_var * y_var)) : 0.0;
    }
    return scores;
}

std::vector<double> mutual_information_scores(const Dataset& data, std::size_t bins) {
    if (bins < 2) throw std::invalid_argument("mutual_information_scores: bins must be >= 2");
    const std::size_t n = data.size();
    const std::size_t d = data.dim();
    const auto dn = static_cast<double>(n);

    const double p_y1 = static_cast<double>(data.count_label(1)) / dn;
    const double p_y[2] = {1.0 - p_y1, p_y1};

    std::vector<double> scores(d, 0.0);
    std::vector<std::size_t> joint(bins * 2);
    for (std::size_t j = 0; j < d; ++j) {
        double lo = data.features(0, j), hi = lo;
        for (std::size_t i = 1; i < n; ++i) {
            lo = std::min(lo, data.features(i, j));
            hi = std::max(hi, data.features(i, j));
        }
        if (hi <= lo) continue;  // constant feature carries no information

        std::fill(joint.begin(), joint.end(), 0);
        const double width = (hi - lo) / static_cast<double>(bins);
        for (std::size_t i = 0; i < n; ++i) {
            auto b = static_cast<std::size_t>((data.features(i, j) - lo) / width);
            b = std::min(b, bins - 1);  // the maximum lands in the last bin
            ++joint[b * 2 + static_cast<std::size_t>(data.labels[i])];
        }

        double mi = 0.0;
        for (std::size_t b = 0; b < bins; ++b) {
            const double p_b =
                static_cast<double>(joint[b * 2] + joint[b * 2 + 1]) / dn;
            if (p_b == 0.0) continue;
            for (int y = 0; y < 2; ++y) {
                const double p_by = static_cast<double>(joint[b * 2 + y]) / dn;
                if (p_by == 0.0 || p_y[y] == 0.0) continue;
                mi += p_by * std::log2(p_by / (p_b * p_y[y]));
            }
        }
        scores[j] = std::max(mi, 0.0);
    }
    return scores;
}

ImportanceScores importance_scores(const Dataset& data, const ModelSpec& forest_config,
                                   std::uint64_t seed) {
    if (forest_config.family != Family::RF)
        throw std::invalid_argument("importance_scores: forest_config must be an RF spec");
    ModelSpec spec = forest_config;
    spec.seed = seed;
    RandomForestClassifier forest(spec, data);
    const auto importances = forest.feature_importances();
    return ImportanceScores{importances.scores, importances.no_splits};
}

FeatureVerdict select_features(const Dataset& data, std::size_t bins,
                               const ModelSpec& forest_config, std::uint64_t seed) {
    FeatureVerdict verdict;
    verdict.pearson = pearson_scores(data);
    verdict.mutual_information = mutual_information_scores(data, bins);
    const ImportanceScores imp = importance_scores(data, forest_config, seed);
    verdict.importance = imp.scores;
    verdict.importance_degenerate = imp.degenerate;

    const std::size_t d = data.dim();
    auto vote_above_mean = [d](const std::vector<double>& scores) {
        const double mean = std::accumulate(scores.begin(), scores.end(), 0.0) /
                            static_cast<double>(d);
        std::vector<bool> votes(d);
        for (std::size_t j = 0; j < d; ++j) votes[j] = scores[j] > mean;
        return votes;
    };
    verdict.vote_pearson = vote_above_mean(verdict.pearson);
    verdict.vote_mi = vote_above_mean(verdict.mutual_information);
    verdict.vote_importance = vote_above_mean(verdict.importance);

    verdict.relevant.resize(d);
    bool any = false;
    for (std::size_t j = 0; j < d; ++j) {
        const int votes = int(verdict.vote_pearson[j]) + int(verdict.vote_mi[j]) +
                          int(verdict.vote_importance[j]);
        verdict.relevant[j] = votes >= 2;
        any = any || verdict.relevant[j];
    }

    if (!any) {
        // Classification needs at least one feature: force the one with the
        // best (lowest) summed rank, ranks counted as strictly-better scores.
        auto ranks = [d](const std::vector<double>& scores, std::size_t j) {
            std::size_t better = 0;
            for (std::size_t i = 0; i < d; ++i)
                if (scores[i] > scores[j]) ++better;
            return better;
        };
        std::size_t best = 0;
        std::size_t best_rank = std::numeric_limits<std::size_t>::max();
        for (std::size_t j = 0; j < d; ++j) {
            const std::size_t total = ranks(verdict.pearson, j) +
                                      ranks(verdict.mutual_information, j) +
                                      ranks(verdict.importance, j);
            if (total < best_rank) {
                best_rank = total;
                best = j;
            }
        }
        verdict.relevant[best] = true;
    }
    return verdict;
}

void write_selection_csv(std::ostream& out, const Dataset& data, const FeatureVerdict& verdict) {
    out << "feature_name,pearson,mi,importance,vote_p,vote_mi,vote_fi,relevant\n";
    out.precision(10);
    for (std::size_t j = 0; j < verdict.relevant.size(); ++j) {
        const std::string name = j < data.feature_names.size() ? data.feature_names[j]
                                                               : "f" + std::to_string(j);
        out << name << ',' << verdict.pearson[j] << ',' << verdict.mutual_information[j] << ','
            << verdict.importance[j] << ',' << int(verdict.vote_pearson[j]) << ','
            << int(verdict.vote_mi[j]) << ',' << int(verdict.vote_importance[j]) << ','
            << int(verdict.relevant[j]) << '\n';
    }
}

}  // namespace frauddet
