#include "frauddet/classifier.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "frauddet/gradient_boosted_trees.hpp"
#include "frauddet/knn.hpp"
#include "frauddet/logistic_regression.hpp"
#include "frauddet/mlp.hpp"
#include "frauddet/naive_bayes.hpp"
#include "frauddet/random_forest.hpp"
#include "tree_serialization.hpp"

namespace frauddet {

double FittedClassifier::score_row(std::span<const double> row) const {
    if (row.size() != dim_)
        throw std::invalid_argument("classifier: expected dimension " + std::to_string(dim_) +
                                    ", got " + std::to_string(row.size()));
    return do_score(row);
}

std::vector<double> FittedClassifier::score(const Matrix& features) const {
    if (features.rows() > 0 && features.cols() != dim_)
        throw std::invalid_argument("classifier: feature dimension mismatch");
    std::vector<double> out;
    out.reserve(features.rows());
    for (std::size_t i = 0; i < features.rows(); ++i) out.push_back(do_score(features.row(i)));
    return out;
}

std::vector<int> FittedClassifier::predict(const Matrix& features) const {
    const std::vector<double> scores = score(features);
    std::vector<int> labels(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) labels[i] = scores[i] >= 0.5 ? 1 : 0;
    return labels;
}

void FittedClassifier::save(std::ostream& out) const {
    out << "frauddet-model 1\n";
    write_spec(out, spec_);
    out << "dim = " << dim_ << "\n";
    out << "state\n";
    save_state(out);
}

std::unique_ptr<FittedClassifier> fit_classifier(const ModelSpec& spec, const Dataset& train) {
    spec.validate();
    if (train.size() == 0) throw std::invalid_argument("fit_classifier: empty training set");
    const std::size_t n1 = train.count_label(1);
    if (n1 == 0 || n1 == train.size())
        throw std::invalid_argument("fit_classifier: training data must contain both classes");

    switch (spec.family) {
        case Family::KNN: return std::make_unique<KnnClassifier>(spec, train);
        case Family::NB: return std::make_unique<NaiveBayesClassifier>(spec, train);
        case Family::LR: return std::make_unique<LogisticRegressionClassifier>(spec, train);
        case Family::RF: return std::make_unique<RandomForestClassifier>(spec, train);
        case Family::GBT: return std::make_unique<GbtClassifier>(spec, train);
        case Family::MLP: return std::make_unique<MlpClassifier>(spec, train);
    }
    throw std::logic_error("fit_classifier: unhandled family");
}

std::unique_ptr<FittedClassifier> load_classifier(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "frauddet-model 1")
        throw std::runtime_error("load_classifier: unrecognized header '" + line + "'");

    std::stringstream spec_block;
    std::size_t dim = 0;
    while (std::getline(in, line)) {
        if (line == "state") break;
        if (line.rfind("dim", 0) == 0) {
            const auto eq = line.find('=');
            dim = std::stoull(line.substr(eq + 1));
        } else {
            spec_block << line << "\n";
        }
    }
    ModelSpec spec = read_spec(spec_block);

    nlohmann::json state;
    in >> state;

    switch (spec.family) {
        case Family::KNN: {
            Matrix points(state["points"].size(), dim);
            for (std::size_t i = 0; i < points.rows(); ++i)
                for (std::size_t j = 0; j < dim; ++j)
                    points(i, j) = state["points"][i][j].get<double>();
            return std::make_unique<KnnClassifier>(
                spec, std::move(points), state["labels"].get<std::vector<int>>(),
                ClassWeights{state["w0"].get<double>(), state["w1"].get<double>()});
        }
        case Family::NB:
            return std::make_unique<NaiveBayesClassifier>(
                spec, dim,
                std::array<double, 2>{state["log_prior0"].get<double>(),
                                      state["log_prior1"].get<double>()},
                std::array<std::vector<double>, 2>{state["mean0"].get<std::vector<double>>(),
                                                   state["mean1"].get<std::vector<double>>()},
                std::array<std::vector<double>, 2>{state["var0"].get<std::vector<double>>(),
                                                   state["var1"].get<std::vector<double>>()});
        case Family::LR:
            return std::make_unique<LogisticRegressionClassifier>(
                spec, dim, state["beta"].get<std::vector<double>>());
        case Family::RF: {
            std::vector<DecisionTree> trees;
            for (const auto& t : state["trees"]) trees.push_back(tree_from_json(t));
            return std::make_unique<RandomForestClassifier>(
                spec, dim, std::move(trees),
                ClassWeights{state["w0"].get<double>(), state["w1"].get<double>()});
        }
        case Family::GBT: {
            std::vector<DecisionTree> trees;
            for (const auto& t : state["trees"]) trees.push_back(tree_from_json(t));
            return std::make_unique<GbtClassifier>(spec, dim, state["base_logit"].get<double>(),
                                                   std::move(trees),
                                                   state["scales"].get<std::vector<double>>());
        }
        case Family::MLP:
            return std::make_unique<MlpClassifier>(
                spec, MlpShape{dim, state["hidden"].get<std::size_t>()},
                state["params"].get<std::vector<double>>());
    }
    throw std::logic_error("load_classifier: unhandled family");
}

}  // namespace frauddet
