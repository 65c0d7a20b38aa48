#include "frauddet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "frauddet/parallel.hpp"
#include "frauddet/random.hpp"

namespace frauddet {

namespace {

constexpr std::uint64_t kValidationTag = 0x76616c;
constexpr std::uint64_t kSelectTag = 0x73656c;
constexpr std::uint64_t kRebalanceTag = 0x7265626c;
constexpr std::uint64_t kSearchTag = 0x73726368;
constexpr std::uint64_t kModelTag = 0x6d6f64;
constexpr std::uint64_t kKmeansTag = 0x6b6d6e73;

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw std::invalid_argument("config: bad boolean for '" + key + "': " + value);
}

AggregationRule parse_rule(const std::string& name) {
    if (name == "MV" || name == "CC-MV") return AggregationRule::MajorityVote;
    if (name == "OR" || name == "CC-OR") return AggregationRule::OrLogic;
    throw std::invalid_argument("config: unknown ensemble rule '" + name + "'");
}

std::string rule_key(AggregationRule rule) {
    return rule == AggregationRule::MajorityVote ? "MV" : "OR";
}

Dataset drop_columns(const Dataset& data, const std::vector<std::string>& names) {
    std::set<std::string> drop(names.begin(), names.end());
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < data.feature_names.size(); ++j)
        if (!drop.count(data.feature_names[j])) keep.push_back(j);
    if (keep.size() == data.dim()) return data;
    Dataset out;
    out.features = data.features.take_cols(keep);
    out.labels = data.labels;
    for (std::size_t j : keep) out.feature_names.push_back(data.feature_names[j]);
    return out;
}

}  // namespace

std::vector<std::string> ExperimentConfig::roster_names() const {
    if (!roster.empty()) return roster;
    std::vector<std::string> names;
    for (const ModelSpec& spec : default_roster()) names.push_back(spec.acronym());
    return names;
}

void ExperimentConfig::validate() const {
    if (data_path.empty()) throw std::invalid_argument("config: 'data' is required");
    if (k_values.empty()) throw std::invalid_argument("config: k_values must be non-empty");
    std::set<std::size_t> seen_k;
    for (std::size_t k : k_values) {
        if (k < 1 || k > 5)
            throw std::invalid_argument("config: k_values entries must be in {1,2,3,4,5}");
        if (!seen_k.insert(k).second)
            throw std::invalid_argument("config: duplicate k value");
    }
    if (folds < 2) throw std::invalid_argument("config: folds must be >= 2");
    if (!(validation_fraction > 0.0 && validation_fraction < 1.0))
        throw std::invalid_argument("config: validation_fraction must be in (0,1)");
    if (!(search_fraction > 0.0 && search_fraction < 1.0))
        throw std::invalid_argument("config: search_fraction must be in (0,1)");
    const auto names = roster_names();
    if (names.empty()) throw std::invalid_argument("config: roster must be non-empty");
    std::set<std::string> unique(names.begin(), names.end());
    if (unique.size() != names.size())
        throw std::invalid_argument("config: duplicate roster entries");
    for (const std::string& name : names) spec_from_acronym(name);  // throws if unknown
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open '" + path + "'");
    ExperimentConfig config;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) continue;

        if (key == "data") config.data_path = value;
        else if (key == "label_column") config.label_column = value;
        else if (key == "validation") config.validation_path = value;
        else if (key == "validation_fraction") config.validation_fraction = std::stod(value);
        else if (key == "seed") config.seed = std::stoull(value);
        else if (key == "feature_selection") config.feature_selection = parse_bool(value, key);
        else if (key == "bins") config.bins = std::stoull(value);
        else if (key == "rebalance") config.rebalance = parse_bool(value, key);
        else if (key == "k_values") {
            config.k_values.clear();
            for (const auto& item : split_list(value))
                config.k_values.push_back(std::stoull(item));
        } else if (key == "roster") {
            config.roster = split_list(value);
        } else if (key == "rules") {
            config.rules.clear();
            for (const auto& item : split_list(value)) config.rules.push_back(parse_rule(item));
        } else if (key == "search") {
            config.search = parse_bool(value, key);
        } else if (key == "search_fraction") {
            config.search_fraction = std::stod(value);
        } else if (key == "folds") {
            config.folds = std::stoull(value);
        } else if (key == "out") {
            config.out_dir = value;
        } else if (key == "jobs") {
            config.jobs = static_cast<unsigned>(std::stoul(value));
        } else if (key == "exclude") {
            config.exclude_columns = split_list(value);
        } else if (key.rfind("grid.", 0) == 0) {
            const auto second = key.find('.', 5);
            if (second == std::string::npos)
                throw std::invalid_argument("config: grid keys look like grid.FAMILY.param");
            const std::string family = key.substr(5, second - 5);
            const std::string param = key.substr(second + 1);
            auto& values = config.grids[family][param];
            values.clear();
            for (const auto& item : split_list(value)) values.push_back(std::stod(item));
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
    return config;
}

void write_config(std::ostream& out, const ExperimentConfig& config) {
    out << "data = " << config.data_path << "\n";
    out << "label_column = " << config.label_column << "\n";
    out << "validation = " << config.validation_path << "\n";
    out << "validation_fraction = " << config.validation_fraction << "\n";
    out << "seed = " << config.seed << "\n";
    out << "feature_selection = " << (config.feature_selection ? "true" : "false") << "\n";
    out << "bins = " << config.bins << "\n";
    out << "rebalance = " << (config.rebalance ? "true" : "false") << "\n";
    out << "k_values = ";
    for (std::size_t i = 0; i < config.k_values.size(); ++i)
        out << (i ? "," : "") << config.k_values[i];
    out << "\n";
    out << "roster = ";
    const auto names = config.roster_names();
    for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
    out << "\n";
    out << "rules = ";
    for (std::size_t i = 0; i < config.rules.size(); ++i)
        out << (i ? "," : "") << rule_key(config.rules[i]);
    out << "\n";
    out << "search = " << (config.search ? "true" : "false") << "\n";
    out << "search_fraction = " << config.search_fraction << "\n";
    for (const auto& [family, grid] : config.grids)
        for (const auto& [param, values] : grid) {
            out << "grid." << family << "." << param << " = ";
            for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
            out << "\n";
        }
    out << "folds = " << config.folds << "\n";
    out << "out = " << config.out_dir << "\n";
    out << "exclude = ";
    for (std::size_t i = 0; i < config.exclude_columns.size(); ++i)
        out << (i ? "," : "") << config.exclude_columns[i];
    out << "\n";
}

std::string config_hash(const ExperimentConfig& config) {
    std::ostringstream text;
    write_config(text, config);
    // FNV-1a, 64-bit
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text.str()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

HyperGrid default_grid(Family family) {
    switch (family) {
        case Family::KNN: return {{"k", {1, 3, 5}}};
        case Family::NB: return {};
        case Family::LR: return {{"lambda", {0.0, 0.1}}};
        case Family::RF: return {{"trees", {100}}};
        case Family::GBT: return {{"depth", {2, 3}}};
        case Family::MLP: return {{"epochs", {50, 200}}};
    }
    return {};
}

std::vector<int> parallel_predict(const FittedClassifier& model, const Matrix& features,
                                  unsigned jobs) {
    std::vector<int> out(features.rows());
    parallel_for(features.rows(), jobs,
                 [&](std::size_t i) { out[i] = model.predict_row(features.row(i)); });
    return out;
}

namespace {

struct Prepared {
    Dataset train;
    Dataset validation;
    FeatureVerdict selection;
    std::vector<std::string> selection_feature_names;
    bool selection_ran = false;
    std::vector<ModelSpec> roster_specs;  // seeds and searched hyperparameters set
    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::string>> failures;
};

Prepared prepare(const ExperimentConfig& config) {
    config.validate();
    Prepared prep;

    Dataset data = load_csv(config.data_path, config.label_column);
    data = drop_columns(data, config.exclude_columns);
    if (config.validation_path.empty()) {
        const SplitSpec split = split_holdout(data, config.validation_fraction,
                                              derive_seed(config.seed, kValidationTag));
        prep.train = data.take(split.train_indices);
        prep.validation = data.take(split.test_indices);
    } else {
        prep.train = std::move(data);
        Dataset validation = load_csv(config.validation_path, config.label_column);
        prep.validation = drop_columns(validation, config.exclude_columns);
        if (prep.validation.dim() != prep.train.dim())
            throw std::invalid_argument("experiment: validation dimension mismatch");
    }

    const ScalerParams scaler = fit_scaler(prep.train);
    prep.train = apply_scaler(scaler, prep.train);
    prep.validation = apply_scaler(scaler, prep.validation);

    if (config.feature_selection) {
        ModelSpec forest = spec_from_acronym("RF");
        prep.selection = select_features(prep.train, config.bins, forest,
                                         derive_seed(config.seed, kSelectTag));
        prep.selection_feature_names = prep.train.feature_names;
        prep.selection_ran = true;
        const std::vector<std::size_t> keep = prep.selection.selected_indices();
        auto reduce = [&](Dataset& d) {
            d.features = d.features.take_cols(keep);
            std::vector<std::string> names;
            for (std::size_t j : keep)
                names.push_back(j < d.feature_names.size() ? d.feature_names[j]
                                                           : "f" + std::to_string(j));
            d.feature_names = std::move(names);
        };
        reduce(prep.train);
        reduce(prep.validation);
    }

    prep.names = config.roster_names();
    for (std::size_t j = 0; j < prep.names.size(); ++j) {
        ModelSpec spec = spec_from_acronym(prep.names[j]);
        spec.seed = derive_seed(config.seed, kModelTag + j);
        prep.roster_specs.push_back(std::move(spec));
    }

    if (config.search) {
        EvalOptions options;
        options.rebalance_classical = config.rebalance;
        options.scale = false;  // the pipeline scaled globally already
        for (std::size_t j = 0; j < prep.roster_specs.size(); ++j) {
            ModelSpec& spec = prep.roster_specs[j];
            HyperGrid grid;
            const std::string family = to_string(spec.family);
            if (auto it = config.grids.find(family); it != config.grids.end())
                grid = it->second;
            else
                grid = default_grid(spec.family);
            if (grid.empty()) continue;  // nothing to search for this family
            try {
                const SearchResult result =
                    holdout_search(grid, spec, prep.train, config.search_fraction,
                                   derive_seed(config.seed, kSearchTag + j), options);
                spec.hyperparameters = result.best.hyperparameters;
            } catch (const std::exception& e) {
                prep.failures.emplace_back(prep.names[j] + " search", e.what());
            }
        }
    }
    return prep;
}

/// Individual + ensemble report rows from per-model validation votes.
/// Models whose slot is missing (fit failed) drop out; ensembles touching
/// them are skipped and counted.
void assemble_rows(const Prepared& prep, const ExperimentConfig& config,
                   const std::vector<std::optional<std::vector<int>>>& votes,
                   ExperimentOutcome& outcome) {
    std::vector<ReportRow> rows;
    for (std::size_t j = 0; j < prep.names.size(); ++j) {
        if (!votes[j]) continue;
        ReportRow row;
        row.label = prep.names[j];
        row.metrics = metrics(confusion(*votes[j], prep.validation.labels));
        rows.push_back(std::move(row));
    }

    const std::size_t n = prep.validation.size();
    for (const AggregationRule rule : config.rules) {
        const std::vector<EnsembleSpec> specs = enumerate_ensembles(prep.names, rule);
        std::vector<std::optional<ReportRow>> slots(specs.size());
        std::atomic<std::size_t> skipped{0};
        parallel_for(specs.size(), config.jobs, [&](std::size_t e) {
            const EnsembleSpec& spec = specs[e];
            for (std::size_t member : spec.members)
                if (!votes[member]) {
                    ++skipped;
                    return;
                }
            std::vector<int> joint(n, 0);
            if (rule == AggregationRule::OrLogic) {
                for (std::size_t member : spec.members) {
                    const auto& v = *votes[member];
                    for (std::size_t i = 0; i < n; ++i) joint[i] |= v[i];
                }
            } else {
                for (std::size_t member : spec.members) {
                    const auto& v = *votes[member];
                    for (std::size_t i = 0; i < n; ++i) joint[i] += v[i];
                }
                for (std::size_t i = 0; i < n; ++i)
                    joint[i] = 2 * static_cast<std::size_t>(joint[i]) > spec.members.size();
            }
            ReportRow row;
            row.label = to_string(rule) + " " + std::to_string(spec.index);
            row.metrics = metrics(confusion(joint, prep.validation.labels));
            slots[e] = std::move(row);
        });
        outcome.skipped_ensembles += skipped.load();
        for (auto& slot : slots)
            if (slot) rows.push_back(std::move(*slot));
    }
    outcome.report = build_report(std::move(rows));
}

}  // namespace

ExperimentOutcome run_flat_experiment(const ExperimentConfig& config) {
    const Prepared prep = prepare(config);
    ExperimentOutcome outcome;
    outcome.selection = prep.selection;
    outcome.selection_feature_names = prep.selection_feature_names;
    outcome.selection_ran = prep.selection_ran;
    outcome.failures = prep.failures;

    const std::size_t m = prep.roster_specs.size();
    bool any_classical = false;
    for (const ModelSpec& spec : prep.roster_specs)
        any_classical = any_classical || spec.variant == Variant::Classical;
    Dataset rebalanced;
    if (any_classical && config.rebalance)
        rebalanced = rebalance(prep.train, derive_seed(config.seed, kRebalanceTag));

    std::vector<std::shared_ptr<const FittedClassifier>> fitted(m);
    std::vector<std::string> fit_errors(m);
    parallel_for(m, config.jobs, [&](std::size_t j) {
        const ModelSpec& spec = prep.roster_specs[j];
        const Dataset& train = (spec.variant == Variant::Classical && config.rebalance)
                                   ? rebalanced
                                   : prep.train;
        try {
            fitted[j] = fit_classifier(spec, train);
        } catch (const std::exception& e) {
            fit_errors[j] = e.what();
        }
    });

    std::vector<std::optional<std::vector<int>>> votes(m);
    for (std::size_t j = 0; j < m; ++j) {
        if (!fitted[j]) {
            outcome.failures.emplace_back(prep.names[j], fit_errors[j]);
            continue;
        }
        votes[j] = parallel_predict(*fitted[j], prep.validation.features, config.jobs);
    }

    assemble_rows(prep, config, votes, outcome);
    return outcome;
}

namespace {

ExperimentOutcome run_one_mixed(const Prepared& prep, const ExperimentConfig& config,
                                std::size_t k) {
    ExperimentOutcome outcome;
    outcome.selection = prep.selection;
    outcome.selection_feature_names = prep.selection_feature_names;
    outcome.selection_ran = prep.selection_ran;
    outcome.failures = prep.failures;

    const KMeansModel km =
        fit_kmeans(prep.train.features, k, derive_seed(config.seed, kKmeansTag, k));
    const std::vector<std::size_t> assignment = kmeans_assign(km, prep.train.features);

    std::vector<std::vector<std::size_t>> train_rows(k);
    for (std::size_t i = 0; i < assignment.size(); ++i)
        train_rows[assignment[i]].push_back(i);

    struct Cluster {
        Dataset data;
        Dataset rebalanced;
        bool constant = false;
        int constant_label = 0;
        std::string kind;
        std::size_t size = 0;
        std::size_t fraud = 0;
    };
    std::vector<Cluster> clusters(k);
    const std::uint64_t rebalance_base = derive_seed(config.seed, kRebalanceTag);
    for (std::size_t c = 0; c < k; ++c) {
        Cluster& cluster = clusters[c];
        cluster.size = train_rows[c].size();
        if (train_rows[c].empty()) {
            cluster.constant = true;
            cluster.kind = "constant_0_empty";
            continue;
        }
        cluster.data = prep.train.take(train_rows[c]);
        cluster.fraud = cluster.data.count_label(1);
        const std::size_t genuine = cluster.size - cluster.fraud;
        const int majority = cluster.fraud > genuine ? 1 : 0;
        if (cluster.fraud == 0 || genuine == 0) {
            cluster.constant = true;
            cluster.constant_label = majority;
            cluster.kind = "constant_" + std::to_string(majority) + "_single_class";
        } else if (cluster.size < 10) {
            cluster.constant = true;
            cluster.constant_label = majority;
            cluster.kind = "constant_" + std::to_string(majority) + "_below_min_size";
        } else {
            cluster.kind = "models";
            if (config.rebalance)
                cluster.rebalanced =
                    rebalance(cluster.data, cluster_seed(rebalance_base, c));
        }
    }

    // One fit per (model, cluster), shared by every ensemble that uses it.
    const std::size_t m = prep.roster_specs.size();
    std::vector<std::shared_ptr<const FittedClassifier>> fits(m * k);
    std::vector<std::string> fit_errors(m * k);
    parallel_for(m * k, config.jobs, [&](std::size_t slot) {
        const std::size_t j = slot / k;
        const std::size_t c = slot % k;
        const Cluster& cluster = clusters[c];
        if (cluster.constant) return;
        ModelSpec spec = prep.roster_specs[j];
        spec.seed = cluster_seed(spec.seed, c);
        const Dataset& train = (spec.variant == Variant::Classical && config.rebalance)
                                   ? cluster.rebalanced
                                   : cluster.data;
        try {
            fits[slot] = fit_classifier(spec, train);
        } catch (const std::exception& e) {
            fit_errors[slot] = e.what();
        }
    });

    const std::vector<std::size_t> val_assignment =
        kmeans_assign(km, prep.validation.features);
    std::vector<std::vector<std::size_t>> val_rows(k);
    for (std::size_t i = 0; i < val_assignment.size(); ++i)
        val_rows[val_assignment[i]].push_back(i);
    std::vector<Matrix> val_features(k);
    for (std::size_t c = 0; c < k; ++c)
        val_features[c] = prep.validation.features.take_rows(val_rows[c]);

    std::vector<std::optional<std::vector<int>>> votes(m);
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<int> model_votes(prep.validation.size(), 0);
        bool ok = true;
        std::string error;
        for (std::size_t c = 0; c < k && ok; ++c) {
            const Cluster& cluster = clusters[c];
            if (cluster.constant) {
                for (std::size_t r : val_rows[c]) model_votes[r] = cluster.constant_label;
                continue;
            }
            const auto& fit = fits[j * k + c];
            if (!fit) {
                ok = false;
                error = fit_errors[j * k + c];
                break;
            }
            const std::vector<int> block =
                parallel_predict(*fit, val_features[c], config.jobs);
            for (std::size_t b = 0; b < val_rows[c].size(); ++b)
                model_votes[val_rows[c][b]] = block[b];
        }
        if (ok)
            votes[j] = std::move(model_votes);
        else
            outcome.failures.emplace_back(prep.names[j] + " k=" + std::to_string(k), error);
    }

    assemble_rows(prep, config, votes, outcome);

    std::ostringstream summary;
    summary << "cluster,size,fraud_count,predictor_kind\n";
    for (std::size_t c = 0; c < k; ++c)
        summary << c << ',' << clusters[c].size << ',' << clusters[c].fraud << ','
                << clusters[c].kind << '\n';
    outcome.cluster_summary_csv = summary.str();

    std::ostringstream centroids;
    write_centroids(centroids, km);
    outcome.centroids_text = centroids.str();
    return outcome;
}

}  // namespace

std::map<std::size_t, ExperimentOutcome> run_mixed_experiment(const ExperimentConfig& config) {
    const Prepared prep = prepare(config);
    std::map<std::size_t, ExperimentOutcome> outcomes;
    for (std::size_t k : config.k_values) outcomes.emplace(k, run_one_mixed(prep, config, k));
    return outcomes;
}

std::vector<std::string> write_experiment_outputs(
    const ExperimentConfig& config, const ExperimentOutcome* flat,
    const std::map<std::size_t, ExperimentOutcome>* mixed) {
    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);
    std::vector<std::string> written;
    auto open = [&](const std::string& name) {
        written.push_back(name);
        return std::ofstream(fs::path(config.out_dir) / name);
    };

    const ExperimentOutcome* selection_source = nullptr;
    if (flat && flat->selection_ran) selection_source = flat;
    if (!selection_source && mixed)
        for (const auto& [k, outcome] : *mixed)
            if (outcome.selection_ran) {
                selection_source = &outcome;
                break;
            }

    if (flat) {
        auto csv = open("report_flat.csv");
        write_report_csv(csv, flat->report);
        auto txt = open("report_flat.txt");
        write_report_table(txt, flat->report);
    }
    if (mixed) {
        for (const auto& [k, outcome] : *mixed) {
            auto csv = open("report_mixed_k" + std::to_string(k) + ".csv");
            write_report_csv(csv, outcome.report);
            auto txt = open("report_mixed_k" + std::to_string(k) + ".txt");
            write_report_table(txt, outcome.report);
            auto clusters = open("clusters_k" + std::to_string(k) + ".csv");
            clusters << outcome.cluster_summary_csv;
            auto centroids = open("centroids_k" + std::to_string(k) + ".txt");
            centroids << outcome.centroids_text;
        }
    }
    if (selection_source) {
        auto csv = open("feature_selection.csv");
        csv << "feature_name,pearson,mi,importance,vote_p,vote_mi,vote_fi,relevant\n";
        const FeatureVerdict& v = selection_source->selection;
        const auto& names = selection_source->selection_feature_names;
        csv.precision(10);
        for (std::size_t j = 0; j < v.relevant.size(); ++j) {
            const std::string name =
                j < names.size() ? names[j] : "f" + std::to_string(j);
            csv << name << ',' << v.pearson[j] << ',' << v.mutual_information[j] << ','
                << v.importance[j] << ',' << int(v.vote_pearson[j]) << ',' << int(v.vote_mi[j])
                << ',' << int(v.vote_importance[j]) << ',' << int(v.relevant[j]) << '\n';
        }
    }

    const auto names = config.roster_names();
    for (const AggregationRule rule : config.rules) {
        auto csv = open(rule == AggregationRule::MajorityVote ? "ensembles_mv.csv"
                                                              : "ensembles_or.csv");
        csv << "index,rule,members\n";
        for (const EnsembleSpec& spec : enumerate_ensembles(names, rule)) {
            csv << spec.index << ',' << to_string(rule) << ',';
            for (std::size_t i = 0; i < spec.members.size(); ++i)
                csv << (i ? " " : "") << names[spec.members[i]];
            csv << '\n';
        }
    }

    nlohmann::json manifest;
    manifest["config_hash"] = config_hash(config);
    manifest["seed"] = config.seed;
    auto failures = nlohmann::json::array();
    auto add_failures = [&](const ExperimentOutcome& outcome, const std::string& context) {
        for (const auto& [label, message] : outcome.failures)
            failures.push_back({{"context", context}, {"label", label}, {"error", message}});
    };
    if (flat) {
        add_failures(*flat, "flat");
        manifest["flat_rows"] = flat->report.rows.size();
        manifest["flat_skipped_ensembles"] = flat->skipped_ensembles;
    }
    if (mixed)
        for (const auto& [k, outcome] : *mixed) {
            add_failures(outcome, "mixed_k" + std::to_string(k));
            manifest["mixed_k" + std::to_string(k) + "_rows"] = outcome.report.rows.size();
        }
    manifest["failures"] = failures;
    manifest["files"] = written;
    auto out = open("manifest.json");
    out << manifest.dump(2) << "\n";
    return written;
}

}  // namespace frauddet
