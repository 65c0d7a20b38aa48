#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "frauddet/experiment.hpp"

using namespace frauddet;

namespace {

struct CommonFlags {
    std::string config_path;
    std::string data;
    std::string validation;
    std::string out;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::vector<std::size_t> k;
    unsigned jobs = 0;
    bool jobs_set = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "experiment config file (key = value)");
    cmd->add_option("--data", flags.data, "training CSV (overrides config)");
    cmd->add_option("--validation", flags.validation, "validation CSV (overrides config)");
    cmd->add_option("--out", flags.out, "output directory (overrides config)");
    cmd->add_option("--seed", flags.seed, "experiment seed (mandatory for sweeps)")
        ->each([&](const std::string&) { flags.seed_set = true; });
    cmd->add_option("--k", flags.k, "cluster counts to sweep, from {1,2,3,4,5}");
    cmd->add_option("--jobs", flags.jobs, "worker threads (0 = all hardware threads)")
        ->each([&](const std::string&) { flags.jobs_set = true; });
}

ExperimentConfig build_config(const CommonFlags& flags, bool require_seed) {
    ExperimentConfig config;
    if (!flags.config_path.empty()) config = load_config(flags.config_path);
    if (!flags.data.empty()) config.data_path = flags.data;
    if (!flags.validation.empty()) config.validation_path = flags.validation;
    if (!flags.out.empty()) config.out_dir = flags.out;
    if (flags.seed_set) config.seed = flags.seed;
    if (!flags.k.empty()) config.k_values = flags.k;
    if (flags.jobs_set) config.jobs = flags.jobs;
    if (require_seed && !flags.seed_set && flags.config_path.empty())
        throw CLI::ValidationError("--seed (or a config file with one) is required");
    config.validate();
    return config;
}

void print_failures(const ExperimentOutcome& outcome, const std::string& context) {
    for (const auto& [label, message] : outcome.failures)
        std::cerr << "warning [" << context << "] " << label << ": " << message << "\n";
    if (outcome.skipped_ensembles > 0)
        std::cerr << "warning [" << context << "] skipped " << outcome.skipped_ensembles
                  << " ensembles with failed members\n";
}

int run_flat(const CommonFlags& flags) {
    const ExperimentConfig config = build_config(flags, true);
    const ExperimentOutcome outcome = run_flat_experiment(config);
    print_failures(outcome, "flat");
    write_experiment_outputs(config, &outcome, nullptr);
    write_report_table(std::cout, outcome.report);
    std::cout << "report written to " << config.out_dir << "\n";
    return outcome.failures.empty() ? 0 : 2;
}

int run_mixed(const CommonFlags& flags) {
    const ExperimentConfig config = build_config(flags, true);
    const auto outcomes = run_mixed_experiment(config);
    bool clean = true;
    for (const auto& [k, outcome] : outcomes) {
        print_failures(outcome, "mixed k=" + std::to_string(k));
        clean = clean && outcome.failures.empty();
        std::cout << "== K = " << k << " ==\n";
        write_report_table(std::cout, outcome.report);
    }
    write_experiment_outputs(config, nullptr, &outcomes);
    std::cout << "reports written to " << config.out_dir << "\n";
    return clean ? 0 : 2;
}

int run_select_features(const CommonFlags& flags) {
    ExperimentConfig config = build_config(flags, false);
    Dataset data = load_csv(config.data_path, config.label_column);
    const ScalerParams scaler = fit_scaler(data);
    data = apply_scaler(scaler, data);
    const FeatureVerdict verdict =
        select_features(data, config.bins, spec_from_acronym("RF"), config.seed);
    write_selection_csv(std::cout, data, verdict);
    return 0;
}

int run_enumerate(const CommonFlags& flags, const std::string& rule_name) {
    const ExperimentConfig config = [&] {
        ExperimentConfig c;
        if (!flags.config_path.empty()) c = load_config(flags.config_path);
        return c;
    }();
    const auto names = config.roster_names();
    std::cout << "index,rule,members\n";
    for (const AggregationRule rule :
         {AggregationRule::MajorityVote, AggregationRule::OrLogic}) {
        if (!rule_name.empty() && rule_name != to_string(rule) &&
            !(rule_name == "MV" && rule == AggregationRule::MajorityVote) &&
            !(rule_name == "OR" && rule == AggregationRule::OrLogic))
            continue;
        for (const EnsembleSpec& spec : enumerate_ensembles(names, rule)) {
            std::cout << spec.index << ',' << to_string(rule) << ',';
            for (std::size_t i = 0; i < spec.members.size(); ++i)
                std::cout << (i ? " " : "") << names[spec.members[i]];
            std::cout << '\n';
        }
    }
    return 0;
}

int run_metrics(const std::string& predictions_path) {
    std::ifstream in(predictions_path);
    if (!in) {
        std::cerr << "cannot open " << predictions_path << "\n";
        return 1;
    }
    std::string line;
    std::getline(in, line);  // header: predicted,actual
    std::vector<int> predicted, actual;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            std::cerr << "row " << row << ": expected 'predicted,actual'\n";
            return 1;
        }
        predicted.push_back(std::stoi(line.substr(0, comma)));
        actual.push_back(std::stoi(line.substr(comma + 1)));
    }
    const MetricsRow m = metrics(confusion(predicted, actual));
    auto show = [](const char* name, const std::optional<double>& v) {
        std::cout << name << " = ";
        if (v) std::cout << *v;
        else std::cout << "NA";
        std::cout << "\n";
    };
    show("acc", m.acc);
    show("bcr", m.bcr);
    show("sens", m.sens);
    show("spec", m.spec);
    show("f1", m.f1);
    std::cout << "mean = " << m.mean4 << (m.mean4_complete ? "" : " (partial)") << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"credit-card fraud detection experiments: individual models, CC-MV/CC-OR "
                 "ensembles, and K-means mixed learning"};
    app.require_subcommand(1);

    CommonFlags flat_flags, mixed_flags, select_flags, enum_flags;
    std::string rule_filter, predictions_path;

    CLI::App* flat = app.add_subcommand("flat", "individual models + all ensembles");
    add_common(flat, flat_flags);

    CLI::App* mixed = app.add_subcommand("mixed", "cluster-then-classify sweep over K");
    add_common(mixed, mixed_flags);

    CLI::App* select = app.add_subcommand("select-features", "three-method relevance vote");
    add_common(select, select_flags);

    CLI::App* enumerate = app.add_subcommand("enumerate", "ensemble composition table");
    add_common(enumerate, enum_flags);
    enumerate->add_option("--rule", rule_filter, "restrict to MV or OR");

    CLI::App* metrics_cmd =
        app.add_subcommand("metrics", "recompute metrics from a predictions CSV");
    metrics_cmd->add_option("file", predictions_path, "CSV with predicted,actual columns")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (flat->parsed()) return run_flat(flat_flags);
        if (mixed->parsed()) return run_mixed(mixed_flags);
        if (select->parsed()) return run_select_features(select_flags);
        if (enumerate->parsed()) return run_enumerate(enum_flags, rule_filter);
        if (metrics_cmd->parsed()) return run_metrics(predictions_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
