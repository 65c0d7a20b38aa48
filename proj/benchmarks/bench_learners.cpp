#include <benchmark/benchmark.h>

#include "bench_data.hpp"
#include "frauddet/classifier.hpp"

using namespace frauddet;

namespace {

void FitClassifier(benchmark::State& state, const char* acronym) {
    const auto train = benchdata::imbalanced(static_cast<std::size_t>(state.range(0)), 10,
                                             0.1, 11);
    ModelSpec spec = spec_from_acronym(acronym);
    spec.seed = 1;
    if (spec.family == Family::RF) spec.hyperparameters["trees"] = 50;
    if (spec.family == Family::GBT) spec.hyperparameters["rounds"] = 50;
    if (spec.family == Family::MLP) spec.hyperparameters["epochs"] = 10;
    for (auto _ : state) {
        auto model = fit_classifier(spec, train);
        benchmark::DoNotOptimize(model);
    }
}
BENCHMARK_CAPTURE(FitClassifier, lr, "LR")->Range(256, 4096);
BENCHMARK_CAPTURE(FitClassifier, rf, "RF")->Range(256, 2048);
BENCHMARK_CAPTURE(FitClassifier, gbt, "GBT")->Range(256, 2048);
BENCHMARK_CAPTURE(FitClassifier, mlp_adam, "MLP-A")->Range(256, 2048);

void PredictKnn(benchmark::State& state) {
    const auto train = benchdata::imbalanced(static_cast<std::size_t>(state.range(0)), 10,
                                             0.1, 12);
    const auto probe = benchdata::imbalanced(256, 10, 0.1, 13);
    ModelSpec spec = spec_from_acronym("KNN");
    const auto model = fit_classifier(spec, train);
    for (auto _ : state) {
        auto out = model->predict(probe.features);
        benchmark::DoNotOptimize(out);
    }
    state.SetItemsProcessed(state.iterations() * 256);
}
BENCHMARK(PredictKnn)->Range(1 << 10, 1 << 14);

}  // namespace
