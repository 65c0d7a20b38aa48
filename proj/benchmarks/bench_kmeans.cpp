#include <benchmark/benchmark.h>

#include "bench_data.hpp"
#include "frauddet/kmeans.hpp"

using namespace frauddet;

namespace {

void FitKMeans(benchmark::State& state) {
    const auto data = benchdata::imbalanced(static_cast<std::size_t>(state.range(0)), 10,
                                            0.1, 21);
    const auto k = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) {
        auto model = fit_kmeans(data.features, k, 3);
        benchmark::DoNotOptimize(model);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(FitKMeans)->ArgsProduct({{1 << 10, 1 << 13}, {2, 5}});

void AssignKMeans(benchmark::State& state) {
    const auto data = benchdata::imbalanced(1 << 13, 10, 0.1, 22);
    const auto model = fit_kmeans(data.features, 5, 3);
    const auto probe = benchdata::imbalanced(static_cast<std::size_t>(state.range(0)), 10,
                                             0.1, 23);
    for (auto _ : state) {
        auto assignment = kmeans_assign(model, probe.features);
        benchmark::DoNotOptimize(assignment);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(AssignKMeans)->Range(1 << 10, 1 << 15);

}  // namespace
