#include <benchmark/benchmark.h>

#include <random>

#include "bench_data.hpp"
#include "frauddet/ensemble.hpp"

using namespace frauddet;

namespace {

VoteMatrix random_votes(std::size_t objects, std::size_t members, double positive_rate) {
    std::mt19937_64 rng(7);
    std::bernoulli_distribution coin(positive_rate);
    VoteMatrix votes;
    votes.objects = objects;
    votes.members = members;
    votes.votes.resize(objects * members);
    for (auto& v : votes.votes) v = coin(rng);
    return votes;
}

void AggregateMajorityVote(benchmark::State& state) {
    const auto votes = random_votes(static_cast<std::size_t>(state.range(0)), 5, 0.1);
    for (auto _ : state) {
        auto out = aggregate_mv(votes);
        benchmark::DoNotOptimize(out);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(AggregateMajorityVote)->Range(1 << 10, 1 << 16);

void AggregateOrLogic(benchmark::State& state) {
    const auto votes = random_votes(static_cast<std::size_t>(state.range(0)), 5, 0.1);
    for (auto _ : state) {
        auto out = aggregate_or(votes);
        benchmark::DoNotOptimize(out);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(AggregateOrLogic)->Range(1 << 10, 1 << 16);

/// The short-circuit advantage: OR stops invoking members after a positive,
/// MV always consults every member.
void EnsemblePredictShortCircuit(benchmark::State& state) {
    const auto train = benchdata::imbalanced(400, 8, 0.3, 3);
    std::vector<std::unique_ptr<FittedClassifier>> fitted;
    std::vector<const FittedClassifier*> members;
    for (std::size_t k : {3, 5, 7}) {
        ModelSpec spec = spec_from_acronym("KNN");
        spec.hyperparameters["k"] = static_cast<double>(k);
        fitted.push_back(fit_classifier(spec, train));
        members.push_back(fitted.back().get());
    }
    const auto probe = benchdata::imbalanced(static_cast<std::size_t>(state.range(0)), 8,
                                             0.3, 4);
    EnsembleSpec spec{{0, 1, 2}, state.range(1) == 0 ? AggregationRule::OrLogic
                                                     : AggregationRule::MajorityVote,
                      1};
    for (auto _ : state) {
        auto out = predict_ensemble(spec, members, probe.features);
        benchmark::DoNotOptimize(out);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(EnsemblePredictShortCircuit)
    ->ArgsProduct({{256, 1024}, {0 /* OR */, 1 /* MV */}});

}  // namespace
