#include <benchmark/benchmark.h>

#include "roadprio/pipeline.hpp"
#include "roadprio/prioritizer.hpp"
#include "roadprio/synth.hpp"

using namespace roadprio;

namespace {

Pipeline pipeline_of(int n) {
    BenchConfig cfg;
    cfg.n_tests = n;
    cfg.rng_seed = 1;
    return build_pipeline(generate_corpus(cfg));
}

void BM_Fitness(benchmark::State& state) {
    const Pipeline p = pipeline_of(static_cast<int>(state.range(0)));
    Rng rng(7);
    const TestOrder order = random_order(p.distances.size(), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fitness(order, p.distances, p.costs));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

// One full generational cycle per m, the unit the 4000-generation default
// multiplies.
void BM_GaGeneration(benchmark::State& state) {
    const Pipeline p = pipeline_of(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        GaConfig config;
        config.generations = 1;
        config.rng_seed = 3;
        benchmark::DoNotOptimize(ga_run(p.distances, p.costs, config));
    }
}

void BM_GreedyOrder(benchmark::State& state) {
    const Pipeline p = pipeline_of(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        Rng rng(5);
        benchmark::DoNotOptimize(greedy_order(p.distances, rng));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

} // namespace

BENCHMARK(BM_Fitness)->Arg(500)->Arg(5000);
BENCHMARK(BM_GaGeneration)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GreedyOrder)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);
