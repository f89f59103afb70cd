#include <benchmark/benchmark.h>

#include "roadprio/pipeline.hpp"
#include "roadprio/synth.hpp"

using namespace roadprio;

namespace {

std::vector<RoadScenario> corpus_of(int n) {
    BenchConfig cfg;
    cfg.n_tests = n;
    cfg.rng_seed = 1;
    return generate_corpus(cfg);
}

void BM_ExtractFeatures(benchmark::State& state) {
    const auto corpus = corpus_of(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_feature_matrix(corpus));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PcaFit(benchmark::State& state) {
    const auto corpus = corpus_of(static_cast<int>(state.range(0)));
    const FeatureMatrix features = build_feature_matrix(corpus);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pca_fit(zscore_fit_apply(features.values)));
    }
}

void BM_PairwiseDistances(benchmark::State& state) {
    const auto corpus = corpus_of(static_cast<int>(state.range(0)));
    const FeatureMatrix features = build_feature_matrix(corpus);
    const ZscoreResult z = zscore_fit_apply(features.values);
    const PcaModel model = pca_fit(z);
    const Eigen::MatrixXd reduced = pca_project(model, z.z);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pairwise(reduced));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

} // namespace

BENCHMARK(BM_ExtractFeatures)->Arg(500)->Arg(2000);
BENCHMARK(BM_PcaFit)->Arg(500)->Arg(2000);
BENCHMARK(BM_PairwiseDistances)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
