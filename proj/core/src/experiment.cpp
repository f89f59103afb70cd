#include "roadprio/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <numeric>

#include "roadprio/pipeline.hpp"

namespace roadprio {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start) {
    const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
        Clock::now() - start);
    // Round up so even sub-millisecond runs record a positive time.
    return std::max<std::int64_t>(1, (ns.count() + 999'999) / 1'000'000);
}

struct StrategyRun {
    RunRecord record;
    TestOrder order;
};

StrategyRun run_strategy(const std::string& strategy, const Pipeline& pipeline,
                         const GaConfig& ga_template, std::uint64_t seed) {
    StrategyRun run;
    run.record.strategy = strategy;
    run.record.seed = seed;

    const auto start = Clock::now();
    if (strategy == "ga") {
        GaConfig config = ga_template;
        config.rng_seed = seed;
        GaResult result = ga_run(pipeline.distances, pipeline.costs, config);
        run.order = std::move(result.best_order);
        run.record.fitness = result.best_fitness;
    } else if (strategy == "greedy") {
        Rng rng(seed);
        run.order = greedy_order(pipeline.distances, rng);
        run.record.fitness = fitness(run.order, pipeline.distances, pipeline.costs);
    } else if (strategy == "random") {
        Rng rng(seed);
        run.order = random_order(pipeline.distances.size(), rng);
        run.record.fitness = fitness(run.order, pipeline.distances, pipeline.costs);
    } else {
        throw ValidationError("unknown strategy \"" + strategy +
                              "\" (expected ga, greedy or random)");
    }
    run.record.search_wall_ms = elapsed_ms(start);
    return run;
}

// Index of the run whose APFD_c is the (lower) median; ties go to the
// earliest seed so the sampled curve is reproducible.
std::size_t median_run(const std::vector<std::size_t>& runs,
                       const std::vector<StrategyRun>& all) {
    std::vector<std::size_t> sorted = runs;
    std::stable_sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
        const double va = all[a].record.apfdc.value_or(0.0);
        const double vb = all[b].record.apfdc.value_or(0.0);
        if (va != vb) {
            return va < vb;
        }
        return all[a].record.seed < all[b].record.seed;
    });
    return sorted[(sorted.size() - 1) / 2];
}

std::size_t best_run(const std::vector<std::size_t>& runs,
                     const std::vector<StrategyRun>& all) {
    std::size_t best = runs.front();
    for (std::size_t idx : runs) {
        if (all[idx].record.apfdc.value_or(0.0) > all[best].record.apfdc.value_or(0.0)) {
            best = idx;
        }
    }
    return best;
}

} // namespace

EvalReport run_experiment(std::span<const RoadScenario> corpus,
                          const ExperimentConfig& config) {
    if (config.repetitions < 1) {
        throw ValidationError("repetitions must be at least 1");
    }
    if (config.strategies.empty()) {
        throw ValidationError("at least one strategy is required");
    }

    const FaultProfile faults = fault_profile(corpus);
    if (faults.fault_count == 0) {
        throw ValidationError("corpus has no unsafe scenarios; APFD_c is undefined");
    }

    EvalReport report;
    report.dataset = config.dataset_name;
    report.fault_count = faults.fault_count;

    const auto pipeline_start = Clock::now();
    const Pipeline pipeline = build_pipeline(corpus);
    report.pipeline_wall_ms = elapsed_ms(pipeline_start);
    report.total_cost_s = std::accumulate(pipeline.costs.begin(), pipeline.costs.end(), 0.0);

    std::vector<StrategyRun> runs;
    std::vector<std::vector<std::size_t>> per_strategy(config.strategies.size());
    for (std::size_t s = 0; s < config.strategies.size(); ++s) {
        for (int rep = 0; rep < config.repetitions; ++rep) {
            const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(rep);
            StrategyRun run =
                run_strategy(config.strategies[s], pipeline, config.ga, seed);
            run.record.apfdc = apfd_c(run.order, pipeline.costs, faults);
            per_strategy[s].push_back(runs.size());
            runs.push_back(std::move(run));
        }
    }

    for (std::size_t s = 0; s < config.strategies.size(); ++s) {
        StrategySummary summary;
        summary.strategy = config.strategies[s];
        double sum = 0.0, wall = 0.0;
        summary.min_apfdc = 1.0;
        summary.max_apfdc = 0.0;
        for (std::size_t idx : per_strategy[s]) {
            const double v = runs[idx].record.apfdc.value_or(0.0);
            sum += v;
            summary.min_apfdc = std::min(summary.min_apfdc, v);
            summary.max_apfdc = std::max(summary.max_apfdc, v);
            wall += static_cast<double>(runs[idx].record.search_wall_ms);
        }
        const auto count = static_cast<double>(per_strategy[s].size());
        summary.mean_apfdc = sum / count;
        summary.mean_search_wall_ms = wall / count;
        summary.overhead_fraction =
            (static_cast<double>(report.pipeline_wall_ms) + summary.mean_search_wall_ms) /
            1000.0 / report.total_cost_s;
        report.summaries.push_back(summary);
    }

    // GA against each baseline, mirroring the comparison-table layout.
    const auto ga_it =
        std::find(config.strategies.begin(), config.strategies.end(), "ga");
    if (ga_it != config.strategies.end()) {
        const auto ga_idx = static_cast<std::size_t>(ga_it - config.strategies.begin());
        std::vector<double> ga_scores;
        for (std::size_t idx : per_strategy[ga_idx]) {
            ga_scores.push_back(runs[idx].record.apfdc.value_or(0.0));
        }
        for (std::size_t s = 0; s < config.strategies.size(); ++s) {
            if (s == ga_idx) {
                continue;
            }
            std::vector<double> baseline_scores;
            for (std::size_t idx : per_strategy[s]) {
                baseline_scores.push_back(runs[idx].record.apfdc.value_or(0.0));
            }
            Comparison c;
            c.baseline = config.strategies[s];
            c.a12_value = a12(ga_scores, baseline_scores);
            c.ranksum = wilcoxon_rank_sum(ga_scores, baseline_scores);
            c.effect = magnitude(c.a12_value);
            report.comparisons.push_back(std::move(c));
        }
    }

    // Curve samples: the median GA run versus the best run of each baseline.
    for (std::size_t s = 0; s < config.strategies.size(); ++s) {
        const std::size_t idx = config.strategies[s] == "ga"
                                    ? median_run(per_strategy[s], runs)
                                    : best_run(per_strategy[s], runs);
        CurveSample sample;
        sample.strategy = config.strategies[s];
        sample.seed = runs[idx].record.seed;
        sample.curve = detection_curve(runs[idx].order, pipeline.costs, faults);
        report.curve_samples.push_back(std::move(sample));
    }

    for (StrategyRun& run : runs) {
        report.runs.push_back(std::move(run.record));
    }
    return report;
}

void write_experiment_artifacts(const EvalReport& report,
                                const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    {
        std::ofstream out(out_dir / "report.json", std::ios::binary);
        out << report_to_json(report);
    }
    {
        std::ofstream out(out_dir / "apfdc.csv", std::ios::binary);
        write_apfdc_csv(report, out);
    }
    {
        std::ofstream out(out_dir / "curves.csv", std::ios::binary);
        write_curves_csv(report, out);
    }
    {
        std::ofstream out(out_dir / "comparisons.csv", std::ios::binary);
        write_comparisons_csv(report, out);
    }
}

} // namespace roadprio
