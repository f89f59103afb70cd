#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "roadprio/evaluation.hpp"
#include "roadprio/prioritizer.hpp"
#include "roadprio/scenario.hpp"

namespace roadprio {

/// Full comparative experiment: `repetitions` runs per strategy with
/// seeds base_seed + run index, APFD_c per run, GA-vs-baseline
/// statistics, and curve samples for the median GA run against the best
/// run of each baseline.
struct ExperimentConfig {
    std::vector<std::string> strategies{"ga", "greedy", "random"};
    int repetitions = 30;
    GaConfig ga;
    std::uint64_t base_seed = 0;
    std::string dataset_name = "corpus";
};

EvalReport run_experiment(std::span<const RoadScenario> corpus,
                          const ExperimentConfig& config);

/// Writes report.json, apfdc.csv, curves.csv and comparisons.csv.
void write_experiment_artifacts(const EvalReport& report,
                                const std::filesystem::path& out_dir);

} // namespace roadprio
