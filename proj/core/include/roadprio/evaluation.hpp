#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "roadprio/common.hpp"
#include "roadprio/prioritizer.hpp"
#include "roadprio/scenario.hpp"

namespace roadprio {

/// One fault per unsafe test, all of equal severity.
struct FaultProfile {
    std::vector<bool> detects; // detects[t]: test t is unsafe
    int fault_count = 0;
};

/// Derives the profile from scenario labels; every scenario must carry one.
FaultProfile fault_profile(std::span<const RoadScenario> corpus);

/// Cost-cognizant average percentage of fault detection of an ordering;
/// nullopt when the suite has no faults (the metric is undefined then).
///
/// With t_j the cost of the test at position j and TF_i the 1-based
/// position detecting fault i:
///
///   APFD_c = sum_i (sum_{j=TF_i..n} t_j - t_{TF_i}/2) / (sum_j t_j * m)
std::optional<double> apfd_c(const TestOrder& order, std::span<const double> cost,
                             const FaultProfile& faults);

struct CurvePoint {
    double cum_cost = 0.0;
    int cum_faults = 0;
};

/// Step curve of cumulative faults vs cumulative cost, one point per
/// executed test; the final point is (total cost, total faults).
std::vector<CurvePoint> detection_curve(const TestOrder& order,
                                        std::span<const double> cost,
                                        const FaultProfile& faults);

/// Faults detected by tests that complete within the budget.
int faults_within_budget(std::span<const CurvePoint> curve, double budget);

/// Vargha-Delaney effect size: P(a > b) + P(a == b)/2 over all cross
/// pairs. 0.5 means no effect; above 0.5, sample A is stochastically larger.
double a12(std::span<const double> sample_a, std::span<const double> sample_b);

struct RankSumResult {
    double statistic = 0.0; // rank sum of sample A
    double p_value = 1.0;   // two-sided, normal approximation
    bool significant = false;
    bool sufficient_n = false; // both samples had >= 3 observations
};

/// Wilcoxon rank-sum (Mann-Whitney) test with average ranks for ties,
/// tie-corrected variance and continuity correction; alpha = 0.05.
/// Samples smaller than 3 observations yield sufficient_n == false.
RankSumResult wilcoxon_rank_sum(std::span<const double> sample_a,
                                std::span<const double> sample_b);

enum class EffectMagnitude { Negligible, Small, Medium, Large };

/// Classifies |a12 - 0.5| with the conventional Vargha-Delaney cutoffs
/// 0.06 / 0.14 / 0.21. Throws ValidationError outside [0, 1].
EffectMagnitude magnitude(double a12_value);

const char* to_string(EffectMagnitude magnitude);

// ---------------------------------------------------------------------
// Experiment report: per-run scores, sampled curves and the statistical
// comparison table, with CSV/JSON export.

struct RunRecord {
    std::string strategy;
    std::uint64_t seed = 0;
    std::optional<double> apfdc;   // nullopt: no-faults outcome
    std::optional<double> fitness; // objective value of the emitted order
    std::int64_t search_wall_ms = 0;
};

struct StrategySummary {
    std::string strategy;
    double mean_apfdc = 0.0;
    double min_apfdc = 0.0;
    double max_apfdc = 0.0;
    double mean_search_wall_ms = 0.0;
    /// (pipeline + mean search time) / total suite execution cost.
    double overhead_fraction = 0.0;
};

struct Comparison {
    std::string baseline; // compared against the GA runs
    double a12_value = 0.5;
    RankSumResult ranksum;
    EffectMagnitude effect = EffectMagnitude::Negligible;
};

struct CurveSample {
    std::string strategy;
    std::uint64_t seed = 0;
    std::vector<CurvePoint> curve;
};

struct EvalReport {
    std::string dataset;
    double total_cost_s = 0.0;
    int fault_count = 0;
    std::int64_t pipeline_wall_ms = 0; // feature/PCA/distance, one-time
    std::vector<RunRecord> runs;
    std::vector<StrategySummary> summaries;
    std::vector<Comparison> comparisons;
    std::vector<CurveSample> curve_samples;
};

/// `strategy,seed,apfdc`, one row per run.
void write_apfdc_csv(const EvalReport& report, std::ostream& out);

/// `strategy,seed,position,cum_cost,cum_faults` for the sampled curves.
void write_curves_csv(const EvalReport& report, std::ostream& out);

/// `dataset,vs_baseline,a12,p,magnitude`, one row per comparison.
void write_comparisons_csv(const EvalReport& report, std::ostream& out);

std::string report_to_json(const EvalReport& report);

} // namespace roadprio
