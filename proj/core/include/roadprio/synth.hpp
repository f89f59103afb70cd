#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "roadprio/common.hpp"
#include "roadprio/scenario.hpp"

namespace roadprio {

/// Parameters for the synthetic corpus generator.
///
/// Unsafe scenarios are sampled near a few feature-space centroids
/// (twisty archetypes: sharp angles, tight pivots, dense turns);
/// `cluster_tightness` is the relative standard deviation of the noise
/// around those centroids. Labels come from a deterministic curvature
/// risk score, thresholded to hit `unsafe_ratio`.
struct BenchConfig {
    int n_tests = 500;
    double unsafe_ratio = 0.26;
    double cluster_tightness = 0.08;
    std::array<double, 2> cost_range{10.0, 120.0}; // seconds
    std::uint64_t rng_seed = 0;
};

struct SynthStats {
    int unsafe_count = 0;
    double achieved_ratio = 0.0;
    double risk_threshold = 0.0;
};

/// Generates `cfg.n_tests` labeled scenarios. Deterministic in the seed.
/// Throws ValidationError on an invalid config, or when the achieved
/// unsafe ratio lands more than 2 percentage points from the target
/// (the message reports the achieved ratio).
std::vector<RoadScenario> generate_corpus(const BenchConfig& cfg, SynthStats* stats = nullptr);

/// Manifest JSON recording the config and achieved statistics.
std::string synth_manifest(const BenchConfig& cfg, const SynthStats& stats);

} // namespace roadprio
