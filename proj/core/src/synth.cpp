#include "roadprio/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include <json.hpp>

#include "roadprio/features.hpp"

namespace roadprio {

namespace {

using Rng = std::mt19937_64;

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Per-segment parameter bounds the generator stays inside.
constexpr double kMinAngle = 15.0, kMaxAngle = 345.0;
constexpr double kMinPivot = 2.0, kMaxPivot = 47.0;
constexpr double kMinRoadLength = 56.0;
constexpr double kMaxDirectDistance = 490.0;

// Archetypes for risky roads: dense sharp turns around tight pivots.
// Unsafe tests cluster around these in feature space. The archetypes
// straddle the benign population on several axes (turn count, direction
// mix, angle and pivot levels), so cluster-to-cluster jumps are the
// largest moves in normalized feature space and diversity-driven
// orderings reach them early. Tight pivots keep risky roads short, and
// with cost proportional to road length they are also the cheap tests.
struct RiskyCentroid {
    double turns;
    double angle_mu;
    double pivot_mu;
    double left_frac;
    int straights;
    double straight_min;
    double straight_max;
};
constexpr RiskyCentroid kCentroids[] = {
    {12.0, 315.0, 4.0, 0.85, 1, 20.0, 50.0},
    {7.0, 212.0, 13.0, 0.15, 1, 60.0, 120.0},
    {17.0, 272.0, 6.5, 0.5, 2, 20.0, 50.0},
};

struct SegmentPlan {
    SegmentKind kind;
    double angle = 0.0;
    double pivot = 0.0;
    double length = 0.0;
};

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

// Walks the path from (0,0): straights advance along the heading, turns
// advance by the chord of their arc while rotating the heading. Chord
// length never exceeds arc length, so direct distance <= road length.
std::array<double, 2> walk_end_point(const std::vector<SegmentPlan>& plan, double heading) {
    double x = 0.0, y = 0.0;
    for (const SegmentPlan& seg : plan) {
        if (seg.kind == SegmentKind::Straight) {
            x += seg.length * std::cos(heading);
            y += seg.length * std::sin(heading);
            continue;
        }
        const double theta = seg.angle * kDegToRad;
        const double chord = 2.0 * seg.pivot * std::sin(theta / 2.0);
        const double sign = seg.kind == SegmentKind::LeftTurn ? 1.0 : -1.0;
        x += chord * std::cos(heading + sign * theta / 2.0);
        y += chord * std::sin(heading + sign * theta / 2.0);
        heading += sign * theta;
    }
    return {x, y};
}

std::vector<SegmentPlan> plan_segments(bool risky, const RiskyCentroid& centroid,
                                       double tightness, Rng& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    int n_turns, n_straights;
    double left_frac;
    double straight_min, straight_max;
    std::vector<double> angles, pivots;
    if (risky) {
        n_turns = static_cast<int>(
            std::lround(centroid.turns * (1.0 + tightness * gauss(rng))));
        n_turns = std::clamp(n_turns, 5, 18);
        n_straights = centroid.straights;
        left_frac = centroid.left_frac;
        straight_min = centroid.straight_min;
        straight_max = centroid.straight_max;
        for (int i = 0; i < n_turns; ++i) {
            angles.push_back(clamp(centroid.angle_mu * (1.0 + tightness * gauss(rng)),
                                   kMinAngle, kMaxAngle));
            pivots.push_back(clamp(centroid.pivot_mu * (1.0 + tightness * gauss(rng)),
                                   kMinPivot, kMaxPivot));
        }
    } else {
        // Near-homogeneous mainland: mild wide turns, long straights.
        // These roads are long (hence expensive) and mutually similar, so
        // the diversity signal concentrates on the risky clusters.
        n_turns = 6;
        n_straights = 3;
        left_frac = 0.35 + 0.3 * u01(rng);
        straight_min = 300.0;
        straight_max = 330.0;
        for (int i = 0; i < n_turns; ++i) {
            angles.push_back(std::uniform_real_distribution<double>(63.0, 77.0)(rng));
            pivots.push_back(std::uniform_real_distribution<double>(31.0, 37.0)(rng));
        }
    }

    // A too-gentle angle budget would leave the total below the supported range;
    // stretch the turns to keep the total above it.
    double total_angle = std::accumulate(angles.begin(), angles.end(), 0.0);
    if (total_angle < 105.0) {
        const double scale = (105.0 + 20.0 * u01(rng)) / total_angle;
        for (double& a : angles) {
            a = clamp(a * scale, kMinAngle, kMaxAngle);
        }
    }

    std::vector<SegmentPlan> plan;
    plan.reserve(static_cast<std::size_t>(n_turns + n_straights));
    int lefts = std::clamp(static_cast<int>(std::lround(left_frac * n_turns)), 1,
                           std::min(n_turns, 18));
    for (int i = 0; i < n_turns; ++i) {
        SegmentPlan seg;
        seg.kind = i < lefts ? SegmentKind::LeftTurn : SegmentKind::RightTurn;
        seg.angle = angles[static_cast<std::size_t>(i)];
        seg.pivot = pivots[static_cast<std::size_t>(i)];
        seg.length = seg.pivot * seg.angle * kDegToRad; // arc length
        plan.push_back(seg);
    }
    for (int i = 0; i < n_straights; ++i) {
        SegmentPlan seg;
        seg.kind = SegmentKind::Straight;
        seg.length = std::uniform_real_distribution<double>(straight_min, straight_max)(rng);
        plan.push_back(seg);
    }
    std::shuffle(plan.begin(), plan.end(), rng);

    double total_length = 0.0;
    for (const SegmentPlan& seg : plan) {
        total_length += seg.length;
    }
    if (total_length < kMinRoadLength) {
        for (SegmentPlan& seg : plan) {
            if (seg.kind == SegmentKind::Straight) {
                seg.length += kMinRoadLength - total_length + 5.0 * u01(rng);
                break;
            }
        }
    }
    return plan;
}

RoadScenario realize_scenario(bool risky, const RiskyCentroid& centroid,
                              const BenchConfig& cfg, Rng& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<SegmentPlan> plan =
            plan_segments(risky, centroid, cfg.cluster_tightness, rng);

        // Segment order is free (features are order-invariant), so a road
        // whose endpoint drifted too far can be re-curled by reshuffling
        // before any parameters are redrawn.
        std::array<double, 2> end{};
        bool placed = false;
        for (int reshuffle = 0; reshuffle < 30 && !placed; ++reshuffle) {
            const double heading = 2.0 * std::numbers::pi * u01(rng);
            end = walk_end_point(plan, heading);
            placed = std::hypot(end[0], end[1]) <= kMaxDirectDistance;
            if (!placed) {
                std::shuffle(plan.begin(), plan.end(), rng);
            }
        }
        if (!placed) {
            continue;
        }

        RoadScenario s;
        s.start_point = {0.0, 0.0};
        s.end_point = end;
        double total_length = 0.0;
        for (const SegmentPlan& seg : plan) {
            s.segments.push_back({seg.kind, seg.angle, seg.pivot, seg.length});
            total_length += seg.length;
        }
        // Simulation cost is proportional to the road driven, with mild
        // noise; twisty tight-pivot roads come out short and cheap.
        std::normal_distribution<double> gauss(0.0, 1.0);
        const double base = cfg.cost_range[1] * (total_length / 3318.0);
        s.cost_s = clamp(base * (1.0 + 0.05 * gauss(rng)), cfg.cost_range[0], cfg.cost_range[1]);
        return s;
    }
    throw NumericError("synthetic generator failed to place a road inside the "
                       "direct-distance range after 100 attempts");
}

// Deterministic curvature risk: sharp maximum angle, tight minimum pivot
// and a high share of turn segments make a road risky.
double risk_score(const FeatureVector& f) {
    const double max_angle = f.values[8];
    const double min_pivot = f.values[14];
    const double turns = f.values[2] + f.values[3];
    const double density = turns / (turns + f.values[4]);
    return max_angle / kMaxAngle + (1.0 - min_pivot / kMaxPivot) + density;
}

} // namespace

std::vector<RoadScenario> generate_corpus(const BenchConfig& cfg, SynthStats* stats) {
    if (cfg.n_tests < 2) {
        throw ValidationError("n_tests must be at least 2");
    }
    if (!(cfg.unsafe_ratio > 0.0 && cfg.unsafe_ratio < 1.0)) {
        throw ValidationError("unsafe_ratio must lie strictly between 0 and 1");
    }
    if (!(cfg.cluster_tightness > 0.0)) {
        throw ValidationError("cluster_tightness must be positive");
    }
    if (!(cfg.cost_range[0] > 0.0) || cfg.cost_range[1] < cfg.cost_range[0]) {
        throw ValidationError("cost_range must satisfy 0 < min <= max");
    }

    Rng rng(cfg.rng_seed);
    const int n = cfg.n_tests;
    const int n_risky = std::clamp(
        static_cast<int>(std::lround(cfg.unsafe_ratio * n)), 1, n - 1);

    std::vector<RoadScenario> corpus;
    corpus.reserve(static_cast<std::size_t>(n));
    constexpr std::size_t kCentroidCount = std::size(kCentroids);
    for (int i = 0; i < n; ++i) {
        const bool risky = i < n_risky;
        const RiskyCentroid& centroid =
            kCentroids[static_cast<std::size_t>(i) % kCentroidCount];
        corpus.push_back(realize_scenario(risky, centroid, cfg, rng));
    }
    std::shuffle(corpus.begin(), corpus.end(), rng);

    char buf[16];
    for (int i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof(buf), "t%05d", i);
        corpus[static_cast<std::size_t>(i)].id = buf;
    }

    // Label by thresholding the risk score at the (1 - ratio) quantile.
    std::vector<double> risks;
    risks.reserve(corpus.size());
    for (const RoadScenario& s : corpus) {
        risks.push_back(risk_score(extract_features(s)));
    }
    std::vector<double> sorted = risks;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const double threshold = sorted[static_cast<std::size_t>(n_risky)];

    int unsafe_count = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const bool unsafe = risks[i] > threshold;
        corpus[i].label = unsafe ? Label::Unsafe : Label::Safe;
        unsafe_count += unsafe ? 1 : 0;
    }
    const double achieved = static_cast<double>(unsafe_count) / n;
    if (stats) {
        stats->unsafe_count = unsafe_count;
        stats->achieved_ratio = achieved;
        stats->risk_threshold = threshold;
    }
    // 2-point tolerance, widened by the rounding granularity of small suites.
    const double tolerance = 0.02 + 0.5 / n + 1e-12;
    if (std::abs(achieved - cfg.unsafe_ratio) > tolerance) {
        throw ValidationError(
            "achieved unsafe ratio " + format_double(achieved) +
            " is more than 2 percentage points from the target " +
            format_double(cfg.unsafe_ratio) + "; adjust ratio or tightness");
    }
    return corpus;
}

std::string synth_manifest(const BenchConfig& cfg, const SynthStats& stats) {
    nlohmann::json doc;
    doc["config"] = {{"n_tests", cfg.n_tests},
                     {"unsafe_ratio", cfg.unsafe_ratio},
                     {"cluster_tightness", cfg.cluster_tightness},
                     {"cost_range", {cfg.cost_range[0], cfg.cost_range[1]}},
                     {"rng_seed", cfg.rng_seed}};
    doc["achieved"] = {{"unsafe_count", stats.unsafe_count},
                       {"achieved_ratio", stats.achieved_ratio},
                       {"risk_threshold", stats.risk_threshold}};
    return doc.dump(2) + "\n";
}

} // namespace roadprio
