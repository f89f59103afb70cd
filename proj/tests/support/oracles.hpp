// Independent oracles used to cross-check the library. Everything here
// deliberately takes a different computational route than the
// implementation under test: statistics are recomputed from scratch,
// fitness/APFD are evaluated term by term, eigenvalues come from a
// hand-rolled Jacobi sweep, and orderings are enumerated exhaustively.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "roadprio/distance.hpp"
#include "roadprio/prioritizer.hpp"
#include "roadprio/scenario.hpp"

namespace oracle {

inline double mean(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) {
        acc += x;
    }
    return acc / static_cast<double>(v.size());
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

// Population standard deviation via the E[x^2] - E[x]^2 identity, a
// different route than the implementation's centered two-pass sum.
inline double popn_std(const std::vector<double>& v) {
    double sum = 0.0, sum_sq = 0.0;
    for (double x : v) {
        sum += x;
        sum_sq += x * x;
    }
    const double n = static_cast<double>(v.size());
    const double var = sum_sq / n - (sum / n) * (sum / n);
    return std::sqrt(std::max(var, 0.0));
}

// Naive per-coordinate accumulation in extended precision.
inline double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    long double acc = 0.0L;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const long double d = static_cast<long double>(a[i]) - static_cast<long double>(b[i]);
        acc += d * d;
    }
    return static_cast<double>(std::sqrt(acc));
}

// Fitness recomputed term by term straight from its definition.
inline double fitness(const roadprio::TestOrder& order, const roadprio::DistanceMatrix& d,
                      const std::vector<double>& cost) {
    double f = 0.0;
    for (std::size_t pos = 2; pos <= order.size(); ++pos) {
        const std::uint32_t cur = order.perm[pos - 1];
        const std::uint32_t prev = order.perm[pos - 2];
        f += d(cur, prev) / (cost[cur] * static_cast<double>(pos));
    }
    return f;
}

// Step-walk APFD_c: walk the order, record the cumulative cost up to the
// midpoint of each fault-detecting test, and average 1 - cost/total.
inline double apfdc_stepwalk(const roadprio::TestOrder& order,
                             const std::vector<double>& cost,
                             const std::vector<bool>& detects) {
    double total = 0.0;
    for (double c : cost) {
        total += c;
    }
    double prefix = 0.0;
    double acc = 0.0;
    int faults = 0;
    for (std::uint32_t test : order.perm) {
        const double midpoint = prefix + 0.5 * cost[test];
        prefix += cost[test];
        if (detects[test]) {
            acc += 1.0 - midpoint / total;
            ++faults;
        }
    }
    return acc / static_cast<double>(faults);
}

inline std::vector<roadprio::TestOrder> all_orders(std::size_t m) {
    std::vector<std::uint32_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0u);
    std::vector<roadprio::TestOrder> out;
    do {
        out.push_back(roadprio::TestOrder{perm});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a, int sweeps = 64) {
    const Eigen::Index n = a.rows();
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                off += a(p, q) * a(p, q);
            }
        }
        if (off < 1e-24) {
            break;
        }
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (a(p, q) == 0.0) {
                    continue;
                }
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                Eigen::MatrixXd j = Eigen::MatrixXd::Identity(n, n);
                j(p, p) = c;
                j(q, q) = c;
                j(p, q) = s;
                j(q, p) = -s;
                a = j.transpose() * a * j;
            }
        }
    }
    std::vector<double> eig(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        eig[static_cast<std::size_t>(i)] = a(i, i);
    }
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
}

// Valid random scenario for property tests.
inline roadprio::RoadScenario random_scenario(std::mt19937_64& rng, int min_turns = 0) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    roadprio::RoadScenario s;
    s.id = "r" + std::to_string(rng());
    const int n_segments = 1 + static_cast<int>(rng() % 12);
    int turns = 0;
    for (int k = 0; k < n_segments; ++k) {
        roadprio::RoadSegment seg;
        const int kind = static_cast<int>(rng() % 3);
        if (kind == 2 && (n_segments - k > min_turns - turns)) {
            seg.kind = roadprio::SegmentKind::Straight;
        } else {
            seg.kind = kind == 0 ? roadprio::SegmentKind::LeftTurn
                                 : roadprio::SegmentKind::RightTurn;
            seg.angle_deg = 15.0 + 330.0 * u01(rng);
            seg.pivot_radius = 2.0 + 45.0 * u01(rng);
            ++turns;
        }
        seg.length = 5.0 + 120.0 * u01(rng);
        s.segments.push_back(seg);
    }
    while (turns < min_turns) {
        roadprio::RoadSegment seg;
        seg.kind = roadprio::SegmentKind::LeftTurn;
        seg.angle_deg = 15.0 + 330.0 * u01(rng);
        seg.pivot_radius = 2.0 + 45.0 * u01(rng);
        seg.length = 5.0 + 120.0 * u01(rng);
        s.segments.push_back(seg);
        ++turns;
    }
    s.start_point = {u01(rng) * 100.0, u01(rng) * 100.0};
    s.end_point = {u01(rng) * 100.0, u01(rng) * 100.0};
    s.cost_s = 1.0 + 99.0 * u01(rng);
    s.label = u01(rng) < 0.5 ? roadprio::Label::Safe : roadprio::Label::Unsafe;
    return s;
}

} // namespace oracle
