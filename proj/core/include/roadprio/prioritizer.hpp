#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "roadprio/common.hpp"
#include "roadprio/distance.hpp"

namespace roadprio {

using Rng = std::mt19937_64;

/// A test ordering: perm[i] is the index of the test executed at
/// position i. Always a permutation of [0, m).
struct TestOrder {
    std::vector<std::uint32_t> perm;

    std::size_t size() const { return perm.size(); }
    bool operator==(const TestOrder&) const = default;
};

bool is_permutation_of(const TestOrder& order, std::size_t m);

/// Genetic-algorithm parameters. `mutation_prob` left unset resolves to
/// 1/m for an m-test suite when the search starts.
struct GaConfig {
    int population_size = 100;
    double crossover_prob = 0.80;
    std::optional<double> mutation_prob; // default 1/m
    int generations = 4000;
    std::uint64_t rng_seed = 0;
};

/// Diversity-per-cost objective of an ordering tau:
///
///   f(tau) = sum_{i=2..m} d(tau_i, tau_{i-1}) / (cost(tau_i) * i)
///
/// with positions counted 1-based, so the first test contributes no term
/// and its cost never enters the objective. Requires m >= 2 and strictly
/// positive costs.
double fitness(const TestOrder& order, const DistanceMatrix& d,
               std::span<const double> cost);

/// Cut-point crossover: a cut c is drawn uniformly from [1, m-1]; the
/// offspring takes the first c elements of p1 and then the missing
/// elements in p2's order.
TestOrder pmx_crossover(const TestOrder& p1, const TestOrder& p2, Rng& rng);

/// Deterministic core of the crossover for a fixed cut in [1, m-1].
TestOrder pmx_crossover_at(const TestOrder& p1, const TestOrder& p2, std::size_t cut);

/// With probability `mutation_prob`, swaps one uniformly chosen pair of
/// distinct positions; otherwise returns the order unchanged.
TestOrder swap_mutation(TestOrder order, double mutation_prob, Rng& rng);

void swap_positions(TestOrder& order, std::size_t i, std::size_t j);

/// Fitness-proportionate selection: returns index i with probability
/// f_i / sum(f). An all-zero fitness vector falls back to a uniform draw.
std::size_t roulette_select(std::span<const double> fitnesses, Rng& rng);

struct GaResult {
    TestOrder best_order;
    double best_fitness = 0.0;
    /// Best fitness ever observed after each generation; entry 0 is the
    /// initial population, so the length is generations + 1.
    std::vector<double> history;
};

/// Generational GA with elitism of size 1: roulette-selected parents,
/// crossover with probability crossover_prob (otherwise a parent clone),
/// then swap mutation. A fixed seed fully determines the run.
GaResult ga_run(const DistanceMatrix& d, std::span<const double> cost,
                const GaConfig& config);

/// Farthest-point ordering: starts with the most distant pair (emitted
/// lower index first), then repeatedly appends the unselected test with
/// the largest mean distance to the already selected ones. Exact ties
/// are broken uniformly at random.
TestOrder greedy_order(const DistanceMatrix& d, Rng& rng);

/// Uniform random permutation of [0, m).
TestOrder random_order(std::size_t m, Rng& rng);

} // namespace roadprio
