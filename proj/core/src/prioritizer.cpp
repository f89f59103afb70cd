#include "roadprio/prioritizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace roadprio {

namespace {

void check_costs(std::span<const double> cost, std::size_t m) {
    if (cost.size() != m) {
        throw ValidationError("cost vector has " + std::to_string(cost.size()) +
                              " entries, distance matrix has " + std::to_string(m));
    }
    for (std::size_t i = 0; i < cost.size(); ++i) {
        if (!(cost[i] > 0.0) || !std::isfinite(cost[i])) {
            throw ValidationError("cost of test " + std::to_string(i) +
                                  " must be a positive number");
        }
    }
}

TestOrder iota_order(std::size_t m) {
    TestOrder order;
    order.perm.resize(m);
    std::iota(order.perm.begin(), order.perm.end(), 0u);
    return order;
}

} // namespace

bool is_permutation_of(const TestOrder& order, std::size_t m) {
    if (order.perm.size() != m) {
        return false;
    }
    std::vector<bool> seen(m, false);
    for (std::uint32_t v : order.perm) {
        if (v >= m || seen[v]) {
            return false;
        }
        seen[v] = true;
    }
    return true;
}

double fitness(const TestOrder& order, const DistanceMatrix& d,
               std::span<const double> cost) {
    const std::size_t m = order.size();
    if (m < 2) {
        throw ValidationError("fitness needs an order of at least 2 tests");
    }
    if (d.size() != m) {
        throw ValidationError("order length does not match distance matrix size");
    }
    check_costs(cost, m);

    double f = 0.0;
    for (std::size_t i = 1; i < m; ++i) {
        const std::uint32_t cur = order.perm[i];
        const std::uint32_t prev = order.perm[i - 1];
        // Position weight is the 1-based index of `cur`.
        f += d(cur, prev) / (cost[cur] * static_cast<double>(i + 1));
    }
    return f;
}

TestOrder pmx_crossover(const TestOrder& p1, const TestOrder& p2, Rng& rng) {
    const std::size_t m = p1.size();
    if (m != p2.size() || m < 2) {
        throw ValidationError("crossover parents must have equal length >= 2");
    }
    return pmx_crossover_at(p1, p2,
                            std::uniform_int_distribution<std::size_t>(1, m - 1)(rng));
}

TestOrder pmx_crossover_at(const TestOrder& p1, const TestOrder& p2, std::size_t cut) {
    const std::size_t m = p1.size();
    if (m != p2.size() || m < 2) {
        throw ValidationError("crossover parents must have equal length >= 2");
    }
    if (cut < 1 || cut >= m) {
        throw ValidationError("crossover cut point must lie in [1, m-1]");
    }
    TestOrder child;
    child.perm.reserve(m);
    child.perm.assign(p1.perm.begin(), p1.perm.begin() + static_cast<std::ptrdiff_t>(cut));
    std::vector<bool> taken(m, false);
    for (std::uint32_t v : child.perm) {
        taken[v] = true;
    }
    for (std::uint32_t v : p2.perm) {
        if (!taken[v]) {
            child.perm.push_back(v);
        }
    }
    return child;
}

TestOrder swap_mutation(TestOrder order, double mutation_prob, Rng& rng) {
    const std::size_t m = order.size();
    if (m < 2) {
        throw ValidationError("swap mutation needs an order of at least 2 tests");
    }
    if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < mutation_prob) {
        const std::size_t i = std::uniform_int_distribution<std::size_t>(0, m - 1)(rng);
        std::size_t j = std::uniform_int_distribution<std::size_t>(0, m - 2)(rng);
        if (j >= i) {
            ++j;
        }
        swap_positions(order, i, j);
    }
    return order;
}

void swap_positions(TestOrder& order, std::size_t i, std::size_t j) {
    if (i >= order.size() || j >= order.size()) {
        throw ValidationError("swap positions out of range");
    }
    std::swap(order.perm[i], order.perm[j]);
}

std::size_t roulette_select(std::span<const double> fitnesses, Rng& rng) {
    if (fitnesses.empty()) {
        throw ValidationError("roulette selection over an empty population");
    }
    double total = 0.0;
    for (double f : fitnesses) {
        if (f < 0.0 || !std::isfinite(f)) {
            throw ValidationError("roulette selection requires finite nonnegative fitness");
        }
        total += f;
    }
    if (total <= 0.0) {
        // All-zero fitness (e.g. every test identical): uniform fallback.
        return std::uniform_int_distribution<std::size_t>(0, fitnesses.size() - 1)(rng);
    }
    const double ticket = std::uniform_real_distribution<double>(0.0, total)(rng);
    double acc = 0.0;
    for (std::size_t i = 0; i < fitnesses.size(); ++i) {
        acc += fitnesses[i];
        if (ticket < acc) {
            return i;
        }
    }
    return fitnesses.size() - 1;
}

GaResult ga_run(const DistanceMatrix& d, std::span<const double> cost,
                const GaConfig& config) {
    const std::size_t m = d.size();
    if (m < 2) {
        throw ValidationError("GA needs at least 2 tests");
    }
    check_costs(cost, m);
    if (config.population_size < 1) {
        throw ValidationError("population_size must be positive");
    }
    if (config.generations < 1) {
        throw ValidationError("generations must be positive");
    }
    if (config.crossover_prob < 0.0 || config.crossover_prob > 1.0) {
        throw ValidationError("crossover_prob must be in [0, 1]");
    }
    const double mutation_prob =
        config.mutation_prob.value_or(1.0 / static_cast<double>(m));
    if (mutation_prob < 0.0 || mutation_prob > 1.0) {
        throw ValidationError("mutation_prob must be in [0, 1]");
    }

    Rng rng(config.rng_seed);
    const auto pop_size = static_cast<std::size_t>(config.population_size);

    std::vector<TestOrder> population;
    population.reserve(pop_size);
    std::vector<double> fitnesses(pop_size);
    for (std::size_t i = 0; i < pop_size; ++i) {
        population.push_back(random_order(m, rng));
        fitnesses[i] = fitness(population[i], d, cost);
    }

    GaResult result;
    result.history.reserve(static_cast<std::size_t>(config.generations) + 1);
    std::size_t gen_best =
        static_cast<std::size_t>(std::max_element(fitnesses.begin(), fitnesses.end()) -
                                 fitnesses.begin());
    result.best_order = population[gen_best];
    result.best_fitness = fitnesses[gen_best];
    result.history.push_back(result.best_fitness);

    std::vector<TestOrder> next;
    std::vector<double> next_fitnesses(pop_size);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int gen = 0; gen < config.generations; ++gen) {
        next.clear();
        next.reserve(pop_size);

        // Elitism of size 1: the current best survives unchanged.
        next.push_back(population[gen_best]);
        next_fitnesses[0] = fitnesses[gen_best];

        while (next.size() < pop_size) {
            TestOrder child;
            if (u01(rng) < config.crossover_prob) {
                const std::size_t a = roulette_select(fitnesses, rng);
                const std::size_t b = roulette_select(fitnesses, rng);
                child = pmx_crossover(population[a], population[b], rng);
            } else {
                child = population[roulette_select(fitnesses, rng)];
            }
            child = swap_mutation(std::move(child), mutation_prob, rng);
            next_fitnesses[next.size()] = fitness(child, d, cost);
            next.push_back(std::move(child));
        }

        population.swap(next);
        fitnesses.swap(next_fitnesses);
        gen_best = static_cast<std::size_t>(
            std::max_element(fitnesses.begin(), fitnesses.end()) - fitnesses.begin());
        if (fitnesses[gen_best] > result.best_fitness) {
            result.best_fitness = fitnesses[gen_best];
            result.best_order = population[gen_best];
        }
        result.history.push_back(result.best_fitness);
    }
    return result;
}

TestOrder greedy_order(const DistanceMatrix& d, Rng& rng) {
    const std::size_t m = d.size();
    if (m < 2) {
        throw ValidationError("greedy ordering needs at least 2 tests");
    }

    // Seed pair: the two most dissimilar tests, lower index first. Ties
    // are broken uniformly among the tied pairs.
    double best_dist = -1.0;
    std::size_t tied_pairs = 0;
    std::pair<std::size_t, std::size_t> pick{0, 1};
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double dist = d(i, j);
            if (dist > best_dist) {
                best_dist = dist;
                tied_pairs = 1;
                pick = {i, j};
            } else if (dist == best_dist) {
                ++tied_pairs;
                if (std::uniform_int_distribution<std::size_t>(1, tied_pairs)(rng) == 1) {
                    pick = {i, j};
                }
            }
        }
    }

    TestOrder order;
    order.perm.reserve(m);
    std::vector<bool> selected(m, false);
    order.perm.push_back(static_cast<std::uint32_t>(pick.first));
    order.perm.push_back(static_cast<std::uint32_t>(pick.second));
    selected[pick.first] = true;
    selected[pick.second] = true;

    // Running distance sums to the selected set; the mean shares one
    // divisor per step so comparing sums is equivalent.
    std::vector<double> sum_to_selected(m, 0.0);
    for (std::size_t t = 0; t < m; ++t) {
        sum_to_selected[t] = d(t, pick.first) + d(t, pick.second);
    }

    while (order.perm.size() < m) {
        double best_sum = -1.0;
        std::size_t tied = 0;
        std::size_t choice = m;
        for (std::size_t t = 0; t < m; ++t) {
            if (selected[t]) {
                continue;
            }
            if (sum_to_selected[t] > best_sum) {
                best_sum = sum_to_selected[t];
                tied = 1;
                choice = t;
            } else if (sum_to_selected[t] == best_sum) {
                ++tied;
                if (std::uniform_int_distribution<std::size_t>(1, tied)(rng) == 1) {
                    choice = t;
                }
            }
        }
        selected[choice] = true;
        order.perm.push_back(static_cast<std::uint32_t>(choice));
        for (std::size_t t = 0; t < m; ++t) {
            if (!selected[t]) {
                sum_to_selected[t] += d(t, choice);
            }
        }
    }
    return order;
}

TestOrder random_order(std::size_t m, Rng& rng) {
    if (m < 1) {
        throw ValidationError("random order needs at least 1 test");
    }
    TestOrder order = iota_order(m);
    std::shuffle(order.perm.begin(), order.perm.end(), rng);
    return order;
}

} // namespace roadprio
