#pragma once

#include <cstdint>
#include <vector>

#include "oponet/objective.hpp"
#include "oponet/optim/algorithms.hpp"

namespace oponet {

// Fully connected island model. Every island runs its own algorithm on its
// own population; after each epoch (except the last) the islands' best
// individuals are broadcast to every other island.
struct HybridConfig {
    std::vector<AlgorithmSpec> islands;  // empty -> default_island_suite()
    int population = 30;                 // individuals per island
    int epochs = 30;
    std::uint64_t master_seed = 1;
    double budget_scale = 1.0;  // multiplies per-epoch algorithm budgets
    int threads = 0;            // 0: resolve from environment/hardware
};

// Eight islands, seven distinct global algorithms.
std::vector<AlgorithmSpec> default_island_suite();

struct OptResult {
    Eigen::VectorXd best_z;
    double best_J = 0.0;
    double q_minus_db = 0.0;
    double q_plus_db = 0.0;
    double stability_margin = 0.0;   // rad/s at the best point
    std::vector<std::vector<double>> history;  // history[epoch][island] = best J
    std::uint64_t seed = 0;
    std::int64_t evaluations = 0;
    bool penalty_only = false;  // no stable point was ever found
};

// Broadcasts each island's best individual to all other islands; an
// incoming donor replaces the receiver's current worst iff strictly better.
void migrate(std::vector<Population>& islands);

// Island search over an arbitrary objective (used directly by tests).
struct IslandRunResult {
    Eigen::VectorXd best_z;
    double best_f = 0.0;
    std::vector<std::vector<double>> history;
    std::int64_t evaluations = 0;
};
IslandRunResult run_islands(const ObjectiveFn& objective, const Box& box,
                            const HybridConfig& cfg);

// Full squeezing optimization: island search over the problem's objective
// plus spectral post-processing of the winner.
OptResult hybrid_optimize(const Problem& prob, const HybridConfig& cfg);

}  // namespace oponet
