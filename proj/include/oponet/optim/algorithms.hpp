#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "oponet/optim/population.hpp"

namespace oponet {

enum class AlgorithmKind {
    differential_evolution,  // rand/1/bin with self-adaptive F and CR
    de_pbest,                // current-to-pbest/1/bin
    particle_swarm,          // constriction-coefficient PSO
    bee_colony,              // artificial bee colony with scout limit
    genetic,                 // tournament + SBX + polynomial mutation
    simulated_annealing,     // adaptive-step annealing
    compass_search,          // coordinate pattern search
    basin_hopping,           // monotonic basin hopping around compass search
};

const char* algorithm_name(AlgorithmKind kind);
AlgorithmKind algorithm_from_name(const std::string& name);

// Algorithm kind plus a loose bag of hyperparameters. Budget-like keys
// ("generations", "iterations", "eval_budget") are counted per epoch of the
// island model; anything missing falls back to the kind's default.
struct AlgorithmSpec {
    AlgorithmKind kind = AlgorithmKind::differential_evolution;
    std::map<std::string, double> params;
};

AlgorithmSpec default_spec(AlgorithmKind kind);
double spec_param(const AlgorithmSpec& spec, const std::string& key, double fallback);

// One optimizer instance. State (velocities, trial counters, temperature,
// step sizes) persists across epochs of the island model.
class Algorithm {
public:
    virtual ~Algorithm() = default;

    // Runs one epoch. The population is modified in place; the best incoming
    // individual is reinserted over the current worst if the epoch would
    // otherwise lose it, so the best fitness never increases.
    void evolve(Population& pop, const ObjectiveFn& objective, const Box& box, Rng& rng);

    std::int64_t evaluations() const { return evaluations_; }

protected:
    virtual void do_evolve(Population& pop, const ObjectiveFn& objective, const Box& box,
                           Rng& rng) = 0;

    // NaN fitness is poisoned to +inf so comparisons stay total.
    double eval(const ObjectiveFn& objective, const Eigen::VectorXd& z);

    std::int64_t evaluations_ = 0;
};

std::unique_ptr<Algorithm> make_algorithm(const AlgorithmSpec& spec);

// Single-epoch convenience entry point: fresh algorithm state each call.
Population evolve(const AlgorithmSpec& spec, Population pop, const ObjectiveFn& objective,
                  const Box& box, Rng& rng);

}  // namespace oponet
