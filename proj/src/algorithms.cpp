#include "oponet/optim/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace oponet {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

const char* algorithm_name(AlgorithmKind kind) {
    switch (kind) {
        case AlgorithmKind::differential_evolution: return "differential_evolution";
        case AlgorithmKind::de_pbest: return "de_pbest";
        case AlgorithmKind::particle_swarm: return "particle_swarm";
        case AlgorithmKind::bee_colony: return "bee_colony";
        case AlgorithmKind::genetic: return "genetic";
        case AlgorithmKind::simulated_annealing: return "simulated_annealing";
        case AlgorithmKind::compass_search: return "compass_search";
        case AlgorithmKind::basin_hopping: return "basin_hopping";
    }
    return "unknown";
}

AlgorithmKind algorithm_from_name(const std::string& name) {
    for (AlgorithmKind kind : {AlgorithmKind::differential_evolution, AlgorithmKind::de_pbest,
                               AlgorithmKind::particle_swarm, AlgorithmKind::bee_colony,
                               AlgorithmKind::genetic, AlgorithmKind::simulated_annealing,
                               AlgorithmKind::compass_search, AlgorithmKind::basin_hopping}) {
        if (name == algorithm_name(kind)) return kind;
    }
    throw std::invalid_argument("unknown algorithm kind: " + name);
}

AlgorithmSpec default_spec(AlgorithmKind kind) {
    AlgorithmSpec spec;
    spec.kind = kind;
    switch (kind) {
        case AlgorithmKind::differential_evolution:
            spec.params = {{"generations", 27}, {"adapt_prob", 0.1}};
            break;
        case AlgorithmKind::de_pbest:
            spec.params = {{"generations", 34}, {"f", 0.5}, {"cr", 0.9},
                           {"pbest_fraction", 0.1}};
            break;
        case AlgorithmKind::particle_swarm:
            spec.params = {{"generations", 1}, {"chi", 0.7298437881283576},
                           {"c1", 2.05}, {"c2", 2.05}};
            break;
        case AlgorithmKind::bee_colony:
            spec.params = {{"generations", 7}};
            break;
        case AlgorithmKind::genetic:
            spec.params = {{"generations", 34}, {"crossover_prob", 0.9},
                           {"eta_c", 10.0}, {"eta_m", 20.0}};
            break;
        case AlgorithmKind::simulated_annealing:
            spec.params = {{"iterations", 667}, {"t0", 1.0}, {"decay", 0.85},
                           {"cycles", 4}, {"adjusts", 2}};
            break;
        case AlgorithmKind::compass_search:
            spec.params = {{"eval_budget", 600}, {"initial_step", 0.3}, {"min_step", 1e-6}};
            break;
        case AlgorithmKind::basin_hopping:
            spec.params = {{"eval_budget", 800}, {"initial_step", 0.3}, {"min_step", 1e-6},
                           {"n_stop", 5}, {"perturb", 0.05}};
            break;
    }
    return spec;
}

double spec_param(const AlgorithmSpec& spec, const std::string& key, double fallback) {
    const auto it = spec.params.find(key);
    return it == spec.params.end() ? fallback : it->second;
}

double Algorithm::eval(const ObjectiveFn& objective, const Eigen::VectorXd& z) {
    ++evaluations_;
    const double v = objective(z);
    return std::isnan(v) ? kInf : v;
}

void Algorithm::evolve(Population& pop, const ObjectiveFn& objective, const Box& box,
                       Rng& rng) {
    if (pop.empty()) throw std::invalid_argument("evolve: empty population");
    const Individual best_in = pop[best_index(pop)];
    do_evolve(pop, objective, box, rng);
    if (pop[best_index(pop)].fitness > best_in.fitness) pop[worst_index(pop)] = best_in;
}

namespace {

// ---------------------------------------------------------------------------
// Differential evolution, rand/1/bin with self-adapting F and CR: each
// individual carries its own control pair, resampled with a small
// probability and kept only when the trial wins.

class DifferentialEvolution final : public Algorithm {
public:
    explicit DifferentialEvolution(const AlgorithmSpec& spec)
        : generations_(int(spec_param(spec, "generations", 27))),
          adapt_prob_(spec_param(spec, "adapt_prob", 0.1)) {}

private:
    void do_evolve(Population& pop, const ObjectiveFn& objective, const Box& box,
                   Rng& rng) override {
        const int n = int(pop.size());
        const int dim = box.dim();
        if (f_.size() != pop.size()) {
            f_.assign(pop.size(), 0.5);
            cr_.assign(pop.size(), 0.9);
        }
        if (n < 4) return;  // rand/1 needs three distinct partners

        for (int gen = 0; gen < generations_; ++gen) {
            for (int i = 0; i < n; ++i) {
                const double f_trial =
                    rng.uniform01() < adapt_prob_ ? rng.uniform(0.1, 1.0) : f_[i];
                const double cr_trial =
                    rng.uniform01() < adapt_prob_ ? rng.uniform01() : cr_[i];

                int r1, r2, r3;
                do { r1 = rng.uniform_int(n); } while (r1 == i);
                do { r2 = rng.uniform_int(n); } while (r2 == i || r2 == r1);
                do { r3 = rng.uniform_int(n); } while (r3 == i || r3 == r1 || r3 == r2);

                Eigen::VectorXd trial = pop[i].z;
                const int j_rand = rng.uniform_int(dim);
                for (int d = 0; d < dim; ++d) {
                    if (d == j_rand || rng.uniform01() < cr_trial)
                        trial[d] = pop[r1].z[d] + f_trial * (pop[r2].z[d] - pop[r3].z[d]);
                }
                trial = box.clamp(std::move(trial));

                const double fitness = eval(objective, trial);
                if (fitness <= pop[i].fitness) {
                    pop[i] = {std::move(trial), fitness};
                    f_[i] = f_trial;
                    cr_[i] = cr_trial;
                }
            }
        }
    }

    int generations_;
    double adapt_prob_;
    std::vector<double> f_, cr_;
};

// ---------------------------------------------------------------------------
// Differential evolution with current-to-pbest/1/bin mutation: each mutant
// is pulled toward a random member of the best fraction of the population.

class DePBest final : public Algorithm {
public:
    explicit DePBest(const AlgorithmSpec& spec)
        : generations_(int(spec_param(spec, "generations", 34))),
          f_(spec_param(spec, "f", 0.5)),
          cr_(spec_param(spec, "cr", 0.9)),
          pbest_fraction_(spec_param(spec, "pbest_fraction", 0.1)) {}

private:
    void do_evolve(Population& pop, const ObjectiveFn& objective, const Box& box,
                   Rng& rng) override {
        const int n = int(pop.size());
        const int dim = box.dim();
        if (n < 3) return;
        const int top = std::max(1, int(std::ceil(pbest_fraction_ * n)));

        std::vector<int> order(n);
        for (int gen = 0; gen < generations_; ++gen) {
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                return pop[a].fitness < pop[b].fitness;
            });

            for (int i = 0; i < n; ++i) {
                const int pb = order[rng.uniform_int(top)];
                int r1, r2;
                do { r1 = rng.uniform_int(n); } while (r1 == i);
                do { r2 = rng.uniform_int(n); } while (r2 == i || r2 == r1);

                Eigen::VectorXd trial = pop[i].z;
                const int j_rand = rng.uniform_int(dim);
                for (int d = 0; d < dim; ++d) {
                    if (d == j_rand || rng.uniform01() < cr_) {
                        trial[d] = pop[i].z[d] + f_ * (pop[pb].z[d] - pop[i].z[d]) +
                                   f_ * (pop[r1].z[d] - pop[r2].z[d]);
                    }
                }
                trial = box.clamp(std::move(trial));

                const double fitness = eval(objective, trial);
                if (fitness <= pop[i].fitness) pop[i] = {std::move(trial), fitness};
            }
        }
    }

    int generations_;
    double f_, cr_, pbest_fraction_;
};

// ---------------------------------------------------------------------------
// Constriction-coefficient particle swarm. Memory (velocities, personal
// bests) persists across epochs; particles replaced by migration are
// re-adopted with zeroed velocity.

class ParticleSwarm final : public Algorithm {
public:
    explicit ParticleSwarm(const AlgorithmSpec& spec)
        : generations_(int(spec_param(spec, "generations", 1))),
          chi_(spec_param(spec, "chi", 0.7298437881283576)),
          c1_(spec_param(spec, "c1", 2.05)),
          c2_(spec_param(spec, "c2", 2.05)) {}

private:
    void sync_memory(const Population& pop, const Box& box) {
        if (velocity_.size() != pop.size()) {
            velocity_.assign(pop.size(), Eigen::VectorXd::Zero(box.dim()));
            personal_best_ = pop;
            last_seen_.resize(pop.size());
            for (std::size_t i = 0; i < pop.size(); ++i) last_seen_[i] = pop[i].z;
            return;
        }
        for (std::size_t i = 0; i < pop.size(); ++i) {
            if ((pop[i].z.array() != last_seen_[i].array()).any()) {  // migration injection
                velocity_[i].setZero();
                personal_best_[i] = pop[i];
            } else if (pop[i].fitness < personal_best_[i].fitness) {
                personal_best_[i] = pop[i];
            }
        }
    }

    void do_evolve(Population& pop, const ObjectiveFn& objective, const Box& box,
                   Rng& rng) override {
        const int n = int(pop.size());
        const int dim = box.dim();
        sync_memory(pop, box);

        for (int gen = 0; gen < generations_; ++gen) {
            const Individual& gbest = personal_best_[best_index(personal_best_)];
            for (int i = 0; i < n; ++i) {
                for (int d = 0; d < dim; ++d) {
                    const double cognitive =
                        c1_ * rng.uniform01() * (personal_best_[i].z[d] - pop[i].z[d]);
                    const double social = c2_ * rng.uniform01() * (gbest.z[d] - pop[i].z[d]);
                    velocity_[i][d] = chi_ * (velocity_[i][d] + cognitive + social);
                }
                Eigen::VectorXd moved = pop[i].z + velocity_[i];
                for (int d = 0; d < dim; ++d) {
                    if (moved[d] < box.lower[d] || moved[d] > box.upper[d]) {
                        moved[d] = std::clamp(moved[d], box.lower[d], box.upper[d]);
                        velocity_[i][d] = 0.0;
                    }
                }
                pop[i].z = std::move(moved);
                pop[i].fitness = eval(objective, pop[i].z);
                if (pop[i].fitness < personal_best_[i].fitness) personal_best_[i] = pop[i];
            }
        }
        for (std::size_t i = 0; i < pop.size(); ++i) last_seen_[i] = pop[i].z;
    }

    int generations_;
    double chi_, c1_, c2_;
    std::vector<Eigen::VectorXd> velocity_;
    Population personal_best_;
    std::vector<Eigen::VectorXd> last_seen_;
};

// ---------------------------------------------------------------------------
// Artificial bee colony. Food sources are the population; abandonment limit
// defaults to N_pop * dim.

class BeeColony final : public Algorithm {
public:
    explicit BeeColony(const AlgorithmSpec& spec)
        : generations_(int(spec_param(spec, "generations", 7))),
          limit_override_(spec_param(spec, "limit", 0)) {}

private:
    void mutate_source(Population& pop, int i, const ObjectiveFn& objective, const Box& box,
                       Rng& rng) {
        const int n = int(pop.size());
        int partner;
        do { partner = rng.uniform_int(n); } while (partner == i && n > 1);
        const int d = rng.uniform_int(box.dim());

        Eigen::VectorXd trial = pop[i].z;
        trial[d] += rng.uniform(-1.0, 1.0) * (pop[i].z[d] - pop[partner].z[d]);
        trial = box.clamp(std::move(trial));

        const double fitness = eval(objective, trial);
        if (fitness < pop[i].fitness) {
            pop[i] = {std::move(trial), fitness};
            trials_[i] = 0;
        } else {
            ++trials_[i];
        }
    }

    void do_evolve(Population& pop, const ObjectiveFn& objective, const Box& box,
                   Rng& rng) override {
        const int n = int(pop.size());
        if (trials_.size() != pop.size()) trials_.assign(pop.size(), 0);
        const int limit = limit_override_ > 0 ? int(limit_override_) : n * box.dim();

        std::vector<int> rank(n);
        for (int gen = 0; gen < generations_; ++gen) {
            for (int i = 0; i < n; ++i) mutate_source(pop, i, objective, box, rng);

            // Onlookers favor better sources; rank weights keep the
            // selection scale-free.
            std::vector<int> order(n);
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                return pop[a].fitness < pop[b].fitness;
            });
            for (int r = 0; r < n; ++r) rank[order[r]] = r;
            const double total = double(n) * double(n + 1) / 2.0;
            for (int k = 0; k < n; ++k) {
                double pick = rng.uniform01() * total;
                int chosen = n - 1;
                for (int i = 0; i < n; ++i) {
                    pick -= double(n - rank[i]);
                    if (pick <= 0.0) { chosen = i; break; }
                }
                mutate_source(pop, chosen, objective, box, rng);
            }

            // Scout the stalest source past the limit.
            int stalest = 0;
            for (int i = 1; i < n; ++i)
                if (trials_[i] > trials_[stalest]) stalest = i;
            if (trials_[stalest] > limit) {
                pop[stalest].z = box.sample(rng);
                pop[stalest].fitness = eval(objective, pop[stalest].z);
                trials_[stalest] = 0;
            }
        }
    }

    int generations_;
    double limit_override_;
    std::vector<int> trials_;
};

// ---------------------------------------------------------------------------
// Generational GA: binary tournaments, simulated binary crossover,
// polynomial mutation, one-elite preservation.

class Genetic final : public Algorithm {
public:
    explicit Genetic(const AlgorithmSpec& spec)
        : generations_(int(spec_param(spec, "generations", 34))),
          crossover_prob_(spec_param(spec, "crossover_prob", 0.9)),
          eta_c_(spec_param(spec, "eta_c", 10.0)),
          eta_m_(spec_param(spec, "eta_m", 20.0)) {}

private:
    int tournament(const Population& pop, Rng& rng) const {
        const int a = rng.uniform_int(int(pop.size()));
        const int b = rng.uniform_int(int(pop.size()));
        return pop[a].fitness <= pop[b].fitness ? a : b;
    }

    void sbx(Eigen::VectorXd& c1, Eigen::VectorXd& c2, Rng& rng) const {
        for (int d = 0; d < c1.size(); ++d) {
            if (rng.uniform01() > 0.5 || std::abs(c1[d] - c2[d]) < 1e-14) continue;
            const double u = rng.uniform01();
            const double exponent = 1.0 / (eta_c_ + 1.0);
            const double beta = u <= 0.5 ? std::pow(2.0 * u, exponent)
                                         : std::pow(1.0 / (2.0 * (1.0 - u)), exponent);
            const double a = c1[d], b = c2[d];
            c1[d] = 0.5 * ((1.0 + beta) * a + (1.0 - beta) * b);
            c2[d] = 0.5 * ((1.0 - beta) * a + (1.0 + beta) * b);
        }
    }

    void mutate(Eigen::VectorXd& z, const Box& box, Rng& rng) const {
        const double per_gene = 1.0 / double(box.dim());
        for (int d = 0; d < z.size(); ++d) {
            if (rng.uniform01() >= per_gene) continue;
            const double u = rng.uniform01();
            const double exponent = 1.0 / (eta_m_ + 1.0);
            const double delta = u < 0.5 ? std::pow(2.0 * u, exponent) - 1.0
                                         : 1.0 - std::pow(2.0 * (1.0 - u), exponent);
            z[d] += delta * (box.upper[d] - box.lower[d]);
        }
    }

    void do_evolve(Population& pop, const ObjectiveFn& objective, const Box& box,
                   Rng& rng) override {
        const int n = int(pop.size());
        for (int gen = 0; gen < generations_; ++gen) {
            const Individual elite = pop[best_index(pop)];
            Population offspring;
            offspring.reserve(n);
            while (int(offspring.size()) < n) {
                Eigen::VectorXd c1 = pop[tournament(pop, rng)].z;
                Eigen::VectorXd c2 = pop[tournament(pop, rng)].z;
                if (rng.uniform01() < crossover_prob_) sbx(c1, c2, rng);
                for (Eigen::VectorXd* child : {&c1, &c2}) {
                    if (int(offspring.size()) >= n) break;
                    mutate(*child, box, rng);
                    *child = box.clamp(std::move(*child));
                    const double fitness = eval(objective, *child);
                    offspring.push_back({std::move(*child), fitness});
                }
            }
            if (offspring[best_index(offspring)].fitness > elite.fitness)
                offspring[worst_index(offspring)] = elite;
            pop = std::move(offspring);
        }
    }

    int generations_;
    double crossover_prob_, eta_c_, eta_m_;
};

// ---------------------------------------------------------------------------
// Simulated annealing with per-dimension adaptive step widths. Walks from
// the population's best point; temperature persists across epochs.

class SimulatedAnnealing final : public Algorithm {
public:
    explicit SimulatedAnnealing(const AlgorithmSpec& spec)
        : iterations_(int(spec_param(spec, "iterations", 667))),
          t0_(spec_param(spec, "t0", 1.0)),
          decay_(spec_param(spec, "decay", 0.85)),
          cycles_(std::max(1, int(spec_param(spec, "cycles", 4)))),
          adjusts_(std::max(1, int(spec_param(spec, "adjusts", 2)))) {}

private:
    void adapt_steps(const Box& box) {
        for (int d = 0; d < int(step_.size()); ++d) {
            const double ratio = double(accepted_[d]) / double(cycles_);
            if (ratio > 0.6)
                step_[d] *= 1.0 + 2.0 * (ratio - 0.6) / 0.4;
            else if (ratio < 0.4)
                step_[d] /= 1.0 + 2.0 * (0.4 - ratio) / 0.4;
            step_[d] = std::min(step_[d], box.upper[d] - box.lower[d]);
            accepted_[d] = 0;
        }
    }

    void do_evolve(Population& pop, const ObjectiveFn& objective, const Box& box,
                   Rng& rng) override {
        const int dim = box.dim();
        const std::size_t incoming = best_index(pop);
        if (!initialized_ || pop[incoming].fitness < current_.fitness) {
            current_ = pop[incoming];
            best_ = current_;
            temperature_ = initialized_ ? temperature_ : t0_;
            if (!initialized_) {
                step_.resize(dim);
                for (int d = 0; d < dim; ++d)
                    step_[d] = 0.3 * (box.upper[d] - box.lower[d]);
                accepted_.assign(dim, 0);
            }
            initialized_ = true;
        }

        int used = 0, cycle = 0, adjust = 0;
        while (used < iterations_) {
            for (int d = 0; d < dim && used < iterations_; ++d, ++used) {
                Eigen::VectorXd trial = current_.z;
                trial[d] += rng.uniform(-1.0, 1.0) * step_[d];
                trial = box.clamp(std::move(trial));
                const double fitness = eval(objective, trial);
                const bool accept =
                    fitness < current_.fitness ||
                    rng.uniform01() < std::exp((current_.fitness - fitness) / temperature_);
                if (accept) {
                    current_ = {std::move(trial), fitness};
                    ++accepted_[d];
                    if (fitness < best_.fitness) best_ = current_;
                }
            }
            if (++cycle >= cycles_) {
                cycle = 0;
                adapt_steps(box);
                if (++adjust >= adjusts_) {
                    adjust = 0;
                    temperature_ = std::max(temperature_ * decay_, 1e-12);
                    current_ = best_;  // reanneal from the best point found
                }
            }
        }

        const std::size_t worst = worst_index(pop);
        if (best_.fitness < pop[worst].fitness) pop[worst] = best_;
    }

    int iterations_;
    double t0_, decay_;
    int cycles_, adjusts_;
    bool initialized_ = false;
    double temperature_ = 1.0;
    Individual current_, best_;
    std::vector<double> step_;
    std::vector<int> accepted_;
};

// ---------------------------------------------------------------------------
// Compass (coordinate pattern) search: poll +/- along each axis, move on
// first improvement, halve the step on a full failed poll.

struct CompassState {
    Eigen::VectorXd x;
    double fitness = kInf;
    double step = 0.3;  // relative to the coordinate range
};

class CompassCore {
public:
    CompassCore(double initial_step, double min_step)
        : initial_step_(initial_step), min_step_(min_step) {}

    double initial_step() const { return initial_step_; }
    bool converged(const CompassState& s) const { return s.step < min_step_; }

    // Runs until convergence or budget exhaustion; returns evaluations used.
    template <typename EvalFn>
    int run(CompassState& s, EvalFn&& evaluate, const Box& box, int budget) const {
        int used = 0;
        while (!converged(s) && used < budget) {
            bool improved = false;
            for (int d = 0; d < box.dim() && used < budget; ++d) {
                for (double sign : {1.0, -1.0}) {
                    if (used >= budget) break;
                    Eigen::VectorXd trial = s.x;
                    trial[d] += sign * s.step * (box.upper[d] - box.lower[d]);
                    trial = box.clamp(std::move(trial));
                    const double fitness = evaluate(trial);
                    ++used;
                    if (fitness < s.fitness) {
                        s.x = std::move(trial);
                        s.fitness = fitness;
                        improved = true;
                        break;
                    }
                }
                if (improved) break;
            }
            if (!improved) s.step *= 0.5;
        }
        return used;
    }

private:
    double initial_step_;
    double min_step_;
};

class CompassSearch final : public Algorithm {
public:
    explicit CompassSearch(const AlgorithmSpec& spec)
        : core_(spec_param(spec, "initial_step", 0.3), spec_param(spec, "min_step", 1e-6)),
          budget_(int(spec_param(spec, "eval_budget", 600))) {}

private:
    void do_evolve(Population& pop, const ObjectiveFn& objective, const Box& box,
                   Rng&) override {
        const Individual& incoming = pop[best_index(pop)];
        if (!initialized_ || incoming.fitness < state_.fitness) {
            state_.x = incoming.z;
            state_.fitness = incoming.fitness;
            state_.step = core_.initial_step();
            initialized_ = true;
        }
        core_.run(state_, [&](const Eigen::VectorXd& z) { return eval(objective, z); },
                  box, budget_);
        const std::size_t worst = worst_index(pop);
        if (state_.fitness < pop[worst].fitness) pop[worst] = {state_.x, state_.fitness};
    }

    CompassCore core_;
    int budget_;
    bool initialized_ = false;
    CompassState state_;
};

// ---------------------------------------------------------------------------
// Monotonic basin hopping: restart compass search from random perturbations
// of the best local minimum, halting after n_stop restarts in a row fail to
// improve it.

class BasinHopping final : public Algorithm {
public:
    explicit BasinHopping(const AlgorithmSpec& spec)
        : core_(spec_param(spec, "initial_step", 0.3), spec_param(spec, "min_step", 1e-6)),
          budget_(int(spec_param(spec, "eval_budget", 800))),
          n_stop_(int(spec_param(spec, "n_stop", 5))),
          perturb_(spec_param(spec, "perturb", 0.05)) {}

private:
    void do_evolve(Population& pop, const ObjectiveFn& objective, const Box& box,
                   Rng& rng) override {
        const Individual& incoming = pop[best_index(pop)];
        if (!initialized_ || incoming.fitness < best_.fitness) {
            best_ = incoming;
            initialized_ = true;
        }

        int used = 0;
        int stalls = 0;
        CompassState state{best_.z, best_.fitness, core_.initial_step()};
        while (used < budget_ && stalls < n_stop_) {
            used += core_.run(
                state, [&](const Eigen::VectorXd& z) { return eval(objective, z); }, box,
                budget_ - used);
            if (!core_.converged(state)) break;  // budget ran out mid-descent
            if (state.fitness < best_.fitness) {
                best_ = {state.x, state.fitness};
                stalls = 0;
            } else {
                ++stalls;
            }
            Eigen::VectorXd start = best_.z;
            for (int d = 0; d < box.dim(); ++d)
                start[d] += rng.uniform(-perturb_, perturb_) * (box.upper[d] - box.lower[d]);
            state.x = box.clamp(std::move(start));
            state.fitness = kInf;
            state.step = core_.initial_step();
        }

        const std::size_t worst = worst_index(pop);
        if (best_.fitness < pop[worst].fitness) pop[worst] = best_;
    }

    CompassCore core_;
    int budget_;
    int n_stop_;
    double perturb_;
    bool initialized_ = false;
    Individual best_;
};

}  // namespace

std::unique_ptr<Algorithm> make_algorithm(const AlgorithmSpec& spec) {
    switch (spec.kind) {
        case AlgorithmKind::differential_evolution:
            return std::make_unique<DifferentialEvolution>(spec);
        case AlgorithmKind::de_pbest: return std::make_unique<DePBest>(spec);
        case AlgorithmKind::particle_swarm: return std::make_unique<ParticleSwarm>(spec);
        case AlgorithmKind::bee_colony: return std::make_unique<BeeColony>(spec);
        case AlgorithmKind::genetic: return std::make_unique<Genetic>(spec);
        case AlgorithmKind::simulated_annealing:
            return std::make_unique<SimulatedAnnealing>(spec);
        case AlgorithmKind::compass_search: return std::make_unique<CompassSearch>(spec);
        case AlgorithmKind::basin_hopping: return std::make_unique<BasinHopping>(spec);
    }
    throw std::invalid_argument("make_algorithm: unknown kind");
}

Population evolve(const AlgorithmSpec& spec, Population pop, const ObjectiveFn& objective,
                  const Box& box, Rng& rng) {
    auto algorithm = make_algorithm(spec);
    algorithm->evolve(pop, objective, box, rng);
    return pop;
}

}  // namespace oponet
