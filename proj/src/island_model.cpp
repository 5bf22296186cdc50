#include "oponet/optim/island_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "oponet/parallel.hpp"

namespace oponet {

std::vector<AlgorithmSpec> default_island_suite() {
    return {
        default_spec(AlgorithmKind::bee_colony),
        default_spec(AlgorithmKind::bee_colony),
        default_spec(AlgorithmKind::differential_evolution),
        default_spec(AlgorithmKind::de_pbest),
        default_spec(AlgorithmKind::particle_swarm),
        default_spec(AlgorithmKind::genetic),
        default_spec(AlgorithmKind::basin_hopping),
        default_spec(AlgorithmKind::simulated_annealing),
    };
}

namespace {

AlgorithmSpec scaled_spec(AlgorithmSpec spec, double scale) {
    if (scale == 1.0) return spec;
    for (const char* key : {"generations", "iterations", "eval_budget"}) {
        const auto it = spec.params.find(key);
        if (it != spec.params.end())
            it->second = std::ceil(it->second * scale);
    }
    return spec;
}

}  // namespace

void migrate(std::vector<Population>& islands) {
    if (islands.size() < 2) throw std::invalid_argument("migrate: need at least two islands");

    std::vector<Individual> donors;
    donors.reserve(islands.size());
    for (const Population& pop : islands) donors.push_back(pop[best_index(pop)]);

    for (std::size_t i = 0; i < islands.size(); ++i) {
        for (std::size_t j = 0; j < donors.size(); ++j) {
            if (j == i) continue;
            const std::size_t worst = worst_index(islands[i]);
            if (donors[j].fitness < islands[i][worst].fitness)
                islands[i][worst] = donors[j];
        }
    }
}

IslandRunResult run_islands(const ObjectiveFn& objective, const Box& box,
                            const HybridConfig& cfg) {
    if (cfg.population < 5) throw std::invalid_argument("run_islands: population too small");
    if (cfg.epochs < 1) throw std::invalid_argument("run_islands: need at least one epoch");

    std::vector<AlgorithmSpec> specs =
        cfg.islands.empty() ? default_island_suite() : cfg.islands;
    if (specs.size() < 2) throw std::invalid_argument("run_islands: need at least two islands");
    const int n_islands = int(specs.size());

    std::vector<std::unique_ptr<Algorithm>> algorithms;
    algorithms.reserve(specs.size());
    for (const AlgorithmSpec& spec : specs)
        algorithms.push_back(make_algorithm(scaled_spec(spec, cfg.budget_scale)));

    // Independent seeded init per island; evaluation counts accumulate in
    // the per-island algorithm objects, so totals are scheduling-free.
    std::vector<Population> islands(n_islands);
    std::int64_t init_evaluations = 0;
    parallel_for(n_islands, cfg.threads, [&](int k) {
        Rng rng(mix_seed(cfg.master_seed, std::uint64_t(k), 0, 0xA11C));
        Population pop(cfg.population);
        for (Individual& ind : pop) {
            ind.z = box.sample(rng);
            const double f = objective(ind.z);
            ind.fitness = std::isnan(f) ? std::numeric_limits<double>::infinity() : f;
        }
        islands[k] = std::move(pop);
    });
    init_evaluations = std::int64_t(n_islands) * cfg.population;

    IslandRunResult result;
    result.history.reserve(cfg.epochs);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        parallel_for(n_islands, cfg.threads, [&](int k) {
            Rng rng(mix_seed(cfg.master_seed, std::uint64_t(k), std::uint64_t(epoch) + 1));
            algorithms[k]->evolve(islands[k], objective, box, rng);
        });
        std::vector<double> epoch_best(n_islands);
        for (int k = 0; k < n_islands; ++k)
            epoch_best[k] = islands[k][best_index(islands[k])].fitness;
        result.history.push_back(std::move(epoch_best));

        if (epoch + 1 < cfg.epochs) migrate(islands);
    }

    const Individual* champion = nullptr;
    for (const Population& pop : islands) {
        const Individual& cand = pop[best_index(pop)];
        if (!champion || cand.fitness < champion->fitness) champion = &cand;
    }
    result.best_z = champion->z;
    result.best_f = champion->fitness;
    result.evaluations = init_evaluations;
    for (const auto& algorithm : algorithms) result.evaluations += algorithm->evaluations();
    return result;
}

OptResult hybrid_optimize(const Problem& prob, const HybridConfig& cfg) {
    const Box box{lower_bounds(prob), upper_bounds(prob)};
    const ObjectiveFn objective = [&prob](const Eigen::VectorXd& z) {
        return evaluate(z, prob);
    };

    const IslandRunResult raw = run_islands(objective, box, cfg);

    OptResult result;
    result.best_z = raw.best_z;
    result.best_J = evaluate(raw.best_z, prob);  // re-verified on emission
    result.history = raw.history;
    result.evaluations = raw.evaluations;
    result.seed = cfg.master_seed;
    result.penalty_only = !(result.best_J < prob.penalty);

    const ParamSet params = decode(raw.best_z, prob);
    const StateSpaced ss = build_state_space(params, prob.setup);
    result.stability_margin = check_stability(ss).margin;

    if (!result.penalty_only) {
        if (const auto* point = std::get_if<PointTarget>(&prob.target)) {
            const SpectrumPointd sp = extremal_spectra(ss, point->omega, 0);
            result.q_minus_db = to_db(sp.p_minus);
            result.q_plus_db = to_db(sp.p_plus);
        } else {
            const auto& band = std::get<BandTarget>(prob.target);
            const long n_intervals = std::lround(band.edge / band.spacing);
            double sum_minus = 0.0, sum_plus = 0.0;
            for (long k = 0; k <= n_intervals; ++k) {
                const SpectrumPointd sp =
                    extremal_spectra(ss, double(k) * band.spacing, 0);
                sum_minus += sp.p_minus;
                sum_plus += sp.p_plus;
            }
            result.q_minus_db = to_db(sum_minus / double(n_intervals + 1));
            result.q_plus_db = to_db(sum_plus / double(n_intervals + 1));
        }
    }
    return result;
}

}  // namespace oponet
