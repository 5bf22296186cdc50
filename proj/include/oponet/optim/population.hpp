#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <vector>

#include "oponet/rng.hpp"

namespace oponet {

using ObjectiveFn = std::function<double(const Eigen::VectorXd&)>;

struct Individual {
    Eigen::VectorXd z;
    double fitness = 0.0;
};

using Population = std::vector<Individual>;

// Axis-aligned search box. Every candidate an optimizer evaluates is
// clamped back into the box first.
struct Box {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    int dim() const { return static_cast<int>(lower.size()); }

    Eigen::VectorXd clamp(Eigen::VectorXd v) const {
        return v.cwiseMax(lower).cwiseMin(upper);
    }

    Eigen::VectorXd sample(Rng& rng) const {
        Eigen::VectorXd v(dim());
        for (int i = 0; i < dim(); ++i) v[i] = rng.uniform(lower[i], upper[i]);
        return v;
    }
};

inline std::size_t best_index(const Population& pop) {
    if (pop.empty()) throw std::invalid_argument("best_index: empty population");
    std::size_t best = 0;
    for (std::size_t i = 1; i < pop.size(); ++i)
        if (pop[i].fitness < pop[best].fitness) best = i;
    return best;
}

inline std::size_t worst_index(const Population& pop) {
    if (pop.empty()) throw std::invalid_argument("worst_index: empty population");
    std::size_t worst = 0;
    for (std::size_t i = 1; i < pop.size(); ++i)
        if (pop[i].fitness > pop[worst].fitness) worst = i;
    return worst;
}

}  // namespace oponet
