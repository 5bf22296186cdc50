#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oponet/analysis.hpp"

namespace oponet {

// Raised for malformed or inconsistent configuration input; the CLI maps it
// to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OptimizerConfig {
    std::vector<AlgorithmSpec> islands;  // empty -> default island suite
    int population = 30;
    int epochs = 30;
    std::uint64_t seed = 1;
    double budget_scale = 1.0;
};

struct SpectrumGrid {
    double max_mhz = 200.0;
    double step_mhz = 0.5;
};

struct HessianConfig {
    double step_rad = 1e-3;
};

struct MonteCarloConfig {
    double sigma_rad = 0.1;
    int samples = 10000;
    std::uint64_t seed = 1;
};

// Full run description. Frequencies in config files are ordinary
// frequencies in MHz; phases are radians; powers are watts; lengths are
// meters. Unknown keys are rejected.
struct RunConfig {
    Problem problem{};
    OptimizerConfig optimizer{};
    SpectrumGrid spectrum{};
    HessianConfig hessian{};
    MonteCarloConfig montecarlo{};
    std::vector<SweepAxis> sweep_axes;
    std::optional<ParamSet> params;  // explicit network point, if given
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// Canonical serialization: sorted keys, round-trippable numbers.
// parse_config(serialize_config(c)) reproduces c's problem exactly.
std::string serialize_config(const RunConfig& config);

// FNV-1a over the canonical serialization.
std::uint64_t config_hash(const RunConfig& config);

HybridConfig make_hybrid_config(const RunConfig& config, int threads);

}  // namespace oponet
