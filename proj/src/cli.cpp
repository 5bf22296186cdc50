#include "oponet/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "oponet/io.hpp"
#include "oponet/parallel.hpp"

namespace oponet {

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_path;       // empty -> stdout
    std::int64_t seed = -1;     // -1 -> keep the config's seed
    int threads = 0;
    std::string result_path;    // optimum source for hessian / montecarlo
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_result = false) {
    cmd->add_option("-c,--config", opts.config_path, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("-o,--out", opts.out_path, "output path (default: stdout)");
    cmd->add_option("--seed", opts.seed, "override the optimizer seed");
    cmd->add_option("--threads", opts.threads,
                    "worker cap (default: OPONET_THREADS or hardware)");
    if (with_result)
        cmd->add_option("--result", opts.result_path,
                        "optimize-result JSON providing the optimum; "
                        "re-optimizes when absent");
}

RunConfig load(const CommonOptions& opts) {
    RunConfig config = load_config(opts.config_path);
    if (opts.seed >= 0) config.optimizer.seed = std::uint64_t(opts.seed);
    return config;
}

void banner(const std::string& command, const RunConfig& config, int threads) {
    char hash_text[20];
    std::snprintf(hash_text, sizeof(hash_text), "%016llx",
                  static_cast<unsigned long long>(config_hash(config)));
    std::cerr << "oponet " << version << " | cmd=" << command
              << " | seed=" << config.optimizer.seed << " | config=" << hash_text
              << " | threads=" << resolve_thread_count(threads) << "\n";
}

void emit(const CommonOptions& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(opts.out_path);
    if (!out) throw std::runtime_error("cannot open output file '" + opts.out_path + "'");
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

ParamSet require_params(const RunConfig& config) {
    if (!config.params)
        throw ConfigError("this subcommand needs a 'params' section in the config");
    return *config.params;
}

// The optimum either comes from a previous `optimize` output or is found
// fresh with the config's optimizer settings.
Eigen::VectorXd obtain_optimum(const RunConfig& config, const CommonOptions& opts) {
    if (!opts.result_path.empty()) {
        std::ifstream in(opts.result_path);
        if (!in) throw ConfigError("cannot open result file '" + opts.result_path + "'");
        nlohmann::json root;
        try {
            in >> root;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("result file: invalid JSON: ") + e.what());
        }
        if (!root.contains("best_z") || !root["best_z"].is_array())
            throw ConfigError("result file: missing 'best_z' array");
        const auto values = root["best_z"].get<std::vector<double>>();
        if (int(values.size()) != config.problem.dimension())
            throw ConfigError("result file: best_z has the wrong dimension");
        return Eigen::Map<const Eigen::VectorXd>(values.data(), values.size());
    }
    const OptResult result =
        hybrid_optimize(config.problem, make_hybrid_config(config, opts.threads));
    return result.best_z;
}

int cmd_spectrum(const CommonOptions& opts) {
    const RunConfig config = load(opts);
    banner("spectrum", config, opts.threads);
    const StateSpaced ss = build_state_space(require_params(config), config.problem.setup);
    std::ostringstream out;
    write_spectrum_csv(out, ss, config.spectrum);
    emit(opts, out.str());
    return 0;
}

int cmd_stability(const CommonOptions& opts) {
    const RunConfig config = load(opts);
    banner("stability", config, opts.threads);
    const StateSpaced ss = build_state_space(require_params(config), config.problem.setup);
    emit(opts, stability_to_json(check_stability(ss)));
    return 0;
}

int cmd_optimize(const CommonOptions& opts, bool band) {
    RunConfig config = load(opts);
    if (band && config.problem.is_point())
        config.problem.target = BandTarget{};  // default 0-100 MHz, 1 MHz spacing
    if (!band && !config.problem.is_point())
        throw ConfigError("optimize: config specifies a band objective; "
                          "use the bandwidth subcommand");
    banner(band ? "bandwidth" : "optimize", config, opts.threads);
    const OptResult result =
        hybrid_optimize(config.problem, make_hybrid_config(config, opts.threads));
    emit(opts, result_to_json(result, config_hash(config)));
    return 0;
}

int cmd_sweep(const CommonOptions& opts) {
    const RunConfig config = load(opts);
    if (config.sweep_axes.empty())
        throw ConfigError("sweep: config has no 'sweep.axes'");
    banner("sweep", config, opts.threads);
    const SweepTable table =
        sweep(config.problem, config.sweep_axes, make_hybrid_config(config, opts.threads));
    std::ostringstream out;
    write_sweep_csv(out, table);
    emit(opts, out.str());
    return 0;
}

int cmd_hessian(const CommonOptions& opts) {
    const RunConfig config = load(opts);
    banner("hessian", config, opts.threads);
    const Eigen::VectorXd z_opt = obtain_optimum(config, opts);
    emit(opts, hessian_to_json(
                   phase_hessian(z_opt, config.problem, config.hessian.step_rad)));
    return 0;
}

int cmd_montecarlo(const CommonOptions& opts) {
    const RunConfig config = load(opts);
    banner("montecarlo", config, opts.threads);
    const Eigen::VectorXd z_opt = obtain_optimum(config, opts);
    const MonteCarloReport report =
        monte_carlo_phase(z_opt, config.problem, config.montecarlo.sigma_rad,
                          config.montecarlo.samples, config.montecarlo.seed);
    emit(opts, monte_carlo_to_json(report, config.montecarlo.sigma_rad,
                                   config.montecarlo.samples));
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"squeezing spectrum modeling and optimization for OPO networks"};
    app.require_subcommand(1);

    CommonOptions opts;
    int exit_code = 0;
    const auto guard = [&exit_code](const std::function<int()>& body) {
        return [&exit_code, body]() {
            try {
                exit_code = body();
            } catch (const ConfigError& e) {
                std::cerr << "config error: " << e.what() << "\n";
                exit_code = 2;
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                exit_code = 3;
            }
        };
    };

    add_common(app.add_subcommand("spectrum", "dump extremal spectra over a grid"), opts);
    add_common(app.add_subcommand("optimize", "maximize squeezing at one frequency"), opts);
    add_common(app.add_subcommand("bandwidth", "maximize average squeezing over a band"),
               opts);
    add_common(app.add_subcommand("sweep", "independent optimizations over a grid"), opts);
    add_common(app.add_subcommand("hessian", "phase Hessian at an optimum"), opts, true);
    add_common(app.add_subcommand("montecarlo", "phase-noise robustness at an optimum"),
               opts, true);
    add_common(app.add_subcommand("stability", "stability report for explicit parameters"),
               opts);

    app.get_subcommand("spectrum")->callback(guard([&] { return cmd_spectrum(opts); }));
    app.get_subcommand("optimize")
        ->callback(guard([&] { return cmd_optimize(opts, false); }));
    app.get_subcommand("bandwidth")
        ->callback(guard([&] { return cmd_optimize(opts, true); }));
    app.get_subcommand("sweep")->callback(guard([&] { return cmd_sweep(opts); }));
    app.get_subcommand("hessian")->callback(guard([&] { return cmd_hessian(opts); }));
    app.get_subcommand("montecarlo")
        ->callback(guard([&] { return cmd_montecarlo(opts); }));
    app.get_subcommand("stability")->callback(guard([&] { return cmd_stability(opts); }));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    return exit_code;
}

}  // namespace oponet
