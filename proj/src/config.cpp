#include "oponet/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace oponet {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key()))
            throw ConfigError(where + ": unknown key '" + item.key() + "'");
    }
}

double get_number(const json& obj, const std::string& where, const std::string& key,
                  double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return obj[key].get<double>();
}

std::int64_t get_integer(const json& obj, const std::string& where, const std::string& key,
                         std::int64_t fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_integer())
        throw ConfigError(where + "." + key + ": expected an integer");
    return obj[key].get<std::int64_t>();
}

void parse_setup(const json& obj, FixedSetupd& setup) {
    require_keys(obj, "setup",
                 {"cavity_length_m", "plant_cavity_length_m", "controller_cavity_length_m",
                  "pump_wavelength_m", "signal_wavelength_m", "threshold_power_w"});
    if (obj.contains("cavity_length_m")) {
        const double l = get_number(obj, "setup", "cavity_length_m", 0.087);
        setup.plant_cavity_length = l;
        setup.controller_cavity_length = l;
    }
    setup.plant_cavity_length =
        get_number(obj, "setup", "plant_cavity_length_m", setup.plant_cavity_length);
    setup.controller_cavity_length = get_number(obj, "setup", "controller_cavity_length_m",
                                                setup.controller_cavity_length);
    setup.pump_wavelength =
        get_number(obj, "setup", "pump_wavelength_m", setup.pump_wavelength);
    setup.signal_wavelength =
        get_number(obj, "setup", "signal_wavelength_m", setup.signal_wavelength);
    setup.threshold_power =
        get_number(obj, "setup", "threshold_power_w", setup.threshold_power);
}

void parse_losses(const json& obj, Problem& prob) {
    require_keys(obj, "losses",
                 {"L_in", "L_out", "intracavity", "output_line", "plant_intracavity",
                  "controller_intracavity", "line1", "line2", "line3"});
    if (obj.contains("L_in")) {
        const double v = get_number(obj, "losses", "L_in", 0.0);
        prob.single_losses.intracavity = v;
        prob.two_losses.plant_intracavity = v;
        prob.two_losses.controller_intracavity = v;
    }
    if (obj.contains("L_out")) {
        const double v = get_number(obj, "losses", "L_out", 0.0);
        prob.single_losses.output_line = v;
        prob.two_losses.line1 = v;
        prob.two_losses.line2 = v;
        prob.two_losses.line3 = v;
    }
    prob.single_losses.intracavity =
        get_number(obj, "losses", "intracavity", prob.single_losses.intracavity);
    prob.single_losses.output_line =
        get_number(obj, "losses", "output_line", prob.single_losses.output_line);
    prob.two_losses.plant_intracavity =
        get_number(obj, "losses", "plant_intracavity", prob.two_losses.plant_intracavity);
    prob.two_losses.controller_intracavity = get_number(
        obj, "losses", "controller_intracavity", prob.two_losses.controller_intracavity);
    prob.two_losses.line1 = get_number(obj, "losses", "line1", prob.two_losses.line1);
    prob.two_losses.line2 = get_number(obj, "losses", "line2", prob.two_losses.line2);
    prob.two_losses.line3 = get_number(obj, "losses", "line3", prob.two_losses.line3);
}

void parse_objective(const json& obj, Problem& prob) {
    require_keys(obj, "objective", {"kind", "omega_opt_mhz", "band_mhz", "spacing_mhz"});
    const std::string kind = obj.value("kind", "point");
    if (kind == "point") {
        PointTarget target;
        target.omega = angular_from_mhz(get_number(obj, "objective", "omega_opt_mhz", 0.0));
        prob.target = target;
    } else if (kind == "band") {
        BandTarget target;
        target.edge = angular_from_mhz(get_number(obj, "objective", "band_mhz", 100.0));
        target.spacing = angular_from_mhz(get_number(obj, "objective", "spacing_mhz", 1.0));
        prob.target = target;
    } else {
        throw ConfigError("objective.kind: expected 'point' or 'band'");
    }
}

AlgorithmSpec parse_island(const json& entry, int index) {
    const std::string where = "optimizer.islands[" + std::to_string(index) + "]";
    if (entry.is_string()) return default_spec(algorithm_from_name(entry.get<std::string>()));
    require_keys(entry, where, {"kind", "params"});
    if (!entry.contains("kind")) throw ConfigError(where + ": missing 'kind'");
    AlgorithmSpec spec = default_spec(algorithm_from_name(entry["kind"].get<std::string>()));
    if (entry.contains("params")) {
        if (!entry["params"].is_object())
            throw ConfigError(where + ".params: expected an object");
        for (const auto& item : entry["params"].items()) {
            if (!item.value().is_number())
                throw ConfigError(where + ".params." + item.key() + ": expected a number");
            spec.params[item.key()] = item.value().get<double>();
        }
    }
    return spec;
}

void parse_optimizer(const json& obj, OptimizerConfig& opt) {
    require_keys(obj, "optimizer",
                 {"population", "epochs", "seed", "budget_scale", "islands"});
    opt.population = int(get_integer(obj, "optimizer", "population", opt.population));
    opt.epochs = int(get_integer(obj, "optimizer", "epochs", opt.epochs));
    opt.seed = std::uint64_t(get_integer(obj, "optimizer", "seed", std::int64_t(opt.seed)));
    opt.budget_scale = get_number(obj, "optimizer", "budget_scale", opt.budget_scale);
    if (obj.contains("islands")) {
        if (!obj["islands"].is_array())
            throw ConfigError("optimizer.islands: expected an array");
        opt.islands.clear();
        int index = 0;
        for (const json& entry : obj["islands"]) opt.islands.push_back(parse_island(entry, index++));
    }
}

void parse_sweep(const json& obj, std::vector<SweepAxis>& axes) {
    require_keys(obj, "sweep", {"axes"});
    if (!obj.contains("axes") || !obj["axes"].is_array())
        throw ConfigError("sweep.axes: expected an array");
    for (const json& entry : obj["axes"]) {
        const std::string where = "sweep.axes[" + std::to_string(axes.size()) + "]";
        require_keys(entry, where, {"name", "values", "start", "stop", "step"});
        SweepAxis axis;
        if (!entry.contains("name")) throw ConfigError(where + ": missing 'name'");
        axis.name = entry["name"].get<std::string>();
        if (entry.contains("values")) {
            for (const json& v : entry["values"]) {
                if (!v.is_number()) throw ConfigError(where + ".values: expected numbers");
                axis.values.push_back(v.get<double>());
            }
        } else {
            const double start = get_number(entry, where, "start", 0.0);
            const double stop = get_number(entry, where, "stop", start);
            const double step = get_number(entry, where, "step", 1.0);
            if (!(step > 0.0)) throw ConfigError(where + ".step: must be positive");
            for (double v = start; v <= stop + 1e-12 * (std::abs(stop) + 1.0); v += step)
                axis.values.push_back(v);
        }
        if (axis.values.empty()) throw ConfigError(where + ": axis has no values");
        axes.push_back(std::move(axis));
    }
}

void parse_params(const json& obj, RunConfig& config) {
    const Problem& prob = config.problem;
    if (prob.topology == Topology::single_opo) {
        require_keys(obj, "params", {"T1", "T2", "omega0_mhz", "x", "theta_xi"});
        SingleOpoParamsd p;
        p.T1 = get_number(obj, "params", "T1", 0.0);
        p.T2 = get_number(obj, "params", "T2", 0.0);
        p.omega0 = angular_from_mhz(get_number(obj, "params", "omega0_mhz", 0.0));
        p.x = get_number(obj, "params", "x", 0.0);
        p.theta_xi = get_number(obj, "params", "theta_xi", 0.0);
        p.L = prob.single_losses.intracavity;
        p.L_tl = prob.single_losses.output_line;
        config.params = p;
        return;
    }
    require_keys(obj, "params",
                 {"Tp1", "Tp2", "omega_p_mhz", "x_p", "theta_p", "Tc1", "Tc2",
                  "omega_c_mhz", "x_c", "theta_c", "phi1", "phi2"});
    TwoOpoParamsd p;
    p.Tp1 = get_number(obj, "params", "Tp1", 0.0);
    p.Tp2 = get_number(obj, "params", "Tp2", 0.0);
    p.omega_p = angular_from_mhz(get_number(obj, "params", "omega_p_mhz", 0.0));
    p.x_p = get_number(obj, "params", "x_p", 0.0);
    p.theta_p = get_number(obj, "params", "theta_p", 0.0);
    p.Tc1 = get_number(obj, "params", "Tc1", 0.0);
    p.Tc2 = get_number(obj, "params", "Tc2", 0.0);
    p.omega_c = angular_from_mhz(get_number(obj, "params", "omega_c_mhz", 0.0));
    p.x_c = get_number(obj, "params", "x_c", 0.0);
    p.theta_c = get_number(obj, "params", "theta_c", 0.0);
    p.phi1 = get_number(obj, "params", "phi1", 0.0);
    p.phi2 = get_number(obj, "params", "phi2", 0.0);
    p.Lp = prob.two_losses.plant_intracavity;
    p.Lc = prob.two_losses.controller_intracavity;
    p.L1 = prob.two_losses.line1;
    p.L2 = prob.two_losses.line2;
    p.L3 = prob.two_losses.line3;
    config.params = p;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    require_keys(root, "config",
                 {"topology", "setup", "bounds", "objective", "losses", "weight_g",
                  "penalty", "optimizer", "spectrum", "hessian", "montecarlo", "sweep",
                  "params"});

    RunConfig config;
    const std::string topology = root.value("topology", "two_opo");
    if (topology == "single_opo") config.problem.topology = Topology::single_opo;
    else if (topology == "two_opo") config.problem.topology = Topology::two_opo;
    else throw ConfigError("topology: expected 'single_opo' or 'two_opo'");

    if (root.contains("setup")) parse_setup(root["setup"], config.problem.setup);
    if (root.contains("bounds")) {
        require_keys(root["bounds"], "bounds", {"omega_u_mhz", "T_u", "x_u"});
        config.problem.bounds.omega_u = angular_from_mhz(
            get_number(root["bounds"], "bounds", "omega_u_mhz",
                       mhz_from_angular(config.problem.bounds.omega_u)));
        config.problem.bounds.T_u =
            get_number(root["bounds"], "bounds", "T_u", config.problem.bounds.T_u);
        config.problem.bounds.x_u =
            get_number(root["bounds"], "bounds", "x_u", config.problem.bounds.x_u);
    }
    if (root.contains("losses")) parse_losses(root["losses"], config.problem);
    if (root.contains("objective")) parse_objective(root["objective"], config.problem);
    config.problem.uncertainty_weight =
        get_number(root, "config", "weight_g", config.problem.uncertainty_weight);
    config.problem.penalty = get_number(root, "config", "penalty", config.problem.penalty);

    if (root.contains("optimizer")) parse_optimizer(root["optimizer"], config.optimizer);
    if (root.contains("spectrum")) {
        require_keys(root["spectrum"], "spectrum", {"max_mhz", "step_mhz"});
        config.spectrum.max_mhz =
            get_number(root["spectrum"], "spectrum", "max_mhz", config.spectrum.max_mhz);
        config.spectrum.step_mhz =
            get_number(root["spectrum"], "spectrum", "step_mhz", config.spectrum.step_mhz);
        if (!(config.spectrum.step_mhz > 0.0))
            throw ConfigError("spectrum.step_mhz: must be positive");
    }
    if (root.contains("hessian")) {
        require_keys(root["hessian"], "hessian", {"step_rad"});
        config.hessian.step_rad =
            get_number(root["hessian"], "hessian", "step_rad", config.hessian.step_rad);
    }
    if (root.contains("montecarlo")) {
        require_keys(root["montecarlo"], "montecarlo", {"sigma_rad", "samples", "seed"});
        config.montecarlo.sigma_rad = get_number(root["montecarlo"], "montecarlo",
                                                 "sigma_rad", config.montecarlo.sigma_rad);
        config.montecarlo.samples = int(get_integer(root["montecarlo"], "montecarlo",
                                                    "samples", config.montecarlo.samples));
        config.montecarlo.seed = std::uint64_t(get_integer(
            root["montecarlo"], "montecarlo", "seed", std::int64_t(config.montecarlo.seed)));
    }
    if (root.contains("sweep")) parse_sweep(root["sweep"], config.sweep_axes);
    if (root.contains("params")) parse_params(root["params"], config);
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig& config) {
    const Problem& prob = config.problem;
    json root;
    root["topology"] = prob.topology == Topology::single_opo ? "single_opo" : "two_opo";
    root["setup"] = {
        {"plant_cavity_length_m", prob.setup.plant_cavity_length},
        {"controller_cavity_length_m", prob.setup.controller_cavity_length},
        {"pump_wavelength_m", prob.setup.pump_wavelength},
        {"signal_wavelength_m", prob.setup.signal_wavelength},
        {"threshold_power_w", prob.setup.threshold_power},
    };
    root["bounds"] = {
        {"omega_u_mhz", mhz_from_angular(prob.bounds.omega_u)},
        {"T_u", prob.bounds.T_u},
        {"x_u", prob.bounds.x_u},
    };
    if (const auto* point = std::get_if<PointTarget>(&prob.target)) {
        root["objective"] = {{"kind", "point"},
                             {"omega_opt_mhz", mhz_from_angular(point->omega)}};
    } else {
        const auto& band = std::get<BandTarget>(prob.target);
        root["objective"] = {{"kind", "band"},
                             {"band_mhz", mhz_from_angular(band.edge)},
                             {"spacing_mhz", mhz_from_angular(band.spacing)}};
    }
    root["losses"] = {
        {"intracavity", prob.single_losses.intracavity},
        {"output_line", prob.single_losses.output_line},
        {"plant_intracavity", prob.two_losses.plant_intracavity},
        {"controller_intracavity", prob.two_losses.controller_intracavity},
        {"line1", prob.two_losses.line1},
        {"line2", prob.two_losses.line2},
        {"line3", prob.two_losses.line3},
    };
    root["weight_g"] = prob.uncertainty_weight;
    root["penalty"] = prob.penalty;

    json islands = json::array();
    for (const AlgorithmSpec& spec : config.optimizer.islands) {
        json entry;
        entry["kind"] = algorithm_name(spec.kind);
        entry["params"] = json::object();
        for (const auto& [key, value] : spec.params) entry["params"][key] = value;
        islands.push_back(entry);
    }
    root["optimizer"] = {
        {"population", config.optimizer.population},
        {"epochs", config.optimizer.epochs},
        {"seed", config.optimizer.seed},
        {"budget_scale", config.optimizer.budget_scale},
    };
    if (!config.optimizer.islands.empty()) root["optimizer"]["islands"] = islands;

    root["spectrum"] = {{"max_mhz", config.spectrum.max_mhz},
                        {"step_mhz", config.spectrum.step_mhz}};
    root["hessian"] = {{"step_rad", config.hessian.step_rad}};
    root["montecarlo"] = {{"sigma_rad", config.montecarlo.sigma_rad},
                          {"samples", config.montecarlo.samples},
                          {"seed", config.montecarlo.seed}};
    if (!config.sweep_axes.empty()) {
        json axes = json::array();
        for (const SweepAxis& axis : config.sweep_axes)
            axes.push_back({{"name", axis.name}, {"values", axis.values}});
        root["sweep"] = {{"axes", axes}};
    }
    if (config.params) {
        if (const auto* s = std::get_if<SingleOpoParamsd>(&*config.params)) {
            root["params"] = {{"T1", s->T1},
                              {"T2", s->T2},
                              {"omega0_mhz", mhz_from_angular(s->omega0)},
                              {"x", s->x},
                              {"theta_xi", s->theta_xi}};
        } else {
            const auto& t = std::get<TwoOpoParamsd>(*config.params);
            root["params"] = {{"Tp1", t.Tp1}, {"Tp2", t.Tp2},
                              {"omega_p_mhz", mhz_from_angular(t.omega_p)},
                              {"x_p", t.x_p}, {"theta_p", t.theta_p},
                              {"Tc1", t.Tc1}, {"Tc2", t.Tc2},
                              {"omega_c_mhz", mhz_from_angular(t.omega_c)},
                              {"x_c", t.x_c}, {"theta_c", t.theta_c},
                              {"phi1", t.phi1}, {"phi2", t.phi2}};
        }
    }
    return root.dump(2);
}

std::uint64_t config_hash(const RunConfig& config) {
    const std::string text = serialize_config(config);
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
    for (const char c : text) {
        h ^= std::uint64_t(static_cast<unsigned char>(c));
        h *= 0x100000001b3ull;
    }
    return h;
}

HybridConfig make_hybrid_config(const RunConfig& config, int threads) {
    HybridConfig cfg;
    cfg.islands = config.optimizer.islands;
    cfg.population = config.optimizer.population;
    cfg.epochs = config.optimizer.epochs;
    cfg.master_seed = config.optimizer.seed;
    cfg.budget_scale = config.optimizer.budget_scale;
    cfg.threads = threads;
    return cfg;
}

}  // namespace oponet
