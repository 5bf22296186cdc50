#include "oponet/analysis.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oponet/parallel.hpp"

namespace oponet {

Problem apply_axis(Problem prob, const std::string& name, double value) {
    if (name == "omega_opt_mhz") {
        prob.target = PointTarget{angular_from_mhz(value)};
    } else if (name == "band_mhz") {
        BandTarget band = std::holds_alternative<BandTarget>(prob.target)
                              ? std::get<BandTarget>(prob.target)
                              : BandTarget{};
        band.edge = angular_from_mhz(value);
        prob.target = band;
    } else if (name == "x_u") {
        prob.bounds.x_u = value;
    } else if (name == "T_u") {
        prob.bounds.T_u = value;
    } else if (name == "omega_u_mhz") {
        prob.bounds.omega_u = angular_from_mhz(value);
    } else if (name == "L_in") {
        prob.single_losses.intracavity = value;
        prob.two_losses.plant_intracavity = value;
        prob.two_losses.controller_intracavity = value;
    } else if (name == "L_out") {
        prob.single_losses.output_line = value;
        prob.two_losses.line1 = value;
        prob.two_losses.line2 = value;
        prob.two_losses.line3 = value;
    } else if (name == "L_tl") {
        prob.single_losses.output_line = value;
    } else {
        throw std::invalid_argument("apply_axis: unknown axis '" + name + "'");
    }
    return prob;
}

SweepTable sweep(const Problem& base, const std::vector<SweepAxis>& axes,
                 const HybridConfig& cfg) {
    if (axes.empty()) throw std::invalid_argument("sweep: no axes given");
    std::size_t total = 1;
    for (const SweepAxis& axis : axes) {
        if (axis.values.empty())
            throw std::invalid_argument("sweep: axis '" + axis.name + "' is empty");
        total *= axis.values.size();
    }

    SweepTable table;
    table.base = base;
    table.axes = axes;
    table.rows.resize(total);

    // Grid points are independent optimizations; parallelism lives at this
    // level, so each point runs its islands sequentially.
    HybridConfig point_cfg = cfg;
    point_cfg.threads = 1;

    parallel_for(int(total), cfg.threads, [&](int index) {
        Problem prob = base;
        std::size_t remainder = std::size_t(index);
        std::map<std::string, double> coords;
        for (std::size_t a = axes.size(); a-- > 0;) {
            const SweepAxis& axis = axes[a];
            const std::size_t pos = remainder % axis.values.size();
            remainder /= axis.values.size();
            coords[axis.name] = axis.values[pos];
            prob = apply_axis(std::move(prob), axis.name, axis.values[pos]);
        }

        SweepRow row;
        row.coords = std::move(coords);
        HybridConfig local = point_cfg;
        local.master_seed = mix_seed(cfg.master_seed, std::uint64_t(index));
        try {
            row.result = hybrid_optimize(prob, local);
            row.params = decode(row.result.best_z, prob);
        } catch (const std::exception&) {
            row.failed = true;
            row.result.best_J = prob.penalty;
            row.result.penalty_only = true;
            row.result.seed = local.master_seed;
            row.params = prob.topology == Topology::single_opo
                             ? ParamSet(SingleOpoParamsd{})
                             : ParamSet(TwoOpoParamsd{});
        }
        table.rows[std::size_t(index)] = std::move(row);
    });
    return table;
}

std::optional<double> detect_regime_switch(const SweepTable& table) {
    bool has_omega_axis = false;
    for (const SweepAxis& axis : table.axes) {
        if (axis.name == "omega_opt_mhz") has_omega_axis = true;
        else if (axis.values.size() > 1)
            throw std::invalid_argument(
                "detect_regime_switch: table must vary omega_opt only");
    }
    if (!has_omega_axis)
        throw std::invalid_argument("detect_regime_switch: missing omega_opt axis");

    // The plateau sits within noise of the bound (>= 0.95 T_u). The switch
    // fires on the first clear departure; 0.85 T_u separates it from
    // plateau jitter yet still catches high-loss cells where the
    // controller coupling drops to an intermediate level instead of zero.
    const double t_u = table.base.bounds.T_u;
    bool plateau_seen = false;
    for (const SweepRow& row : table.rows) {
        if (row.failed) continue;
        const auto* params = std::get_if<TwoOpoParamsd>(&row.params);
        if (!params)
            throw std::invalid_argument("detect_regime_switch: needs a two-OPO sweep");
        if (params->Tc2 >= 0.95 * t_u) plateau_seen = true;
        else if (plateau_seen && params->Tc2 < 0.85 * t_u)
            return angular_from_mhz(row.coords.at("omega_opt_mhz"));
    }
    return std::nullopt;
}

HessianReport hessian_of(const std::function<double(const Eigen::VectorXd&)>& fn,
                         const Eigen::VectorXd& z, const std::vector<int>& coords,
                         double step, double penalty_threshold) {
    const int k = int(coords.size());

    const auto attempt = [&](double h, Eigen::MatrixXd& out) -> bool {
        const auto probe = [&](int a, double da, int b, double db) -> std::optional<double> {
            Eigen::VectorXd at = z;
            at[coords[a]] += da;
            if (b >= 0) at[coords[b]] += db;
            const double v = fn(at);
            if (v >= penalty_threshold) return std::nullopt;
            return v;
        };

        const double center = fn(z);
        if (center >= penalty_threshold) return false;
        out.resize(k, k);
        for (int a = 0; a < k; ++a) {
            const auto fp = probe(a, h, -1, 0.0);
            const auto fm = probe(a, -h, -1, 0.0);
            if (!fp || !fm) return false;
            out(a, a) = (*fp - 2.0 * center + *fm) / (h * h);
            for (int b = a + 1; b < k; ++b) {
                const auto fpp = probe(a, h, b, h);
                const auto fpm = probe(a, h, b, -h);
                const auto fmp = probe(a, -h, b, h);
                const auto fmm = probe(a, -h, b, -h);
                if (!fpp || !fpm || !fmp || !fmm) return false;
                out(a, b) = out(b, a) = (*fpp - *fpm - *fmp + *fmm) / (4.0 * h * h);
            }
        }
        return true;
    };

    Eigen::MatrixXd hess;
    double used_step = step;
    if (!attempt(used_step, hess)) {
        used_step = 0.1 * step;  // one automatic shrink near a stability edge
        if (!attempt(used_step, hess))
            throw std::runtime_error(
                "hessian_of: stencil point unstable even after shrinking the step");
    }

    HessianReport report;
    report.hessian = 0.5 * (hess + hess.transpose());
    report.step = used_step;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(report.hessian);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hessian_of: eigensolver failed");
    // SelfAdjointEigenSolver sorts ascending; flip to descending.
    report.eigenvalues = solver.eigenvalues().reverse();
    report.eigenvectors = solver.eigenvectors().rowwise().reverse();
    return report;
}

namespace {

// Point-objective evaluation that treats phases as periodic, so stencils
// and random perturbations may leave the [0, 2pi] box.
double eval_point_wrapped(const Eigen::VectorXd& z, const Problem& prob) {
    return eval_point(wrap_phases(z, prob), prob);
}

// P- at the point target, or the penalty when unstable.
double p_minus_wrapped(const Eigen::VectorXd& z, const Problem& prob) {
    const auto* target = std::get_if<PointTarget>(&prob.target);
    if (!target)
        throw std::invalid_argument("phase analysis requires a point-objective problem");
    const Evaluation ev = evaluate_detail(wrap_phases(z, prob), prob, target->omega);
    return ev.stable ? ev.point.p_minus : prob.penalty;
}

}  // namespace

HessianReport phase_hessian(const Eigen::VectorXd& z_opt, const Problem& prob,
                            double step) {
    return hessian_of(
        [&prob](const Eigen::VectorXd& z) { return eval_point_wrapped(z, prob); }, z_opt,
        phase_indices(prob), step, prob.penalty);
}

MonteCarloReport monte_carlo_phase(const Eigen::VectorXd& z_opt, const Problem& prob,
                                   double sigma, int samples, std::uint64_t seed) {
    if (sigma < 0.0) throw std::invalid_argument("monte_carlo_phase: sigma must be >= 0");
    if (samples < 1) throw std::invalid_argument("monte_carlo_phase: need at least one sample");

    const std::vector<int> phases = phase_indices(prob);
    const double base_p_minus = p_minus_wrapped(z_opt, prob);
    if (base_p_minus >= prob.penalty)
        throw std::invalid_argument("monte_carlo_phase: reference point is unstable");

    MonteCarloReport report;
    report.unperturbed_q_minus_db = to_db(base_p_minus);

    const HessianReport hess = hessian_of(
        [&prob](const Eigen::VectorXd& z) { return p_minus_wrapped(z, prob); }, z_opt,
        phases, 1e-3, prob.penalty);
    report.hessian_prediction_db =
        to_db(base_p_minus + 0.5 * sigma * sigma * hess.hessian.trace());

    if (sigma == 0.0) {  // degenerate distribution: the mean is the base value
        report.mean_q_minus_db = report.unperturbed_q_minus_db;
        return report;
    }

    Rng rng(mix_seed(seed, 0x3C0));
    double sum = 0.0;
    int excluded = 0;
    for (int s = 0; s < samples; ++s) {
        for (;;) {
            Eigen::VectorXd z = z_opt;
            for (int idx : phases) z[idx] += sigma * rng.normal();
            const double value = p_minus_wrapped(z, prob);
            if (value < prob.penalty) {
                sum += value;
                break;
            }
            ++excluded;  // unstable draw: resample
        }
    }
    report.mean_q_minus_db = to_db(sum / double(samples));
    report.excluded = excluded;
    report.exclusion_rate = double(excluded) / double(samples + excluded);
    report.warning = report.exclusion_rate > 0.01;
    return report;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("pearson: sequences differ in length");
    if (xs.size() < 2) throw std::invalid_argument("pearson: need at least two samples");

    const double n = double(xs.size());
    const double mean_x = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double mean_y = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mean_x;
        const double dy = ys[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0)
        throw std::invalid_argument("pearson: degenerate variance");
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace oponet
