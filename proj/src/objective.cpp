#include "oponet/objective.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace oponet {

namespace {

constexpr double kBoundSlack = 1e-9;  // relative to the coordinate range

double snap_to_box(double v, double lo, double hi, int index) {
    const double slack = kBoundSlack * (hi - lo + 1.0);
    if (v < lo - slack || v > hi + slack)
        throw std::domain_error("decode: coordinate " + std::to_string(index) +
                                " outside its bound interval");
    return std::min(std::max(v, lo), hi);
}

}  // namespace

Eigen::VectorXd lower_bounds(const Problem& prob) {
    Eigen::VectorXd lo(prob.dimension());
    if (prob.topology == Topology::single_opo) {
        lo << 0.0, 0.0, -prob.bounds.omega_u, 0.0, 0.0;
    } else {
        lo << 0.0, 0.0, -prob.bounds.omega_u, 0.0, 0.0,
              0.0, 0.0, -prob.bounds.omega_u, 0.0, 0.0,
              0.0, 0.0;
    }
    return lo;
}

Eigen::VectorXd upper_bounds(const Problem& prob) {
    const BoundBox& b = prob.bounds;
    Eigen::VectorXd hi(prob.dimension());
    if (prob.topology == Topology::single_opo) {
        hi << b.T_u, b.T_u, b.omega_u, b.x_u, two_pi;
    } else {
        hi << b.T_u, b.T_u, b.omega_u, b.x_u, two_pi,
              b.T_u, b.T_u, b.omega_u, b.x_u, two_pi,
              two_pi, two_pi;
    }
    return hi;
}

std::vector<int> phase_indices(const Problem& prob) {
    if (prob.topology == Topology::single_opo) return {4};
    return {4, 9, 10, 11};
}

Eigen::VectorXd wrap_phases(Eigen::VectorXd z, const Problem& prob) {
    for (int i : phase_indices(prob)) {
        double v = std::fmod(z[i], two_pi);
        if (v < 0.0) v += two_pi;
        z[i] = v;
    }
    return z;
}

ParamSet decode(const Eigen::VectorXd& z, const Problem& prob) {
    if (z.size() != prob.dimension())
        throw std::invalid_argument("decode: decision vector has dimension " +
                                    std::to_string(z.size()) + ", expected " +
                                    std::to_string(prob.dimension()));
    const Eigen::VectorXd lo = lower_bounds(prob);
    const Eigen::VectorXd hi = upper_bounds(prob);
    Eigen::VectorXd v(z.size());
    for (int i = 0; i < z.size(); ++i) v[i] = snap_to_box(z[i], lo[i], hi[i], i);

    if (prob.topology == Topology::single_opo) {
        SingleOpoParamsd p;
        p.T1 = v[0];
        p.T2 = v[1];
        p.omega0 = v[2];
        p.x = v[3];
        p.theta_xi = v[4];
        p.L = prob.single_losses.intracavity;
        p.L_tl = prob.single_losses.output_line;
        return p;
    }
    TwoOpoParamsd p;
    p.Tp1 = v[0];
    p.Tp2 = v[1];
    p.omega_p = v[2];
    p.x_p = v[3];
    p.theta_p = v[4];
    p.Tc1 = v[5];
    p.Tc2 = v[6];
    p.omega_c = v[7];
    p.x_c = v[8];
    p.theta_c = v[9];
    p.phi1 = v[10];
    p.phi2 = v[11];
    p.Lp = prob.two_losses.plant_intracavity;
    p.Lc = prob.two_losses.controller_intracavity;
    p.L1 = prob.two_losses.line1;
    p.L2 = prob.two_losses.line2;
    p.L3 = prob.two_losses.line3;
    return p;
}

Eigen::VectorXd encode(const ParamSet& params, const Problem& prob) {
    Eigen::VectorXd z(prob.dimension());
    if (const auto* s = std::get_if<SingleOpoParamsd>(&params)) {
        if (prob.topology != Topology::single_opo)
            throw std::invalid_argument("encode: parameter set does not match topology");
        z << s->T1, s->T2, s->omega0, s->x, s->theta_xi;
        return z;
    }
    const auto& t = std::get<TwoOpoParamsd>(params);
    if (prob.topology != Topology::two_opo)
        throw std::invalid_argument("encode: parameter set does not match topology");
    z << t.Tp1, t.Tp2, t.omega_p, t.x_p, t.theta_p,
         t.Tc1, t.Tc2, t.omega_c, t.x_c, t.theta_c, t.phi1, t.phi2;
    return z;
}

StateSpaced build_state_space(const ParamSet& params, const FixedSetupd& setup) {
    if (const auto* s = std::get_if<SingleOpoParamsd>(&params))
        return build_single_opo(*s, setup);
    return build_two_opo(std::get<TwoOpoParamsd>(params), setup);
}

Evaluation evaluate_detail(const Eigen::VectorXd& z, const Problem& prob, double omega) {
    const ParamSet params = decode(z, prob);
    const StateSpaced ss = build_state_space(params, prob.setup);
    Evaluation ev;
    const StabilityReportd report = check_stability(ss);
    ev.stable = report.stable;
    ev.margin = report.margin;
    if (ev.stable) ev.point = extremal_spectra(ss, omega, 0);
    return ev;
}

double eval_point(const Eigen::VectorXd& z, const Problem& prob) {
    const auto* target = std::get_if<PointTarget>(&prob.target);
    if (!target) throw std::invalid_argument("eval_point: problem has a band target");
    const ParamSet params = decode(z, prob);  // malformed input stays a hard error
    try {
        const StateSpaced ss = build_state_space(params, prob.setup);
        if (!check_stability(ss).stable) return prob.penalty;
        const SpectrumPointd sp = extremal_spectra(ss, target->omega, 0);
        return sp.p_minus + prob.uncertainty_weight * sp.p_minus * sp.p_plus;
    } catch (const std::exception& e) {
        std::cerr << "eval_point: " << e.what() << " (assigned penalty)\n";
        return prob.penalty;
    }
}

double eval_band(const Eigen::VectorXd& z, const Problem& prob) {
    const auto* target = std::get_if<BandTarget>(&prob.target);
    if (!target) throw std::invalid_argument("eval_band: problem has a point target");
    if (!(target->spacing > 0.0))
        throw std::invalid_argument("eval_band: sampling interval must be positive");
    const double ratio = target->edge / target->spacing;
    const long n_intervals = std::lround(ratio);
    if (n_intervals < 0 || std::abs(ratio - double(n_intervals)) > 1e-9 * (ratio + 1.0))
        throw std::invalid_argument("eval_band: band edge must be a multiple of the spacing");

    const ParamSet params = decode(z, prob);
    try {
        const StateSpaced ss = build_state_space(params, prob.setup);
        if (!check_stability(ss).stable) return prob.penalty;

        double sum = 0.0;
        for (long k = 0; k <= n_intervals; ++k)
            sum += extremal_spectra(ss, double(k) * target->spacing, 0).p_minus;
        return sum / double(n_intervals + 1);
    } catch (const std::exception& e) {
        std::cerr << "eval_band: " << e.what() << " (assigned penalty)\n";
        return prob.penalty;
    }
}

double evaluate(const Eigen::VectorXd& z, const Problem& prob) {
    return prob.is_point() ? eval_point(z, prob) : eval_band(z, prob);
}

}  // namespace oponet
