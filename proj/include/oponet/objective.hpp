#pragma once

#include <Eigen/Dense>

#include <variant>
#include <vector>

#include "oponet/network.hpp"
#include "oponet/spectrum.hpp"
#include "oponet/stability.hpp"

namespace oponet {

enum class Topology { single_opo, two_opo };

// Loss parameters are fixed per optimization run: any loss increase only
// degrades squeezing, so free losses would just converge to their lower
// bounds.
struct SingleOpoLosses {
    double intracavity = 0.01;  // L
    double output_line = 0.0;   // L_tl

    friend bool operator==(const SingleOpoLosses&, const SingleOpoLosses&) = default;
};

struct TwoOpoLosses {
    double plant_intracavity = 0.01;       // Lp
    double controller_intracavity = 0.01;  // Lc
    double line1 = 0.0;
    double line2 = 0.0;
    double line3 = 0.0;

    friend bool operator==(const TwoOpoLosses&, const TwoOpoLosses&) = default;
};

// Search box. Phases always range over [0, 2pi], detunings over
// [-omega_u, omega_u], transmittances over [0, T_u], pumps over [0, x_u].
struct BoundBox {
    double omega_u = angular_from_mhz(100.0);  // rad/s
    double T_u = 0.9;
    double x_u = 0.3;

    friend bool operator==(const BoundBox&, const BoundBox&) = default;
};

// Maximize squeezing at one sideband frequency.
struct PointTarget {
    double omega = 0.0;  // rad/s

    friend bool operator==(const PointTarget&, const PointTarget&) = default;
};

// Maximize average squeezing over [0, edge] sampled every `spacing`.
struct BandTarget {
    double edge = angular_from_mhz(100.0);    // rad/s
    double spacing = angular_from_mhz(1.0);   // rad/s

    friend bool operator==(const BandTarget&, const BandTarget&) = default;
};

struct Problem {
    Topology topology = Topology::two_opo;
    FixedSetupd setup{};
    BoundBox bounds{};
    std::variant<PointTarget, BandTarget> target = PointTarget{};
    SingleOpoLosses single_losses{};
    TwoOpoLosses two_losses{};
    double uncertainty_weight = 1e-3;  // g
    double penalty = 1e6;              // objective assigned to unstable points

    int dimension() const { return topology == Topology::single_opo ? 5 : 12; }
    bool is_point() const { return std::holds_alternative<PointTarget>(target); }

    friend bool operator==(const Problem&, const Problem&) = default;
};

// Decision-vector layout:
//   single OPO: [T1, T2, omega0, x, theta_xi]
//   two OPOs:   [Tp1, Tp2, omega_p, x_p, theta_p,
//                Tc1, Tc2, omega_c, x_c, theta_c, phi1, phi2]
Eigen::VectorXd lower_bounds(const Problem& prob);
Eigen::VectorXd upper_bounds(const Problem& prob);

// Indices of the phase coordinates within the decision vector.
std::vector<int> phase_indices(const Problem& prob);

// Phases are 2pi-periodic; wrapping them back into [0, 2pi) leaves the
// physics unchanged. Used by perturbation-based analyses.
Eigen::VectorXd wrap_phases(Eigen::VectorXd z, const Problem& prob);

using ParamSet = std::variant<SingleOpoParamsd, TwoOpoParamsd>;

// Decision vector -> network parameters with the problem's fixed losses
// injected. Out-of-box components are a hard error (optimizers clamp
// before evaluating); overshoots below 1e-9 of the range are snapped.
ParamSet decode(const Eigen::VectorXd& z, const Problem& prob);
Eigen::VectorXd encode(const ParamSet& params, const Problem& prob);

StateSpaced build_state_space(const ParamSet& params, const FixedSetupd& setup);

// Stability plus extremal spectra of one decision vector at one frequency.
struct Evaluation {
    bool stable = false;
    double margin = 0.0;
    SpectrumPointd point{};
};
Evaluation evaluate_detail(const Eigen::VectorXd& z, const Problem& prob, double omega);

// J = P-(w_opt) + g P-(w_opt) P+(w_opt); unstable points get the penalty.
double eval_point(const Eigen::VectorXd& z, const Problem& prob);

// J_B = mean of P-(w_k) over w_k = k h, k = 0..N; unstable points get the
// penalty. The band edge must be an integer multiple of the spacing.
double eval_band(const Eigen::VectorXd& z, const Problem& prob);

// Dispatches on the problem's target kind.
double evaluate(const Eigen::VectorXd& z, const Problem& prob);

}  // namespace oponet
