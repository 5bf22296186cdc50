#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "oponet/constants.hpp"

namespace oponet {

template <typename Scalar>
using MatrixXc = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using VectorXc = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

// Fixed experimental constants shared by every optimization run. The two
// cavities usually share one effective length but may differ.
template <typename Scalar>
struct FixedSetup {
    Scalar plant_cavity_length = Scalar(0.087);       // effective length incl. crystal, m
    Scalar controller_cavity_length = Scalar(0.087);  // m; unused for the single OPO
    Scalar pump_wavelength = Scalar(775e-9);          // m
    Scalar signal_wavelength = Scalar(1550e-9);       // m
    Scalar threshold_power = Scalar(14.86);           // OPO threshold pump power, W

    void validate() const {
        if (!(plant_cavity_length > Scalar(0)) || !(controller_cavity_length > Scalar(0)))
            throw std::domain_error("FixedSetup: cavity lengths must be positive");
        if (!(threshold_power > Scalar(0)))
            throw std::domain_error("FixedSetup: threshold power must be positive");
    }

    friend bool operator==(const FixedSetup&, const FixedSetup&) = default;
};

// Mirror power transmittance -> cavity field leakage rate (rad/s).
template <typename Scalar>
Scalar leakage_rate(Scalar transmittance, Scalar cavity_length) {
    if (!(transmittance >= Scalar(0) && transmittance <= Scalar(1)))
        throw std::domain_error("leakage_rate: transmittance outside [0, 1]");
    if (!(cavity_length > Scalar(0)))
        throw std::domain_error("leakage_rate: cavity length must be positive");
    return Scalar(speed_of_light) * transmittance / (Scalar(2) * cavity_length);
}

// Pump power corresponding to a scaled pump amplitude x = sqrt(P / P_th).
template <typename Scalar>
Scalar pump_power(Scalar x, Scalar threshold_power) {
    if (!(x >= Scalar(0)))
        throw std::domain_error("pump_power: scaled amplitude must be non-negative");
    if (!(threshold_power > Scalar(0)))
        throw std::domain_error("pump_power: threshold power must be positive");
    return x * x * threshold_power;
}

// Degenerate OPO in a Fabry-Perot cavity followed by a lossy output line.
// Mirror transmittances are power quantities in [0, 1]; the intracavity
// loss acts as a fictitious third mirror.
template <typename Scalar>
struct SingleOpoParams {
    Scalar T1 = Scalar(0);        // left (back) mirror transmittance
    Scalar T2 = Scalar(0);        // right (output) mirror transmittance
    Scalar L = Scalar(0);         // intracavity power loss (third-mirror transmittance)
    Scalar omega0 = Scalar(0);    // cavity detuning, rad/s
    Scalar x = Scalar(0);         // scaled pump amplitude, x = 2|xi|/gamma
    Scalar theta_xi = Scalar(0);  // pump phase, rad
    Scalar L_tl = Scalar(0);      // output transmission-line power loss

    void validate() const {
        for (Scalar v : {T1, T2, L, L_tl})
            if (!(v >= Scalar(0) && v <= Scalar(1)))
                throw std::domain_error("SingleOpoParams: power quantity outside [0, 1]");
        if (!(x >= Scalar(0)))
            throw std::domain_error("SingleOpoParams: pump amplitude must be non-negative");
    }

    friend bool operator==(const SingleOpoParams&, const SingleOpoParams&) = default;
};

// Two coupled OPOs: the plant and the controller exchange light through two
// transmission lines with phase shifters, forming a coherent feedback loop.
// Beamsplitter losses are stored as power losses L_i = r_i^2.
template <typename Scalar>
struct TwoOpoParams {
    Scalar Tp1 = Scalar(0), Tp2 = Scalar(0);  // plant mirror transmittances
    Scalar Lp = Scalar(0);                    // plant intracavity loss
    Scalar Tc1 = Scalar(0), Tc2 = Scalar(0);  // controller mirror transmittances
    Scalar Lc = Scalar(0);                    // controller intracavity loss
    Scalar omega_p = Scalar(0);               // plant detuning, rad/s
    Scalar omega_c = Scalar(0);               // controller detuning, rad/s
    Scalar x_p = Scalar(0), x_c = Scalar(0);  // scaled pump amplitudes
    Scalar theta_p = Scalar(0), theta_c = Scalar(0);  // pump phases, rad
    Scalar phi1 = Scalar(0), phi2 = Scalar(0);        // path phase shifts, rad
    Scalar L1 = Scalar(0), L2 = Scalar(0), L3 = Scalar(0);  // line losses

    void validate() const {
        for (Scalar v : {Tp1, Tp2, Lp, Tc1, Tc2, Lc, L1, L2, L3})
            if (!(v >= Scalar(0) && v <= Scalar(1)))
                throw std::domain_error("TwoOpoParams: power quantity outside [0, 1]");
        if (!(x_p >= Scalar(0)) || !(x_c >= Scalar(0)))
            throw std::domain_error("TwoOpoParams: pump amplitudes must be non-negative");
    }

    friend bool operator==(const TwoOpoParams&, const TwoOpoParams&) = default;
};

// Doubled-up frequency-domain model. With m cavity modes and n ports the
// dynamical variables are stacked as [a; a^dag], so the drift matrix A is
// 2m x 2m, the coupling matrix K is 2n x 2m and the scattering matrix S is
// 2n x 2n. K and S have the block form delta(X, 0); A is delta(V, W) with W
// the parametric-gain block, where delta(X, Y) = [X, Y; conj(Y), conj(X)].
template <typename Scalar>
struct StateSpace {
    Eigen::Index n_ports = 0;  // n
    Eigen::Index n_modes = 0;  // m
    MatrixXc<Scalar> A;        // 2m x 2m
    MatrixXc<Scalar> K;        // 2n x 2m
    MatrixXc<Scalar> S;        // 2n x 2n
};

// delta(X, Y) = [X, Y; conj(Y), conj(X)].
template <typename Scalar>
MatrixXc<Scalar> delta_join(const MatrixXc<Scalar>& x, const MatrixXc<Scalar>& y) {
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw std::invalid_argument("delta_join: block shapes differ");
    MatrixXc<Scalar> out(2 * x.rows(), 2 * x.cols());
    out.topLeftCorner(x.rows(), x.cols()) = x;
    out.topRightCorner(x.rows(), x.cols()) = y;
    out.bottomLeftCorner(x.rows(), x.cols()) = y.conjugate();
    out.bottomRightCorner(x.rows(), x.cols()) = x.conjugate();
    return out;
}

// Assembles the doubled-up model from the single-block scattering matrix S
// (n x n), coupling matrix K (n x m), mode Hamiltonian Omega (m x m,
// Hermitian) and parametric gain W (m x m). The drift block follows from
// the Heisenberg equations of motion: V = -K^dag K / 2 - i Omega.
template <typename Scalar>
StateSpace<Scalar> assemble_state_space(const MatrixXc<Scalar>& scattering,
                                        const MatrixXc<Scalar>& coupling,
                                        const MatrixXc<Scalar>& mode_hamiltonian,
                                        const MatrixXc<Scalar>& gain) {
    const std::complex<Scalar> i_unit(Scalar(0), Scalar(1));
    const Eigen::Index n = scattering.rows();
    const Eigen::Index m = coupling.cols();
    const MatrixXc<Scalar> drift =
        -Scalar(0.5) * (coupling.adjoint() * coupling) - i_unit * mode_hamiltonian;

    StateSpace<Scalar> ss;
    ss.n_ports = n;
    ss.n_modes = m;
    ss.A = delta_join<Scalar>(drift, gain);
    ss.K = delta_join<Scalar>(coupling, MatrixXc<Scalar>::Zero(n, m));
    ss.S = delta_join<Scalar>(scattering, MatrixXc<Scalar>::Zero(n, n));
    return ss;
}

// Single OPO network: n = 4 ports (output line, back mirror, intracavity
// loss, beamsplitter tap), m = 1 mode.
template <typename Scalar>
StateSpace<Scalar> build_single_opo(const SingleOpoParams<Scalar>& p,
                                    const FixedSetup<Scalar>& setup) {
    using Complex = std::complex<Scalar>;
    p.validate();
    setup.validate();

    const Scalar l_eff = setup.plant_cavity_length;
    const Scalar kappa1 = leakage_rate(p.T1, l_eff);
    const Scalar kappa2 = leakage_rate(p.T2, l_eff);
    const Scalar kappa3 = leakage_rate(p.L, l_eff);
    const Scalar gamma = kappa1 + kappa2 + kappa3;

    const Scalar t_b = std::sqrt(Scalar(1) - p.L_tl);
    const Scalar r_b = std::sqrt(p.L_tl);
    const Complex xi = std::polar(gamma * p.x / Scalar(2), p.theta_xi);

    MatrixXc<Scalar> scattering(4, 4);
    scattering << Complex(0), Complex(t_b), Complex(0), Complex(-r_b),
                  Complex(1), Complex(0),   Complex(0), Complex(0),
                  Complex(0), Complex(0),   Complex(1), Complex(0),
                  Complex(0), Complex(r_b), Complex(0), Complex(t_b);

    MatrixXc<Scalar> coupling(4, 1);
    coupling << Complex(std::sqrt(kappa2) * t_b),
                Complex(std::sqrt(kappa1)),
                Complex(std::sqrt(kappa3)),
                Complex(std::sqrt(kappa2) * r_b);

    MatrixXc<Scalar> mode_ham(1, 1);
    mode_ham << Complex(p.omega0);

    MatrixXc<Scalar> gain(1, 1);
    gain << xi;

    return assemble_state_space<Scalar>(scattering, coupling, mode_ham, gain);
}

// Two-OPO coherent feedback network: n = 7 ports, m = 2 modes (plant,
// controller). Port 1 is the measured output. Feedback shows up twice: an
// effective plant-controller exchange coupling nu12 and a plant detuning
// shift Im(nu) proportional to sin(phi1 + phi2).
template <typename Scalar>
StateSpace<Scalar> build_two_opo(const TwoOpoParams<Scalar>& p,
                                 const FixedSetup<Scalar>& setup) {
    using Complex = std::complex<Scalar>;
    p.validate();
    setup.validate();

    const Scalar kp1 = leakage_rate(p.Tp1, setup.plant_cavity_length);
    const Scalar kp2 = leakage_rate(p.Tp2, setup.plant_cavity_length);
    const Scalar kp3 = leakage_rate(p.Lp, setup.plant_cavity_length);
    const Scalar kc1 = leakage_rate(p.Tc1, setup.controller_cavity_length);
    const Scalar kc2 = leakage_rate(p.Tc2, setup.controller_cavity_length);
    const Scalar kc3 = leakage_rate(p.Lc, setup.controller_cavity_length);
    const Scalar gamma_p = kp1 + kp2 + kp3;
    const Scalar gamma_c = kc1 + kc2 + kc3;

    const Scalar t1 = std::sqrt(Scalar(1) - p.L1), r1 = std::sqrt(p.L1);
    const Scalar t2 = std::sqrt(Scalar(1) - p.L2), r2 = std::sqrt(p.L2);
    const Scalar t3 = std::sqrt(Scalar(1) - p.L3), r3 = std::sqrt(p.L3);

    const Scalar phi = p.phi1 + p.phi2;  // feedback round-trip phase
    const Complex e_phi1 = std::polar(Scalar(1), p.phi1);
    const Complex e_phi2 = std::polar(Scalar(1), p.phi2);
    const Complex e_phi = std::polar(Scalar(1), phi);

    const Complex xi_p = std::polar(gamma_p * p.x_p / Scalar(2), p.theta_p);
    const Complex xi_c = std::polar(gamma_c * p.x_c / Scalar(2), p.theta_c);

    // Feedback auxiliaries.
    const Complex nu1 = std::sqrt(kc2 * kp1) * t1 * e_phi1;
    const Complex nu2 = std::sqrt(kc2 * kp2) * t2 * e_phi2;
    const Complex nu12 = std::conj(nu1) - nu2;
    const Complex nu = std::sqrt(kp1 * kp2) * t1 * t2 * e_phi;

    const Scalar sp1 = std::sqrt(kp1), sp2 = std::sqrt(kp2), sp3 = std::sqrt(kp3);
    const Scalar sc1 = std::sqrt(kc1), sc2 = std::sqrt(kc2), sc3 = std::sqrt(kc3);
    const Complex zero(0);
    const Complex one(1);

    MatrixXc<Scalar> scattering(7, 7);
    scattering <<
        t1 * t2 * t3 * e_phi, -r1 * t2 * t3 * e_phi, -r2 * t3 * e_phi2, Complex(-r3), zero, zero, zero,
        Complex(r1),          Complex(t1),           zero,              zero,         zero, zero, zero,
        t1 * r2 * e_phi1,     -r1 * r2 * e_phi1,     Complex(t2),       zero,         zero, zero, zero,
        t1 * t2 * r3 * e_phi, -r1 * t2 * r3 * e_phi, -r2 * r3 * e_phi2, Complex(t3),  zero, zero, zero,
        zero,                 zero,                  zero,              zero,         one,  zero, zero,
        zero,                 zero,                  zero,              zero,         zero, one,  zero,
        zero,                 zero,                  zero,              zero,         zero, zero, one;

    const Complex plant_out = sp1 * t1 * t2 * e_phi + sp2;  // plant -> output path
    MatrixXc<Scalar> coupling(7, 2);
    coupling <<
        t3 * plant_out,       sc2 * t2 * t3 * e_phi2,
        Complex(sp1 * r1),    zero,
        sp1 * t1 * r2 * e_phi1, Complex(sc2 * r2),
        r3 * plant_out,       sc2 * t2 * r3 * e_phi2,
        zero,                 Complex(sc1),
        Complex(sp3),         zero,
        zero,                 Complex(sc3);

    const Complex half_i(Scalar(0), Scalar(0.5));
    MatrixXc<Scalar> mode_ham(2, 2);
    mode_ham << Complex(p.omega_p + nu.imag()), half_i * nu12,
                -half_i * std::conj(nu12),      Complex(p.omega_c);

    MatrixXc<Scalar> gain(2, 2);
    gain << xi_p, zero,
            zero, xi_c;

    return assemble_state_space<Scalar>(scattering, coupling, mode_ham, gain);
}

using FixedSetupd = FixedSetup<double>;
using SingleOpoParamsd = SingleOpoParams<double>;
using TwoOpoParamsd = TwoOpoParams<double>;
using StateSpaced = StateSpace<double>;

}  // namespace oponet
