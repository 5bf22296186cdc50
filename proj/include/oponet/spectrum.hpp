#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "oponet/network.hpp"

namespace oponet {

// Upper blocks of the doubled-up transfer-matrix function at one sideband
// frequency: a_out(w) = Z^-(w) a_in(w) + Z^+(w) a_in^dag(-w). The lower
// blocks are conj(Z^+(-w)) and conj(Z^-(-w)) and are never stored.
template <typename Scalar>
struct TransferBlocks {
    MatrixXc<Scalar> z_minus;  // n x n
    MatrixXc<Scalar> z_plus;   // n x n
    Scalar omega = Scalar(0);
};

// Z(w) = [I + K (A + i w I)^-1 K^dag] S, evaluated through an LU
// factorization of the shifted drift matrix.
template <typename Scalar>
TransferBlocks<Scalar> transfer_matrix(const StateSpace<Scalar>& ss, Scalar omega) {
    using Complex = std::complex<Scalar>;
    const Eigen::Index n = ss.n_ports;
    const Eigen::Index two_m = ss.A.rows();

    MatrixXc<Scalar> shifted = ss.A;
    shifted.diagonal().array() += Complex(Scalar(0), omega);

    Eigen::FullPivLU<MatrixXc<Scalar>> lu(shifted);
    if (!lu.isInvertible())
        throw std::runtime_error("transfer_matrix: drift matrix singular at this frequency");

    const MatrixXc<Scalar> rhs = ss.K.adjoint() * ss.S;      // 2m x 2n
    const MatrixXc<Scalar> z = ss.S + ss.K * lu.solve(rhs);  // 2n x 2n

    TransferBlocks<Scalar> out;
    out.omega = omega;
    out.z_minus = z.topLeftCorner(n, n);
    out.z_plus = z.block(0, n, n, n);
    (void)two_m;
    return out;
}

// Vacuum-input second moments of one output field.
template <typename Scalar>
struct NoiseMoments {
    Scalar n_pos = Scalar(0);     // N(w)
    Scalar n_neg = Scalar(0);     // N(-w)
    std::complex<Scalar> m{0};    // M(w)
};

namespace detail {

// Single row of the doubled-up transfer matrix,
//   row_p(Z) = row_p(S) + row_p(K) (A + i w I)^-1 K^dag S,
// solved against one right-hand side. Much cheaper than the full blocks
// when only one output port matters (the optimization hot path).
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 1, Eigen::Dynamic> transfer_row(
    const StateSpace<Scalar>& ss, Scalar omega, Eigen::Index port) {
    using Complex = std::complex<Scalar>;
    MatrixXc<Scalar> shifted = ss.A;
    shifted.diagonal().array() += Complex(Scalar(0), omega);

    Eigen::FullPivLU<MatrixXc<Scalar>> lu(shifted);
    if (!lu.isInvertible())
        throw std::runtime_error("transfer_row: drift matrix singular at this frequency");

    const VectorXc<Scalar> propagated =
        lu.transpose().solve(ss.K.row(port).transpose());
    return ss.S.row(port) + (propagated.transpose() * ss.K.adjoint()) * ss.S;
}

}  // namespace detail

// N(w) = sum_j |Z^+_pj(w)|^2, M(w) = sum_j Z^-_pj(w) Z^+_pj(-w).
template <typename Scalar>
NoiseMoments<Scalar> noise_moments(const StateSpace<Scalar>& ss, Scalar omega,
                                   Eigen::Index port = 0) {
    if (port < 0 || port >= ss.n_ports)
        throw std::out_of_range("noise_moments: port index out of range");
    const Eigen::Index n = ss.n_ports;
    const auto pos = detail::transfer_row(ss, omega, port);
    const auto neg = detail::transfer_row(ss, -omega, port);

    NoiseMoments<Scalar> nm;
    nm.n_pos = pos.segment(n, n).squaredNorm();
    nm.n_neg = neg.segment(n, n).squaredNorm();
    nm.m = (pos.head(n).array() * neg.segment(n, n).array()).sum();
    return nm;
}

// Quadrature noise power spectral density relative to vacuum (= 1) at
// homodyne phase theta.
template <typename Scalar>
Scalar quadrature_spectrum(const StateSpace<Scalar>& ss, Scalar omega, Scalar theta,
                           Eigen::Index port = 0) {
    using Complex = std::complex<Scalar>;
    const NoiseMoments<Scalar> nm = noise_moments(ss, omega, port);
    const Complex rot = std::polar(Scalar(1), Scalar(-2) * theta);
    return Scalar(1) + nm.n_pos + nm.n_neg + Scalar(2) * std::real(nm.m * rot);
}

// Extremal quadrature spectra at one frequency. theta_opt is the homodyne
// phase of the squeezed quadrature, (arg M - pi)/2 reduced into [0, pi);
// when M vanishes the phase is reported as 0.
template <typename Scalar>
struct SpectrumPoint {
    Scalar omega = Scalar(0);
    Scalar n_pos = Scalar(0);
    Scalar n_neg = Scalar(0);
    std::complex<Scalar> m{0};
    Scalar p_minus = Scalar(1);  // squeezed quadrature PSD
    Scalar p_plus = Scalar(1);   // anti-squeezed quadrature PSD
    Scalar theta_opt = Scalar(0);
};

template <typename Scalar>
SpectrumPoint<Scalar> extremal_spectra(const StateSpace<Scalar>& ss, Scalar omega,
                                       Eigen::Index port = 0) {
    const NoiseMoments<Scalar> nm = noise_moments(ss, omega, port);
    const Scalar mod = std::abs(nm.m);

    SpectrumPoint<Scalar> sp;
    sp.omega = omega;
    sp.n_pos = nm.n_pos;
    sp.n_neg = nm.n_neg;
    sp.m = nm.m;
    sp.p_plus = Scalar(1) + nm.n_pos + nm.n_neg + Scalar(2) * mod;
    sp.p_minus = Scalar(1) + nm.n_pos + nm.n_neg - Scalar(2) * mod;
    if (mod < Scalar(1e-15)) {
        sp.theta_opt = Scalar(0);
    } else {
        const Scalar pi = Scalar(std::numbers::pi);
        Scalar theta = (std::arg(nm.m) - pi) / Scalar(2);
        theta = std::fmod(theta, pi);
        if (theta < Scalar(0)) theta += pi;
        if (theta >= pi) theta -= pi;
        sp.theta_opt = theta;
    }
    return sp;
}

// Closed-form extremal spectra of the single OPO at its measured output.
// Independent of the state-space pipeline; serves as its oracle.
template <typename Scalar>
std::pair<Scalar, Scalar> analytic_single_opo(const SingleOpoParams<Scalar>& p,
                                              const FixedSetup<Scalar>& setup,
                                              Scalar omega) {
    using Complex = std::complex<Scalar>;
    p.validate();
    setup.validate();

    const Scalar l_eff = setup.plant_cavity_length;
    const Scalar kappa1 = leakage_rate(p.T1, l_eff);
    const Scalar kappa2 = leakage_rate(p.T2, l_eff);
    const Scalar kappa3 = leakage_rate(p.L, l_eff);
    const Scalar gamma = kappa1 + kappa2 + kappa3;
    const Scalar t_b_sq = Scalar(1) - p.L_tl;  // beamsplitter power transmittance
    const Scalar xi_mod = gamma * p.x / Scalar(2);

    const Complex eta(gamma / Scalar(2), p.omega0);
    const Complex i_omega(Scalar(0), omega);
    const Complex lambda = (std::conj(eta) - i_omega) * (eta - i_omega) - xi_mod * xi_mod;
    const Scalar den = std::norm(lambda);

    const Scalar mu = gamma * gamma / Scalar(4) + xi_mod * xi_mod + omega * omega -
                      p.omega0 * p.omega0;
    const Scalar root = std::sqrt(mu * mu + gamma * gamma * p.omega0 * p.omega0);
    const Scalar amp = Scalar(2) * kappa2 * t_b_sq * xi_mod;

    const Scalar p_minus = Scalar(1) - amp * (root - gamma * xi_mod) / den;
    const Scalar p_plus = Scalar(1) + amp * (root + gamma * xi_mod) / den;
    return {p_minus, p_plus};
}

// 10 log10(P): noise change relative to the vacuum level in dB.
template <typename Scalar>
Scalar to_db(Scalar p) {
    if (!(p > Scalar(0)))
        throw std::domain_error("to_db: spectral density must be positive");
    return Scalar(10) * std::log10(p);
}

using TransferBlocksd = TransferBlocks<double>;
using SpectrumPointd = SpectrumPoint<double>;

}  // namespace oponet
