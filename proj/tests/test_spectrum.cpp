#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oponet/spectrum.hpp"
#include "oponet/stability.hpp"
#include "oracles.hpp"

using namespace oponet;
using oracles::Complex;

namespace {

FixedSetupd default_setup() { return {}; }

SingleOpoParamsd reference_single_opo() {
    SingleOpoParamsd p;
    p.T1 = 0.02;
    p.T2 = 0.15;
    p.L = 0.02;
    p.x = 0.318;
    p.theta_xi = 0.0;
    return p;
}

}  // namespace

TEST_CASE("passive network scatters vacuum unitarily") {
    SingleOpoParamsd p = reference_single_opo();
    p.x = 0.0;
    p.omega0 = 0.0;
    const StateSpaced ss = build_single_opo(p, default_setup());
    for (double f_mhz : {0.0, 3.7, 120.0}) {
        const TransferBlocksd tb = transfer_matrix(ss, angular_from_mhz(f_mhz));
        CHECK(tb.z_plus.cwiseAbs().maxCoeff() < 1e-15);
        CHECK(tb.z_minus.row(0).squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("transfer rows match the closed-form single-OPO expressions") {
    Rng rng(101);
    const FixedSetupd setup = default_setup();
    for (int trial = 0; trial < 30; ++trial) {
        const SingleOpoParamsd p = oracles::random_single_opo(rng);
        const StateSpaced ss = build_single_opo(p, setup);
        for (double f_mhz : {0.0, 17.0, 140.0}) {
            const double omega = angular_from_mhz(f_mhz);
            const TransferBlocksd tb = transfer_matrix(ss, omega);
            const auto [z_minus, z_plus] = oracles::single_opo_transfer_rows(p, setup, omega);
            CHECK((tb.z_minus.row(0) - z_minus).cwiseAbs().maxCoeff() < 1e-11);
            CHECK((tb.z_plus.row(0) - z_plus).cwiseAbs().maxCoeff() < 1e-11);
        }
    }
}

TEST_CASE("block symmetry between +omega and -omega") {
    Rng rng(102);
    const FixedSetupd setup = default_setup();
    const TwoOpoParamsd p = oracles::random_two_opo(rng);
    const StateSpaced ss = build_two_opo(p, setup);
    const double omega = angular_from_mhz(23.0);

    // Recompute the full doubled-up transfer matrix and compare its lower
    // blocks against the conjugated upper blocks at -omega.
    MatrixXc<double> shifted = ss.A;
    shifted.diagonal().array() += Complex(0.0, omega);
    const MatrixXc<double> full =
        ss.S + ss.K * shifted.fullPivLu().solve(MatrixXc<double>(ss.K.adjoint() * ss.S));
    const Eigen::Index n = ss.n_ports;
    const TransferBlocksd at_neg = transfer_matrix(ss, -omega);
    CHECK((full.bottomLeftCorner(n, n) - at_neg.z_plus.conjugate()).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK((full.bottomRightCorner(n, n) - at_neg.z_minus.conjugate())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
}

TEST_CASE("row fast path agrees with the full transfer blocks") {
    Rng rng(111);
    const FixedSetupd setup = default_setup();
    for (int trial = 0; trial < 20; ++trial) {
        const TwoOpoParamsd p = oracles::random_two_opo(rng);
        const StateSpaced ss = build_two_opo(p, setup);
        const double omega = angular_from_mhz(rng.uniform(0.0, 150.0));
        for (Eigen::Index port : {0, 3, 6}) {
            const NoiseMoments<double> nm = noise_moments(ss, omega, port);
            const TransferBlocksd pos = transfer_matrix(ss, omega);
            const TransferBlocksd neg = transfer_matrix(ss, -omega);
            const double n_pos = pos.z_plus.row(port).squaredNorm();
            const double n_neg = neg.z_plus.row(port).squaredNorm();
            const Complex m =
                (pos.z_minus.row(port).array() * neg.z_plus.row(port).array()).sum();
            CHECK(nm.n_pos == doctest::Approx(n_pos).epsilon(1e-12));
            CHECK(nm.n_neg == doctest::Approx(n_neg).epsilon(1e-12));
            CHECK(std::abs(nm.m - m) <= 1e-12 * (1.0 + std::abs(m)));
        }
    }
}

TEST_CASE("noise moments vanish without pump") {
    Rng rng(103);
    SingleOpoParamsd p = oracles::random_single_opo(rng);
    p.x = 0.0;
    const StateSpaced ss = build_single_opo(p, default_setup());
    const NoiseMoments<double> nm = noise_moments(ss, angular_from_mhz(12.0), 0);
    CHECK(nm.n_pos == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(nm.m) < 1e-15);

    TwoOpoParamsd q = oracles::random_two_opo(rng);
    q.x_p = 0.0;
    q.x_c = 0.0;
    const StateSpaced ss2 = build_two_opo(q, default_setup());
    const NoiseMoments<double> nm2 = noise_moments(ss2, angular_from_mhz(12.0), 0);
    CHECK(nm2.n_pos == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(nm2.m) < 1e-15);
}

TEST_CASE("reference resonance photon number") {
    // rho 4x^2/(1-x^2)^2 with rho = 0.15/0.19 and x = 0.318.
    const StateSpaced ss = build_single_opo(reference_single_opo(), default_setup());
    const NoiseMoments<double> nm = noise_moments(ss, 0.0, 0);
    const double rho = 0.15 / 0.19;
    const double x = 0.318;
    const double expected = rho * 4.0 * x * x / ((1.0 - x * x) * (1.0 - x * x));
    CHECK(nm.n_pos == doctest::Approx(expected).epsilon(1e-12));
    CHECK(nm.n_pos == doctest::Approx(0.3952).epsilon(1e-3));
}

TEST_CASE("noise moments match the closed forms") {
    Rng rng(104);
    const FixedSetupd setup = default_setup();
    for (int trial = 0; trial < 30; ++trial) {
        const SingleOpoParamsd p = oracles::random_single_opo(rng);
        const StateSpaced ss = build_single_opo(p, setup);
        for (double f_mhz : {0.0, 31.0}) {
            const double omega = angular_from_mhz(f_mhz);
            const NoiseMoments<double> nm = noise_moments(ss, omega, 0);
            const auto [n_expected, m_expected] = oracles::single_opo_moments(p, setup, omega);
            CHECK(nm.n_pos == doctest::Approx(n_expected).epsilon(1e-10));
            CHECK(std::abs(nm.m - m_expected) < 1e-10 * (1.0 + std::abs(m_expected)));
        }
    }
}

TEST_CASE("pi-phase pump gives a real negative M at zero detuning") {
    SingleOpoParamsd p = reference_single_opo();
    p.theta_xi = std::numbers::pi;
    const StateSpaced ss = build_single_opo(p, default_setup());
    for (double f_mhz : {0.0, 10.0, 60.0}) {
        const NoiseMoments<double> nm = noise_moments(ss, angular_from_mhz(f_mhz), 0);
        CHECK(nm.m.real() < 0.0);
        CHECK(std::abs(nm.m.imag()) < 1e-12 * std::abs(nm.m.real()));
    }
}

TEST_CASE("quadrature spectrum basics") {
    const StateSpaced ss = build_single_opo(reference_single_opo(), default_setup());

    SingleOpoParamsd vac = reference_single_opo();
    vac.x = 0.0;
    const StateSpaced passive = build_single_opo(vac, default_setup());
    for (double theta : {0.0, 0.4, 2.0})
        CHECK(quadrature_spectrum(passive, angular_from_mhz(5.0), theta) ==
              doctest::Approx(1.0).epsilon(1e-14));

    // theta and theta + pi give the same spectrum.
    const double omega = angular_from_mhz(8.0);
    for (double theta : {0.1, 1.0, 2.5}) {
        CHECK(quadrature_spectrum(ss, omega, theta) ==
              doctest::Approx(quadrature_spectrum(ss, omega, theta + std::numbers::pi))
                  .epsilon(1e-13));
    }

    // The extremal phases really are extremal.
    const SpectrumPointd sp = extremal_spectra(ss, omega, 0);
    CHECK(quadrature_spectrum(ss, omega, sp.theta_opt) ==
          doctest::Approx(sp.p_minus).epsilon(1e-12));
    for (double theta = 0.0; theta < std::numbers::pi; theta += 0.097) {
        const double value = quadrature_spectrum(ss, omega, theta);
        CHECK(value >= sp.p_minus - 1e-12);
        CHECK(value <= sp.p_plus + 1e-12);
    }
}

TEST_CASE("reference squeezing levels at resonance") {
    const StateSpaced ss = build_single_opo(reference_single_opo(), default_setup());
    const SpectrumPointd sp = extremal_spectra(ss, 0.0, 0);
    CHECK(to_db(sp.p_minus) == doctest::Approx(-3.748).epsilon(3e-3));
    CHECK(to_db(sp.p_plus) == doctest::Approx(4.996).epsilon(3e-3));
    // Pump phase 0 squeezes the theta = pi/2 quadrature.
    CHECK(sp.theta_opt == doctest::Approx(std::numbers::pi / 2).epsilon(1e-9));
}

TEST_CASE("extremal spectra of vacuum report unit PSD and zero phase") {
    SingleOpoParamsd p = reference_single_opo();
    p.x = 0.0;
    const StateSpaced ss = build_single_opo(p, default_setup());
    const SpectrumPointd sp = extremal_spectra(ss, angular_from_mhz(40.0), 0);
    CHECK(sp.p_minus == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(sp.p_plus == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(sp.theta_opt == 0.0);
}

TEST_CASE("numeric pipeline agrees with the analytic single-OPO spectra") {
    Rng rng(105);
    const FixedSetupd setup = default_setup();
    int stable_draws = 0;
    while (stable_draws < 100) {
        const SingleOpoParamsd p = oracles::random_single_opo(rng);
        const StateSpaced ss = build_single_opo(p, setup);
        if (!check_stability(ss).stable) continue;
        ++stable_draws;
        for (int k = 0; k <= 20; ++k) {
            const double omega = angular_from_mhz(10.0 * k);
            const SpectrumPointd sp = extremal_spectra(ss, omega, 0);
            const auto [p_minus, p_plus] = analytic_single_opo(p, setup, omega);
            CHECK(std::abs(sp.p_minus - p_minus) <= 1e-9 * p_minus);
            CHECK(std::abs(sp.p_plus - p_plus) <= 1e-9 * p_plus);
        }
    }
}

TEST_CASE("analytic spectra reduce to the scaled zero-detuning form") {
    Rng rng(106);
    const FixedSetupd setup = default_setup();
    for (int trial = 0; trial < 20; ++trial) {
        SingleOpoParamsd p = oracles::random_single_opo(rng);
        p.omega0 = 0.0;
        for (double f_mhz : {0.0, 45.0}) {
            const double omega = angular_from_mhz(f_mhz);
            const auto [p_minus, p_plus] = analytic_single_opo(p, setup, omega);
            const auto [s_minus, s_plus] = oracles::single_opo_scaled_spectra(p, setup, omega);
            CHECK(p_minus == doctest::Approx(s_minus).epsilon(1e-12));
            CHECK(p_plus == doctest::Approx(s_plus).epsilon(1e-12));
        }
    }
}

TEST_CASE("analytic spectra: pump off means vacuum") {
    Rng rng(107);
    SingleOpoParamsd p = oracles::random_single_opo(rng);
    p.x = 0.0;
    const auto [p_minus, p_plus] = analytic_single_opo(p, default_setup(), angular_from_mhz(7.0));
    CHECK(p_minus == 1.0);
    CHECK(p_plus == 1.0);
}

TEST_CASE("detuned reference values at resonance") {
    // Same reference cavity detuned to 50 MHz; values frozen from the
    // closed form evaluated at omega = 0.
    SingleOpoParamsd p = reference_single_opo();
    p.omega0 = angular_from_mhz(50.0);
    const auto [p_minus, p_plus] = analytic_single_opo(p, default_setup(), 0.0);
    CHECK(p_minus == doctest::Approx(0.80918386274).epsilon(1e-9));
    CHECK(p_plus == doctest::Approx(1.25163688264).epsilon(1e-9));
    const StateSpaced ss = build_single_opo(p, default_setup());
    const SpectrumPointd sp = extremal_spectra(ss, 0.0, 0);
    CHECK(sp.p_minus == doctest::Approx(p_minus).epsilon(1e-10));
    CHECK(sp.p_plus == doctest::Approx(p_plus).epsilon(1e-10));
}

TEST_CASE("uncertainty product stays above the Heisenberg floor") {
    Rng rng(108);
    const FixedSetupd setup = default_setup();
    int checked = 0;
    while (checked < 60) {
        const TwoOpoParamsd p = oracles::random_two_opo(rng);
        const StateSpaced ss = build_two_opo(p, setup);
        if (!check_stability(ss).stable) continue;
        ++checked;
        const SpectrumPointd sp = extremal_spectra(ss, angular_from_mhz(rng.uniform(0.0, 150.0)), 0);
        CHECK(sp.p_plus * sp.p_minus >= 1.0 - 1e-9);
    }

    // Lossless single OPO saturates the bound.
    SingleOpoParamsd p;
    p.T1 = 0.0;
    p.L = 0.0;
    p.T2 = 0.4;
    p.x = 0.6;
    const StateSpaced ss = build_single_opo(p, setup);
    for (double f_mhz : {0.0, 25.0, 90.0}) {
        const SpectrumPointd sp = extremal_spectra(ss, angular_from_mhz(f_mhz), 0);
        CHECK(sp.p_plus * sp.p_minus == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("severed feedback reproduces the mapped single-OPO spectrum") {
    Rng rng(109);
    const FixedSetupd setup = default_setup();
    int checked = 0;
    while (checked < 20) {
        TwoOpoParamsd p = oracles::random_two_opo(rng);
        p.L1 = 1.0;
        p.L2 = 1.0;
        const StateSpaced ss = build_two_opo(p, setup);
        if (!check_stability(ss).stable) continue;
        ++checked;

        SingleOpoParamsd mapped;
        mapped.T1 = p.Tp1;
        mapped.T2 = p.Tp2;
        mapped.L = p.Lp;
        mapped.omega0 = p.omega_p;
        mapped.x = p.x_p;
        mapped.theta_xi = p.theta_p;
        mapped.L_tl = p.L3;
        for (double f_mhz : {0.0, 12.0, 80.0}) {
            const double omega = angular_from_mhz(f_mhz);
            const SpectrumPointd sp = extremal_spectra(ss, omega, 0);
            const auto [p_minus, p_plus] = analytic_single_opo(mapped, setup, omega);
            CHECK(std::abs(sp.p_minus - p_minus) <= 1e-9 * p_minus);
            CHECK(std::abs(sp.p_plus - p_plus) <= 1e-9 * p_plus);
        }
    }
}

TEST_CASE("spectra are real and even in frequency at zero detuning") {
    Rng rng(110);
    SingleOpoParamsd p = oracles::random_single_opo(rng);
    p.omega0 = 0.0;
    p.x = std::min(p.x, 0.8);
    const StateSpaced ss = build_single_opo(p, default_setup());
    for (double f_mhz : {3.0, 47.0, 111.0}) {
        const SpectrumPointd pos = extremal_spectra(ss, angular_from_mhz(f_mhz), 0);
        const SpectrumPointd neg = extremal_spectra(ss, -angular_from_mhz(f_mhz), 0);
        CHECK(pos.p_minus == doctest::Approx(neg.p_minus).epsilon(1e-12));
        CHECK(pos.p_plus == doctest::Approx(neg.p_plus).epsilon(1e-12));
    }
}

TEST_CASE("port index is validated") {
    const StateSpaced ss = build_single_opo(reference_single_opo(), default_setup());
    CHECK_THROWS_AS(noise_moments(ss, 0.0, 7), std::out_of_range);
    CHECK_THROWS_AS(noise_moments(ss, 0.0, -1), std::out_of_range);
}

TEST_CASE("decibel conversion") {
    CHECK(to_db(1.0) == 0.0);
    CHECK(to_db(10.0) == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(to_db(0.4219) == doctest::Approx(-3.748).epsilon(1e-3));
    CHECK_THROWS_AS(to_db(0.0), std::domain_error);
    CHECK_THROWS_AS(to_db(-1.0), std::domain_error);
}
