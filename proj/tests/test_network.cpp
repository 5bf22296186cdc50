#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oponet/network.hpp"
#include "oracles.hpp"

using namespace oponet;
using oracles::Complex;

namespace {

// Structural invariant of every doubled-up matrix in a StateSpace.
void check_delta_structure(const StateSpaced& ss) {
    const Eigen::Index n = ss.n_ports, m = ss.n_modes;
    CHECK(ss.A.rows() == 2 * m);
    CHECK(ss.K.rows() == 2 * n);
    CHECK(ss.K.cols() == 2 * m);
    CHECK(ss.S.rows() == 2 * n);

    CHECK((ss.K.topRightCorner(n, m).cwiseAbs().maxCoeff()) == 0.0);
    CHECK((ss.K.bottomLeftCorner(n, m).cwiseAbs().maxCoeff()) == 0.0);
    CHECK((ss.K.bottomRightCorner(n, m) - ss.K.topLeftCorner(n, m).conjugate())
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK((ss.S.topRightCorner(n, n).cwiseAbs().maxCoeff()) == 0.0);
    CHECK((ss.S.bottomLeftCorner(n, n).cwiseAbs().maxCoeff()) == 0.0);
    CHECK((ss.S.bottomRightCorner(n, n) - ss.S.topLeftCorner(n, n).conjugate())
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK((ss.A.bottomLeftCorner(m, m) - ss.A.topRightCorner(m, m).conjugate())
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK((ss.A.bottomRightCorner(m, m) - ss.A.topLeftCorner(m, m).conjugate())
              .cwiseAbs()
              .maxCoeff() == 0.0);
}

FixedSetupd default_setup() { return {}; }

SingleOpoParamsd reference_single_opo() {
    // T1 = 0.02, T2 = 0.15, L = 0.02, x = 0.318, lossless output line.
    SingleOpoParamsd p;
    p.T1 = 0.02;
    p.T2 = 0.15;
    p.L = 0.02;
    p.x = 0.318;
    p.theta_xi = 0.0;
    return p;
}

}  // namespace

TEST_CASE("leakage rate matches the reference cavity") {
    const double l_eff = 0.087;
    CHECK(mhz_from_angular(leakage_rate(0.02, l_eff)) == doctest::Approx(5.484).epsilon(1e-3));
    CHECK(mhz_from_angular(leakage_rate(0.15, l_eff)) ==
          doctest::Approx(41.132).epsilon(1e-3));
    CHECK(leakage_rate(0.0, l_eff) == 0.0);
    CHECK_THROWS_AS(leakage_rate(-0.1, l_eff), std::domain_error);
    CHECK_THROWS_AS(leakage_rate(1.2, l_eff), std::domain_error);
    CHECK_THROWS_AS(leakage_rate(0.5, 0.0), std::domain_error);
}

TEST_CASE("pump power from the scaled amplitude") {
    CHECK(pump_power(0.318, 14.86) == doctest::Approx(1.50).epsilon(2e-3));
    CHECK(pump_power(0.0, 14.86) == 0.0);
    CHECK(pump_power(0.2, 14.86) == doctest::Approx(0.59440).epsilon(1e-12));
    CHECK_THROWS_AS(pump_power(-0.1, 14.86), std::domain_error);
    CHECK_THROWS_AS(pump_power(0.1, 0.0), std::domain_error);
}

TEST_CASE("single OPO drift without pump or detuning is -gamma/2 I") {
    SingleOpoParamsd p = reference_single_opo();
    p.x = 0.0;
    const StateSpaced ss = build_single_opo(p, default_setup());
    const double gamma = leakage_rate(p.T1, 0.087) + leakage_rate(p.T2, 0.087) +
                         leakage_rate(p.L, 0.087);
    CHECK(mhz_from_angular(gamma) == doctest::Approx(52.1).epsilon(1e-3));
    CHECK(ss.A(0, 0).real() == doctest::Approx(-gamma / 2).epsilon(1e-14));
    CHECK(std::abs(ss.A(0, 1)) == 0.0);
    CHECK(std::abs(ss.A(1, 0)) == 0.0);
    CHECK(ss.A(1, 1).real() == doctest::Approx(-gamma / 2).epsilon(1e-14));
}

TEST_CASE("single OPO drift equals its closed-form transcription") {
    Rng rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        const SingleOpoParamsd p = oracles::random_single_opo(rng);
        const StateSpaced ss = build_single_opo(p, default_setup());
        const Eigen::Matrix2cd expected = oracles::single_opo_drift(p, default_setup());
        CHECK((ss.A - expected).cwiseAbs().maxCoeff() <
              1e-12 * expected.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("doubled-up block structure holds for both topologies") {
    Rng rng(72);
    for (int trial = 0; trial < 20; ++trial) {
        check_delta_structure(build_single_opo(oracles::random_single_opo(rng), default_setup()));
        check_delta_structure(build_two_opo(oracles::random_two_opo(rng), default_setup()));
    }
}

TEST_CASE("scattering matrices are unitary") {
    Rng rng(73);
    for (int trial = 0; trial < 20; ++trial) {
        const StateSpaced single =
            build_single_opo(oracles::random_single_opo(rng), default_setup());
        const StateSpaced two = build_two_opo(oracles::random_two_opo(rng), default_setup());
        for (const StateSpaced* ss : {&single, &two}) {
            const MatrixXc<double> gram = ss->S * ss->S.adjoint();
            const MatrixXc<double> eye =
                MatrixXc<double>::Identity(ss->S.rows(), ss->S.cols());
            CHECK((gram - eye).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("severed feedback decouples the two cavities") {
    Rng rng(74);
    TwoOpoParamsd p = oracles::random_two_opo(rng);
    p.L1 = 1.0;  // t1 = 0
    p.L2 = 1.0;  // t2 = 0
    const StateSpaced ss = build_two_opo(p, default_setup());
    // nu, nu1, nu2 all vanish: no cross-mode coupling anywhere in the drift.
    CHECK(std::abs(ss.A(0, 1)) == 0.0);
    CHECK(std::abs(ss.A(1, 0)) == 0.0);
    CHECK(std::abs(ss.A(2, 3)) == 0.0);
    CHECK(std::abs(ss.A(3, 2)) == 0.0);

    const double gamma_p = leakage_rate(p.Tp1, 0.087) + leakage_rate(p.Tp2, 0.087) +
                           leakage_rate(p.Lp, 0.087);
    CHECK(ss.A(0, 0).real() == doctest::Approx(-gamma_p / 2).epsilon(1e-12));
}

TEST_CASE("closing the controller output mirror removes the exchange coupling") {
    Rng rng(75);
    TwoOpoParamsd p = oracles::random_two_opo(rng);
    p.phi1 = 0.0;
    p.phi2 = 0.0;
    p.Tc2 = 0.0;  // kappa_c2 = 0 -> nu1 = nu2 = 0
    const StateSpaced ss = build_two_opo(p, default_setup());
    CHECK(std::abs(ss.A(0, 1)) == 0.0);
    CHECK(std::abs(ss.A(1, 0)) == 0.0);
}

TEST_CASE("two-OPO output-port coupling row matches its transcription") {
    Rng rng(76);
    for (int trial = 0; trial < 20; ++trial) {
        const TwoOpoParamsd p = oracles::random_two_opo(rng);
        const StateSpaced ss = build_two_opo(p, default_setup());

        const double scale = speed_of_light / (2.0 * 0.087);
        const double kp1 = scale * p.Tp1, kp2 = scale * p.Tp2, kc2 = scale * p.Tc2;
        const double t1 = std::sqrt(1.0 - p.L1), t2 = std::sqrt(1.0 - p.L2);
        const double t3 = std::sqrt(1.0 - p.L3);
        const Complex e_phi = std::polar(1.0, p.phi1 + p.phi2);
        const Complex e_phi2 = std::polar(1.0, p.phi2);

        const Complex plant_term = t3 * (std::sqrt(kp1) * t1 * t2 * e_phi + std::sqrt(kp2));
        const Complex controller_term = std::sqrt(kc2) * t2 * t3 * e_phi2;
        CHECK(std::abs(ss.K(0, 0) - plant_term) < 1e-12 * (1.0 + std::abs(plant_term)));
        CHECK(std::abs(ss.K(0, 1) - controller_term) <
              1e-12 * (1.0 + std::abs(controller_term)));
    }
}

TEST_CASE("two-OPO drift matches the displayed closed form") {
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const TwoOpoParamsd p = oracles::random_two_opo(rng);
        const StateSpaced ss = build_two_opo(p, default_setup());

        const double scale = speed_of_light / (2.0 * 0.087);
        const double kp1 = scale * p.Tp1, kp2 = scale * p.Tp2, kp3 = scale * p.Lp;
        const double kc1 = scale * p.Tc1, kc2 = scale * p.Tc2, kc3 = scale * p.Lc;
        const double gamma_p = kp1 + kp2 + kp3, gamma_c = kc1 + kc2 + kc3;
        const double t1 = std::sqrt(1.0 - p.L1), t2 = std::sqrt(1.0 - p.L2);

        const Complex nu1 = std::sqrt(kc2 * kp1) * t1 * std::polar(1.0, p.phi1);
        const Complex nu2 = std::sqrt(kc2 * kp2) * t2 * std::polar(1.0, p.phi2);
        const Complex nu =
            std::sqrt(kp1 * kp2) * t1 * t2 * std::polar(1.0, p.phi1 + p.phi2);
        const Complex eta_p = gamma_p / 2.0 + oracles::kI * p.omega_p + nu;
        const Complex eta_c = Complex(gamma_c / 2.0, p.omega_c);
        const Complex xi_p = std::polar(gamma_p * p.x_p / 2.0, p.theta_p);
        const Complex xi_c = std::polar(gamma_c * p.x_c / 2.0, p.theta_c);

        Eigen::Matrix4cd expected;
        expected << -eta_p, -nu2, xi_p, 0.0,
                    -nu1, -eta_c, 0.0, xi_c,
                    std::conj(xi_p), 0.0, -std::conj(eta_p), -std::conj(nu2),
                    0.0, std::conj(xi_c), -std::conj(nu1), -std::conj(eta_c);
        CHECK((ss.A - expected).cwiseAbs().maxCoeff() <
              1e-12 * expected.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("raising a line loss weakens the output coupling") {
    Rng rng(78);
    TwoOpoParamsd p = oracles::random_two_opo(rng);
    const StateSpaced before = build_two_opo(p, default_setup());
    p.L3 = std::min(1.0, p.L3 + 0.2);
    const StateSpaced after = build_two_opo(p, default_setup());
    CHECK(std::abs(after.K(0, 0)) < std::abs(before.K(0, 0)));
}

TEST_CASE("parameter validation rejects out-of-range values") {
    SingleOpoParamsd bad = reference_single_opo();
    bad.T1 = 1.5;
    CHECK_THROWS_AS(build_single_opo(bad, default_setup()), std::domain_error);

    TwoOpoParamsd bad2;
    bad2.x_p = -0.1;
    CHECK_THROWS_AS(build_two_opo(bad2, default_setup()), std::domain_error);

    FixedSetupd bad_setup;
    bad_setup.threshold_power = 0.0;
    CHECK_THROWS_AS(build_single_opo(reference_single_opo(), bad_setup), std::domain_error);
}
