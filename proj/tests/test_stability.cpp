#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oponet/stability.hpp"
#include "oracles.hpp"

using namespace oponet;

namespace {

FixedSetupd default_setup() { return {}; }

StateSpaced single_at_pump(double x, double omega0_mhz = 0.0) {
    SingleOpoParamsd p;
    p.T1 = 0.02;
    p.T2 = 0.15;
    p.L = 0.02;
    p.x = x;
    p.omega0 = angular_from_mhz(omega0_mhz);
    return build_single_opo(p, default_setup());
}

double gamma_reference() {
    return leakage_rate(0.02, 0.087) + leakage_rate(0.15, 0.087) + leakage_rate(0.02, 0.087);
}

}  // namespace

TEST_CASE("unpumped cavity has eigenvalues -gamma/2") {
    const StabilityReportd report = check_stability(single_at_pump(0.0));
    const double gamma = gamma_reference();
    CHECK(report.stable);
    CHECK(report.margin == doctest::Approx(-gamma / 2).epsilon(1e-12));
    REQUIRE(report.eigenvalues.size() == 2);
    for (int i = 0; i < 2; ++i)
        CHECK(report.eigenvalues[i].real() == doctest::Approx(-gamma / 2).epsilon(1e-12));
}

TEST_CASE("threshold pump sits on the margin") {
    const StabilityReportd report = check_stability(single_at_pump(1.0));
    const double gamma = gamma_reference();
    CHECK(std::abs(report.margin) <= 1e-9 * gamma);
    // Bracketing: just below threshold is stable, just above is not.
    CHECK(check_stability(single_at_pump(1.0 - 1e-6)).stable);
    CHECK_FALSE(check_stability(single_at_pump(1.0 + 1e-6)).stable);
}

TEST_CASE("margin equals gamma (x - 1) / 2 above threshold") {
    const double gamma = gamma_reference();
    const StabilityReportd report = check_stability(single_at_pump(1.2));
    CHECK_FALSE(report.stable);
    CHECK(report.margin == doctest::Approx(gamma * 0.1).epsilon(1e-9));
}

TEST_CASE("exactly marginal drift counts as unstable") {
    StateSpaced ss;
    ss.n_ports = 1;
    ss.n_modes = 1;
    ss.A = MatrixXc<double>::Zero(2, 2);
    ss.A(0, 0) = std::complex<double>(0.0, 0.0);
    ss.A(1, 1) = std::complex<double>(-1.0, 0.0);
    ss.K = MatrixXc<double>::Zero(2, 2);
    ss.S = MatrixXc<double>::Identity(2, 2);
    const StabilityReportd report = check_stability(ss);
    CHECK(report.margin == 0.0);
    CHECK_FALSE(report.stable);
}

TEST_CASE("margin grows monotonically with pump and flips sign at threshold") {
    double previous = -1e18;
    for (double x : {0.0, 0.3, 0.6, 0.9, 0.99, 1.01, 1.1, 1.4}) {
        const double margin = check_stability(single_at_pump(x)).margin;
        CHECK(margin > previous);
        previous = margin;
        if (x < 1.0) CHECK(margin < 0.0);
        if (x > 1.0) CHECK(margin > 0.0);
    }
}

TEST_CASE("every half-pump draw inside the box is stable") {
    Rng rng(201);
    for (int trial = 0; trial < 200; ++trial) {
        const SingleOpoParamsd p = oracles::random_single_opo(rng, 0.9, 100.0, 0.5);
        CHECK(check_stability(build_single_opo(p, default_setup())).stable);
    }
}

TEST_CASE("two-OPO stability against pump sweep") {
    Rng rng(202);
    TwoOpoParamsd p = oracles::random_two_opo(rng, 0.9, 100.0, 0.0);
    p.omega_p = 0.0;
    p.omega_c = 0.0;
    // With no pumps the network is passive and always stable.
    CHECK(check_stability(build_two_opo(p, default_setup())).stable);
    // Sever the feedback and push the plant pump far above threshold.
    p.L1 = 1.0;
    p.L2 = 1.0;
    p.x_p = 1.5;
    p.Tp2 = std::max(p.Tp2, 0.2);
    CHECK_FALSE(check_stability(build_two_opo(p, default_setup())).stable);
}
