#pragma once

#include <Eigen/Eigenvalues>

#include <stdexcept>

#include "oponet/network.hpp"

namespace oponet {

template <typename Scalar>
struct StabilityReport {
    bool stable = false;
    Scalar margin = Scalar(0);       // max Re(eigenvalue) of the drift matrix, rad/s
    VectorXc<Scalar> eigenvalues;
};

// A network is dynamically stable iff every eigenvalue of the drift matrix
// has a strictly negative real part. Marginal spectra (margin == 0) count
// as unstable so that optimizers cannot ride divergent gain.
template <typename Scalar>
StabilityReport<Scalar> check_stability(const StateSpace<Scalar>& ss) {
    Eigen::ComplexEigenSolver<MatrixXc<Scalar>> solver(ss.A, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("check_stability: eigensolver did not converge");

    StabilityReport<Scalar> report;
    report.eigenvalues = solver.eigenvalues();
    report.margin = report.eigenvalues.real().maxCoeff();
    report.stable = report.margin < Scalar(0);
    return report;
}

using StabilityReportd = StabilityReport<double>;

}  // namespace oponet
