#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oponet/optim/island_model.hpp"

namespace oponet {

// One named sweep axis. Recognized names: "omega_opt_mhz", "band_mhz",
// "x_u", "T_u", "omega_u_mhz", "L_in", "L_out", "L_tl".
struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

struct SweepRow {
    std::map<std::string, double> coords;  // axis name -> value
    OptResult result;
    ParamSet params;  // decoded best decision vector
    bool failed = false;
};

struct SweepTable {
    Problem base;
    std::vector<SweepAxis> axes;
    std::vector<SweepRow> rows;  // row-major over the axis grid
};

// Applies one axis value to a problem copy (frequencies given in MHz).
Problem apply_axis(Problem prob, const std::string& name, double value);

// Independent optimization per grid point, each with a seed derived from
// the config's master seed and the row index. A failing point yields a
// penalty row instead of aborting the sweep.
SweepTable sweep(const Problem& base, const std::vector<SweepAxis>& axes,
                 const HybridConfig& cfg);

// Smallest omega_opt whose optimal controller output coupling T_c2 falls
// below 0.85 T_u after having reached at least 0.95 T_u at some smaller
// omega_opt. The table must be swept over omega_opt alone. Returns rad/s.
std::optional<double> detect_regime_switch(const SweepTable& table);

struct HessianReport {
    Eigen::MatrixXd hessian;       // symmetric, phase coordinates only
    Eigen::VectorXd eigenvalues;   // sorted descending
    Eigen::MatrixXd eigenvectors;  // columns, matching eigenvalue order
    double step = 0.0;             // finite-difference step actually used, rad
};

// Central-difference Hessian of fn restricted to the given coordinates.
// Throws if any stencil point evaluates at or above the penalty threshold
// even after one automatic step shrink.
HessianReport hessian_of(const std::function<double(const Eigen::VectorXd&)>& fn,
                         const Eigen::VectorXd& z, const std::vector<int>& coords,
                         double step, double penalty_threshold);

// Hessian of the point objective J with respect to the phase variables.
HessianReport phase_hessian(const Eigen::VectorXd& z_opt, const Problem& prob,
                            double step = 1e-3);

struct MonteCarloReport {
    double mean_q_minus_db = 0.0;        // dB of the mean squeezed-quadrature PSD
    double hessian_prediction_db = 0.0;  // quadratic model around the optimum
    double unperturbed_q_minus_db = 0.0;
    int excluded = 0;     // unstable draws that were resampled
    double exclusion_rate = 0.0;
    bool warning = false;  // exclusion rate above 1%
};

// Perturbs every phase coordinate i.i.d. N(0, sigma^2), resampling unstable
// draws, and compares the Monte Carlo mean of P- against the second-order
// prediction P-(z) + sigma^2/2 * tr(H) built from the phase Hessian of P-.
MonteCarloReport monte_carlo_phase(const Eigen::VectorXd& z_opt, const Problem& prob,
                                   double sigma, int samples, std::uint64_t seed);

// Sample Pearson correlation coefficient.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace oponet
