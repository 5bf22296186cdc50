#pragma once

#include <ostream>
#include <string>

#include "oponet/analysis.hpp"
#include "oponet/config.hpp"

namespace oponet {

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

// Columns: omega_mhz, Q_minus_db, Q_plus_db, theta_opt_rad.
void write_spectrum_csv(std::ostream& out, const StateSpaced& ss,
                        const SpectrumGrid& grid);

// Two-OPO columns: omega_opt_mhz, x_u, T_u, L_in, L_out, Q_minus_db, Tp1,
// Tp2, Tc1, Tc2, omega_p_mhz, omega_c_mhz, x_p, x_c, theta_p, theta_c,
// phi1, phi2, seed. Single-OPO sweeps emit the analogous reduced schema.
void write_sweep_csv(std::ostream& out, const SweepTable& table);

// {config_hash, seed, best_z, best_J, Q_minus_db, Q_plus_db,
//  stability_margin, evaluations, history[[epoch, island, best_J]]}.
std::string result_to_json(const OptResult& result, std::uint64_t config_hash_value);

std::string stability_to_json(const StabilityReportd& report);

std::string hessian_to_json(const HessianReport& report);

std::string monte_carlo_to_json(const MonteCarloReport& report, double sigma, int samples);

}  // namespace oponet
