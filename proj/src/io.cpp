#include "oponet/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace oponet {

using nlohmann::json;

std::string format_double(double v) {
    // %.17g always round-trips; fall back to it if the shorter form drifts.
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.15g", v);
    if (std::strtod(buffer, nullptr) != v)
        std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

void write_spectrum_csv(std::ostream& out, const StateSpaced& ss,
                        const SpectrumGrid& grid) {
    out << "omega_mhz,Q_minus_db,Q_plus_db,theta_opt_rad\n";
    const long steps = std::lround(grid.max_mhz / grid.step_mhz);
    for (long k = 0; k <= steps; ++k) {
        const double f_mhz = double(k) * grid.step_mhz;
        const SpectrumPointd sp = extremal_spectra(ss, angular_from_mhz(f_mhz), 0);
        out << format_double(f_mhz) << ',' << format_double(to_db(sp.p_minus)) << ','
            << format_double(to_db(sp.p_plus)) << ',' << format_double(sp.theta_opt)
            << '\n';
    }
}

namespace {

double coord_or(const SweepRow& row, const std::string& name, double fallback) {
    const auto it = row.coords.find(name);
    return it == row.coords.end() ? fallback : it->second;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepTable& table) {
    const Problem& base = table.base;
    const bool two = base.topology == Topology::two_opo;
    if (two) {
        out << "omega_opt_mhz,x_u,T_u,L_in,L_out,Q_minus_db,Tp1,Tp2,Tc1,Tc2,"
               "omega_p_mhz,omega_c_mhz,x_p,x_c,theta_p,theta_c,phi1,phi2,seed\n";
    } else {
        out << "omega_opt_mhz,x_u,T_u,L,L_tl,Q_minus_db,T1,T2,omega0_mhz,x,theta_xi,seed\n";
    }

    for (const SweepRow& row : table.rows) {
        const double omega_opt =
            coord_or(row, "omega_opt_mhz",
                     std::holds_alternative<PointTarget>(base.target)
                         ? mhz_from_angular(std::get<PointTarget>(base.target).omega)
                         : 0.0);
        const double x_u = coord_or(row, "x_u", base.bounds.x_u);
        const double t_u = coord_or(row, "T_u", base.bounds.T_u);
        if (two) {
            const auto& p = std::get<TwoOpoParamsd>(row.params);
            const double l_in = coord_or(row, "L_in", base.two_losses.plant_intracavity);
            const double l_out = coord_or(row, "L_out", base.two_losses.line3);
            out << format_double(omega_opt) << ',' << format_double(x_u) << ','
                << format_double(t_u) << ',' << format_double(l_in) << ','
                << format_double(l_out) << ',' << format_double(row.result.q_minus_db)
                << ',' << format_double(p.Tp1) << ',' << format_double(p.Tp2) << ','
                << format_double(p.Tc1) << ',' << format_double(p.Tc2) << ','
                << format_double(mhz_from_angular(p.omega_p)) << ','
                << format_double(mhz_from_angular(p.omega_c)) << ','
                << format_double(p.x_p) << ',' << format_double(p.x_c) << ','
                << format_double(p.theta_p) << ',' << format_double(p.theta_c) << ','
                << format_double(p.phi1) << ',' << format_double(p.phi2) << ','
                << row.result.seed << '\n';
        } else {
            const auto& p = std::get<SingleOpoParamsd>(row.params);
            const double l_in = coord_or(row, "L_in", base.single_losses.intracavity);
            const double l_tl =
                coord_or(row, "L_tl", coord_or(row, "L_out", base.single_losses.output_line));
            out << format_double(omega_opt) << ',' << format_double(x_u) << ','
                << format_double(t_u) << ',' << format_double(l_in) << ','
                << format_double(l_tl) << ',' << format_double(row.result.q_minus_db)
                << ',' << format_double(p.T1) << ',' << format_double(p.T2) << ','
                << format_double(mhz_from_angular(p.omega0)) << ',' << format_double(p.x)
                << ',' << format_double(p.theta_xi) << ',' << row.result.seed << '\n';
        }
    }
}

std::string result_to_json(const OptResult& result, std::uint64_t config_hash_value) {
    json root;
    char hash_text[20];
    std::snprintf(hash_text, sizeof(hash_text), "%016llx",
                  static_cast<unsigned long long>(config_hash_value));
    root["config_hash"] = hash_text;
    root["seed"] = result.seed;
    root["best_z"] = std::vector<double>(result.best_z.data(),
                                         result.best_z.data() + result.best_z.size());
    root["best_J"] = result.best_J;
    root["Q_minus_db"] = result.q_minus_db;
    root["Q_plus_db"] = result.q_plus_db;
    root["stability_margin"] = result.stability_margin;
    root["evaluations"] = result.evaluations;
    root["penalty_only"] = result.penalty_only;
    json history = json::array();
    for (std::size_t epoch = 0; epoch < result.history.size(); ++epoch) {
        for (std::size_t island = 0; island < result.history[epoch].size(); ++island) {
            history.push_back(
                json::array({epoch, island, result.history[epoch][island]}));
        }
    }
    root["history"] = history;
    return root.dump(2);
}

std::string stability_to_json(const StabilityReportd& report) {
    json root;
    root["stable"] = report.stable;
    root["margin_rad_s"] = report.margin;
    json eigenvalues = json::array();
    for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i) {
        eigenvalues.push_back(json::array(
            {report.eigenvalues[i].real(), report.eigenvalues[i].imag()}));
    }
    root["eigenvalues"] = eigenvalues;
    return root.dump(2);
}

std::string hessian_to_json(const HessianReport& report) {
    json root;
    root["step_rad"] = report.step;
    json hess = json::array();
    for (Eigen::Index r = 0; r < report.hessian.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < report.hessian.cols(); ++c)
            row.push_back(report.hessian(r, c));
        hess.push_back(row);
    }
    root["hessian"] = hess;
    root["eigenvalues"] = std::vector<double>(
        report.eigenvalues.data(), report.eigenvalues.data() + report.eigenvalues.size());
    json vectors = json::array();
    for (Eigen::Index c = 0; c < report.eigenvectors.cols(); ++c) {
        json column = json::array();
        for (Eigen::Index r = 0; r < report.eigenvectors.rows(); ++r)
            column.push_back(report.eigenvectors(r, c));
        vectors.push_back(column);
    }
    root["eigenvectors"] = vectors;
    return root.dump(2);
}

std::string monte_carlo_to_json(const MonteCarloReport& report, double sigma, int samples) {
    json root;
    root["sigma_rad"] = sigma;
    root["samples"] = samples;
    root["mean_Q_minus_db"] = report.mean_q_minus_db;
    root["hessian_prediction_db"] = report.hessian_prediction_db;
    root["unperturbed_Q_minus_db"] = report.unperturbed_q_minus_db;
    root["excluded"] = report.excluded;
    root["exclusion_rate"] = report.exclusion_rate;
    root["warning"] = report.warning;
    // The prediction uses the Hessian of P-, not of J; with g = 0.001 the
    // difference is below the quoted precision.
    root["prediction_model"] = "p_minus_quadratic";
    return root.dump(2);
}

}  // namespace oponet
