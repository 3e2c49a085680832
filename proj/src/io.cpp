#include "spinmac/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "spinmac/constants.hpp"

namespace spinmac {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

const char* fidelity_name(Fidelity f) {
  switch (f) {
    case Fidelity::ideal: return "ideal";
    case Fidelity::exact: return "exact";
    default: return "exact-compensated";
  }
}

const char* mode_name(RunMode m) {
  return m == RunMode::sequential ? "sequential" : "parallel-array";
}

}  // namespace

IntegerMatrix parse_matrix(const std::string& text, const std::string& label) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> std::string {
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
      if (!blank) return line;
    }
    throw std::invalid_argument(label + ":" + std::to_string(lineno) + ": unexpected end of matrix");
  };

  std::istringstream head(next_line());
  int n = 0;
  if (!(head >> n) || n < 1)
    throw std::invalid_argument(label + ":" + std::to_string(lineno) + ": first line must be the dimension N >= 1");
  std::string extra;
  if (head >> extra)
    throw std::invalid_argument(label + ":" + std::to_string(lineno) + ": dimension line has trailing content");

  IntegerMatrix m = IntegerMatrix::zeros(n);
  for (int i = 0; i < n; ++i) {
    std::istringstream row(next_line());
    for (int j = 0; j < n; ++j)
      if (!(row >> m.at(i, j)))
        throw std::invalid_argument(label + ":" + std::to_string(lineno) + ": row " +
                                    std::to_string(i) + " needs " + std::to_string(n) + " integers");
    if (row >> extra)
      throw std::invalid_argument(label + ":" + std::to_string(lineno) + ": row " +
                                  std::to_string(i) + " has more than " + std::to_string(n) + " entries");
  }
  return m;
}

IntegerMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open matrix file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str(), path);
}

std::string format_matrix(const IntegerMatrix& m) {
  m.validate();
  std::string out = std::to_string(m.n) + "\n";
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j < m.n; ++j) {
      out += std::to_string(m.at(i, j));
      out += j + 1 == m.n ? '\n' : ' ';
    }
  }
  return out;
}

std::string format_transfer_csv(const TransferCharacteristic& curve, std::uint64_t seed) {
  std::string out;
  if (curve.source == CurveSource::sllg) out += "# seed " + std::to_string(seed) + "\n";
  out += "vg_volts, conductance_siemens, theta_deg, theta_std_deg\n";
  for (const auto& p : curve.points)
    out += num(p.gate_v) + ", " + num(p.conductance_s) + ", " + num(rad_to_deg(p.theta_rad)) +
           ", " + num(rad_to_deg(p.theta_std_rad)) + "\n";
  return out;
}

std::string format_fit_summary(const LinearFit& fit) {
  std::string out;
  out += "kappa_s_per_v = " + num(fit.slope_s_per_v) + "\n";
  out += "kappa_per_kohm_v = " + num(fit.slope_s_per_v * 1e3) + "\n";
  out += "delta_v = " + num(fit.bias_v) + "\n";
  out += "window_lo_v = " + num(fit.window_lo_v) + "\n";
  out += "window_hi_v = " + num(fit.window_hi_v) + "\n";
  out += "max_residual_rel = " + num(fit.max_residual_rel) + "\n";
  out += "kappa_std = " + num(fit.slope_std) + "\n";
  out += "delta_std = " + num(fit.bias_std) + "\n";
  return out;
}

std::string format_trajectory_csv(const Trajectory& traj, double gate_v, std::uint64_t seed) {
  std::string out = "# seed " + std::to_string(seed) + ", gate " + num(gate_v) + " V\n";
  out += "t_ns, theta_deg, phi_deg\n";
  for (const auto& p : traj.samples)
    out += num(p.t_s * 1e9) + ", " + num(rad_to_deg(p.theta_rad)) + ", " +
           num(rad_to_deg(p.phi_rad)) + "\n";
  return out;
}

std::string format_run_csv(const RunReport& report) {
  std::string out = "# seed " + std::to_string(report.seed) + "\n";
  out += "i, j, oracle, decoded, rounded, abs_error\n";
  for (int i = 0; i < report.n; ++i)
    for (int j = 0; j < report.n; ++j) {
      std::size_t k = static_cast<std::size_t>(i) * report.n + j;
      out += std::to_string(i) + ", " + std::to_string(j) + ", " +
             std::to_string(report.oracle.at(i, j)) + ", " + num(report.decoded[k]) + ", " +
             std::to_string(report.rounded.at(i, j)) + ", " + num(report.abs_error[k]) + "\n";
    }
  return out;
}

std::string format_run_summary(const RunReport& report) {
  std::string out;
  out += "n = " + std::to_string(report.n) + "\n";
  out += std::string("fidelity = ") + fidelity_name(report.fidelity) + "\n";
  out += std::string("mode = ") + mode_name(report.mode) + "\n";
  out += std::string("noise = ") + (report.noise ? "on" : "off") + "\n";
  out += "seed = " + std::to_string(report.seed) + "\n";
  out += "rounded_error_rate = " + num(report.rounded_error_rate) + "\n";
  out += "max_abs_error = " + num(report.max_abs_error) + "\n";
  out += "saturated_elements = " + std::to_string(report.saturated_elements) + "\n";
  out += "nonvolatile_elements = " + std::to_string(report.nonvolatile_elements) + "\n";
  out += "out_of_window_pulses = " + std::to_string(report.out_of_window_pulses) + "\n";
  out += "energy_j = " + num(report.energy_j) + "\n";
  out += "worst_case_energy_j = " + num(report.worst_case_energy_j) + "\n";
  out += "per_mac_latency_s = " + num(report.per_mac_latency_s) + "\n";
  out += "latency_s = " + num(report.latency_s) + "\n";
  out += "device_count = " + std::to_string(report.device_count) + "\n";
  for (const auto& term : excluded_dissipation_terms()) out += "excluded_dissipation = " + term + "\n";
  return out;
}

std::string format_sweep_csv(const std::vector<CrossbarComparison>& rows, const CostModel& model) {
  std::string out = "# breakeven_crossbar_device_energy_aj " +
                    num(energy_per_mac(model.max_current_a, model.strip_resistance_ohm,
                                       model.pulse_width_s) * 1e18) +
                    "\n";
  out += "n, devices_here, devices_crossbar, energy_here_j, energy_crossbar_j, "
         "latency_sequential_s, latency_parallel_s, nonvolatile_here, nonvolatile_crossbar\n";
  for (const auto& r : rows)
    out += std::to_string(r.n) + ", " + std::to_string(r.devices_here) + ", " +
           std::to_string(r.devices_crossbar) + ", " + num(r.energy_here_j) + ", " +
           num(r.energy_crossbar_j) + ", " + num(latency_s(r.n, RunMode::sequential, model)) +
           ", " + num(latency_s(r.n, RunMode::parallel_array, model)) + ", " +
           (r.nonvolatile_here ? "1" : "0") + ", " + (r.nonvolatile_crossbar ? "1" : "0") + "\n";
  return out;
}

std::string format_calibration_block(const LinearFit& fit, double decode_scale_per_m,
                                     double mobility_gain_m3_per_a) {
  std::string out;
  out += "calibration.kappa_s_per_v = " + num(fit.slope_s_per_v) + "\n";
  out += "calibration.delta_v = " + num(fit.bias_v) + "\n";
  out += "calibration.window_lo_v = " + num(fit.window_lo_v) + "\n";
  out += "calibration.window_hi_v = " + num(fit.window_hi_v) + "\n";
  out += "calibration.residual_rel = " + num(fit.max_residual_rel) + "\n";
  out += "calibration.decode_scale_per_m = " + num(decode_scale_per_m) + "\n";
  out += "calibration.mobility_gain_m3_per_a = " + num(mobility_gain_m3_per_a) + "\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace spinmac
