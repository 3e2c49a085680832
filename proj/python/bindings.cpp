// Python bindings: a thin surface over the simulator core. Matrices cross the
// boundary as nested lists of ints; results come back as plain dicts so the
// Python side needs no wrapper types.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "spinmac/config.hpp"
#include "spinmac/engine.hpp"
#include "spinmac/io.hpp"
#include "spinmac/magnet.hpp"

namespace py = pybind11;
using namespace spinmac;

namespace {

IntegerMatrix to_matrix(const std::vector<std::vector<int>>& rows, const char* name) {
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw std::invalid_argument(std::string(name) + ": matrix is empty");
  IntegerMatrix m = IntegerMatrix::zeros(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw std::invalid_argument(std::string(name) + ": row " + std::to_string(i) +
                                  " has " + std::to_string(rows[i].size()) +
                                  " entries, expected " + std::to_string(n));
    for (int j = 0; j < n; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<int>> from_matrix(const IntegerMatrix& m) {
  std::vector<std::vector<int>> rows(m.n, std::vector<int>(m.n));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) rows[i][j] = m.at(i, j);
  return rows;
}

std::vector<std::vector<double>> reshape(const std::vector<double>& flat, int n) {
  std::vector<std::vector<double>> rows(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rows[i][j] = flat[static_cast<std::size_t>(i) * n + j];
  return rows;
}

Fidelity fidelity_from(const std::string& s) {
  if (s == "ideal") return Fidelity::ideal;
  if (s == "exact") return Fidelity::exact;
  if (s == "exact-compensated") return Fidelity::exact_compensated;
  throw std::invalid_argument("fidelity must be ideal, exact, or exact-compensated");
}

RunMode mode_from(const std::string& s) {
  if (s == "sequential") return RunMode::sequential;
  if (s == "parallel-array") return RunMode::parallel_array;
  throw std::invalid_argument("mode must be sequential or parallel-array");
}

py::dict fit_dict(const LinearFit& fit) {
  py::dict d;
  d["kappa_s_per_v"] = fit.slope_s_per_v;
  d["delta_v"] = fit.bias_v;
  d["window_lo_v"] = fit.window_lo_v;
  d["window_hi_v"] = fit.window_hi_v;
  d["max_residual_rel"] = fit.max_residual_rel;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Device-level simulator of a strain-gated two-MTJ multiplier with a "
            "domain-wall accumulator";

  py::class_<SimulationConfig>(m, "Config")
      .def("__repr__", [](const SimulationConfig& c) {
        return c.source_path.empty() ? std::string("Config(defaults)")
                                     : "Config('" + c.source_path + "')";
      });

  m.def("default_config", &default_config, "Reference device and circuit parameters.");
  m.def("load_config", &load_config, py::arg("path"),
        "Parse a key = value config file; unset keys keep their defaults.");

  m.def(
      "oracle_matmul",
      [](const std::vector<std::vector<int>>& a, const std::vector<std::vector<int>>& b) {
        return from_matrix(oracle_matmul(to_matrix(a, "a"), to_matrix(b, "b")));
      },
      py::arg("a"), py::arg("b"), "Exact integer product, no physics involved.");

  m.def(
      "matmul",
      [](const std::vector<std::vector<int>>& a, const std::vector<std::vector<int>>& b,
         const SimulationConfig& cfg, const std::string& fidelity, const std::string& mode,
         bool noise, std::uint64_t seed, int threads) {
        IntegerMatrix ma = to_matrix(a, "a");
        IntegerMatrix mb = to_matrix(b, "b");
        MacUnit unit = build_mac_unit(cfg);
        EncodingScheme scheme = build_encoding(cfg);
        RunReport r = matmul(ma, mb, unit, scheme, fidelity_from(fidelity), mode_from(mode),
                             noise, seed, threads);
        py::dict d;
        d["n"] = r.n;
        d["decoded"] = reshape(r.decoded, r.n);
        d["rounded"] = from_matrix(r.rounded);
        d["oracle"] = from_matrix(r.oracle);
        d["max_abs_error"] = r.max_abs_error;
        d["rounded_error_rate"] = r.rounded_error_rate;
        d["saturated_elements"] = r.saturated_elements;
        d["nonvolatile_elements"] = r.nonvolatile_elements;
        d["out_of_window_pulses"] = r.out_of_window_pulses;
        d["energy_j"] = r.energy_j;
        d["worst_case_energy_j"] = r.worst_case_energy_j;
        d["latency_s"] = r.latency_s;
        d["per_mac_latency_s"] = r.per_mac_latency_s;
        d["device_count"] = r.device_count;
        return d;
      },
      py::arg("a"), py::arg("b"), py::arg("config"),
      py::arg("fidelity") = "exact-compensated", py::arg("mode") = "sequential",
      py::arg("noise") = false, py::arg("seed") = 1, py::arg("threads") = 0,
      "Run an integer product through the physical pipeline and decode it.");

  m.def(
      "transfer_curve",
      [](const SimulationConfig& cfg, double lo_v, double hi_v, int points,
         const std::string& source, std::uint64_t seed) {
        if (points < 2) throw std::invalid_argument("points must be >= 2");
        CurveSource src;
        if (source == "analytic")
          src = CurveSource::analytic;
        else if (source == "sllg")
          src = CurveSource::sllg;
        else
          throw std::invalid_argument("source must be analytic or sllg");
        std::vector<double> grid(points);
        for (int i = 0; i < points; ++i)
          grid[i] = lo_v + (hi_v - lo_v) * i / (points - 1);
        SolverConfig solver = cfg.solver;
        if (seed != 0) solver.seed = seed;
        TransferCharacteristic curve = transfer_curve(grid, src, cfg.device, cfg.mtj, solver);
        std::vector<double> gate, cond, theta, theta_std;
        std::vector<int> unconverged;
        for (const TransferPoint& p : curve.points) {
          gate.push_back(p.gate_v);
          cond.push_back(p.conductance_s);
          theta.push_back(p.theta_rad);
          theta_std.push_back(p.theta_std_rad);
          unconverged.push_back(p.unconverged);
        }
        py::dict d;
        d["gate_v"] = gate;
        d["conductance_s"] = cond;
        d["theta_rad"] = theta;
        d["theta_std_rad"] = theta_std;
        d["unconverged"] = unconverged;
        return d;
      },
      py::arg("config"), py::arg("lo_v"), py::arg("hi_v"), py::arg("points") = 141,
      py::arg("source") = "analytic", py::arg("seed") = 0,
      "Conductance vs gate voltage; the sllg source runs a thermal ensemble per point.");

  m.def(
      "linear_fit", [](const SimulationConfig& cfg) { return fit_dict(build_fit(cfg)); },
      py::arg("config"),
      "Fitted linear window of the transfer curve (pinned calibration when present).");

  m.def(
      "analytic_constants",
      [](const SimulationConfig& cfg) {
        LandscapeConstants lc = landscape_constants(cfg.device);
        LinearFit closed = analytic_linear_fit(lc, cfg.mtj);
        py::dict d;
        d["threshold_v"] = lc.threshold_v;
        d["offset_v"] = lc.offset_v;
        d["closed_form_kappa_s_per_v"] = closed.slope_s_per_v;
        d["closed_form_delta_v"] = closed.bias_v;
        return d;
      },
      py::arg("config"), "Closed-form threshold, offset, and small-signal constants.");

  m.def(
      "steady_angle",
      [](const SimulationConfig& cfg, double gate_v) {
        SteadyAngle sa = steady_angle_analytic(gate_v, landscape_constants(cfg.device));
        py::dict d;
        d["theta_rad"] = sa.theta_rad;
        d["collinear"] = sa.collinear;
        return d;
      },
      py::arg("config"), py::arg("gate_v"),
      "Analytic steady-state magnetization angle at a gate voltage.");

  m.def(
      "encoding",
      [](const SimulationConfig& cfg) {
        EncodingScheme s = build_encoding(cfg);
        py::dict d;
        d["step_v"] = s.step_v;
        d["max_v"] = s.max_v;
        d["n_min"] = s.n_min;
        d["n_max"] = s.n_max;
        return d;
      },
      py::arg("config"), "Pulse-amplitude integer code: step, cap, and integer range.");

  m.def(
      "crossbar_report",
      [](int n, const SimulationConfig& cfg) {
        CostModel model = build_cost_model(cfg, build_encoding(cfg));
        CrossbarComparison c = crossbar_compare(n, model);
        py::dict d;
        d["n"] = c.n;
        d["devices_here"] = c.devices_here;
        d["devices_crossbar"] = c.devices_crossbar;
        d["energy_here_j"] = c.energy_here_j;
        d["energy_crossbar_j"] = c.energy_crossbar_j;
        d["breakeven_device_energy_j"] = c.breakeven_device_energy_j;
        d["nonvolatile_here"] = c.nonvolatile_here;
        d["nonvolatile_crossbar"] = c.nonvolatile_crossbar;
        d["latency_sequential_s"] = latency_s(n, RunMode::sequential, model);
        d["latency_parallel_s"] = latency_s(n, RunMode::parallel_array, model);
        return d;
      },
      py::arg("n"), py::arg("config"),
      "Footprint, energy, and latency vs an electronic crossbar at dimension n.");
}
