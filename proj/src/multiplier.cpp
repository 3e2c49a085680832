#include "spinmac/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spinmac/rng.hpp"

namespace spinmac {

void MtjResistancePair::validate() const {
  if (!(parallel_ohm > 0) || !(antiparallel_ohm > parallel_ohm))
    throw std::invalid_argument("MTJ resistances must satisfy 0 < R_P < R_AP");
}

double resistance_from_angle(double theta_rad, const MtjResistancePair& mtj) {
  const double w = 0.5 * (1.0 - std::cos(theta_rad));
  return mtj.parallel_ohm + (mtj.antiparallel_ohm - mtj.parallel_ohm) * w;
}

TransferCharacteristic transfer_curve(const std::vector<double>& gate_grid_v,
                                      CurveSource source, const DeviceParams& dev,
                                      const MtjResistancePair& mtj,
                                      const SolverConfig& solver) {
  mtj.validate();
  for (std::size_t i = 1; i < gate_grid_v.size(); ++i) {
    if (!(gate_grid_v[i] > gate_grid_v[i - 1]))
      throw std::invalid_argument("gate-voltage grid must be strictly increasing");
  }
  TransferCharacteristic curve;
  curve.source = source;
  curve.mtj = mtj;
  curve.points.reserve(gate_grid_v.size());

  const LandscapeConstants lc = landscape_constants(dev);
  for (std::size_t i = 0; i < gate_grid_v.size(); ++i) {
    const double vg = gate_grid_v[i];
    TransferPoint p{};
    p.gate_v = vg;
    if (source == CurveSource::analytic) {
      p.theta_rad = steady_angle_analytic(vg, lc).theta_rad;
      p.theta_std_rad = 0.0;
    } else {
      SolverConfig per_point = solver;
      per_point.seed = mix64(solver.seed ^ (0x5EEDBA5Eu + i));
      const EnsembleSteadyState es = steady_state_angle(vg, dev, per_point);
      p.theta_rad = es.mean_theta_rad;
      p.theta_std_rad = es.std_theta_rad;
      p.unconverged = es.total - es.converged;
    }
    p.conductance_s = 1.0 / resistance_from_angle(p.theta_rad, mtj);
    curve.points.push_back(p);
  }
  return curve;
}

LinearFit fit_linear_region(const TransferCharacteristic& curve, const FitPolicy& policy) {
  const auto& pts = curve.points;
  if (pts.size() < std::size_t(std::max(policy.min_points, 10)))
    throw std::invalid_argument("too few curve points to fit (need at least 10 spanning the knee)");

  const double g_ap = curve.mtj.g_antiparallel_s();
  const double band = policy.flat_band_rel * g_ap;

  auto departs = [&](const TransferPoint& p) {
    return std::abs(p.conductance_s - g_ap) > band;
  };

  const bool left = departs(pts.front());
  const bool right = departs(pts.back());
  if (!left && !right)
    throw std::invalid_argument("no linear window: curve never leaves the flat level");
  if (left && right)
    throw std::invalid_argument("curve must span the threshold knee");

  // walk from the flat side toward the active end; dir = +1 means the active
  // branch sits at lower gate voltages
  const int dir = left ? +1 : -1;
  const int n = int(pts.size());
  const int flat_end = left ? n - 1 : 0;

  int k = -1;  // active point adjacent to the flat region
  for (int i = flat_end; i >= 0 && i < n; i -= dir) {
    if (departs(pts[i])) {
      k = i;
      break;
    }
  }
  if (k < 0) throw std::invalid_argument("no linear window found");
  const int kf = k + dir;  // first flat-side neighbour
  if (kf < 0 || kf >= n) throw std::invalid_argument("curve must span the threshold knee");

  // local line through the knee segment, extrapolated to the flat level
  const double dv = pts[k].gate_v - pts[kf].gate_v;
  const double dk = pts[k].conductance_s - g_ap;
  const double dkf = pts[kf].conductance_s - g_ap;
  const double local_slope = (dk - dkf) / dv;
  if (local_slope == 0) throw std::invalid_argument("degenerate knee segment");

  LinearFit fit;
  fit.bias_v = pts[kf].gate_v - dkf / local_slope;
  fit.bias_std = std::abs(dv) / 2.0;

  // grow the window from the knee into the active side while the anchored
  // least-squares line keeps every point within the residual bound
  std::vector<int> window;
  double slope = local_slope;
  double worst = 0;
  for (int i = k; i >= 0 && i < n; i -= dir) {
    if (std::abs(pts[i].gate_v - fit.bias_v) > policy.max_window_v) break;
    window.push_back(i);
    double suu = 0, sdu = 0;
    for (int j : window) {
      const double u = pts[j].gate_v - fit.bias_v;
      const double d = pts[j].conductance_s - g_ap;
      suu += u * u;
      sdu += d * u;
    }
    const double cand = sdu / suu;
    double cand_worst = 0;
    for (int j : window) {
      const double u = pts[j].gate_v - fit.bias_v;
      const double r = pts[j].conductance_s - (g_ap + cand * u);
      cand_worst = std::max(cand_worst, std::abs(r) / g_ap);
    }
    if (cand_worst > policy.residual_bound_rel && int(window.size()) >= policy.min_points) {
      window.pop_back();
      break;
    }
    slope = cand;
    worst = cand_worst;
  }
  if (int(window.size()) < policy.min_points)
    throw std::invalid_argument("no linear window meets the fit policy");

  fit.slope_s_per_v = slope;
  fit.max_residual_rel = worst;
  double lo = pts[window.front()].gate_v, hi = lo;
  double suu = 0, srr = 0;
  for (int j : window) {
    lo = std::min(lo, pts[j].gate_v);
    hi = std::max(hi, pts[j].gate_v);
    const double u = pts[j].gate_v - fit.bias_v;
    const double r = pts[j].conductance_s - (g_ap + slope * u);
    suu += u * u;
    srr += r * r;
  }
  fit.window_lo_v = lo;
  fit.window_hi_v = std::max(hi, fit.bias_v);
  if (window.size() > 1)
    fit.slope_std = std::sqrt(srr / double(window.size() - 1) / suu);
  return fit;
}

LinearFit analytic_linear_fit(const LandscapeConstants& lc, const MtjResistancePair& mtj) {
  if (lc.threshold_v <= 0)
    throw std::invalid_argument("threshold voltage must be positive");
  LinearFit fit;
  fit.slope_s_per_v = -1.0 / (2.0 * mtj.antiparallel_ohm * lc.threshold_v);
  fit.bias_v = lc.offset_v - lc.threshold_v;
  fit.window_lo_v = fit.bias_v - 0.05;
  fit.window_hi_v = fit.bias_v;
  return fit;
}

void MultiplierCircuit::validate() const {
  mtj.validate();
  if (series_resistance_ohm < 0)
    throw std::invalid_argument("series resistance cannot be negative");
  if (!(fit.window_hi_v >= fit.window_lo_v))
    throw std::invalid_argument("empty linear window");
}

double branch_current(double v_in2, double r_smtj_ohm, double r_series_ohm) {
  return v_in2 / (r_series_ohm + r_smtj_ohm);
}

MultiplierOutput multiplier_output(double v_in1, double v_in2,
                                   const MultiplierCircuit& circuit, Fidelity fidelity) {
  const double vg = circuit.gate_voltage_for(v_in1);
  const bool in_window = vg >= circuit.fit.window_lo_v - 1e-12 &&
                         vg <= circuit.fit.window_hi_v + 1e-12;

  MultiplierOutput out;
  out.out_of_window = !in_window;

  if (fidelity == Fidelity::ideal) {
    if (!in_window)
      throw std::domain_error("ideal mode: gate drive leaves the linear window");
    out.current_a = std::abs(circuit.fit.slope_s_per_v) * v_in1 * v_in2;
    return out;
  }

  const SteadyAngle sa = steady_angle_analytic(vg, circuit.landscape);
  const double r = resistance_from_angle(sa.theta_rad, circuit.mtj);
  out.current_a = branch_current(v_in2, r, circuit.series_resistance_ohm);
  if (fidelity == Fidelity::exact_compensated)
    out.current_a -= branch_current(v_in2, circuit.mtj.antiparallel_ohm,
                                    circuit.series_resistance_ohm);
  return out;
}

}  // namespace spinmac
