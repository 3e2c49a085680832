#pragma once

#include <vector>

#include "spinmac/magnet.hpp"
#include "spinmac/sllg.hpp"

namespace spinmac {

struct MtjResistancePair {
  double parallel_ohm = 1000.0;
  double antiparallel_ohm = 2000.0;

  double g_parallel_s() const { return 1.0 / parallel_ohm; }
  double g_antiparallel_s() const { return 1.0 / antiparallel_ohm; }
  void validate() const;
};

// R(theta) interpolates between the parallel (0 deg) and antiparallel
// (180 deg) resistances with the usual (1 - cos)/2 weighting.
double resistance_from_angle(double theta_rad, const MtjResistancePair& mtj);

enum class CurveSource { analytic, sllg };

struct TransferPoint {
  double gate_v;
  double conductance_s;
  double theta_rad;
  double theta_std_rad;  // ensemble std (0 for the analytic source)
  int unconverged = 0;   // trajectories that never settled
};

struct TransferCharacteristic {
  std::vector<TransferPoint> points;  // ascending gate voltage
  CurveSource source = CurveSource::analytic;
  MtjResistancePair mtj;
};

// Conductance vs gate voltage over an explicit grid. The sllg source runs a
// thermal ensemble per grid point; the analytic source evaluates the
// steady-state solution directly.
TransferCharacteristic transfer_curve(const std::vector<double>& gate_grid_v,
                                      CurveSource source, const DeviceParams& dev,
                                      const MtjResistancePair& mtj,
                                      const SolverConfig& solver);

struct FitPolicy {
  double residual_bound_rel = 0.05;  // max |G - line| / G_AP inside the window
  double flat_band_rel = 0.001;      // knee detection band around G_AP
  double max_window_v = 0.05;        // cap on window depth past the knee
  int min_points = 4;
};

// Line G = G_AP + slope * (V - bias) describing the active region.
struct LinearFit {
  double slope_s_per_v = 0;
  double bias_v = 0;          // gate voltage where conduction departs from G_AP
  double window_lo_v = 0;
  double window_hi_v = 0;
  double max_residual_rel = 0;
  double slope_std = 0;       // propagated from ensemble stds when present
  double bias_std = 0;
};

// Fit the active branch: locate the knee (departure from the flat G_AP
// level), back-extrapolate the flat-band crossing to the G_AP intercept,
// then grow the window into the active side while the knee-anchored
// least-squares line stays within the residual bound.
LinearFit fit_linear_region(const TransferCharacteristic& curve,
                            const FitPolicy& policy = {});

// Closed-form small-signal constants of the analytic characteristic near the
// threshold: slope -1/(2 R_AP Gamma), bias gamma - Gamma. Note this is the
// textbook linearization, which overestimates the realized slope of the full
// curve by about 2x for a 2:1 resistance ratio.
LinearFit analytic_linear_fit(const LandscapeConstants& lc, const MtjResistancePair& mtj);

enum class Fidelity { ideal, exact, exact_compensated };

// Two-terminal multiplier: input 1 biases the gate inside the linear window,
// input 2 drives the sense branch through the device and a series resistor.
struct MultiplierCircuit {
  MtjResistancePair mtj;
  LandscapeConstants landscape;  // analytic transfer model for the gate
  LinearFit fit;                 // linear window used by ideal mode
  double series_resistance_ohm = 816.0;

  // The input pulse polarity drives the gate into the active window
  // (negative-going for a negative-slope window).
  double gate_voltage_for(double v_in1) const {
    return fit.bias_v + (fit.slope_s_per_v < 0 ? -v_in1 : v_in1);
  }
  void validate() const;
};

struct MultiplierOutput {
  double current_a = 0;
  bool out_of_window = false;
};

// Product current for one pulse pair.
//   ideal: slope * |V_in1| * V_in2 magnitude (the bilinear small-signal law)
//   exact: V_in2 / (R_series + R(theta_ss(V_G)))
//   exact_compensated: exact minus the antiparallel baseline branch
// Ideal mode rejects gate drives outside the fitted window; the physical
// modes evaluate the transfer model wherever it lands and flag the excursion.
MultiplierOutput multiplier_output(double v_in1, double v_in2,
                                   const MultiplierCircuit& circuit, Fidelity fidelity);

// branch current helper shared by the physical modes
double branch_current(double v_in2, double r_smtj_ohm, double r_series_ohm);

}  // namespace spinmac
