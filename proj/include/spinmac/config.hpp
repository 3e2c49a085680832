#pragma once

#include <optional>
#include <string>

#include "spinmac/engine.hpp"

namespace spinmac {

// Flat key-value configuration ("section.key_with_unit = value"). Unknown or
// malformed keys are rejected with file:line diagnostics; every key has a
// default matching the reference device, so an empty file is a valid config.
struct SimulationConfig {
  DeviceParams device;
  bool demag_overridden = false;

  SolverConfig solver;
  MtjResistancePair mtj;
  FitPolicy fit;
  double series_resistance_ohm = 0;  // 0: use the strip's own resistance

  HeavyMetalStrip strip;
  double synapse_length_m = 2060e-9;
  double synapse_wall_width_m = 30e-9;
  DwConductances synapse_g;
  DwMobilityModel mobility;
  PulseTiming timing;

  double encoding_capacitance_f = 1e-15;
  double encoding_max_v = 0.05;
  double encoding_step_v = 0;  // 0: thermal floor 2*sqrt(kT/C)
  int encoding_n_min = 1;

  double readout_source_v = 0.02;
  double readout_min_ratio = 100.0;
  double crossbar_device_energy_j = 100e-18;

  // Optional pinned calibration (normally produced by `calibrate`); when
  // absent the multiplier fit is measured from the analytic curve at build
  // time and the decode scale from the unit product.
  std::optional<LinearFit> calibration;
  double pinned_decode_scale = 0;
  double pinned_mobility_gain = 0;

  std::string source_path;  // where this config came from, for diagnostics
};

SimulationConfig default_config();
SimulationConfig parse_config(const std::string& text, const std::string& label);
SimulationConfig load_config(const std::string& path);

EncodingScheme build_encoding(const SimulationConfig& cfg);

// Linear fit for the multiplier: the pinned calibration when present,
// otherwise fit_linear_region over an analytic curve bracketing the knee.
LinearFit build_fit(const SimulationConfig& cfg);

// Full single-unit assembly, readout wired and decode scale calibrated.
MacUnit build_mac_unit(const SimulationConfig& cfg);

CostModel build_cost_model(const SimulationConfig& cfg, const EncodingScheme& scheme);

}  // namespace spinmac
