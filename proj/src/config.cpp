#include "spinmac/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "spinmac/constants.hpp"

namespace spinmac {

namespace {

struct Raw {
  std::string value;
  int line = 0;
  bool used = false;
};

class KeyMap {
 public:
  explicit KeyMap(std::string label) : label_(std::move(label)) {}

  void insert(const std::string& key, const std::string& value, int line) {
    auto [it, fresh] = map_.try_emplace(key, Raw{value, line});
    if (!fresh)
      fail(line, "duplicate key '" + key + "' (first set on line " +
                     std::to_string(it->second.line) + ")");
  }

  bool has(const std::string& key) {
    auto it = map_.find(key);
    if (it == map_.end()) return false;
    it->second.used = true;
    return true;
  }

  double number(const std::string& key, double fallback) {
    auto it = map_.find(key);
    if (it == map_.end()) return fallback;
    it->second.used = true;
    const std::string& s = it->second.value;
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
      fail(it->second.line, "key '" + key + "': '" + s + "' is not a number");
    return v;
  }

  int integer(const std::string& key, int fallback) {
    auto it = map_.find(key);
    if (it == map_.end()) return fallback;
    double v = number(key, fallback);
    if (v != std::floor(v))
      fail(it->second.line, "key '" + key + "' must be an integer");
    return static_cast<int>(v);
  }

  std::string text(const std::string& key, const std::string& fallback) {
    auto it = map_.find(key);
    if (it == map_.end()) return fallback;
    it->second.used = true;
    return it->second.value;
  }

  void finish() const {
    for (const auto& [key, raw] : map_)
      if (!raw.used) fail(raw.line, "unknown key '" + key + "'");
  }

  [[noreturn]] void fail(int line, const std::string& what) const {
    throw std::invalid_argument(label_ + ":" + std::to_string(line) + ": " + what);
  }

 private:
  std::string label_;
  std::map<std::string, Raw> map_;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

KeyMap tokenize(const std::string& text, const std::string& label) {
  KeyMap keys(label);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      keys.fail(lineno, "expected 'key = value', got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) keys.fail(lineno, "empty key or value");
    keys.insert(key, value, lineno);
  }
  return keys;
}

}  // namespace

SimulationConfig default_config() { return parse_config("", "<defaults>"); }

SimulationConfig parse_config(const std::string& text, const std::string& label) {
  KeyMap k = tokenize(text, label);
  SimulationConfig cfg;
  cfg.source_path = label;

  cfg.device.geometry.major_axis_m = k.number("soft_layer.major_axis_nm", 800) * 1e-9;
  cfg.device.geometry.minor_axis_m = k.number("soft_layer.minor_axis_nm", 700) * 1e-9;
  cfg.device.geometry.thickness_m = k.number("soft_layer.thickness_nm", 2.2) * 1e-9;
  cfg.device.material.saturation_magnetization_a_per_m =
      k.number("material.saturation_magnetization_a_per_m", 8.5e5);
  cfg.device.material.magnetostriction = k.number("material.magnetostriction_ppm", 600) * 1e-6;
  cfg.device.material.youngs_modulus_pa = k.number("material.youngs_modulus_gpa", 120) * 1e9;
  cfg.device.material.gilbert_damping = k.number("material.gilbert_damping", 0.1);
  cfg.device.piezo.d33_c_per_n = k.number("piezo.d33_nm_per_v", 1.5) * 1e-9;
  cfg.device.piezo.thickness_m = k.number("piezo.thickness_um", 1.0) * 1e-6;
  cfg.device.dipole.magnitude_a_per_m = k.number("dipole.field_oe", 1000) * kOerstedToAPerM;
  cfg.device.temperature_k = k.number("device.temperature_k", 300);

  bool nxx = k.has("demag.nxx"), nyy = k.has("demag.nyy"), nzz = k.has("demag.nzz");
  if (nxx != nyy || nyy != nzz)
    throw std::invalid_argument(label + ": demag override needs all of nxx, nyy, nzz");
  if (nxx) {
    cfg.device.demag.nxx = k.number("demag.nxx", 0);
    cfg.device.demag.nyy = k.number("demag.nyy", 0);
    cfg.device.demag.nzz = k.number("demag.nzz", 0);
    cfg.demag_overridden = true;
  } else {
    cfg.device.demag = compute_demag_factors(cfg.device.geometry);
  }

  cfg.solver.dt_s = k.number("sllg.dt_ps", 1.0) * 1e-12;
  cfg.solver.horizon_s = k.number("sllg.horizon_ns", 20.0) * 1e-9;
  cfg.solver.temperature_k = cfg.device.temperature_k;
  cfg.solver.trajectories = k.integer("sllg.trajectories", 100);
  cfg.solver.steady_window_s = k.number("sllg.steady_window_ns", 2.0) * 1e-9;
  cfg.solver.steady_tol_rad = deg_to_rad(k.number("sllg.steady_tol_deg", 1.0));
  cfg.solver.initial_tilt_rad = deg_to_rad(k.number("sllg.initial_tilt_deg", 0.5));
  cfg.solver.sample_stride = k.integer("sllg.sample_stride", 1);
  cfg.solver.threads = k.integer("sllg.threads", 0);

  cfg.mtj.parallel_ohm = k.number("mtj.parallel_ohm", 1000);
  cfg.mtj.antiparallel_ohm = k.number("mtj.antiparallel_ohm", 2000);
  cfg.series_resistance_ohm = k.number("multiplier.series_resistance_ohm", 0);

  cfg.fit.residual_bound_rel = k.number("fit.residual_bound_rel", 0.05);
  cfg.fit.flat_band_rel = k.number("fit.flat_band_rel", 0.001);
  cfg.fit.max_window_v = k.number("fit.max_window_mv", 50) * 1e-3;
  cfg.fit.min_points = k.integer("fit.min_points", 4);

  cfg.strip.resistivity_ohm_m = k.number("strip.resistivity_ohm_m", 1e-7);
  cfg.strip.width_m = k.number("strip.width_nm", 50) * 1e-9;
  cfg.strip.thickness_m = k.number("strip.thickness_nm", 5) * 1e-9;
  cfg.strip.length_m = k.number("strip.length_nm", 2040) * 1e-9;
  cfg.strip.spin_hall_angle = k.number("strip.spin_hall_angle", 0.2);

  cfg.synapse_length_m = k.number("synapse.length_nm", 2060) * 1e-9;
  cfg.synapse_wall_width_m = k.number("synapse.wall_width_nm", 30) * 1e-9;
  cfg.synapse_g.g_parallel_s = k.number("synapse.g_parallel_us", 100) * 1e-6;
  cfg.synapse_g.g_antiparallel_s = k.number("synapse.g_antiparallel_us", 50) * 1e-6;
  cfg.synapse_g.g_wall_s = k.number("synapse.g_wall_us", 75) * 1e-6;

  std::string mode = k.text("mobility.mode", "linear");
  double anchor_j = k.number("mobility.anchor_j_a_per_m2", 2e11);
  double anchor_dx = k.number("mobility.anchor_dx_nm", 120) * 1e-9;
  double noise_rel = k.number("mobility.noise_std_rel", 0.2);
  double cal_pulse = k.number("mobility.calibration_pulse_ns", 0.5) * 1e-9;
  std::string table_file = k.text("mobility.table_file", "");
  if (mode == "linear") {
    cfg.mobility = DwMobilityModel::linear_from_anchor(anchor_j, anchor_dx, noise_rel, cal_pulse);
  } else if (mode == "table") {
    if (table_file.empty())
      throw std::invalid_argument(label + ": mobility.mode = table needs mobility.table_file");
    cfg.mobility = DwMobilityModel::from_table_file(table_file, cal_pulse);
  } else {
    throw std::invalid_argument(label + ": mobility.mode must be linear or table");
  }

  cfg.timing.width_s = k.number("pulse.width_ns", 0.5) * 1e-9;
  cfg.timing.rest_s = k.number("pulse.rest_ns", 4.0) * 1e-9;
  cfg.timing.reset_s = k.number("pulse.reset_ns", 0.0) * 1e-9;

  cfg.encoding_capacitance_f = k.number("encoding.capacitance_ff", 1.0) * 1e-15;
  cfg.encoding_max_v = k.number("encoding.max_amplitude_mv", 50) * 1e-3;
  cfg.encoding_step_v = k.number("encoding.step_mv", 0) * 1e-3;
  cfg.encoding_n_min = k.integer("encoding.n_min", 1);

  cfg.readout_source_v = k.number("readout.source_mv", 20) * 1e-3;
  cfg.readout_min_ratio = k.number("readout.sense_ratio", 100);
  cfg.crossbar_device_energy_j = k.number("accounting.crossbar_device_energy_aj", 100) * 1e-18;

  bool has_kappa = k.has("calibration.kappa_s_per_v");
  bool has_delta = k.has("calibration.delta_v");
  bool has_lo = k.has("calibration.window_lo_v");
  bool has_hi = k.has("calibration.window_hi_v");
  bool has_res = k.has("calibration.residual_rel");
  if (has_kappa || has_delta || has_lo || has_hi || has_res) {
    if (!(has_kappa && has_delta && has_lo && has_hi))
      throw std::invalid_argument(
          label + ": a pinned calibration needs kappa_s_per_v, delta_v, window_lo_v, window_hi_v");
    LinearFit fit;
    fit.slope_s_per_v = k.number("calibration.kappa_s_per_v", 0);
    fit.bias_v = k.number("calibration.delta_v", 0);
    fit.window_lo_v = k.number("calibration.window_lo_v", 0);
    fit.window_hi_v = k.number("calibration.window_hi_v", 0);
    fit.max_residual_rel = k.number("calibration.residual_rel", 0);
    cfg.calibration = fit;
  }
  cfg.pinned_decode_scale = k.number("calibration.decode_scale_per_m", 0);
  cfg.pinned_mobility_gain = k.number("calibration.mobility_gain_m3_per_a", 0);

  k.finish();

  cfg.device.validate();
  cfg.solver.validate();
  cfg.mtj.validate();
  cfg.strip.validate();
  cfg.synapse_g.validate();
  cfg.mobility.validate();
  cfg.timing.validate();
  if (cfg.pinned_mobility_gain > 0 &&
      cfg.mobility.mode == DwMobilityModel::Mode::linear)
    cfg.mobility.gain_m3_per_a = cfg.pinned_mobility_gain;
  return cfg;
}

SimulationConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

EncodingScheme build_encoding(const SimulationConfig& cfg) {
  EncodingScheme s = EncodingScheme::thermal(cfg.device.temperature_k, cfg.encoding_capacitance_f,
                                             cfg.encoding_max_v);
  if (cfg.encoding_step_v > 0) {
    s.step_v = cfg.encoding_step_v;
    s.n_max = static_cast<int>(std::floor(s.max_v / s.step_v + 1e-12));
  }
  s.n_min = cfg.encoding_n_min;
  s.validate();
  return s;
}

LinearFit build_fit(const SimulationConfig& cfg) {
  if (cfg.calibration) return *cfg.calibration;
  LandscapeConstants lc = landscape_constants(cfg.device);
  double knee = lc.offset_v - lc.threshold_v;
  std::vector<double> grid;
  for (double v = knee - 0.060; v <= knee + 0.0201; v += 0.5e-3) grid.push_back(v);
  TransferCharacteristic curve = transfer_curve(grid, CurveSource::analytic, cfg.device,
                                                cfg.mtj, cfg.solver);
  return fit_linear_region(curve, cfg.fit);
}

MacUnit build_mac_unit(const SimulationConfig& cfg) {
  MacUnit unit;
  unit.multiplier.mtj = cfg.mtj;
  unit.multiplier.landscape = landscape_constants(cfg.device);
  unit.multiplier.fit = build_fit(cfg);
  unit.multiplier.series_resistance_ohm =
      cfg.series_resistance_ohm > 0 ? cfg.series_resistance_ohm : cfg.strip.resistance_ohm();
  unit.strip = cfg.strip;
  unit.synapse = DwSynapse(cfg.synapse_length_m, cfg.synapse_wall_width_m, cfg.synapse_g);
  unit.mobility = cfg.mobility;
  unit.timing = cfg.timing;
  unit.readout.source_v = cfg.readout_source_v;
  unit.readout.min_ratio = cfg.readout_min_ratio;
  EncodingScheme scheme = build_encoding(cfg);
  calibrate_unit(unit, scheme);
  if (cfg.pinned_decode_scale > 0) {
    unit.readout.decode_scale = cfg.pinned_decode_scale;
    unit.validate(scheme);
  }
  return unit;
}

CostModel build_cost_model(const SimulationConfig& cfg, const EncodingScheme& scheme) {
  CostModel m;
  m.pulse_width_s = cfg.timing.width_s;
  m.rest_s = cfg.timing.rest_s;
  m.reset_s = cfg.timing.reset_s;
  m.strip_resistance_ohm = cfg.strip.resistance_ohm();
  m.max_current_a = scheme.max_v / cfg.mtj.parallel_ohm;
  m.crossbar_device_energy_j = cfg.crossbar_device_energy_j;
  m.validate();
  return m;
}

}  // namespace spinmac
