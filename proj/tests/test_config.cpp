#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>

#include "spinmac/config.hpp"
#include "spinmac/io.hpp"

using namespace spinmac;

namespace {

std::string src_dir() { return SPINMAC_SOURCE_DIR; }

std::string thrown_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/") + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("the shipped reference config is identical to the built-in defaults") {
  SimulationConfig file = load_config(src_dir() + "/configs/default.cfg");
  SimulationConfig def = default_config();

  CHECK(file.device.geometry.major_axis_m == def.device.geometry.major_axis_m);
  CHECK(file.device.geometry.minor_axis_m == def.device.geometry.minor_axis_m);
  CHECK(file.device.geometry.thickness_m == def.device.geometry.thickness_m);
  CHECK(file.device.material.saturation_magnetization_a_per_m ==
        def.device.material.saturation_magnetization_a_per_m);
  CHECK(file.device.material.magnetostriction == def.device.material.magnetostriction);
  CHECK(file.device.material.youngs_modulus_pa == def.device.material.youngs_modulus_pa);
  CHECK(file.device.material.gilbert_damping == def.device.material.gilbert_damping);
  CHECK(file.device.piezo.d33_c_per_n == def.device.piezo.d33_c_per_n);
  CHECK(file.device.piezo.thickness_m == def.device.piezo.thickness_m);
  CHECK(file.device.dipole.magnitude_a_per_m == def.device.dipole.magnitude_a_per_m);
  CHECK(file.device.temperature_k == def.device.temperature_k);
  CHECK(file.device.demag.nxx == def.device.demag.nxx);
  CHECK(file.device.demag.nyy == def.device.demag.nyy);
  CHECK(file.device.demag.nzz == def.device.demag.nzz);
  CHECK_FALSE(file.demag_overridden);

  CHECK(file.solver.dt_s == def.solver.dt_s);
  CHECK(file.solver.horizon_s == def.solver.horizon_s);
  CHECK(file.solver.temperature_k == def.solver.temperature_k);
  CHECK(file.solver.trajectories == def.solver.trajectories);
  CHECK(file.solver.steady_window_s == def.solver.steady_window_s);
  CHECK(file.solver.steady_tol_rad == def.solver.steady_tol_rad);
  CHECK(file.solver.initial_tilt_rad == def.solver.initial_tilt_rad);

  CHECK(file.mtj.parallel_ohm == def.mtj.parallel_ohm);
  CHECK(file.mtj.antiparallel_ohm == def.mtj.antiparallel_ohm);
  CHECK(file.series_resistance_ohm == def.series_resistance_ohm);
  CHECK(file.fit.residual_bound_rel == def.fit.residual_bound_rel);
  CHECK(file.fit.flat_band_rel == def.fit.flat_band_rel);
  CHECK(file.fit.max_window_v == def.fit.max_window_v);
  CHECK(file.fit.min_points == def.fit.min_points);

  CHECK(file.strip.resistivity_ohm_m == def.strip.resistivity_ohm_m);
  CHECK(file.strip.width_m == def.strip.width_m);
  CHECK(file.strip.thickness_m == def.strip.thickness_m);
  CHECK(file.strip.length_m == def.strip.length_m);
  CHECK(file.strip.spin_hall_angle == def.strip.spin_hall_angle);

  CHECK(file.synapse_length_m == def.synapse_length_m);
  CHECK(file.synapse_wall_width_m == def.synapse_wall_width_m);
  CHECK(file.synapse_g.g_parallel_s == def.synapse_g.g_parallel_s);
  CHECK(file.synapse_g.g_antiparallel_s == def.synapse_g.g_antiparallel_s);
  CHECK(file.synapse_g.g_wall_s == def.synapse_g.g_wall_s);

  CHECK(file.mobility.mode == def.mobility.mode);
  CHECK(file.mobility.gain_m3_per_a == def.mobility.gain_m3_per_a);
  CHECK(file.mobility.noise_std_rel == def.mobility.noise_std_rel);
  CHECK(file.mobility.calibration_pulse_s == def.mobility.calibration_pulse_s);

  CHECK(file.timing.width_s == def.timing.width_s);
  CHECK(file.timing.rest_s == def.timing.rest_s);
  CHECK(file.timing.reset_s == def.timing.reset_s);

  CHECK(file.encoding_capacitance_f == def.encoding_capacitance_f);
  CHECK(file.encoding_max_v == def.encoding_max_v);
  CHECK(file.encoding_step_v == def.encoding_step_v);
  CHECK(file.encoding_n_min == def.encoding_n_min);
  CHECK(file.readout_source_v == def.readout_source_v);
  CHECK(file.readout_min_ratio == def.readout_min_ratio);
  CHECK(file.crossbar_device_energy_j == def.crossbar_device_energy_j);
}

TEST_CASE("an empty config is the reference device") {
  SimulationConfig cfg = parse_config("", "<empty>");
  SimulationConfig def = default_config();
  CHECK(cfg.device.geometry.major_axis_m == def.device.geometry.major_axis_m);
  CHECK(cfg.mtj.antiparallel_ohm == def.mtj.antiparallel_ohm);
  CHECK(cfg.strip.length_m == def.strip.length_m);
  CHECK_FALSE(cfg.calibration.has_value());
  CHECK(cfg.pinned_decode_scale == 0);
}

TEST_CASE("pinned demag factors move the landscape offset to -1 mV") {
  SimulationConfig cfg = load_config(src_dir() + "/configs/pinned_offset.cfg");
  CHECK(cfg.demag_overridden);
  LandscapeConstants lc = landscape_constants(cfg.device);
  CHECK(std::abs(lc.offset_v - (-0.001)) < 2e-9);
  // the threshold does not depend on the demag split
  CHECK(lc.threshold_v == doctest::Approx(0.26234567901234568).epsilon(1e-12));
}

TEST_CASE("malformed configs are rejected with file and line diagnostics") {
  std::string msg = thrown_message([] {
    parse_config("mtj.parallel_ohm = 1200\nnot.a.real.key = 3\n", "bad.cfg");
  });
  CHECK(msg.find("bad.cfg:2") != std::string::npos);
  CHECK(msg.find("unknown key 'not.a.real.key'") != std::string::npos);

  msg = thrown_message([] {
    parse_config("mtj.parallel_ohm = 1200\nmtj.parallel_ohm = 1300\n", "dup.cfg");
  });
  CHECK(msg.find("dup.cfg:2") != std::string::npos);
  CHECK(msg.find("duplicate key 'mtj.parallel_ohm'") != std::string::npos);
  CHECK(msg.find("line 1") != std::string::npos);

  msg = thrown_message([] { parse_config("mtj.parallel_ohm = fast\n", "nan.cfg"); });
  CHECK(msg.find("nan.cfg:1") != std::string::npos);
  CHECK(msg.find("is not a number") != std::string::npos);

  msg = thrown_message([] { parse_config("mtj.parallel_ohm 1200\n", "noeq.cfg"); });
  CHECK(msg.find("noeq.cfg:1") != std::string::npos);
  CHECK(msg.find("expected 'key = value'") != std::string::npos);

  msg = thrown_message([] { parse_config("mtj.parallel_ohm =\n", "empty.cfg"); });
  CHECK(msg.find("empty key or value") != std::string::npos);

  msg = thrown_message([] { parse_config("sllg.trajectories = 2.5\n", "int.cfg"); });
  CHECK(msg.find("must be an integer") != std::string::npos);

  // comments and blank lines are fine anywhere
  SimulationConfig ok = parse_config("# note\n\nmtj.parallel_ohm = 1200 # trailing\n", "ok.cfg");
  CHECK(ok.mtj.parallel_ohm == 1200.0);
}

TEST_CASE("demag factors can only be overridden as a complete set") {
  std::string msg = thrown_message([] { parse_config("demag.nxx = 0.99\n", "d.cfg"); });
  CHECK(msg.find("demag override needs all of nxx, nyy, nzz") != std::string::npos);
}

TEST_CASE("mobility model selection") {
  std::string msg = thrown_message([] { parse_config("mobility.mode = table\n", "m.cfg"); });
  CHECK(msg.find("mobility.mode = table needs mobility.table_file") != std::string::npos);

  msg = thrown_message([] { parse_config("mobility.mode = ballistic\n", "m2.cfg"); });
  CHECK(msg.find("mobility.mode must be linear or table") != std::string::npos);

  std::string table = write_temp("cfgtable.csv",
                                 "5e10, 30e-9, 6e-9\n"
                                 "1e11, 60e-9, 12e-9\n"
                                 "2e11, 120e-9, 24e-9\n");
  SimulationConfig cfg = parse_config(
      "mobility.mode = table\nmobility.table_file = " + table + "\n", "m3.cfg");
  CHECK(cfg.mobility.mode == DwMobilityModel::Mode::table);
  CHECK(cfg.mobility.mean_dx(1e11) == doctest::Approx(60e-9).epsilon(1e-12).scale(0.0));

  // the shipped calibration table loads through the same path
  SimulationConfig shipped = parse_config(
      "mobility.mode = table\nmobility.table_file = " + src_dir() +
          "/data/dw_calibration_default.csv\n",
      "m4.cfg");
  CHECK(shipped.mobility.mean_dx(2e11) == doctest::Approx(120e-9).epsilon(1e-9).scale(0.0));
}

TEST_CASE("a pinned calibration must carry the full fit") {
  std::string msg = thrown_message([] {
    parse_config("calibration.kappa_s_per_v = -4.3e-4\n", "c.cfg");
  });
  CHECK(msg.find("a pinned calibration needs kappa_s_per_v, delta_v, window_lo_v, window_hi_v") !=
        std::string::npos);

  msg = thrown_message([] { parse_config("calibration.residual_rel = 0.01\n", "c2.cfg"); });
  CHECK(msg.find("a pinned calibration needs") != std::string::npos);

  SimulationConfig cfg = parse_config(
      "calibration.kappa_s_per_v = -4.4e-4\n"
      "calibration.delta_v = -0.2636\n"
      "calibration.window_lo_v = -0.31\n"
      "calibration.window_hi_v = -0.2636\n"
      "calibration.residual_rel = 0.03\n",
      "c3.cfg");
  REQUIRE(cfg.calibration.has_value());
  LinearFit fit = build_fit(cfg);
  CHECK(fit.slope_s_per_v == -4.4e-4);
  CHECK(fit.bias_v == -0.2636);
  CHECK(fit.window_lo_v == -0.31);
  CHECK(fit.window_hi_v == -0.2636);
  CHECK(fit.max_residual_rel == 0.03);
}

TEST_CASE("a calibration block emitted by the toolchain round-trips") {
  SimulationConfig def = default_config();
  LinearFit fit = build_fit(def);
  MacUnit unit = build_mac_unit(def);
  std::string block = format_calibration_block(fit, unit.readout.decode_scale,
                                               through_origin_mobility_gain(unit.mobility));

  SimulationConfig cfg = parse_config(block, "<calibration>");
  REQUIRE(cfg.calibration.has_value());
  LinearFit pinned = build_fit(cfg);
  CHECK(pinned.slope_s_per_v == doctest::Approx(fit.slope_s_per_v).epsilon(1e-8).scale(0.0));
  CHECK(pinned.bias_v == doctest::Approx(fit.bias_v).epsilon(1e-8).scale(0.0));
  CHECK(cfg.pinned_decode_scale ==
        doctest::Approx(unit.readout.decode_scale).epsilon(1e-8).scale(0.0));
  // the pinned gain lands on the linear mobility model
  CHECK(cfg.mobility.gain_m3_per_a ==
        doctest::Approx(unit.mobility.gain_m3_per_a).epsilon(1e-8).scale(0.0));

  MacUnit pinned_unit = build_mac_unit(cfg);
  CHECK(pinned_unit.readout.decode_scale == cfg.pinned_decode_scale);
}

TEST_CASE("unit conversions land where expected") {
  SimulationConfig cfg = parse_config("strip.length_nm = 120000\n", "u.cfg");
  CHECK(cfg.strip.resistance_ohm() == doctest::Approx(48000.0).epsilon(1e-9));

  cfg = parse_config("encoding.step_mv = 5\n", "u2.cfg");
  EncodingScheme s = build_encoding(cfg);
  CHECK(s.step_v == doctest::Approx(5e-3).epsilon(1e-12).scale(0.0));
  CHECK(s.n_max == 10);

  cfg = parse_config("encoding.n_min = 0\n", "u3.cfg");
  CHECK(build_encoding(cfg).n_min == 0);

  cfg = parse_config("pulse.width_ns = 1\npulse.rest_ns = 8\n", "u4.cfg");
  CHECK(cfg.timing.per_mac_s() == doctest::Approx(9e-9).epsilon(1e-12).scale(0.0));
}

TEST_CASE("the default encoding holds twelve levels") {
  EncodingScheme s = build_encoding(default_config());
  CHECK(s.n_max == 12);
  CHECK(s.step_v == doctest::Approx(4.070354775692163e-3).epsilon(1e-9).scale(0.0));
}

TEST_CASE("the assembled unit is wired to its own synapse") {
  SimulationConfig def = default_config();
  MacUnit unit = build_mac_unit(def);
  CHECK(unit.multiplier.series_resistance_ohm ==
        doctest::Approx(def.strip.resistance_ohm()).epsilon(1e-12));
  CHECK(unit.readout.reference_conductance_s ==
        doctest::Approx(unit.synapse.constants().intercept_s).epsilon(1e-12).scale(0.0));
  CHECK(unit.readout.sense_conductance_s >=
        100.0 * unit.readout.reference_conductance_s * (1 - 1e-12));
  CHECK(unit.readout.decode_scale > 0);

  SimulationConfig explicit_series = parse_config("multiplier.series_resistance_ohm = 1\n", "s.cfg");
  MacUnit small = build_mac_unit(explicit_series);
  CHECK(small.multiplier.series_resistance_ohm == 1.0);
}

TEST_CASE("the cost model mirrors the config") {
  SimulationConfig def = default_config();
  EncodingScheme s = build_encoding(def);
  CostModel m = build_cost_model(def, s);
  CHECK(m.strip_resistance_ohm == doctest::Approx(816.0).epsilon(1e-9));
  CHECK(m.max_current_a == doctest::Approx(5e-5).epsilon(1e-12).scale(0.0));
  CHECK(m.pulse_width_s == doctest::Approx(0.5e-9).epsilon(1e-12).scale(0.0));
  CHECK(m.crossbar_device_energy_j == doctest::Approx(1e-16).epsilon(1e-12).scale(0.0));
}

TEST_CASE("missing config files name the path") {
  std::string msg =
      thrown_message([] { load_config("/tmp/definitely_missing_spinmac.cfg"); });
  CHECK(msg.find("/tmp/definitely_missing_spinmac.cfg") != std::string::npos);
  CHECK(msg.find("cannot open") != std::string::npos);
}
