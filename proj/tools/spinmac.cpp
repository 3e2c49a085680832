#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spinmac/config.hpp"
#include "spinmac/constants.hpp"
#include "spinmac/io.hpp"

namespace {

using namespace spinmac;

std::uint64_t resolve_seed(std::uint64_t seed) {
  if (seed != 0) return seed;
  std::random_device rd;
  std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  return s ? s : 1;
}

SimulationConfig config_from(const std::string& path) {
  return path.empty() ? default_config() : load_config(path);
}

void emit(const std::string& csv, const std::string& summary, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << csv;
    std::cerr << summary;
  } else {
    write_text_file(out_path, csv);
    std::cout << summary;
  }
}

std::vector<double> make_grid(double lo, double hi, int points) {
  if (points < 2 || hi <= lo) throw std::invalid_argument("grid needs at least 2 points and vmax > vmin");
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * i / (points - 1);
  return g;
}

struct CurveArgs {
  std::string config_path;
  std::string source = "analytic";
  std::string out;
  double vmin = 0, vmax = 0;
  int points = 141;
  std::uint64_t seed = 0;
  int threads = 0;
  bool have_vmin = false, have_vmax = false;
};

TransferCharacteristic run_curve(const CurveArgs& a, SimulationConfig& cfg) {
  cfg = config_from(a.config_path);
  if (a.threads > 0) cfg.solver.threads = a.threads;
  cfg.solver.seed = resolve_seed(a.seed);
  LandscapeConstants lc = landscape_constants(cfg.device);
  double knee = lc.offset_v - lc.threshold_v;
  double lo = a.have_vmin ? a.vmin : knee - 0.055;
  double hi = a.have_vmax ? a.vmax : knee + 0.015;
  CurveSource src = a.source == "sllg" ? CurveSource::sllg : CurveSource::analytic;
  return transfer_curve(make_grid(lo, hi, a.points), src, cfg.device, cfg.mtj, cfg.solver);
}

int cmd_transfer_curve(const CurveArgs& a) {
  SimulationConfig cfg;
  TransferCharacteristic curve = run_curve(a, cfg);
  LinearFit fit = fit_linear_region(curve, cfg.fit);
  std::string summary = format_fit_summary(fit);
  if (a.source == "analytic") {
    LinearFit cf = analytic_linear_fit(landscape_constants(cfg.device), cfg.mtj);
    summary += "closed_form_kappa_s_per_v = " + std::to_string(cf.slope_s_per_v) + "\n";
    summary += "closed_form_kappa_per_kohm_v = " + std::to_string(cf.slope_s_per_v * 1e3) + "\n";
    summary += "closed_form_delta_v = " + std::to_string(cf.bias_v) + "\n";
  }
  emit(format_transfer_csv(curve, cfg.solver.seed), summary, a.out);
  return 0;
}

int cmd_calibrate(const CurveArgs& a) {
  SimulationConfig cfg;
  TransferCharacteristic curve = run_curve(a, cfg);
  LinearFit fit = fit_linear_region(curve, cfg.fit);
  SimulationConfig pinned = cfg;
  pinned.calibration = fit;
  MacUnit unit = build_mac_unit(pinned);
  std::string block = format_calibration_block(fit, unit.readout.decode_scale,
                                               through_origin_mobility_gain(cfg.mobility));
  if (a.out.empty() || a.out == "-")
    std::cout << block;
  else {
    write_text_file(a.out, block);
    std::cout << block;
  }
  return 0;
}

struct MatmulArgs {
  std::string config_path, a_file, b_file, out;
  std::string mode = "sequential";
  std::string fidelity = "exact-compensated";
  bool no_noise = false;
  std::uint64_t seed = 0;
  int threads = 0;
};

int cmd_matmul(const MatmulArgs& a) {
  SimulationConfig cfg = config_from(a.config_path);
  IntegerMatrix ma = load_matrix(a.a_file);
  IntegerMatrix mb = load_matrix(a.b_file);
  EncodingScheme scheme = build_encoding(cfg);
  MacUnit unit = build_mac_unit(cfg);
  Fidelity f = a.fidelity == "ideal"   ? Fidelity::ideal
               : a.fidelity == "exact" ? Fidelity::exact
                                       : Fidelity::exact_compensated;
  RunMode mode = a.mode == "parallel" ? RunMode::parallel_array : RunMode::sequential;
  RunReport rep = matmul(ma, mb, unit, scheme, f, mode, !a.no_noise, resolve_seed(a.seed), a.threads);
  emit(format_run_csv(rep), format_run_summary(rep), a.out);
  return 0;
}

struct ReportArgs {
  std::string config_path, sweep = "1,2,4,8,17", out;
};

int cmd_report(const ReportArgs& a) {
  SimulationConfig cfg = config_from(a.config_path);
  EncodingScheme scheme = build_encoding(cfg);
  CostModel model = build_cost_model(cfg, scheme);
  std::vector<CrossbarComparison> rows;
  std::string item;
  std::istringstream in(a.sweep);
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    int n = std::stoi(item);
    rows.push_back(crossbar_compare(n, model));
  }
  std::string csv = format_sweep_csv(rows, model);
  if (a.out.empty() || a.out == "-")
    std::cout << csv;
  else {
    write_text_file(a.out, csv);
    std::cout << csv;
  }
  return 0;
}

struct TrajectoryArgs {
  std::string config_path, out;
  double gate_v = 0;
  std::uint64_t seed = 0;
  int index = 0;
  int stride = 10;
};

int cmd_trajectory(const TrajectoryArgs& a) {
  SimulationConfig cfg = config_from(a.config_path);
  cfg.solver.seed = resolve_seed(a.seed);
  cfg.solver.sample_stride = a.stride;
  Trajectory traj = integrate(a.gate_v, cfg.device, cfg.solver, a.index);
  std::string csv = format_trajectory_csv(traj, a.gate_v, cfg.solver.seed);
  std::string summary = "steady_theta_deg = " + std::to_string(rad_to_deg(traj.steady_theta_rad)) +
                        "\nconverged = " + (traj.converged ? "1" : "0") + "\n";
  emit(csv, summary, a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"macrospin simulator of a strain-gated MTJ multiplier with a domain-wall accumulator"};
  app.require_subcommand(1);

  CurveArgs curve;
  CLI::App* tc = app.add_subcommand("transfer-curve", "conductance vs gate voltage, with the linear-region fit");
  tc->add_option("--config", curve.config_path, "config file (defaults used when omitted)");
  tc->add_option("--source", curve.source, "curve source: analytic | sllg (default analytic)")
      ->check(CLI::IsMember({"analytic", "sllg"}));
  tc->add_option("--vmin", curve.vmin, "grid start, volts (default: 55 mV below the knee)")
      ->each([&](const std::string&) { curve.have_vmin = true; });
  tc->add_option("--vmax", curve.vmax, "grid end, volts (default: 15 mV above the knee)")
      ->each([&](const std::string&) { curve.have_vmax = true; });
  tc->add_option("--points", curve.points, "grid size (default 141)");
  tc->add_option("--seed", curve.seed, "RNG seed for the sllg source (0 or omitted: auto, recorded in the CSV)");
  tc->add_option("--threads", curve.threads, "worker threads for the sllg ensemble (default: all cores)");
  tc->add_option("--out", curve.out, "curve CSV path ('-' or omitted: stdout, summary to stderr)");

  CurveArgs cal;
  CLI::App* cc = app.add_subcommand("calibrate", "fit the linear region and emit a config-mergeable calibration block");
  cc->add_option("--config", cal.config_path, "config file (defaults used when omitted)");
  cc->add_option("--source", cal.source, "curve source: analytic | sllg (default analytic)")
      ->check(CLI::IsMember({"analytic", "sllg"}));
  cc->add_option("--points", cal.points, "grid size (default 141)");
  cc->add_option("--seed", cal.seed, "RNG seed for the sllg source (0 or omitted: auto)");
  cc->add_option("--threads", cal.threads, "worker threads for the sllg ensemble");
  cc->add_option("--out", cal.out, "calibration block path (also echoed to stdout)");

  MatmulArgs mm;
  CLI::App* mc = app.add_subcommand("matmul", "integer matrix product through the physical pipeline");
  mc->add_option("a_file", mm.a_file, "left matrix file (first line N, then N rows of N integers)")->required();
  mc->add_option("b_file", mm.b_file, "right matrix file")->required();
  mc->add_option("--config", mm.config_path, "config file (defaults used when omitted)");
  mc->add_option("--mode", mm.mode, "sequential | parallel (default sequential)")
      ->check(CLI::IsMember({"sequential", "parallel"}));
  mc->add_option("--fidelity", mm.fidelity, "ideal | exact | exact-compensated (default exact-compensated)")
      ->check(CLI::IsMember({"ideal", "exact", "exact-compensated"}));
  mc->add_flag("--no-noise", mm.no_noise, "disable displacement noise (noise is on by default)");
  mc->add_option("--seed", mm.seed, "RNG seed (0 or omitted: auto, recorded in the report)");
  mc->add_option("--threads", mm.threads, "worker threads in parallel mode (default: all cores)");
  mc->add_option("--out", mm.out, "per-element CSV path ('-' or omitted: stdout, summary to stderr)");

  ReportArgs rp;
  CLI::App* rc = app.add_subcommand("report", "energy, latency, and footprint sweep vs the crossbar baseline");
  rc->add_option("--config", rp.config_path, "config file (defaults used when omitted)");
  rc->add_option("--sweep", rp.sweep, "comma-separated matrix dimensions (default 1,2,4,8,17; empty: header only)");
  rc->add_option("--out", rp.out, "sweep CSV path ('-' or omitted: stdout)");

  TrajectoryArgs tj;
  CLI::App* jc = app.add_subcommand("trajectory", "single stochastic magnetization trajectory");
  jc->add_option("--config", tj.config_path, "config file (defaults used when omitted)");
  jc->add_option("--vg", tj.gate_v, "gate voltage, volts")->required();
  jc->add_option("--seed", tj.seed, "RNG seed (0 or omitted: auto, recorded in the CSV)");
  jc->add_option("--index", tj.index, "trajectory index within the seed's ensemble (default 0)");
  jc->add_option("--stride", tj.stride, "sample recording stride in steps (default 10)");
  jc->add_option("--out", tj.out, "trajectory CSV path ('-' or omitted: stdout, summary to stderr)");

  try {
    app.parse(argc, argv);
    if (tc->parsed()) return cmd_transfer_curve(curve);
    if (cc->parsed()) return cmd_calibrate(cal);
    if (mc->parsed()) return cmd_matmul(mm);
    if (rc->parsed()) return cmd_report(rp);
    if (jc->parsed()) return cmd_trajectory(tj);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
