#include "spinmac/synapse.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spinmac {

double HeavyMetalStrip::resistance_ohm() const {
  return resistivity_ohm_m * length_m / cross_section_m2();
}

void HeavyMetalStrip::validate() const {
  if (!(resistivity_ohm_m > 0 && width_m > 0 && thickness_m > 0 && length_m > 0))
    throw std::invalid_argument("strip dimensions and resistivity must be positive");
}

void DwConductances::validate() const {
  if (!(g_parallel_s > g_antiparallel_s && g_antiparallel_s > 0))
    throw std::invalid_argument("expected G_P > G_AP > 0");
  if (!(g_wall_s > 0)) throw std::invalid_argument("wall conductance must be positive");
}

AbConstants ab_constants(const DwConductances& g, double length_m, double wall_width_m) {
  if (!(length_m > 0) || wall_width_m < 0 || wall_width_m >= length_m)
    throw std::invalid_argument("invalid synapse length or wall width");
  AbConstants c;
  const double wl = wall_width_m / length_m;
  c.intercept_s = g.g_wall_s * wl + g.g_parallel_s * (1.0 - wl);
  c.slope_s_per_m = (g.g_parallel_s - g.g_antiparallel_s) / length_m;
  return c;
}

DwMobilityModel DwMobilityModel::linear_from_anchor(double j_a_per_m2, double dx_m,
                                                    double noise_std_rel, double pulse_s) {
  if (!(j_a_per_m2 > 0) || !(dx_m > 0))
    throw std::invalid_argument("calibration anchor must be positive");
  DwMobilityModel m;
  m.mode = Mode::linear;
  m.gain_m3_per_a = dx_m / j_a_per_m2;
  m.noise_std_rel = noise_std_rel;
  m.calibration_pulse_s = pulse_s;
  return m;
}

DwMobilityModel DwMobilityModel::from_table(std::vector<CalibrationRow> rows, double pulse_s) {
  DwMobilityModel m;
  m.mode = Mode::table;
  m.table = std::move(rows);
  m.calibration_pulse_s = pulse_s;
  m.validate();
  return m;
}

DwMobilityModel DwMobilityModel::from_table_file(const std::string& path, double pulse_s) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open calibration table: " + path);
  std::vector<CalibrationRow> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (line.find("J_A_per_m2") != std::string::npos) continue;  // header
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    CalibrationRow r{};
    if (!(ss >> r.current_density_a_per_m2 >> r.mean_dx_m >> r.std_dx_m))
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected 'J, mean_dx, std_dx'");
    rows.push_back(r);
  }
  return from_table(std::move(rows), pulse_s);
}

void DwMobilityModel::validate() const {
  if (!(calibration_pulse_s > 0)) throw std::invalid_argument("pulse width must be positive");
  if (mode == Mode::linear) {
    if (!(gain_m3_per_a > 0)) throw std::invalid_argument("mobility gain must be positive");
    if (noise_std_rel < 0) throw std::invalid_argument("noise std cannot be negative");
    return;
  }
  if (table.size() < 2)
    throw std::invalid_argument("calibration table needs at least two rows");
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i].std_dx_m < 0)
      throw std::invalid_argument("calibration std cannot be negative");
    if (i > 0 && !(table[i].current_density_a_per_m2 > table[i - 1].current_density_a_per_m2))
      throw std::invalid_argument("calibration table must be strictly increasing in J");
  }
}

namespace {
double interp_column(const std::vector<CalibrationRow>& t, double j, bool mean) {
  auto value = [&](const CalibrationRow& r) { return mean ? r.mean_dx_m : r.std_dx_m; };
  std::size_t hi = 1;
  while (hi + 1 < t.size() && t[hi].current_density_a_per_m2 < j) ++hi;
  const auto& a = t[hi - 1];
  const auto& b = t[hi];
  const double f = (j - a.current_density_a_per_m2) /
                   (b.current_density_a_per_m2 - a.current_density_a_per_m2);
  return value(a) + f * (value(b) - value(a));  // extrapolates at both ends
}
}  // namespace

double DwMobilityModel::mean_dx(double j_a_per_m2) const {
  if (mode == Mode::linear) return gain_m3_per_a * j_a_per_m2;
  return std::max(0.0, interp_column(table, j_a_per_m2, true));
}

double DwMobilityModel::std_dx(double j_a_per_m2) const {
  if (mode == Mode::linear) return noise_std_rel * mean_dx(j_a_per_m2);
  return std::max(0.0, interp_column(table, j_a_per_m2, false));
}

void PulseTiming::validate() const {
  if (!(width_s > 0) || rest_s < 0 || reset_s < 0)
    throw std::invalid_argument("invalid pulse timing");
}

DwSynapse::DwSynapse(double length_m, double wall_width_m, const DwConductances& g)
    : length_m_(length_m), wall_width_m_(wall_width_m), g_(g),
      ab_(ab_constants(g, length_m, wall_width_m)) {
  g.validate();
}

void DwSynapse::apply_pulse(double current_a, const HeavyMetalStrip& strip,
                            const DwMobilityModel& mobility, const PulseTiming& timing,
                            bool noise, std::mt19937_64& rng) {
  const double j = strip.current_density(std::abs(current_a));
  // calibration holds for its own pulse width; other widths scale linearly
  const double width_scale = timing.width_s / mobility.calibration_pulse_s;
  double dx = mobility.mean_dx(j) * width_scale;
  if (noise) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    dx += mobility.std_dx(j) * width_scale * gauss(rng);
  }
  const double target = x_m_ + dx;
  const double hi = max_position_m();
  if (target > hi) {
    x_m_ = hi;
    saturated_ = true;
  } else {
    x_m_ = std::max(0.0, target);
  }
}

double DwSynapse::conductance_s() const {
  return ab_.intercept_s - ab_.slope_s_per_m * x_m_;
}

double through_origin_mobility_gain(const DwMobilityModel& mobility) {
  mobility.validate();
  if (mobility.mode == DwMobilityModel::Mode::linear) return mobility.gain_m3_per_a;
  double num = 0, den = 0;
  for (const auto& row : mobility.table) {
    num += row.current_density_a_per_m2 * row.mean_dx_m;
    den += row.current_density_a_per_m2 * row.current_density_a_per_m2;
  }
  if (den <= 0) throw std::invalid_argument("mobility: degenerate calibration table");
  return num / den;
}

}  // namespace spinmac
