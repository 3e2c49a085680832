#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace spinmac {

// Heavy-metal charge line under the domain-wall layer.
struct HeavyMetalStrip {
  double resistivity_ohm_m = 1e-7;
  double width_m = 50e-9;
  double thickness_m = 5e-9;
  double length_m = 2040e-9;
  double spin_hall_angle = 0.2;

  double cross_section_m2() const { return width_m * thickness_m; }
  double resistance_ohm() const;
  double current_density(double current_a) const { return current_a / cross_section_m2(); }
  void validate() const;
};

struct DwConductances {
  double g_parallel_s = 100e-6;
  double g_antiparallel_s = 50e-6;
  double g_wall_s = 75e-6;

  void validate() const;
};

// G(x) = intercept - slope * x for wall position x.
struct AbConstants {
  double intercept_s = 0;
  double slope_s_per_m = 0;
};

// Three-segment conductance model of the synapse MTJ: swept (antiparallel),
// wall, and remaining (parallel) regions in parallel-plate weighting.
AbConstants ab_constants(const DwConductances& g, double length_m, double wall_width_m);

struct CalibrationRow {
  double current_density_a_per_m2;
  double mean_dx_m;
  double std_dx_m;
};

// Displacement per drive pulse as a function of current density.
// linear: dx = gain * J, calibrated through the origin and one anchor point,
// with multiplicative gaussian noise.
// table: interpolation of a measured mean/std calibration, linearly
// extrapolated at the ends (clamped at zero displacement).
struct DwMobilityModel {
  enum class Mode { linear, table };
  Mode mode = Mode::linear;
  double gain_m3_per_a = 6e-19;      // linear mode: dx per unit J
  double noise_std_rel = 0.2;        // linear mode noise, relative
  double calibration_pulse_s = 0.5e-9;
  std::vector<CalibrationRow> table;  // strictly increasing J

  static DwMobilityModel linear_from_anchor(double j_a_per_m2, double dx_m,
                                            double noise_std_rel = 0.2,
                                            double pulse_s = 0.5e-9);
  static DwMobilityModel from_table(std::vector<CalibrationRow> rows,
                                    double pulse_s = 0.5e-9);
  static DwMobilityModel from_table_file(const std::string& path,
                                         double pulse_s = 0.5e-9);

  double mean_dx(double j_a_per_m2) const;
  double std_dx(double j_a_per_m2) const;
  void validate() const;
};

// Through-origin least-squares slope of mean displacement vs current density;
// in linear mode this is the configured gain itself.
double through_origin_mobility_gain(const DwMobilityModel& mobility);

struct PulseTiming {
  double width_s = 0.5e-9;
  double rest_s = 4.0e-9;
  double reset_s = 0.0;

  double per_mac_s() const { return width_s + rest_s; }
  void validate() const;
};

// Wall position state of one synapse. The RNG stream lives with the state so
// replays are deterministic per element.
class DwSynapse {
 public:
  DwSynapse() = default;
  DwSynapse(double length_m, double wall_width_m, const DwConductances& g);

  // advance the wall by one drive pulse; current sign is ignored (the drive
  // polarity is fixed by the circuit), position clamps to [0, length - wall]
  void apply_pulse(double current_a, const HeavyMetalStrip& strip,
                   const DwMobilityModel& mobility, const PulseTiming& timing,
                   bool noise, std::mt19937_64& rng);

  void reset() { x_m_ = 0; saturated_ = false; }

  double position_m() const { return x_m_; }
  bool saturated() const { return saturated_; }
  double conductance_s() const;
  double length_m() const { return length_m_; }
  double wall_width_m() const { return wall_width_m_; }
  double max_position_m() const { return length_m_ - wall_width_m_; }
  const AbConstants& constants() const { return ab_; }

 private:
  double length_m_ = 2060e-9;
  double wall_width_m_ = 30e-9;
  DwConductances g_;
  AbConstants ab_ = ab_constants(g_, length_m_, wall_width_m_);
  double x_m_ = 0;
  bool saturated_ = false;
};

}  // namespace spinmac
