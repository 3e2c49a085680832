#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spinmac {

enum class RunMode { sequential, parallel_array };

struct CostModel {
  double pulse_width_s = 0.5e-9;
  double rest_s = 4.0e-9;
  double reset_s = 0.0;
  double strip_resistance_ohm = 816.0;
  double max_current_a = 50e-6;
  double crossbar_device_energy_j = 100e-18;  // per-device programming energy of the baseline

  double per_mac_latency_s() const { return pulse_width_s + rest_s; }
  void validate() const;
};

// Joule dissipation of one drive pulse in the heavy-metal strip.
double energy_per_mac(double current_a, double resistance_ohm, double pulse_width_s);

// Worst case for a full N x N product: N^3 pulses at the maximum current.
double worst_case_energy(int n, const CostModel& model);

// Dissipation of a recorded pulse trace; bounded above by
// pulse_count * energy_per_mac(max current).
double actual_run_energy(const std::vector<double>& pulse_currents_a, const CostModel& model);

// sequential: one unit walks all N^2 elements, N pulses each, reset between
// elements. parallel: N^2 units run their N pulses side by side, one reset.
double latency_s(int n, RunMode mode, const CostModel& model);

// MTJ count actually powered: a multiplier and a synapse per unit.
long long device_count(int n, RunMode mode);

// Dissipation channels deliberately left out of the model (each is orders of
// magnitude below the strip term at these operating points).
const std::vector<std::string>& excluded_dissipation_terms();

struct CrossbarComparison {
  int n = 0;
  long long devices_here = 0;       // 2 N^2
  long long devices_crossbar = 0;   // N^3, one per product term
  double energy_here_j = 0;         // worst case, N^3 pulses
  double energy_crossbar_j = 0;     // per-device energy * N^3
  double breakeven_device_energy_j = 0;  // crossbar per-device energy at parity
  bool nonvolatile_here = true;     // wall position survives power-off
  bool nonvolatile_crossbar = false;  // products live on charge, lost at power-off
};

CrossbarComparison crossbar_compare(int n, const CostModel& model);

}  // namespace spinmac
