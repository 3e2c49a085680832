#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "spinmac/accounting.hpp"
#include "spinmac/multiplier.hpp"
#include "spinmac/readout.hpp"
#include "spinmac/synapse.hpp"

namespace spinmac {

struct IntegerMatrix {
  int n = 0;
  std::vector<int> entries;  // row-major

  static IntegerMatrix zeros(int n);
  int& at(int i, int j) { return entries[static_cast<std::size_t>(i) * n + j]; }
  int at(int i, int j) const { return entries[static_cast<std::size_t>(i) * n + j]; }
  void validate() const;
};

// Exact integer product, no physics anywhere in the call graph.
IntegerMatrix oracle_matmul(const IntegerMatrix& a, const IntegerMatrix& b);

// Second, structurally different implementation (transposed operands and
// reversed loop nest) used to cross-check the oracle itself.
IntegerMatrix oracle_matmul_transposed(const IntegerMatrix& a, const IntegerMatrix& b);

// Pulse-amplitude code: integer n maps to n * step_v, the step held at twice
// the rms thermal voltage of the input capacitance so neighboring levels stay
// distinguishable.
struct EncodingScheme {
  double step_v = 0;
  double max_v = 0.05;
  int n_min = 1;  // physical floor; ideal fidelity additionally admits 0
  int n_max = 0;
  double capacitance_f = 1e-15;
  double temperature_k = 300.0;

  static EncodingScheme thermal(double temperature_k, double capacitance_f,
                                double max_v = 0.05);
  double encode(int n) const;
  void validate() const;
};

// One multiplier + strip + synapse + readout stack (a single product-term
// engine). Copyable; the parallel array is N^2 copies.
struct MacUnit {
  MultiplierCircuit multiplier;
  HeavyMetalStrip strip;
  DwSynapse synapse;
  DwMobilityModel mobility;
  PulseTiming timing;
  ReadoutCircuit readout;

  // Largest N the synapse can accumulate: full-scale displacement is the
  // calibrated wall travel at the maximum drive current (max_v across the
  // parallel-state multiplier).
  int max_dimension(const EncodingScheme& scheme) const;
  double full_scale_dx_m(const EncodingScheme& scheme) const;
  void validate(const EncodingScheme& scheme) const;
};

// Wall displacement a unit product (1 x 1 through the ideal path) produces;
// its inverse is the decode scale.
double unit_product_dx_m(const MacUnit& unit, const EncodingScheme& scheme);

// Wires the readout to the synapse (reference level, sense load, decode
// scale) and validates the assembled unit.
void calibrate_unit(MacUnit& unit, const EncodingScheme& scheme);

struct ElementDiagnostics {
  bool saturated = false;
  bool nonvolatile = false;
  int out_of_window_pulses = 0;
  std::vector<double> pulse_currents_a;
};

struct ElementResult {
  double value = 0;
  ElementDiagnostics diag;
};

// One row x column accumulation: encode each operand pair, run the multiplier
// at the chosen fidelity, push the pulse into the synapse, then decode, check
// the decode survives a power cycle, and reset the unit.
ElementResult compute_element(const std::vector<int>& row, const std::vector<int>& col,
                              MacUnit& unit, const EncodingScheme& scheme,
                              Fidelity fidelity, bool noise, std::mt19937_64& rng);

struct RunReport {
  int n = 0;
  Fidelity fidelity = Fidelity::exact_compensated;
  RunMode mode = RunMode::sequential;
  bool noise = false;
  std::uint64_t seed = 0;

  std::vector<double> decoded;  // row-major reals
  IntegerMatrix rounded;        // nearest integer, ties to even
  IntegerMatrix oracle;
  std::vector<double> abs_error;
  double max_abs_error = 0;
  double rounded_error_rate = 0;

  int saturated_elements = 0;
  int nonvolatile_elements = 0;
  int out_of_window_pulses = 0;

  std::vector<double> pulse_currents_a;  // element-major trace
  double energy_j = 0;
  double worst_case_energy_j = 0;  // trace length x max-operand pulse energy
  double per_mac_latency_s = 0;
  double latency_s = 0;
  long long device_count = 0;
};

// Full product through the physical pipeline. Sequential mode reuses one unit
// with a reset between elements; parallel mode gives each element its own
// copy and may run them on several threads. Both modes draw each element's
// noise from a stream keyed by (seed, i, j), so the decoded content is
// identical.
RunReport matmul(const IntegerMatrix& a, const IntegerMatrix& b, const MacUnit& prototype,
                 const EncodingScheme& scheme, Fidelity fidelity, RunMode mode,
                 bool noise, std::uint64_t seed, int threads = 0);

}  // namespace spinmac
