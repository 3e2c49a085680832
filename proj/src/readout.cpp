#include "spinmac/readout.hpp"

#include <cmath>
#include <stdexcept>

namespace spinmac {

namespace {

double series(double g, double g_load) {
  return g * g_load / (g + g_load);
}

}  // namespace

void ReadoutCircuit::validate() const {
  if (source_v <= 0) throw std::invalid_argument("readout: source voltage must be positive");
  if (reference_conductance_s <= 0)
    throw std::invalid_argument("readout: reference conductance must be positive");
  if (sense_conductance_s < min_ratio * reference_conductance_s)
    throw std::invalid_argument("readout: sense load too small for the linear estimate");
  if (!(decode_scale > 0) || !std::isfinite(decode_scale))
    throw std::invalid_argument("readout: decode scale must be positive");
}

double sense_current(double g_synapse_s, const ReadoutCircuit& circuit) {
  if (g_synapse_s <= 0) throw std::invalid_argument("readout: synapse conductance must be positive");
  return circuit.source_v * (series(circuit.reference_conductance_s, circuit.sense_conductance_s) -
                             series(g_synapse_s, circuit.sense_conductance_s));
}

double decode_element_direct(double g_synapse_s, const AbConstants& ab,
                             const ReadoutCircuit& circuit) {
  if (ab.slope_s_per_m <= 0) throw std::invalid_argument("readout: degenerate conductance slope");
  double x = (ab.intercept_s - g_synapse_s) / ab.slope_s_per_m;
  return circuit.decode_scale * x;
}

double decode_element_sensed(double g_synapse_s, const AbConstants& ab,
                             const ReadoutCircuit& circuit) {
  if (ab.slope_s_per_m <= 0) throw std::invalid_argument("readout: degenerate conductance slope");
  double i = sense_current(g_synapse_s, circuit);
  // Infinite-load inversion: I ~= Vs * (G_ref - G_syn). The finite load makes
  // this an underestimate by roughly G/G_load, the price of a real sense stage.
  double g_est = circuit.reference_conductance_s - i / circuit.source_v;
  double x = (ab.intercept_s - g_est) / ab.slope_s_per_m;
  return circuit.decode_scale * x;
}

NonvolatilityReport nonvolatility_check(const DwSynapse& synapse,
                                        const ReadoutCircuit& circuit) {
  const AbConstants& ab = synapse.constants();
  double g = synapse.conductance_s();
  double before = decode_element_sensed(g, ab, circuit);

  // Power off: zero the source and evaluate both branch currents. The wall
  // position is untouched because nothing drives the heavy-metal line.
  ReadoutCircuit dark = circuit;
  dark.source_v = 0;
  double i_ref = dark.source_v * series(dark.reference_conductance_s, dark.sense_conductance_s);
  double i_syn = dark.source_v * series(g, dark.sense_conductance_s);
  if (i_ref != 0 || i_syn != 0) throw std::logic_error("readout: current with the source off");

  // Power on the sense source alone and decode again from the same state.
  double after = decode_element_sensed(g, ab, circuit);
  return {before, after, before == after};
}

}  // namespace spinmac
