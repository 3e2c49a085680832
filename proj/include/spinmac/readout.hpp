#pragma once

#include "spinmac/synapse.hpp"

namespace spinmac {

// Differential sense stage: the synapse branch against a fixed reference
// branch at the undisplaced conductance, both loaded by a sense conductance.
struct ReadoutCircuit {
  double source_v = 0.02;
  double reference_conductance_s = 0;  // undisplaced synapse level (intercept)
  double sense_conductance_s = 0;      // load; >= min_ratio * reference
  double decode_scale = 1.0;           // decoded value per meter of wall travel
  double min_ratio = 100.0;

  void validate() const;
};

// Difference current between the reference and synapse branches; zero for an
// undisplaced wall, growing with displacement.
double sense_current(double g_synapse_s, const ReadoutCircuit& circuit);

// Decode reads the wall position back as a value. The direct path divides the
// stored conductance exactly; the sensed path estimates the conductance from
// the measured current assuming an ideal (infinite) load, which carries the
// finite-load error of a real sense stage.
double decode_element_direct(double g_synapse_s, const AbConstants& ab,
                             const ReadoutCircuit& circuit);
double decode_element_sensed(double g_synapse_s, const AbConstants& ab,
                             const ReadoutCircuit& circuit);

struct NonvolatilityReport {
  double before;
  double after;
  bool identical;
};

// Power-cycle check: zero every source, confirm no sense current flows, then
// restore the sense source alone and re-decode. The wall position is the
// state; nothing else persists.
NonvolatilityReport nonvolatility_check(const DwSynapse& synapse,
                                        const ReadoutCircuit& circuit);

}  // namespace spinmac
