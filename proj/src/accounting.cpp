#include "spinmac/accounting.hpp"

#include <cmath>
#include <stdexcept>

namespace spinmac {

void CostModel::validate() const {
  if (pulse_width_s <= 0) throw std::invalid_argument("cost model: pulse width must be positive");
  if (rest_s < 0 || reset_s < 0) throw std::invalid_argument("cost model: rest and reset times cannot be negative");
  if (strip_resistance_ohm <= 0) throw std::invalid_argument("cost model: strip resistance must be positive");
  if (max_current_a <= 0) throw std::invalid_argument("cost model: max current must be positive");
  if (crossbar_device_energy_j <= 0)
    throw std::invalid_argument("cost model: crossbar device energy must be positive");
}

double energy_per_mac(double current_a, double resistance_ohm, double pulse_width_s) {
  if (resistance_ohm <= 0 || pulse_width_s <= 0)
    throw std::invalid_argument("energy_per_mac: resistance and pulse width must be positive");
  return current_a * current_a * resistance_ohm * pulse_width_s;
}

double worst_case_energy(int n, const CostModel& model) {
  if (n < 1) throw std::invalid_argument("worst_case_energy: dimension must be at least 1");
  double pulses = static_cast<double>(n) * n * n;
  return pulses * energy_per_mac(model.max_current_a, model.strip_resistance_ohm, model.pulse_width_s);
}

double actual_run_energy(const std::vector<double>& pulse_currents_a, const CostModel& model) {
  double total = 0;
  for (double i : pulse_currents_a)
    total += energy_per_mac(i, model.strip_resistance_ohm, model.pulse_width_s);
  return total;
}

double latency_s(int n, RunMode mode, const CostModel& model) {
  if (n < 1) throw std::invalid_argument("latency: dimension must be at least 1");
  double nn = n;
  double mac = model.per_mac_latency_s();
  if (mode == RunMode::sequential) return nn * nn * nn * mac + nn * nn * model.reset_s;
  return nn * mac + model.reset_s;
}

long long device_count(int n, RunMode mode) {
  if (n < 1) throw std::invalid_argument("device_count: dimension must be at least 1");
  if (mode == RunMode::sequential) return 2;
  return 2LL * n * n;
}

const std::vector<std::string>& excluded_dissipation_terms() {
  static const std::vector<std::string> terms = {
      "strain-mediated rotation work in the multiplier (~1 aJ per pulse)",
      "passive readout resistors (sense current held below 1 uA)",
      "domain-wall viscous loss in the synapse layer",
  };
  return terms;
}

CrossbarComparison crossbar_compare(int n, const CostModel& model) {
  if (n < 1) throw std::invalid_argument("crossbar_compare: dimension must be at least 1");
  CrossbarComparison out;
  out.n = n;
  out.devices_here = device_count(n, RunMode::parallel_array);
  out.devices_crossbar = static_cast<long long>(n) * n * n;
  out.energy_here_j = worst_case_energy(n, model);
  out.energy_crossbar_j = model.crossbar_device_energy_j * static_cast<double>(out.devices_crossbar);
  out.breakeven_device_energy_j =
      energy_per_mac(model.max_current_a, model.strip_resistance_ohm, model.pulse_width_s);
  return out;
}

}  // namespace spinmac
