#include "spinmac/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "spinmac/constants.hpp"
#include "spinmac/rng.hpp"

namespace spinmac {

namespace {

constexpr std::uint64_t kElementStreamTag = 0xE1E3;

std::string coord(const char* name, int i, int j) {
  return std::string(name) + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

}  // namespace

IntegerMatrix IntegerMatrix::zeros(int n) {
  if (n < 1) throw std::invalid_argument("matrix dimension must be at least 1");
  IntegerMatrix m;
  m.n = n;
  m.entries.assign(static_cast<std::size_t>(n) * n, 0);
  return m;
}

void IntegerMatrix::validate() const {
  if (n < 1) throw std::invalid_argument("matrix dimension must be at least 1");
  if (entries.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("matrix entry count does not match its dimension");
}

IntegerMatrix oracle_matmul(const IntegerMatrix& a, const IntegerMatrix& b) {
  a.validate();
  b.validate();
  if (a.n != b.n) throw std::invalid_argument("oracle_matmul: dimension mismatch");
  IntegerMatrix c = IntegerMatrix::zeros(a.n);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      long long acc = 0;
      for (int m = 0; m < a.n; ++m) acc += static_cast<long long>(a.at(i, m)) * b.at(m, j);
      c.at(i, j) = static_cast<int>(acc);
    }
  return c;
}

IntegerMatrix oracle_matmul_transposed(const IntegerMatrix& a, const IntegerMatrix& b) {
  a.validate();
  b.validate();
  if (a.n != b.n) throw std::invalid_argument("oracle_matmul: dimension mismatch");
  int n = a.n;
  std::vector<long long> acc(static_cast<std::size_t>(n) * n, 0);
  // (A B)^T = B^T A^T, accumulated with the outer-product loop order.
  for (int m = 0; m < n; ++m)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        acc[static_cast<std::size_t>(j) * n + i] +=
            static_cast<long long>(b.at(m, j)) * a.at(i, m);
  IntegerMatrix c = IntegerMatrix::zeros(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c.at(i, j) = static_cast<int>(acc[static_cast<std::size_t>(j) * n + i]);
  return c;
}

EncodingScheme EncodingScheme::thermal(double temperature_k, double capacitance_f, double max_v) {
  if (temperature_k <= 0 || capacitance_f <= 0 || max_v <= 0)
    throw std::invalid_argument("encoding: temperature, capacitance and amplitude cap must be positive");
  EncodingScheme s;
  s.temperature_k = temperature_k;
  s.capacitance_f = capacitance_f;
  s.max_v = max_v;
  s.step_v = 2.0 * std::sqrt(kBoltzmann * temperature_k / capacitance_f);
  s.n_max = static_cast<int>(std::floor(max_v / s.step_v + 1e-12));
  s.n_min = 1;
  s.validate();
  return s;
}

double EncodingScheme::encode(int n) const {
  if (n < 0 || n > n_max)
    throw std::out_of_range("encode: integer " + std::to_string(n) + " outside [0, " +
                            std::to_string(n_max) + "]");
  return n * step_v;
}

void EncodingScheme::validate() const {
  if (temperature_k <= 0 || capacitance_f <= 0)
    throw std::invalid_argument("encoding: temperature and capacitance must be positive");
  double floor_v = 2.0 * std::sqrt(kBoltzmann * temperature_k / capacitance_f);
  if (step_v < floor_v * (1 - 1e-9))
    throw std::invalid_argument("encoding: step below the thermal-noise floor 2*sqrt(kT/C)");
  if (n_max < 1) throw std::invalid_argument("encoding: need at least one representable level");
  if (n_max * step_v > max_v * (1 + 1e-9))
    throw std::invalid_argument("encoding: top level exceeds the amplitude cap");
  if (n_min < 0 || n_min > n_max) throw std::invalid_argument("encoding: bad integer range");
}

double MacUnit::full_scale_dx_m(const EncodingScheme& scheme) const {
  double i_max = scheme.max_v / multiplier.mtj.parallel_ohm;
  double width_scale = timing.width_s / mobility.calibration_pulse_s;
  return mobility.mean_dx(strip.current_density(i_max)) * width_scale;
}

int MacUnit::max_dimension(const EncodingScheme& scheme) const {
  double dx = full_scale_dx_m(scheme);
  if (dx <= 0) throw std::logic_error("mac unit: zero full-scale displacement");
  return static_cast<int>(std::floor(synapse.length_m() / dx + 1e-9));
}

void MacUnit::validate(const EncodingScheme& scheme) const {
  multiplier.validate();
  strip.validate();
  mobility.validate();
  timing.validate();
  readout.validate();
  scheme.validate();
  if (max_dimension(scheme) < 1)
    throw std::invalid_argument("mac unit: synapse shorter than one full-scale displacement");
  double ref = synapse.constants().intercept_s;
  if (std::abs(readout.reference_conductance_s - ref) > 1e-9 * ref)
    throw std::invalid_argument("mac unit: readout reference is not the undisplaced synapse level");
}

double unit_product_dx_m(const MacUnit& unit, const EncodingScheme& scheme) {
  double v = scheme.encode(1);
  MultiplierOutput out = multiplier_output(v, v, unit.multiplier, Fidelity::ideal);
  double width_scale = unit.timing.width_s / unit.mobility.calibration_pulse_s;
  double dx = unit.mobility.mean_dx(unit.strip.current_density(std::abs(out.current_a))) * width_scale;
  if (dx <= 0) throw std::logic_error("calibration: unit product moved the wall nowhere");
  return dx;
}

void calibrate_unit(MacUnit& unit, const EncodingScheme& scheme) {
  unit.readout.reference_conductance_s = unit.synapse.constants().intercept_s;
  if (unit.readout.sense_conductance_s <
      unit.readout.min_ratio * unit.readout.reference_conductance_s)
    unit.readout.sense_conductance_s =
        unit.readout.min_ratio * unit.readout.reference_conductance_s;
  unit.readout.decode_scale = 1.0 / unit_product_dx_m(unit, scheme);
  unit.validate(scheme);
}

ElementResult compute_element(const std::vector<int>& row, const std::vector<int>& col,
                              MacUnit& unit, const EncodingScheme& scheme,
                              Fidelity fidelity, bool noise, std::mt19937_64& rng) {
  if (row.size() != col.size() || row.empty())
    throw std::invalid_argument("compute_element: row and column must have equal nonzero length");
  if (unit.synapse.position_m() != 0 || unit.synapse.saturated())
    throw std::logic_error("compute_element: unit not reset");

  ElementResult res;
  res.diag.pulse_currents_a.reserve(row.size());
  for (std::size_t m = 0; m < row.size(); ++m) {
    double v1 = scheme.encode(row[m]);
    double v2 = scheme.encode(col[m]);
    MultiplierOutput out = multiplier_output(v1, v2, unit.multiplier, fidelity);
    if (out.out_of_window) ++res.diag.out_of_window_pulses;
    unit.synapse.apply_pulse(out.current_a, unit.strip, unit.mobility, unit.timing, noise, rng);
    res.diag.pulse_currents_a.push_back(std::abs(out.current_a));
  }

  double g = unit.synapse.conductance_s();
  res.value = fidelity == Fidelity::ideal
                  ? decode_element_direct(g, unit.synapse.constants(), unit.readout)
                  : decode_element_sensed(g, unit.synapse.constants(), unit.readout);
  res.diag.saturated = unit.synapse.saturated();
  res.diag.nonvolatile = nonvolatility_check(unit.synapse, unit.readout).identical;
  unit.synapse.reset();
  return res;
}

namespace {

void check_entries(const IntegerMatrix& m, const char* name, const EncodingScheme& scheme,
                   Fidelity fidelity) {
  int lo = fidelity == Fidelity::ideal ? 0 : std::max(1, scheme.n_min);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) {
      int v = m.at(i, j);
      if (v > scheme.n_max)
        throw std::invalid_argument(coord(name, i, j) + " = " + std::to_string(v) +
                                    " above the top encodable integer " +
                                    std::to_string(scheme.n_max));
      if (v < lo)
        throw std::invalid_argument(coord(name, i, j) + " = " + std::to_string(v) +
                                    (fidelity == Fidelity::ideal
                                         ? " is negative"
                                         : " below the physical minimum 1 (zero has no pulse"
                                           " representation; use ideal fidelity)"));
    }
}

double round_ties_even(double x) { return std::nearbyint(x); }

}  // namespace

RunReport matmul(const IntegerMatrix& a, const IntegerMatrix& b, const MacUnit& prototype,
                 const EncodingScheme& scheme, Fidelity fidelity, RunMode mode,
                 bool noise, std::uint64_t seed, int threads) {
  a.validate();
  b.validate();
  if (a.n != b.n) throw std::invalid_argument("matmul: dimension mismatch");
  int n = a.n;
  int n_cap = prototype.max_dimension(scheme);
  if (n > n_cap) {
    double dx = prototype.full_scale_dx_m(scheme);
    throw std::invalid_argument(
        "matmul: N = " + std::to_string(n) + " exceeds N_max = " + std::to_string(n_cap) +
        " (a " + std::to_string(prototype.synapse.length_m() * 1e9) +
        " nm synapse holds at most floor(length / " + std::to_string(dx * 1e9) +
        " nm full-scale displacement) accumulation pulses)");
  }
  check_entries(a, "A", scheme, fidelity);
  check_entries(b, "B", scheme, fidelity);
  prototype.validate(scheme);
  if (prototype.synapse.position_m() != 0)
    throw std::logic_error("matmul: prototype unit not reset");

  RunReport rep;
  rep.n = n;
  rep.fidelity = fidelity;
  rep.mode = mode;
  rep.noise = noise;
  rep.seed = seed;
  rep.oracle = oracle_matmul(a, b);
  rep.decoded.assign(static_cast<std::size_t>(n) * n, 0.0);

  std::vector<ElementDiagnostics> diags(static_cast<std::size_t>(n) * n);
  auto run_element = [&](int i, int j, MacUnit& unit) {
    std::vector<int> row(n), col(n);
    for (int m = 0; m < n; ++m) {
      row[m] = a.at(i, m);
      col[m] = b.at(m, j);
    }
    std::mt19937_64 rng = make_stream(seed, kElementStreamTag, static_cast<std::uint64_t>(i),
                                      static_cast<std::uint64_t>(j));
    ElementResult res = compute_element(row, col, unit, scheme, fidelity, noise, rng);
    std::size_t k = static_cast<std::size_t>(i) * n + j;
    rep.decoded[k] = res.value;
    diags[k] = std::move(res.diag);
  };

  if (mode == RunMode::sequential) {
    MacUnit unit = prototype;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) run_element(i, j, unit);
  } else {
    int want = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    int total = n * n;
    int nthreads = std::clamp(want, 1, total);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back([&, t] {
        for (int k = t; k < total; k += nthreads) {
          MacUnit unit = prototype;
          run_element(k / n, k % n, unit);
        }
      });
    for (auto& th : pool) th.join();
  }

  rep.rounded = IntegerMatrix::zeros(n);
  rep.abs_error.assign(static_cast<std::size_t>(n) * n, 0.0);
  int wrong = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::size_t k = static_cast<std::size_t>(i) * n + j;
      rep.rounded.at(i, j) = static_cast<int>(round_ties_even(rep.decoded[k]));
      rep.abs_error[k] = std::abs(rep.decoded[k] - rep.oracle.at(i, j));
      rep.max_abs_error = std::max(rep.max_abs_error, rep.abs_error[k]);
      if (rep.rounded.at(i, j) != rep.oracle.at(i, j)) ++wrong;
    }
  rep.rounded_error_rate = static_cast<double>(wrong) / (static_cast<double>(n) * n);

  for (const auto& d : diags) {
    rep.saturated_elements += d.saturated ? 1 : 0;
    rep.nonvolatile_elements += d.nonvolatile ? 1 : 0;
    rep.out_of_window_pulses += d.out_of_window_pulses;
    rep.pulse_currents_a.insert(rep.pulse_currents_a.end(), d.pulse_currents_a.begin(),
                                d.pulse_currents_a.end());
  }

  CostModel model;
  model.pulse_width_s = prototype.timing.width_s;
  model.rest_s = prototype.timing.rest_s;
  model.reset_s = prototype.timing.reset_s;
  model.strip_resistance_ohm = prototype.strip.resistance_ohm();
  model.max_current_a = scheme.max_v / prototype.multiplier.mtj.parallel_ohm;
  rep.energy_j = actual_run_energy(rep.pulse_currents_a, model);
  double top = scheme.encode(scheme.n_max);
  double i_top = std::abs(multiplier_output(top, top, prototype.multiplier, fidelity).current_a);
  rep.worst_case_energy_j = static_cast<double>(rep.pulse_currents_a.size()) *
                            energy_per_mac(i_top, model.strip_resistance_ohm, model.pulse_width_s);
  rep.per_mac_latency_s = model.per_mac_latency_s();
  rep.latency_s = latency_s(n, mode, model);
  rep.device_count = device_count(n, mode);
  return rep;
}

}  // namespace spinmac
