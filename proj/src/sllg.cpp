#include "spinmac/sllg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "spinmac/constants.hpp"
#include "spinmac/rng.hpp"

namespace spinmac {

void SolverConfig::validate() const {
  if (dt_s <= 0) throw std::invalid_argument("dt must be positive");
  if (!(horizon_s >= steady_window_s && steady_window_s > 0))
    throw std::invalid_argument("horizon must cover the steady window");
  if (trajectories < 1) throw std::invalid_argument("trajectories must be >= 1");
  if (temperature_k < 0) throw std::invalid_argument("temperature cannot be negative");
  if (sample_stride < 1) throw std::invalid_argument("sample stride must be >= 1");
}

namespace {

struct FieldCoeffs {
  double cx, cy, cz;  // diagonal anisotropy field per unit m_i, A/m
  double hd;          // dipole bias magnitude along -z, A/m
};

FieldCoeffs field_coeffs(double gate_v, const DeviceParams& dev) {
  const double ms = dev.material.saturation_magnetization_a_per_m;
  const double sigma = stress_from_gate(gate_v, dev.material, dev.piezo);
  FieldCoeffs c;
  c.cx = -ms * dev.demag.nxx;
  c.cy = -ms * dev.demag.nyy;
  c.cz = -ms * dev.demag.nzz + 3.0 * dev.material.magnetostriction * sigma / (kMu0 * ms);
  c.hd = dev.dipole.magnitude_a_per_m;
  return c;
}

inline Vec3 field_at(const FieldCoeffs& c, const Vec3& m, const Vec3& thermal) {
  return {c.cx * m.x + thermal.x, c.cy * m.y + thermal.y,
          c.cz * m.z - c.hd + thermal.z};
}

// damped precession right-hand side, dm/dt
inline Vec3 llg_rhs(const Vec3& m, const Vec3& h, double alpha) {
  const Vec3 mxh = cross(m, h);
  const Vec3 mxmxh = cross(m, mxh);
  const double pref = -kGyromagneticRatio / (1.0 + alpha * alpha);
  return pref * (mxh + alpha * mxmxh);
}

// equilibrium polar fluctuation scale around the 180 deg rest state at zero
// gate; used to thermalize the initial tilt
double rest_tilt_scale(const DeviceParams& dev) {
  if (dev.temperature_k <= 0) return 0.0;
  const double omega = dev.geometry.volume_m3();
  const double ms = dev.material.saturation_magnetization_a_per_m;
  const double a0 = kMu0 / 2.0 * ms * ms * omega * (dev.demag.nyy - dev.demag.nzz);
  const double c = kMu0 * ms * omega * dev.dipole.magnitude_a_per_m;
  const double stiffness = 2.0 * a0 + c;  // d2E/dtheta2 at 180 deg, J/rad^2
  if (stiffness <= 0) return 0.0;
  return std::sqrt(kBoltzmann * dev.temperature_k / stiffness);
}

struct WindowStats {
  // ring buffer with running sums over the last `size` theta samples
  explicit WindowStats(std::size_t size) : buf(size, 0.0) {}
  std::vector<double> buf;
  std::size_t head = 0, count = 0;
  double sum = 0, sum_sq = 0;

  void push(double v) {
    if (count == buf.size()) {
      const double old = buf[head];
      sum -= old;
      sum_sq -= old * old;
    } else {
      ++count;
    }
    buf[head] = v;
    sum += v;
    sum_sq += v * v;
    head = (head + 1) % buf.size();
  }
  bool full() const { return count == buf.size(); }
  double mean() const { return sum / double(count); }
  double stddev() const {
    const double m = mean();
    const double var = std::max(0.0, sum_sq / double(count) - m * m);
    return std::sqrt(var);
  }

  // net motion across the window: newer-half mean minus older-half mean.
  // Uncorrelated jitter averages out of each half; a wall still sliding or a
  // state still relaxing does not.
  double half_mean_drift() const {
    const std::size_t half = count / 2;
    if (half == 0) return 0.0;
    const std::size_t start = count == buf.size() ? head : 0;
    double older = 0, newer = 0;
    for (std::size_t k = 0; k < count; ++k) {
      const double v = buf[(start + k) % buf.size()];
      (k < half ? older : newer) += v;
    }
    return std::abs(newer / double(count - half) - older / double(half));
  }
};

}  // namespace

Vec3 effective_field(const Vec3& m, double gate_v, const DeviceParams& dev) {
  return field_at(field_coeffs(gate_v, dev), m, {0, 0, 0});
}

double thermal_field_std(double dt_s, double temperature_k, const DeviceParams& dev) {
  if (temperature_k <= 0) return 0.0;
  const double omega = dev.geometry.volume_m3();
  const double ms = dev.material.saturation_magnetization_a_per_m;
  const double var = 2.0 * dev.material.gilbert_damping * kBoltzmann * temperature_k /
                     (kGyromagneticRatio * kMu0 * ms * omega * dt_s);
  return std::sqrt(var);
}

Trajectory integrate(double gate_v, const DeviceParams& dev, const SolverConfig& cfg,
                     int trajectory_index) {
  cfg.validate();
  dev.validate();

  auto rng = make_stream(cfg.seed, 0x11F0u, std::uint64_t(trajectory_index));
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // start at 180 deg with a small random tilt; pure 180 is torque-free
  const double tilt_scale = std::max(rest_tilt_scale(dev), cfg.initial_tilt_rad);
  const double u_tilt =
      std::min(tilt_scale * std::sqrt(-2.0 * std::log1p(-uni(rng))), 1.0);
  const double phi0 = 2.0 * std::numbers::pi * uni(rng);
  Vec3 m{std::sin(u_tilt) * std::cos(phi0), std::sin(u_tilt) * std::sin(phi0),
         -std::cos(u_tilt)};

  const FieldCoeffs fc = field_coeffs(gate_v, dev);
  const double alpha = dev.material.gilbert_damping;
  const double dt = cfg.dt_s;
  const double h_std = thermal_field_std(dt, cfg.temperature_k, dev);
  const long steps = std::lround(cfg.horizon_s / dt);
  const std::size_t window =
      std::max<std::size_t>(1, std::size_t(std::lround(cfg.steady_window_s / dt)));

  WindowStats stats(window);
  Trajectory out;
  out.samples.reserve(std::size_t(steps / cfg.sample_stride) + 2);

  auto record = [&](long step) {
    const double theta = std::acos(std::clamp(m.z, -1.0, 1.0));
    const double phi = std::atan2(m.y, m.x);
    out.samples.push_back({double(step) * dt, theta, phi});
  };
  record(0);

  for (long step = 1; step <= steps; ++step) {
    Vec3 h_th{0, 0, 0};
    if (h_std > 0) h_th = {h_std * gauss(rng), h_std * gauss(rng), h_std * gauss(rng)};

    // Heun: the thermal field is held over the step (Stratonovich)
    const Vec3 k1 = llg_rhs(m, field_at(fc, m, h_th), alpha);
    const Vec3 mp = normalized(m + dt * k1);
    const Vec3 k2 = llg_rhs(mp, field_at(fc, mp, h_th), alpha);
    m = normalized(m + (dt / 2.0) * (k1 + k2));

    stats.push(std::acos(std::clamp(m.z, -1.0, 1.0)));
    if (step % cfg.sample_stride == 0 || step == steps) record(step);
  }

  out.steady_theta_rad = stats.mean();
  out.window_std_rad = stats.stddev();
  // settled: no net drift across the window beyond the tolerance, widened at
  // finite temperature to motion resolvable above the window's own jitter
  out.converged = stats.full() && stats.half_mean_drift() <
                                      std::max(cfg.steady_tol_rad, 2.0 * out.window_std_rad);
  return out;
}

EnsembleSteadyState steady_state_angle(double gate_v, const DeviceParams& dev,
                                       const SolverConfig& cfg) {
  cfg.validate();
  const int n = cfg.trajectories;
  std::vector<double> theta(n, 0.0);
  std::vector<char> conv(n, 0);

  SolverConfig one = cfg;
  one.sample_stride = std::max(1000, cfg.sample_stride);  // ensembles keep no detail

  int workers = cfg.threads > 0 ? cfg.threads
                                : int(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, n);

  auto run_chunk = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      Trajectory t = integrate(gate_v, dev, one, i);
      theta[i] = t.steady_theta_rad;
      conv[i] = t.converged ? 1 : 0;
    }
  };

  if (workers == 1) {
    run_chunk(0, n);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int lo = w * chunk, hi = std::min(n, lo + chunk);
      if (lo < hi) pool.emplace_back(run_chunk, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  EnsembleSteadyState es;
  es.total = n;
  double sum = 0, sum_sq = 0;
  for (int i = 0; i < n; ++i) {  // index order: independent of scheduling
    sum += theta[i];
    sum_sq += theta[i] * theta[i];
    es.converged += conv[i];
  }
  es.mean_theta_rad = sum / n;
  es.std_theta_rad = std::sqrt(std::max(0.0, sum_sq / n - es.mean_theta_rad * es.mean_theta_rad));
  return es;
}

}  // namespace spinmac
