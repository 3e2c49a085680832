#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "spinmac/magnet.hpp"
#include "spinmac/vec3.hpp"

namespace spinmac {

struct SolverConfig {
  double dt_s = 1e-12;
  double horizon_s = 20e-9;
  double temperature_k = 300.0;
  int trajectories = 100;
  std::uint64_t seed = 1;
  double steady_window_s = 2e-9;      // sliding window for settling detection
  // settled when the net drift between the window's older and newer halves is
  // below this (1 deg) or below twice the window's own jitter
  double steady_tol_rad = 0.017453292519943295;
  double initial_tilt_rad = 0.008726646259971648;  // 0.5 deg Rayleigh scale floor
  int sample_stride = 1;              // trajectory recording stride
  int threads = 0;                    // 0 = hardware concurrency

  void validate() const;
};

// Deterministic field part: -(1/mu0 Ms Omega) dE/dm of the 3-D energy, A/m.
Vec3 effective_field(const Vec3& m, double gate_v, const DeviceParams& dev);

// Per-component std of the white thermal field over one step of length dt
// (Brown): sigma^2 = 2 alpha kT / (gamma mu0 Ms Omega dt). A/m.
double thermal_field_std(double dt_s, double temperature_k, const DeviceParams& dev);

struct TrajectoryPoint {
  double t_s;
  double theta_rad;
  double phi_rad;
};

struct Trajectory {
  std::vector<TrajectoryPoint> samples;
  double steady_theta_rad = 0;   // mean over the final window
  double window_std_rad = 0;     // theta std over the final window
  bool converged = false;        // no net drift across the window at the horizon
};

// Integrate one damped precession trajectory with the stochastic field
// (Heun predictor-corrector, Stratonovich; magnetization renormalized each
// stage). The initial state is 180 deg plus a small Rayleigh tilt drawn from
// the trajectory's own stream; trajectory_index selects the stream.
Trajectory integrate(double gate_v, const DeviceParams& dev, const SolverConfig& cfg,
                     int trajectory_index = 0);

struct EnsembleSteadyState {
  double mean_theta_rad = 0;
  double std_theta_rad = 0;      // std across trajectories
  int converged = 0;
  int total = 0;
};

// Ensemble steady state over cfg.trajectories independent streams; the
// reduction is index-ordered so the result is independent of thread count.
EnsembleSteadyState steady_state_angle(double gate_v, const DeviceParams& dev,
                                       const SolverConfig& cfg);

}  // namespace spinmac
