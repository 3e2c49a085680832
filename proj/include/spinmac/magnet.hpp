#pragma once

#include <optional>

namespace spinmac {

// Elliptical soft layer, axes: z = major (in plane), y = minor (in plane),
// x = out of plane (thickness).
struct SoftLayerGeometry {
  double major_axis_m = 800e-9;
  double minor_axis_m = 700e-9;
  double thickness_m = 2.2e-9;

  double volume_m3() const;       // elliptical cylinder volume
  void validate() const;          // positive dims, major >= minor >= thickness
};

struct MagnetMaterial {
  double saturation_magnetization_a_per_m = 8.5e5;
  double magnetostriction = 600e-6;   // dimensionless (ppm in config)
  double youngs_modulus_pa = 120e9;
  double gilbert_damping = 0.1;

  void validate() const;
};

struct PiezoStack {
  double d33_c_per_n = 1.5e-9;
  double thickness_m = 1e-6;

  void validate() const;
};

// Fixed bias from the hard layer, directed along -z (antiparallel rest state).
struct DipoleField {
  double magnitude_a_per_m = 1000.0 * 1.0e3 / (4.0 * 3.14159265358979323846);

  void validate() const;
};

struct DemagFactors {
  double nxx = 0;  // out of plane
  double nyy = 0;  // in-plane minor
  double nzz = 0;  // in-plane major

  void validate() const;  // each in [0,1], sum = 1 within 1e-9
};

// Demagnetizing factors of the inscribed general ellipsoid (Osborn 1945),
// evaluated with Carlson's R_D, exact for any positive axis triple. The
// flat elliptical device is approximated by the ellipsoid with the same
// extents; for the default 800x700x2.2 nm stack this lands within the
// verification band of the value back-solved from the transfer threshold.
DemagFactors compute_demag_factors(const SoftLayerGeometry& geom);

struct DeviceParams {
  SoftLayerGeometry geometry;
  MagnetMaterial material;
  PiezoStack piezo;
  DipoleField dipole;
  DemagFactors demag;
  double temperature_k = 300.0;

  void validate() const;
};

// In-plane stress transferred by the piezoelectric: sigma = Y d33 V_G / t_pz.
// Negative gate voltage -> compressive stress along the major axis.
double stress_from_gate(double gate_v, const MagnetMaterial& mat, const PiezoStack& pz);

// Single-domain energy of the soft layer at in-plane angle theta from +z,
// including shape anisotropy, stress anisotropy, and the dipole bias. Joules.
double inplane_energy(double theta_rad, double gate_v, const DeviceParams& dev);

// Same model for a free 3-D magnetization direction (used by the dynamics).
struct Vec3;
double energy_3d(const Vec3& m, double gate_v, const DeviceParams& dev);

// Closed-form constants of the steady-state solution
//   cos(theta_ss) = threshold_v / (V_G - offset_v)
// threshold_v ("Gamma") is the dipole/magnetoelastic voltage scale, offset_v
// ("gamma") the shape-anisotropy offset; both in volts.
struct LandscapeConstants {
  double threshold_v = 0;
  double offset_v = 0;
};

LandscapeConstants landscape_constants(const DeviceParams& dev);

struct SteadyAngle {
  double theta_rad;
  bool collinear;  // true when the state stays at 180 deg (no tilted minimum)
};

// Analytic steady state. A tilted energy minimum exists only on the active
// branch V_G - offset <= -threshold (compressive stress deep enough); on the
// opposite branch the stationary point is a maximum, so the rest state wins.
SteadyAngle steady_angle_analytic(double gate_v, const LandscapeConstants& lc);

}  // namespace spinmac
