#include "spinmac/magnet.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_ellint.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spinmac/constants.hpp"
#include "spinmac/vec3.hpp"

namespace spinmac {

namespace {
void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}
}  // namespace

double SoftLayerGeometry::volume_m3() const {
  return std::numbers::pi / 4.0 * major_axis_m * minor_axis_m * thickness_m;
}

void SoftLayerGeometry::validate() const {
  require(major_axis_m > 0 && minor_axis_m > 0 && thickness_m > 0,
          "soft layer dimensions must be positive");
  require(major_axis_m >= minor_axis_m && minor_axis_m >= thickness_m,
          "soft layer expects major >= minor >= thickness");
}

void MagnetMaterial::validate() const {
  require(saturation_magnetization_a_per_m > 0, "Ms must be positive");
  require(youngs_modulus_pa > 0, "Young's modulus must be positive");
  require(gilbert_damping > 0, "Gilbert damping must be positive");
}

void PiezoStack::validate() const {
  require(thickness_m > 0, "piezo thickness must be positive");
}

void DipoleField::validate() const {
  require(magnitude_a_per_m >= 0, "dipole field magnitude cannot be negative");
}

void DemagFactors::validate() const {
  for (double n : {nxx, nyy, nzz})
    require(n >= 0.0 && n <= 1.0, "demag factor out of [0,1]");
  require(std::abs(nxx + nyy + nzz - 1.0) < 1e-9, "demag factors must sum to 1");
}

DemagFactors compute_demag_factors(const SoftLayerGeometry& geom) {
  require(geom.major_axis_m > 0 && geom.minor_axis_m > 0 && geom.thickness_m > 0,
          "degenerate geometry: zero or negative dimension");
  gsl_set_error_handler_off();

  // semi-axes: az along major, ay along minor, ax along thickness
  const double az = geom.major_axis_m / 2.0;
  const double ay = geom.minor_axis_m / 2.0;
  const double ax = geom.thickness_m / 2.0;

  // N_i = (ax ay az / 3) R_D over the other two squared semi-axes.
  // The R_D cyclic identity makes the three factors sum to exactly 1.
  auto factor = [&](double ai, double aj, double ak) {
    gsl_sf_result r;
    int status = gsl_sf_ellint_RD_e(aj * aj, ak * ak, ai * ai, GSL_PREC_DOUBLE, &r);
    if (status != GSL_SUCCESS) throw std::runtime_error("elliptic integral failed");
    return ax * ay * az / 3.0 * r.val;
  };

  DemagFactors d;
  d.nxx = factor(ax, ay, az);
  d.nyy = factor(ay, az, ax);
  d.nzz = factor(az, ax, ay);
  return d;
}

void DeviceParams::validate() const {
  geometry.validate();
  material.validate();
  piezo.validate();
  dipole.validate();
  demag.validate();
  require(temperature_k >= 0, "temperature cannot be negative");
}

double stress_from_gate(double gate_v, const MagnetMaterial& mat, const PiezoStack& pz) {
  return mat.youngs_modulus_pa * pz.d33_c_per_n * gate_v / pz.thickness_m;
}

namespace {

// coefficients of E = a_sin2 sin^2(theta) + c_dip cos(theta) + const
struct InplaneCoeffs {
  double a_sin2;  // shape + stress anisotropy, J
  double c_dip;   // dipole coupling mu0 Ms Omega H_d, J
  double c_const;
};

InplaneCoeffs inplane_coeffs(double gate_v, const DeviceParams& dev) {
  const double omega = dev.geometry.volume_m3();
  const double ms = dev.material.saturation_magnetization_a_per_m;
  const double sigma = stress_from_gate(gate_v, dev.material, dev.piezo);
  const double me = 1.5 * dev.material.magnetostriction * sigma * omega;

  InplaneCoeffs c;
  c.a_sin2 = kMu0 / 2.0 * ms * ms * omega * (dev.demag.nyy - dev.demag.nzz) + me;
  c.c_dip = kMu0 * ms * omega * dev.dipole.magnitude_a_per_m;
  c.c_const = kMu0 / 2.0 * ms * ms * omega * dev.demag.nzz - me;
  return c;
}

}  // namespace

double inplane_energy(double theta_rad, double gate_v, const DeviceParams& dev) {
  const InplaneCoeffs c = inplane_coeffs(gate_v, dev);
  const double s = std::sin(theta_rad);
  return c.a_sin2 * s * s + c.c_dip * std::cos(theta_rad) + c.c_const;
}

double energy_3d(const Vec3& m, double gate_v, const DeviceParams& dev) {
  const double omega = dev.geometry.volume_m3();
  const double ms = dev.material.saturation_magnetization_a_per_m;
  const double sigma = stress_from_gate(gate_v, dev.material, dev.piezo);
  const double shape = kMu0 / 2.0 * ms * ms * omega;
  return shape * (dev.demag.nxx * m.x * m.x + dev.demag.nyy * m.y * m.y +
                  dev.demag.nzz * m.z * m.z) -
         1.5 * dev.material.magnetostriction * sigma * omega * m.z * m.z +
         kMu0 * ms * omega * dev.dipole.magnitude_a_per_m * m.z;
}

LandscapeConstants landscape_constants(const DeviceParams& dev) {
  const double ms = dev.material.saturation_magnetization_a_per_m;
  const double denom = 3.0 * dev.material.magnetostriction *
                       dev.material.youngs_modulus_pa * dev.piezo.d33_c_per_n;
  require(denom != 0.0, "magnetoelastic coupling is zero; no voltage scale exists");

  LandscapeConstants lc;
  lc.threshold_v =
      kMu0 * ms * dev.dipole.magnitude_a_per_m * dev.piezo.thickness_m / denom;
  lc.offset_v = kMu0 * ms * ms * (dev.demag.nzz - dev.demag.nyy) *
                dev.piezo.thickness_m / denom;
  return lc;
}

SteadyAngle steady_angle_analytic(double gate_v, const LandscapeConstants& lc) {
  // tilted minimum requires the drive past threshold on the compressive side
  const double drive = gate_v - lc.offset_v;
  if (lc.threshold_v <= 0.0 || drive > -lc.threshold_v)
    return {std::numbers::pi, true};
  const double c = lc.threshold_v / drive;  // in [-1, 0)
  return {std::acos(c), false};
}

}  // namespace spinmac
