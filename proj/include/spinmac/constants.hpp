#pragma once

#include <numbers>

namespace spinmac {

// SI physical constants
inline constexpr double kMu0 = 4.0e-7 * std::numbers::pi;      // vacuum permeability, T m/A
inline constexpr double kBoltzmann = 1.380649e-23;             // J/K
inline constexpr double kGyromagneticRatio = 2.211e5;          // m/(A s), LLG convention

// unit conversions
inline constexpr double kOerstedToAPerM = 1.0e3 / (4.0 * std::numbers::pi);

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace spinmac
