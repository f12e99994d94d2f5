#pragma once

#include <numbers>

namespace rcsq::constants {

// CODATA 2018. h and k_B are exact SI definitions; hbar carries the
// rounding of h/2pi to 10 significant digits.
inline constexpr double pi = std::numbers::pi_v<double>;

/// Reduced Planck constant [J s].
inline constexpr double hbar = 1.054571817e-34;

/// Boltzmann constant [J/K] (exact).
inline constexpr double k_boltzmann = 1.380649e-23;

/// Speed of light in vacuum [m/s] (exact).
inline constexpr double c_light = 299792458.0;

}  // namespace rcsq::constants
