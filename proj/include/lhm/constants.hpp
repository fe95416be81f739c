#pragma once

// CODATA physical constants, SI units. Pinned here so every module and the
// CLI agree bit-for-bit.

namespace lhm::constants {

inline constexpr double speed_of_light = 2.99792458e8;        // m/s
inline constexpr double vacuum_permittivity = 8.8541878128e-12; // F/m
inline constexpr double vacuum_permeability = 1.25663706212e-6; // H/m
inline constexpr double hbar = 1.054571817e-34;               // J*s

} // namespace lhm::constants
