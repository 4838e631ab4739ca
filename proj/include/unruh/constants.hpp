#pragma once

// Physical constants and unit conversions.
//
// Everything inside the library works in natural units (hbar = c = eps0 =
// mu0 = 1) with energies in eV: frequencies and wave numbers are eV, times
// and lengths are 1/eV, electric fields are eV^2. SI values only appear at
// the boundary, in convert() and the handful of SI-facing helpers below.

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "unruh/error.hpp"

namespace unruh {

// Frozen constant table (CODATA 2018, 10 significant digits).
struct PhysicalConstants {
  static constexpr double electron_mass_eV = 5.109989500e5;
  static constexpr double alpha_qed = 7.297352569e-3;
  static constexpr double hbar_J_s = 1.054571817e-34;
  static constexpr double hbar_eV_s = 6.582119569e-16;
  static constexpr double c_m_s = 2.99792458e8;
  static constexpr double boltzmann_J_K = 1.380649000e-23;
  static constexpr double boltzmann_eV_K = 8.617333262e-5;
  static constexpr double epsilon0_F_m = 8.854187813e-12;
  static constexpr double bohr_magneton_eV_T = 5.788381806e-5;
  static constexpr double hbar_c_eV_m = hbar_eV_s * c_m_s;

  // q = sqrt(4 pi alpha); positive magnitude of the electron charge.
  static double coupling_q() { return std::sqrt(4.0 * std::numbers::pi * alpha_qed); }
};

using PC = PhysicalConstants;

// T = hbar a / (2 pi k_B c), a in m/s^2, result in K.
inline double unruh_temperature(double acceleration_m_s2) {
  if (!(acceleration_m_s2 >= 0.0)) {
    throw DomainError("unruh_temperature: acceleration must be >= 0");
  }
  return PC::hbar_J_s * acceleration_m_s2 /
         (2.0 * std::numbers::pi * PC::boltzmann_J_K * PC::c_m_s);
}

// Schwinger critical field m^2/q in natural units (eV^2).
inline double schwinger_field() {
  return PC::electron_mass_eV * PC::electron_mass_eV / PC::coupling_q();
}

enum class Unit {
  W_per_cm2,   // laser intensity
  V_per_m,     // SI electric field
  eV,          // energy
  rad_per_s,   // angular frequency
  eV2,         // natural-unit electric field
  K,           // temperature
  m,           // SI length
  inv_eV,      // natural-unit length / time
};

inline std::string_view unit_name(Unit u) {
  switch (u) {
    case Unit::W_per_cm2: return "W/cm^2";
    case Unit::V_per_m: return "V/m";
    case Unit::eV: return "eV";
    case Unit::rad_per_s: return "rad/s";
    case Unit::eV2: return "eV^2";
    case Unit::K: return "K";
    case Unit::m: return "m";
    case Unit::inv_eV: return "1/eV";
  }
  return "?";
}

namespace detail {

// Peak field of a linearly polarized wave: E = sqrt(2 I / (eps0 c)).
inline double intensity_to_field(double w_per_cm2) {
  const double w_per_m2 = w_per_cm2 * 1.0e4;
  return std::sqrt(2.0 * w_per_m2 / (PC::epsilon0_F_m * PC::c_m_s));
}

inline double field_to_intensity(double v_per_m) {
  return 0.5 * PC::epsilon0_F_m * PC::c_m_s * v_per_m * v_per_m * 1.0e-4;
}

}  // namespace detail

// Converts between the supported unit pairs; anything else throws DomainError.
// The natural field unit follows from q E_nat = e E_SI * (hbar c).
inline double convert(double value, Unit from, Unit to) {
  if (from == to) return value;
  const double q = PC::coupling_q();
  switch (from) {
    case Unit::W_per_cm2:
      if (to == Unit::V_per_m) {
        if (value < 0.0) throw DomainError("convert: negative intensity");
        return detail::intensity_to_field(value);
      }
      break;
    case Unit::V_per_m:
      if (to == Unit::W_per_cm2) return detail::field_to_intensity(value);
      if (to == Unit::eV2) return value * PC::hbar_c_eV_m / q;
      break;
    case Unit::eV2:
      if (to == Unit::V_per_m) return value * q / PC::hbar_c_eV_m;
      break;
    case Unit::eV:
      if (to == Unit::rad_per_s) return value / PC::hbar_eV_s;
      if (to == Unit::K) return value / PC::boltzmann_eV_K;
      break;
    case Unit::rad_per_s:
      if (to == Unit::eV) return value * PC::hbar_eV_s;
      break;
    case Unit::K:
      if (to == Unit::eV) return value * PC::boltzmann_eV_K;
      break;
    case Unit::m:
      if (to == Unit::inv_eV) return value / PC::hbar_c_eV_m;
      break;
    case Unit::inv_eV:
      if (to == Unit::m) return value * PC::hbar_c_eV_m;
      break;
  }
  throw DomainError("convert: unsupported unit pair " + std::string(unit_name(from)) +
                    " -> " + std::string(unit_name(to)));
}

}  // namespace unruh
