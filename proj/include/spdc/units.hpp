#pragma once

#include <numbers>

// SI internally; nm / ps / rad per ps / degrees only at the I/O boundary.
namespace spdc::units {

inline constexpr double c = 299792458.0;  // m/s
inline constexpr double pi = std::numbers::pi;

inline constexpr double nm = 1e-9;
inline constexpr double um = 1e-6;
inline constexpr double mm = 1e-3;
inline constexpr double ps = 1e-12;
inline constexpr double fs = 1e-15;
inline constexpr double rad_per_ps = 1e12;
inline constexpr double deg = pi / 180.0;

constexpr double omega_from_wavelength(double wavelength) { return 2.0 * pi * c / wavelength; }
constexpr double wavelength_from_omega(double omega) { return 2.0 * pi * c / omega; }

}  // namespace spdc::units
