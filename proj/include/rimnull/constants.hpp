// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <numbers>

namespace rimnull {

using cdouble = std::complex<double>;

namespace constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double eta0 = 376.730313668;          // free-space impedance, ohm
inline constexpr double mu0 = eta0 / speed_of_light;   // H/m
inline constexpr cdouble j{0.0, 1.0};

}  // namespace constants

inline constexpr double deg_to_rad(double deg) { return deg * constants::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / constants::pi; }

}  // namespace rimnull
