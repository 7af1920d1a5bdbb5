#pragma once

#include <cmath>
#include <numbers>

#include "parmag/errors.hpp"

namespace parmag {

// Physical constants (SI), pinned to fixed values so that conversions are
// bit-reproducible across builds.
namespace constants {
inline constexpr double mu0 = 1.25663706212e-6;      // vacuum permeability [N/A^2]
inline constexpr double hbar = 1.054571817e-34;      // reduced Planck constant [J s]
inline constexpr double c_light = 299792458.0;       // speed of light [m/s]
inline constexpr double gamma_e = 1.76085963023e11;  // electron gyromagnetic ratio [rad/(s T)]
}  // namespace constants

// Laboratory-scale description of the device.  Defaults are illustrative
// round numbers for a 10 GHz cavity loaded with two millimetre-scale
// ferrimagnetic spheres; none of them is a measured value.
template <typename Scalar = double>
struct LabParams {
  Scalar omega_c = 2 * std::numbers::pi_v<Scalar> * Scalar(1e10);  // [rad/s]
  Scalar v_c = Scalar(1e-6);     // cavity mode volume [m^3]
  Scalar n1 = Scalar(1e18);      // spin count of sample 1
  Scalar n2 = Scalar(1e18);      // spin count of sample 2
  Scalar rho1 = Scalar(4.22e27); // spin density of sample 1 [m^-3]
  Scalar d1 = Scalar(1e-3);      // diameter of sample 1 [m]
  Scalar d_p = Scalar(1e-6);     // drive power [W]
};

// Default model half-linewidth implied by the default drive power: fitted so
// that rabi_omega(defaults) / gamma = 1e5 exactly, the operating ratio of
// the default configuration.  A fitted value, not a measured one.
inline constexpr double default_gamma_lab = 1.5117149991825568e8;  // [rad/s]

// Root-mean-square vacuum magnetic field of the cavity mode,
// sqrt(mu0 * hbar * omega_c / (2 V_c)).
template <typename Scalar>
[[nodiscard]] Scalar vacuum_field(Scalar omega_c, Scalar v_c) {
  if (!std::isfinite(omega_c) || !std::isfinite(v_c) || !(omega_c > 0) ||
      !(v_c > 0))
    throw invalid_parameter("vacuum_field: omega_c and V_c must be positive");
  return std::sqrt(Scalar(constants::mu0) * Scalar(constants::hbar) * omega_c /
                   (2 * v_c));
}

// Collective magnon-photon coupling of a sphere with N_j spins,
// (sqrt(5)/2) * gamma_e * sqrt(N_j) * B_vac.
template <typename Scalar>
[[nodiscard]] Scalar coupling_g(Scalar n_j, Scalar omega_c, Scalar v_c) {
  if (!std::isfinite(n_j) || n_j < 0)
    throw invalid_parameter("coupling_g: spin count must be >= 0");
  return std::sqrt(Scalar(5)) / 2 * Scalar(constants::gamma_e) *
         std::sqrt(n_j) * vacuum_field(omega_c, v_c);
}

// Rabi frequency of the coherent magnon drive at power D_p,
// (gamma_e / 2) * sqrt(5 * mu0 * rho1 * d1 * D_p / (3 c)).
template <typename Scalar>
[[nodiscard]] Scalar rabi_omega(Scalar rho1, Scalar d1, Scalar d_p) {
  if (!std::isfinite(rho1) || !std::isfinite(d1) || !(rho1 > 0) || !(d1 > 0))
    throw invalid_parameter("rabi_omega: rho1 and d1 must be positive");
  if (!std::isfinite(d_p) || d_p < 0)
    throw invalid_parameter("rabi_omega: drive power must be >= 0");
  return Scalar(constants::gamma_e) / 2 *
         std::sqrt(5 * Scalar(constants::mu0) * rho1 * d1 * d_p /
                   (3 * Scalar(constants::c_light)));
}

}  // namespace parmag
