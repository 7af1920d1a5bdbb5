#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "parmag/errors.hpp"

namespace parmag {

template <typename Scalar>
using complex_matrix =
    Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using complex_vector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

namespace detail {

template <typename Scalar>
void check_finite(Scalar value, const char* name) {
  if (!std::isfinite(value))
    throw invalid_parameter(std::string(name) + " must be finite");
}

}  // namespace detail

// Parameters of the three-mode model: one cavity mode a coupled to two
// magnon modes m1 and m2.  All rates and detunings are expressed in units of
// a common reference rate (conventionally the cavity half-linewidth kappa).
//
// The dynamical variable is X = (a, m1, m2, a+, m1+, m2+) and the linear
// equations of motion read dX/dt = -i H X + Omega F with H the drift matrix
// from build_full_matrix() and F the unit drive pattern from
// build_drive_vector().
template <typename Scalar = double>
struct ModelParams {
  Scalar delta_c = 0;     // cavity detuning
  Scalar delta_1 = 0;     // magnon-1 detuning
  Scalar delta_2 = 0;     // magnon-2 detuning
  Scalar g1 = 0;          // cavity <-> magnon-1 coupling
  Scalar g2 = 0;          // cavity <-> magnon-2 coupling
  Scalar kappa = 1;       // cavity half-linewidth, > 0
  Scalar gamma1 = 1;      // magnon-1 half-linewidth, > 0
  Scalar gamma2 = 1;      // magnon-2 half-linewidth, > 0
  Scalar G = 0;           // parametric pump strength, >= 0
  Scalar delta_2ph = 0;   // two-photon detuning; rigid -delta*I shift of H
  Scalar omega_rabi = 1;  // coherent drive amplitude on m1, >= 0

  void validate() const {
    detail::check_finite(delta_c, "delta_c");
    detail::check_finite(delta_1, "delta_1");
    detail::check_finite(delta_2, "delta_2");
    detail::check_finite(g1, "g1");
    detail::check_finite(g2, "g2");
    detail::check_finite(kappa, "kappa");
    detail::check_finite(gamma1, "gamma1");
    detail::check_finite(gamma2, "gamma2");
    detail::check_finite(G, "G");
    detail::check_finite(delta_2ph, "delta_2ph");
    detail::check_finite(omega_rabi, "omega_rabi");
    if (!(kappa > 0)) throw invalid_parameter("kappa must be > 0");
    if (!(gamma1 > 0)) throw invalid_parameter("gamma1 must be > 0");
    if (!(gamma2 > 0)) throw invalid_parameter("gamma2 must be > 0");
    if (G < 0) throw invalid_parameter("G must be >= 0");
    if (omega_rabi < 0) throw invalid_parameter("omega_rabi must be >= 0");
  }
};

// Fully symmetric configuration: equal detunings for all three modes, equal
// couplings, and a single half-linewidth shared by the cavity and both
// magnon modes.  This is the regime where the bright/dark collective magnon
// decomposition (build_reduced_matrix) is exact.
template <typename Scalar = double>
struct SymmetricParams {
  Scalar delta = 0;       // common detuning
  Scalar g = 0;           // common cavity <-> magnon coupling
  Scalar gamma = 1;       // common half-linewidth (= kappa), > 0
  Scalar G = 0;           // parametric pump strength, >= 0
  Scalar delta_2ph = 0;   // two-photon detuning
  Scalar omega_rabi = 1;  // drive amplitude, >= 0

  [[nodiscard]] ModelParams<Scalar> expand() const {
    return ModelParams<Scalar>{delta, delta, delta, g,         g,         gamma,
                               gamma, gamma, G,     delta_2ph, omega_rabi};
  }

  void validate() const { expand().validate(); }
};

enum class BlockTag { full, reduced };

// Non-Hermitian drift matrix of the linear mode equations, together with its
// dimension and which construction produced it.
template <typename Scalar = double>
struct EffectiveMatrix {
  Eigen::Index dim = 0;
  complex_matrix<Scalar> entries;
  BlockTag block_tag = BlockTag::full;
};

// Unit drive pattern; the amplitude Omega multiplies it at the solve site.
template <typename Scalar = double>
struct DriveVector {
  Eigen::Index dim = 0;
  complex_vector<Scalar> entries;
};

// Builds the full 6x6 drift matrix over X = (a, m1, m2, a+, m1+, m2+):
//
//   H = [[H0, J], [-J, -conj(H0)]] - delta_2ph * I
//
// H0 carries (delta_c - i*kappa, delta_1 - i*gamma1, delta_2 - i*gamma2) on
// the diagonal and the beam-splitter couplings g1, g2 between the cavity and
// each magnon mode; the magnon modes do not couple to each other directly.
//
// The parametric pump G (a^2 + a+^2) links a to a+ with equation-of-motion
// coefficient 2G, i.e. J = diag(2G, 0, 0).  Under this convention the bare
// cavity (g1 = g2 = 0) loses stability at G = sqrt(delta_c^2 + kappa^2) / 2.
template <typename Scalar>
[[nodiscard]] EffectiveMatrix<Scalar> build_full_matrix(
    const ModelParams<Scalar>& p) {
  p.validate();
  using C = std::complex<Scalar>;
  complex_matrix<Scalar> h0(3, 3);
  h0 << C(p.delta_c, -p.kappa), C(p.g1), C(p.g2),
      C(p.g1), C(p.delta_1, -p.gamma1), C(0),
      C(p.g2), C(0), C(p.delta_2, -p.gamma2);
  complex_matrix<Scalar> j = complex_matrix<Scalar>::Zero(3, 3);
  j(0, 0) = C(2 * p.G);
  complex_matrix<Scalar> h(6, 6);
  h << h0, j, -j, -h0.conjugate();
  h.diagonal().array() -= C(p.delta_2ph);
  return {6, std::move(h), BlockTag::full};
}

// Builds the reduced 4x4 drift over (a, M, a+, M+), where
// M = (m1 + m2)/sqrt(2) is the bright collective magnon mode.  The dark mode
// m = (m1 - m2)/sqrt(2) decouples from the cavity and obeys
// dm/dt = -i (delta - delta_2ph - i*gamma) m + Omega/sqrt(2).
//
// Two equal couplings g combine into a single bright-mode coupling g*sqrt(2);
// the parametric block restricted to (a, a+) is unchanged, diag(2G, 0).
template <typename Scalar>
[[nodiscard]] EffectiveMatrix<Scalar> build_reduced_matrix(
    const SymmetricParams<Scalar>& p) {
  p.validate();
  using C = std::complex<Scalar>;
  const Scalar bright_g = p.g * std::sqrt(Scalar(2));
  complex_matrix<Scalar> h0(2, 2);
  h0 << C(p.delta, -p.gamma), C(bright_g),
      C(bright_g), C(p.delta, -p.gamma);
  complex_matrix<Scalar> j = complex_matrix<Scalar>::Zero(2, 2);
  j(0, 0) = C(2 * p.G);
  complex_matrix<Scalar> h(4, 4);
  h << h0, j, -j, -h0.conjugate();
  h.diagonal().array() -= C(p.delta_2ph);
  return {4, std::move(h), BlockTag::reduced};
}

// Unit drive pattern.  The coherent drive acts on m1 and its adjoint in the
// full model; after the collective transformation the bright mode M receives
// amplitude 1/sqrt(2) (the dark mode carries the complementary 1/sqrt(2),
// handled by the decoupled scalar equation).
template <typename Scalar = double>
[[nodiscard]] DriveVector<Scalar> build_drive_vector(Eigen::Index dim) {
  if (dim != 6 && dim != 4)
    throw invalid_parameter("drive vector dimension must be 6 or 4");
  complex_vector<Scalar> f = complex_vector<Scalar>::Zero(dim);
  if (dim == 6) {
    f(1) = Scalar(1);
    f(4) = Scalar(1);
  } else {
    const Scalar amp = Scalar(1) / std::sqrt(Scalar(2));
    f(1) = amp;
    f(3) = amp;
  }
  return {dim, std::move(f)};
}

}  // namespace parmag
