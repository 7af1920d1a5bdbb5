#pragma once

#include <limits>
#include <vector>

#include "parmag/parallel.hpp"
#include "parmag/spectrum.hpp"

namespace parmag {

namespace detail {

// 2-norm condition number from the full SVD; infinity when the smallest
// singular value is zero to working precision.
template <typename Scalar>
[[nodiscard]] Scalar condition_2norm(const complex_matrix<Scalar>& m) {
  Eigen::JacobiSVD<complex_matrix<Scalar>> svd(m);
  const auto& sv = svd.singularValues();
  const Scalar smallest = sv(sv.size() - 1);
  if (!(smallest > 0)) return std::numeric_limits<Scalar>::infinity();
  return sv(0) / smallest;
}

// Solves i H x = rhs by partial-pivot LU and verifies the residual against
// the defining equation.
template <typename Scalar>
[[nodiscard]] complex_vector<Scalar> drift_solve(
    const complex_matrix<Scalar>& h, const complex_vector<Scalar>& rhs) {
  const complex_matrix<Scalar> a = std::complex<Scalar>(0, 1) * h;
  Eigen::PartialPivLU<complex_matrix<Scalar>> lu(a);
  complex_vector<Scalar> x = lu.solve(rhs);
  const Scalar scale = rhs.norm();
  const Scalar residual = (a * x - rhs).norm();
  if (!x.allFinite() ||
      residual > Scalar(1e-8) * (scale > 0 ? scale : Scalar(1)))
    throw singular_solve("drift solve failed: residual above tolerance");
  return x;
}

}  // namespace detail

// Steady state of the driven linear system together with the spin-current
// observable and a conditioning diagnostic of the drift matrix.
template <typename Scalar = double>
struct SteadyState {
  complex_vector<Scalar> amplitudes;  // (a, m1, m2, a+, m1+, m2+)
  Scalar spin_current = 0;            // M = |m2|^2
  Scalar condition_estimate = 0;      // 2-norm condition of the drift matrix
  ModelParams<Scalar> params_echo;
};

// Unique fixed point of dX/dt = -i H X + Omega F, obtained from the dense
// linear solve i H X = Omega F (never by explicit inversion).  Requires a
// strictly decaying spectrum.
template <typename Scalar>
[[nodiscard]] SteadyState<Scalar> solve_steady_state(const ModelParams<Scalar>& p) {
  const EffectiveMatrix<Scalar> m = build_full_matrix(p);
  if (!compute_spectrum(m).stable)
    throw unstable_parameters(
        "solve_steady_state: spectrum has a non-decaying mode");
  const DriveVector<Scalar> f = build_drive_vector<Scalar>(6);
  SteadyState<Scalar> s;
  s.amplitudes =
      detail::drift_solve(m.entries, complex_vector<Scalar>(p.omega_rabi * f.entries));
  s.spin_current = std::norm(s.amplitudes(2));
  s.condition_estimate = detail::condition_2norm(m.entries);
  s.params_echo = p;
  return s;
}

// Same steady state through the collective-mode route: 4x4 solve for
// (a, M, a+, M+) plus the decoupled dark-mode fixed points
//
//   m  = -i (Omega/sqrt(2)) / ( delta - delta_2ph - i*gamma)
//   m+ = -i (Omega/sqrt(2)) / (-delta - delta_2ph - i*gamma)
//
// then m1 = (M + m)/sqrt(2), m2 = (M - m)/sqrt(2) and likewise for the
// adjoints.  The adjoint pole is not the conjugate of the direct one: the
// rigid two-photon shift acts with the same sign on both rows, so for
// delta_2ph != 0 the steady state loses its conjugation symmetry.
//
// The dark modes always decay (Im = -gamma), so stability of the reduced
// block is equivalent to stability of the full model.
template <typename Scalar>
[[nodiscard]] SteadyState<Scalar> solve_steady_state_reduced(
    const SymmetricParams<Scalar>& sp) {
  const EffectiveMatrix<Scalar> r = build_reduced_matrix(sp);
  if (!compute_spectrum(r).stable)
    throw unstable_parameters(
        "solve_steady_state_reduced: spectrum has a non-decaying mode");
  const DriveVector<Scalar> f = build_drive_vector<Scalar>(4);
  const complex_vector<Scalar> xr =
      detail::drift_solve(r.entries, complex_vector<Scalar>(sp.omega_rabi * f.entries));
  using C = std::complex<Scalar>;
  const Scalar root2 = std::sqrt(Scalar(2));
  const C amp(0, -sp.omega_rabi / root2);
  const C dark = amp / C(sp.delta - sp.delta_2ph, -sp.gamma);
  const C dark_dag = amp / C(-sp.delta - sp.delta_2ph, -sp.gamma);
  SteadyState<Scalar> s;
  s.amplitudes.resize(6);
  s.amplitudes(0) = xr(0);
  s.amplitudes(1) = (xr(1) + dark) / root2;
  s.amplitudes(2) = (xr(1) - dark) / root2;
  s.amplitudes(3) = xr(2);
  s.amplitudes(4) = (xr(3) + dark_dag) / root2;
  s.amplitudes(5) = (xr(3) - dark_dag) / root2;
  s.spin_current = std::norm(s.amplitudes(2));
  s.condition_estimate = detail::condition_2norm(r.entries);
  s.params_echo = sp.expand();
  return s;
}

// Spin current of the second magnon mode, M = |m2|^2, at the steady state.
template <typename Scalar>
[[nodiscard]] Scalar spin_current(const ModelParams<Scalar>& p) {
  return solve_steady_state(p).spin_current;
}

template <typename Scalar = double>
struct EnhancementResult {
  Scalar f_value = 0;      // F = m_with_G / m_without_G
  Scalar m_with_G = 0;     // spin current at the given pump strength
  Scalar m_without_G = 0;  // spin current with the pump off
};

// Enhancement factor F of the spin current due to the parametric pump.
// Both the given point and its pump-off reference must be stable, and the
// reference current must not underflow to zero.
template <typename Scalar>
[[nodiscard]] EnhancementResult<Scalar> enhancement_factor(
    const ModelParams<Scalar>& p) {
  ModelParams<Scalar> reference = p;
  reference.G = 0;
  EnhancementResult<Scalar> r;
  r.m_with_G = spin_current(p);
  r.m_without_G = spin_current(reference);
  if (!(r.m_without_G >= std::numeric_limits<Scalar>::min()))
    throw zero_denominator(
        "enhancement_factor: pump-off spin current underflowed to zero");
  r.f_value = r.m_with_G / r.m_without_G;
  return r;
}

// One point of an enhancement curve.  Points that are unstable (or fail for
// any other reason) are flagged and carry NaN, never interpolated.
template <typename Scalar = double>
struct EnhancementPoint {
  Scalar g_pump = 0;
  Scalar f_value = std::numeric_limits<Scalar>::quiet_NaN();
  bool stable = false;
};

// F evaluated over a list of pump strengths, template parameters otherwise.
template <typename Scalar>
[[nodiscard]] std::vector<EnhancementPoint<Scalar>> enhancement_curve(
    const ModelParams<Scalar>& p_template, const std::vector<Scalar>& g_values,
    unsigned workers = 1) {
  std::vector<EnhancementPoint<Scalar>> points(g_values.size());
  parallel_for(g_values.size(), workers, [&](std::size_t k) {
    points[k].g_pump = g_values[k];
    ModelParams<Scalar> p = p_template;
    p.G = g_values[k];
    try {
      points[k].f_value = enhancement_factor(p).f_value;
      points[k].stable = true;
    } catch (const std::exception&) {
      // flagged point: stable = false, f_value = NaN
    }
  });
  return points;
}

}  // namespace parmag
