#pragma once

#include <limits>

#include "parmag/response.hpp"

namespace parmag {

// Thermal occupancies of the three input baths.  Vacuum by default; the
// corresponding damping rates (2*kappa, 2*gamma1, 2*gamma2) come from the
// model parameters.
template <typename Scalar = double>
struct NoiseSpec {
  Scalar n_th_cavity = 0;
  Scalar n_th_m1 = 0;
  Scalar n_th_m2 = 0;

  void validate() const {
    detail::check_finite(n_th_cavity, "n_th_cavity");
    detail::check_finite(n_th_m1, "n_th_m1");
    detail::check_finite(n_th_m2, "n_th_m2");
    if (n_th_cavity < 0 || n_th_m1 < 0 || n_th_m2 < 0)
      throw invalid_parameter("thermal occupancies must be >= 0");
  }
};

// Diffusion matrix for normal-ordered second moments with delta-correlated
// inputs.  Nonzero entries (0-based indices in the (a, m1, m2, a+, m1+, m2+)
// ordering):
//
//   entry            value             source
//   (0,0), (3,3)     2*kappa*n_c       cavity thermal input
//   (1,1), (4,4)     2*gamma1*n_1      magnon-1 thermal input
//   (2,2), (5,5)     2*gamma2*n_2      magnon-2 thermal input
//   (0,3)            -2i*G             parametric pair creation
//   (3,0)            +2i*G             (adjoint entry)
//
// The parametric entries survive at zero temperature: the pump populates the
// cavity by pair creation even when every bath is in vacuum.
template <typename Scalar>
[[nodiscard]] complex_matrix<Scalar> diffusion_matrix(
    const ModelParams<Scalar>& p, const NoiseSpec<Scalar>& n) {
  using C = std::complex<Scalar>;
  complex_matrix<Scalar> d = complex_matrix<Scalar>::Zero(6, 6);
  d(0, 0) = d(3, 3) = C(2 * p.kappa * n.n_th_cavity);
  d(1, 1) = d(4, 4) = C(2 * p.gamma1 * n.n_th_m1);
  d(2, 2) = d(5, 5) = C(2 * p.gamma2 * n.n_th_m2);
  d(0, 3) = C(0, -2 * p.G);
  d(3, 0) = C(0, 2 * p.G);
  return d;
}

// Steady-state normal-ordered second moments and the derived size of the
// quantum correction to the spin current.
template <typename Scalar = double>
struct CovarianceResult {
  complex_matrix<Scalar> second_moments;  // 6x6 Hermitian matrix N
  Scalar quantum_m2_occupancy = 0;        // <dm2+ dm2> = N(5,5)
  Scalar ratio_to_semiclassical = 0;      // occupancy / |<m2>|^2
};

// Covariance form whose positive semidefiniteness expresses physicality of
// normal-ordered moments: N plus one unit of vacuum on the annihilation
// diagonal.
template <typename Scalar>
[[nodiscard]] complex_matrix<Scalar> physical_covariance(
    const complex_matrix<Scalar>& second_moments) {
  complex_matrix<Scalar> v = second_moments;
  for (Eigen::Index k = 0; k < 3; ++k) v(k, k) += Scalar(1);
  return v;
}

// Solves the steady-state covariance equation A N + N A^H + D = 0 with
// A = -i H as one dense 36x36 linear system, using column-major
// vectorization: (I (x) A + conj(A) (x) I) vec(N) = -vec(D).
//
// The fluctuation moments are independent of the coherent drive amplitude
// and of the two-photon detuning; only the pump and the baths feed them.
template <typename Scalar>
[[nodiscard]] CovarianceResult<Scalar> solve_lyapunov(
    const ModelParams<Scalar>& p, const NoiseSpec<Scalar>& n = {}) {
  n.validate();
  const EffectiveMatrix<Scalar> m = build_full_matrix(p);
  if (!compute_spectrum(m).stable)
    throw unstable_parameters(
        "solve_lyapunov: spectrum has a non-decaying mode");
  using C = std::complex<Scalar>;
  const complex_matrix<Scalar> a = C(0, -1) * m.entries;
  const complex_matrix<Scalar> d = diffusion_matrix(p, n);
  constexpr Eigen::Index dim = 6;
  complex_matrix<Scalar> k = complex_matrix<Scalar>::Zero(dim * dim, dim * dim);
  for (Eigen::Index bi = 0; bi < dim; ++bi) {
    k.block(bi * dim, bi * dim, dim, dim) += a;
    for (Eigen::Index bj = 0; bj < dim; ++bj)
      k.block(bi * dim, bj * dim, dim, dim).diagonal().array() +=
          std::conj(a(bi, bj));
  }
  complex_vector<Scalar> rhs(dim * dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) rhs(j * dim + i) = -d(i, j);
  Eigen::PartialPivLU<complex_matrix<Scalar>> lu(k);
  const complex_vector<Scalar> v = lu.solve(rhs);
  complex_matrix<Scalar> moments(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) moments(i, j) = v(j * dim + i);
  const Scalar dnorm = d.norm();
  const Scalar residual = (a * moments + moments * a.adjoint() + d).norm();
  if (!moments.allFinite() ||
      residual > Scalar(1e-8) * (dnorm > 0 ? dnorm : Scalar(1)))
    throw singular_solve("lyapunov solve failed: residual above tolerance");
  moments = ((moments + moments.adjoint()) / 2).eval();  // exact Hermiticity
  CovarianceResult<Scalar> r;
  r.second_moments = std::move(moments);
  r.quantum_m2_occupancy = r.second_moments(5, 5).real();
  const Scalar semiclassical = solve_steady_state(p).spin_current;
  if (semiclassical > 0)
    r.ratio_to_semiclassical = r.quantum_m2_occupancy / semiclassical;
  else
    r.ratio_to_semiclassical =
        r.quantum_m2_occupancy > 0 ? std::numeric_limits<Scalar>::infinity()
                                   : Scalar(0);
  return r;
}

// Semiclassical spin current |<m2>|^2 plus the normal-ordered fluctuation
// occupancy <dm2+ dm2>.
template <typename Scalar>
[[nodiscard]] Scalar total_spin_current(const ModelParams<Scalar>& p,
                                        const NoiseSpec<Scalar>& n = {}) {
  return solve_steady_state(p).spin_current +
         solve_lyapunov(p, n).quantum_m2_occupancy;
}

}  // namespace parmag
