#pragma once

#include <algorithm>
#include <complex>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

#include "parmag/model.hpp"

namespace parmag {

// Spectra whose largest imaginary part lies within this band of zero are
// marginal and are classified unstable: a steady state is not guaranteed at
// the boundary.
inline constexpr double marginal_band = 1e-12;

// Eigenvalues of a drift matrix, sorted by (Im ascending, then Re
// ascending), with the stability verdict max Im < -marginal_band.
template <typename Scalar = double>
struct Spectrum {
  std::vector<std::complex<Scalar>> eigenvalues;
  Scalar max_im = 0;
  bool stable = false;
};

// Deterministic ordering used everywhere eigenvalues are listed or compared.
template <typename Scalar>
[[nodiscard]] bool im_re_less(const std::complex<Scalar>& a,
                              const std::complex<Scalar>& b) {
  if (a.imag() != b.imag()) return a.imag() < b.imag();
  return a.real() < b.real();
}

template <typename Scalar>
[[nodiscard]] Spectrum<Scalar> compute_spectrum(const EffectiveMatrix<Scalar>& m) {
  Eigen::ComplexEigenSolver<complex_matrix<Scalar>> solver(m.entries, false);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "eigensolver did not converge on a " << m.dim << "x" << m.dim
       << " drift matrix:\n"
       << m.entries;
    throw eigensolver_failure(os.str());
  }
  Spectrum<Scalar> s;
  s.eigenvalues.reserve(static_cast<std::size_t>(m.dim));
  for (Eigen::Index k = 0; k < m.dim; ++k)
    s.eigenvalues.push_back(solver.eigenvalues()(k));
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), im_re_less<Scalar>);
  s.max_im = s.eigenvalues.back().imag();
  s.stable = s.max_im < -Scalar(marginal_band);
  return s;
}

// Stability of the full model: every mode of the 6x6 drift matrix decays.
template <typename Scalar>
[[nodiscard]] bool is_stable(const ModelParams<Scalar>& p) {
  return compute_spectrum(build_full_matrix(p)).stable;
}

}  // namespace parmag
