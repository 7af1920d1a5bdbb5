#pragma once

// Fixed-step RK4 integration of the linear drive equation
//   dX/dt = -i H X + Omega f,   X(0) = 0,
// used as an independent cross-check of the direct steady-state solve.

#include <cmath>

#include "parmag/model.hpp"

namespace parmag::testing {

template <typename Scalar>
complex_vector<Scalar> integrate_linear(const EffectiveMatrix<Scalar>& m,
                                        const DriveVector<Scalar>& f,
                                        Scalar omega, Scalar t_final,
                                        Scalar step_scale = Scalar(2e-3)) {
  const complex_matrix<Scalar> a =
      std::complex<Scalar>(0, -1) * m.entries;
  const complex_vector<Scalar> b = omega * f.entries;
  // Step small relative to the fastest scale in the drift matrix.
  const Scalar a_norm = a.cwiseAbs().colwise().sum().maxCoeff();
  const Scalar h = step_scale / std::max(a_norm, Scalar(1));
  const auto steps = static_cast<long long>(std::ceil(t_final / h));
  const Scalar dt = t_final / static_cast<Scalar>(steps);

  complex_vector<Scalar> x = complex_vector<Scalar>::Zero(m.dim);
  complex_vector<Scalar> k1(m.dim), k2(m.dim), k3(m.dim), k4(m.dim), xt(m.dim);
  for (long long s = 0; s < steps; ++s) {
    k1.noalias() = a * x;
    k1 += b;
    xt = x + (dt / 2) * k1;
    k2.noalias() = a * xt;
    k2 += b;
    xt = x + (dt / 2) * k2;
    k3.noalias() = a * xt;
    k3 += b;
    xt = x + dt * k3;
    k4.noalias() = a * xt;
    k4 += b;
    x += (dt / 6) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
  }
  return x;
}

}  // namespace parmag::testing
