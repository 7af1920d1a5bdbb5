#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "parmag/parallel.hpp"
#include "parmag/spectrum.hpp"

namespace parmag {

inline constexpr double default_bisection_tol = 1e-6;
inline constexpr double default_g_max = 5.0;

// Critical-pump curve G_c(delta) with per-point diagnostics.  Points where
// no boundary exists in the searched range, or where the search failed,
// carry a quiet NaN in g_c and a non-empty note.
template <typename Scalar = double>
struct PhaseBoundary {
  std::vector<Scalar> delta_axis;
  std::vector<Scalar> g_c;
  std::vector<std::string> notes;
  Scalar tolerance = 0;
};

// Smallest pump strength in (0, g_max] at which the model loses stability,
// located by bisection to within +-tol.  Returns nullopt when the model is
// stable throughout [0, g_max].
//
// The search assumes a single stable->unstable crossing along G and verifies
// that assumption afterwards: the result must be stable at G_c - tol and
// unstable at G_c + tol, otherwise bracket_failure is thrown.
template <typename Scalar>
[[nodiscard]] std::optional<Scalar> critical_G(
    ModelParams<Scalar> p, Scalar g_max = Scalar(default_g_max),
    Scalar tol = Scalar(default_bisection_tol)) {
  if (!(g_max > 0) || !(tol > 0))
    throw invalid_parameter("critical_G: g_max and tol must be positive");
  p.G = 0;
  p.validate();
  auto stable_at = [&p](Scalar pump) {
    ModelParams<Scalar> q = p;
    q.G = pump;
    return is_stable(q);
  };
  if (!stable_at(0))
    throw bracket_failure("critical_G: model is already unstable at G = 0");
  if (stable_at(g_max)) return std::nullopt;
  Scalar lo = 0;
  Scalar hi = g_max;
  while (hi - lo > tol) {
    const Scalar mid = (lo + hi) / 2;
    if (mid <= lo || mid >= hi) break;  // interval no longer splittable
    (stable_at(mid) ? lo : hi) = mid;
  }
  const Scalar gc = (lo + hi) / 2;
  if (gc - tol > 0 && !stable_at(gc - tol))
    throw bracket_failure(
        "critical_G: point just below the located boundary is not stable; "
        "the single-crossing assumption failed");
  if (stable_at(gc + tol))
    throw bracket_failure(
        "critical_G: point just above the located boundary is not unstable; "
        "the single-crossing assumption failed");
  return gc;
}

// Traces G_c over a list of common-detuning samples (delta_c = delta_1 =
// delta_2 = delta, other fields from p_template).  Per-point failures are
// recorded in notes and never abort the trace.  Points are independent, so
// they may be evaluated on several workers; the output is identical for any
// worker count.
template <typename Scalar>
[[nodiscard]] PhaseBoundary<Scalar> trace_boundary(
    const std::vector<Scalar>& delta_range, const ModelParams<Scalar>& p_template,
    Scalar g_max = Scalar(default_g_max),
    Scalar tol = Scalar(default_bisection_tol), unsigned workers = 1) {
  PhaseBoundary<Scalar> boundary;
  boundary.delta_axis = delta_range;
  boundary.g_c.assign(delta_range.size(),
                      std::numeric_limits<Scalar>::quiet_NaN());
  boundary.notes.assign(delta_range.size(), {});
  boundary.tolerance = tol;
  parallel_for(delta_range.size(), workers, [&](std::size_t k) {
    ModelParams<Scalar> p = p_template;
    p.delta_c = p.delta_1 = p.delta_2 = delta_range[k];
    try {
      if (const auto gc = critical_G(p, g_max, tol))
        boundary.g_c[k] = *gc;
      else
        boundary.notes[k] = "stable throughout [0, g_max]";
    } catch (const std::exception& e) {
      boundary.notes[k] = e.what();
    }
  });
  return boundary;
}

}  // namespace parmag
