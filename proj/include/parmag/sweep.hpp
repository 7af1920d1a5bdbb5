#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "parmag/parallel.hpp"
#include "parmag/response.hpp"
#include "parmag/version.hpp"

namespace parmag {

template <typename Scalar = double>
struct Axis {
  std::string name;
  std::vector<Scalar> values;
};

// Axis names: every ModelParams field, plus the aliases "delta" (sets all
// three detunings) and "g" (sets both couplings).
inline void validate_axis_name(const std::string& name) {
  static const char* const known[] = {
      "delta_c", "delta_1", "delta_2", "g1",        "g2",
      "kappa",   "gamma1",  "gamma2",  "G",         "delta_2ph",
      "omega_rabi", "delta", "g"};
  for (const char* k : known)
    if (name == k) return;
  throw unknown_axis("unknown sweep axis: " + name);
}

template <typename Scalar>
void apply_axis(ModelParams<Scalar>& p, const std::string& name, Scalar value) {
  if (name == "delta_c") p.delta_c = value;
  else if (name == "delta_1") p.delta_1 = value;
  else if (name == "delta_2") p.delta_2 = value;
  else if (name == "g1") p.g1 = value;
  else if (name == "g2") p.g2 = value;
  else if (name == "kappa") p.kappa = value;
  else if (name == "gamma1") p.gamma1 = value;
  else if (name == "gamma2") p.gamma2 = value;
  else if (name == "G") p.G = value;
  else if (name == "delta_2ph") p.delta_2ph = value;
  else if (name == "omega_rabi") p.omega_rabi = value;
  else if (name == "delta") p.delta_c = p.delta_1 = p.delta_2 = value;
  else if (name == "g") p.g1 = p.g2 = value;
  else throw unknown_axis("unknown sweep axis: " + name);
}

enum class Metric {
  stable,            // 1 if stable, 0 otherwise
  enhancement,       // F (needs stability at G and at G = 0)
  spin_current,      // M = |m2|^2 (needs stability)
  min_abs_im_eig,    // distance of the spectrum from marginality
  min_abs_eig,       // smallest eigenvalue magnitude
  condition_number,  // 2-norm condition of the drift matrix
};

[[nodiscard]] inline Metric parse_metric(const std::string& name) {
  if (name == "stable") return Metric::stable;
  if (name == "F") return Metric::enhancement;
  if (name == "spin_current") return Metric::spin_current;
  if (name == "min_abs_im_eig") return Metric::min_abs_im_eig;
  if (name == "min_abs_eig") return Metric::min_abs_eig;
  if (name == "condition_number") return Metric::condition_number;
  throw unknown_metric("unknown sweep metric: " + name);
}

// One scalar diagnostic at one parameter point.  Metrics that require a
// steady state yield the NaN sentinel at unstable points; any per-point
// failure or non-finite value maps to the sentinel as well.
template <typename Scalar>
[[nodiscard]] Scalar evaluate_metric(const ModelParams<Scalar>& p, Metric metric) {
  const Scalar sentinel = std::numeric_limits<Scalar>::quiet_NaN();
  try {
    Scalar value = sentinel;
    switch (metric) {
      case Metric::stable:
        value = is_stable(p) ? Scalar(1) : Scalar(0);
        break;
      case Metric::enhancement:
        value = enhancement_factor(p).f_value;
        break;
      case Metric::spin_current:
        value = spin_current(p);
        break;
      case Metric::min_abs_im_eig: {
        const auto s = compute_spectrum(build_full_matrix(p));
        Scalar best = std::numeric_limits<Scalar>::infinity();
        for (const auto& ev : s.eigenvalues)
          best = std::min(best, std::abs(ev.imag()));
        value = best;
        break;
      }
      case Metric::min_abs_eig: {
        const auto s = compute_spectrum(build_full_matrix(p));
        Scalar best = std::numeric_limits<Scalar>::infinity();
        for (const auto& ev : s.eigenvalues) best = std::min(best, std::abs(ev));
        value = best;
        break;
      }
      case Metric::condition_number:
        value = detail::condition_2norm(build_full_matrix(p).entries);
        break;
    }
    return std::isfinite(value) ? value : sentinel;
  } catch (const std::exception&) {
    return sentinel;
  }
}

// Metric values over a 1D or 2D grid, stored row-major:
// values[iy * nx + ix] (iy = 0 for 1D grids).
template <typename Scalar = double>
struct SweepGrid {
  Axis<Scalar> x_axis;
  std::optional<Axis<Scalar>> y_axis;
  std::string metric;
  std::vector<Scalar> values;
  ModelParams<Scalar> template_params;
  std::string code_version;
};

// Evaluates the named metric over the grid.  Points are independent; with
// several workers each point still lands in its own slot, so the output is
// bit-identical for any worker count.
template <typename Scalar>
[[nodiscard]] SweepGrid<Scalar> run_sweep(const ModelParams<Scalar>& p_template,
                                          const Axis<Scalar>& x,
                                          const std::optional<Axis<Scalar>>& y,
                                          const std::string& metric_name,
                                          unsigned workers = 1) {
  const Metric metric = parse_metric(metric_name);
  validate_axis_name(x.name);
  if (y) validate_axis_name(y->name);
  SweepGrid<Scalar> grid{x, y, metric_name, {}, p_template, version_string};
  const std::size_t nx = x.values.size();
  const std::size_t ny = y ? y->values.size() : 1;
  grid.values.assign(nx * ny, std::numeric_limits<Scalar>::quiet_NaN());
  parallel_for(nx * ny, workers, [&](std::size_t k) {
    ModelParams<Scalar> p = p_template;
    apply_axis(p, x.name, x.values[k % nx]);
    if (y) apply_axis(p, y->name, y->values[k / nx]);
    grid.values[k] = evaluate_metric(p, metric);
  });
  return grid;
}

inline constexpr double default_matching_radius = 1e-2;

// Four eigenvalue tracks of the reduced drift matrix continued along the
// common detuning.  Samples where two eigenvalues approach within
// matching_radius are flagged ambiguous: proximity alone no longer defines
// the continuation there.
template <typename Scalar = double>
struct EigenvalueTracks {
  std::vector<Scalar> delta_values;
  std::array<std::vector<std::complex<Scalar>>, 4> tracks;
  std::vector<std::uint8_t> ambiguous;
  Scalar matching_radius = 0;
};

// Tracks are matched between adjacent samples by the globally optimal
// assignment (all 4! pairings scored by total complex distance).  The first
// sample is ordered by the (Im, Re) spectrum sort.
template <typename Scalar>
[[nodiscard]] EigenvalueTracks<Scalar> eigenvalue_tracks(
    const SymmetricParams<Scalar>& p_template,
    const std::vector<Scalar>& delta_values,
    Scalar matching_radius = Scalar(default_matching_radius)) {
  if (!(matching_radius > 0))
    throw invalid_parameter("eigenvalue_tracks: matching radius must be > 0");
  EigenvalueTracks<Scalar> out;
  out.delta_values = delta_values;
  out.matching_radius = matching_radius;
  out.ambiguous.assign(delta_values.size(), 0);
  for (auto& track : out.tracks) track.reserve(delta_values.size());
  std::array<std::complex<Scalar>, 4> previous{};
  for (std::size_t s = 0; s < delta_values.size(); ++s) {
    SymmetricParams<Scalar> p = p_template;
    p.delta = delta_values[s];
    const auto spec = compute_spectrum(build_reduced_matrix(p));
    std::array<std::complex<Scalar>, 4> current;
    for (int k = 0; k < 4; ++k) current[k] = spec.eigenvalues[k];
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (std::abs(current[i] - current[j]) < matching_radius)
          out.ambiguous[s] = 1;
    if (s > 0) {
      std::array<int, 4> order{0, 1, 2, 3};
      std::array<int, 4> best = order;
      Scalar best_cost = std::numeric_limits<Scalar>::infinity();
      do {
        Scalar cost = 0;
        for (int k = 0; k < 4; ++k)
          cost += std::abs(current[order[k]] - previous[k]);
        if (cost < best_cost) {
          best_cost = cost;
          best = order;
        }
      } while (std::next_permutation(order.begin(), order.end()));
      std::array<std::complex<Scalar>, 4> matched;
      for (int k = 0; k < 4; ++k) matched[k] = current[best[k]];
      current = matched;
    }
    for (int k = 0; k < 4; ++k) out.tracks[k].push_back(current[k]);
    previous = current;
  }
  return out;
}

}  // namespace parmag
