#pragma once

#include <stdexcept>

namespace parmag {

// A parameter set violates its domain invariants (non-finite field,
// non-positive rate, negative pump strength, ...).
struct invalid_parameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An operation that needs a strictly decaying spectrum was called at a
// parameter point with a non-decaying (or marginal) mode.
struct unstable_parameters : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The dense eigensolver did not converge.
struct eigensolver_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A linear solve produced an unusable result (singular or near-singular
// system; the residual check failed).
struct singular_solve : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A ratio's denominator underflowed to zero; dividing silently would hide
// the problem.
struct zero_denominator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A bisection bracket could not be established or failed its post-search
// verification (more than one stability crossing in the searched range).
struct bracket_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed configuration input: bad syntax, unknown key, unparsable value.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A sweep axis name does not map to any model parameter.
struct unknown_axis : config_error {
  using config_error::config_error;
};

// A sweep metric name is not one of the supported diagnostics.
struct unknown_metric : config_error {
  using config_error::config_error;
};

}  // namespace parmag
