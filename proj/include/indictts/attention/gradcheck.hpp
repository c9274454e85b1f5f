#pragma once

#include "indictts/attention/location.hpp"

namespace indictts::attention {

struct GradCheckResult {
  double maxRelativeError = 0.0;
  std::size_t worstIndex = 0;
  Vector analytic;
  Vector numeric;
};

// |a - n| / max(|a|, |n|, 1e-3) per parameter.
double relative_error(double analytic, double numeric);

// Central differences with step eps against head_gradient. Throws
// InvalidArgument unless eps lies in [1e-7, 1e-3].
GradCheckResult attention_grad_check(const AttentionInstance& inst, double eps = 1e-5);

// Same comparison against a supplied analytic gradient (flattened).
GradCheckResult compare_gradients(const AttentionInstance& inst, const Vector& analytic, double eps = 1e-5);

// Doubles the largest-magnitude analytic entry before comparing; a working
// harness must report a large error.
GradCheckResult mutated_grad_check(const AttentionInstance& inst, double eps = 1e-5);

}  // namespace indictts::attention
