#pragma once

#include <vector>

#include "fireline/raster.hpp"

namespace fireline {

/// Per-pixel mean and epistemic spread of a prediction stack. Variance is
/// the population variance (divide by n), so a single member yields zero,
/// and is bounded by 1/4 for values in [0, 1]. std is its cellwise sqrt.
struct UncertaintySummary {
  ProbabilityMap mean;
  ProbabilityMap variance;
  ProbabilityMap std;
  std::size_t n_samples = 0;
};

/// Cellwise mean / population variance over stack members. Member values
/// are summed in sorted order per cell, so the result is exactly invariant
/// under member permutation, and identical members give exactly zero
/// variance. Final values are clamped to their mathematical ranges ([0,1]
/// and [0,1/4]) to absorb last-ulp rounding.
UncertaintySummary aggregate_stack(const PredictionStack& stack);

/// Concatenates all members of all stacks into one flat stack,
/// order-preserving (M models x T passes -> M*T members).
PredictionStack pool_ensembles(const std::vector<PredictionStack>& stacks);

}  // namespace fireline
