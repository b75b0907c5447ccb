#include "fireline/uncertainty.hpp"

#include <algorithm>
#include <cmath>

namespace fireline {

UncertaintySummary aggregate_stack(const PredictionStack& stack) {
  stack.validate();
  const GridGeometry& g = stack.geometry;
  const std::size_t n = stack.members.size();

  UncertaintySummary out;
  out.mean = ProbabilityMap(g);
  out.variance = ProbabilityMap(g);
  out.std = ProbabilityMap(g);
  out.n_samples = n;

  std::vector<double> values(n);
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    for (std::size_t m = 0; m < n; ++m) values[m] = stack.members[m].cells[i];
    std::sort(values.begin(), values.end());
    if (values.front() == values.back()) {
      // All members agree: mean is that value, spread exactly zero.
      out.mean.cells[i] = values.front();
      continue;
    }
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = std::clamp(sum / double(n), 0.0, 1.0);
    double sq = 0.0;
    for (double v : values) sq += (v - mean) * (v - mean);
    const double variance = std::clamp(sq / double(n), 0.0, 0.25);
    out.mean.cells[i] = mean;
    out.variance.cells[i] = variance;
    out.std.cells[i] = std::sqrt(variance);
  }
  return out;
}

PredictionStack pool_ensembles(const std::vector<PredictionStack>& stacks) {
  if (stacks.empty()) {
    throw Error(ErrorCode::invalid_argument, "no stacks to pool");
  }
  PredictionStack pooled;
  pooled.geometry = stacks.front().geometry;
  for (const auto& stack : stacks) {
    stack.validate();
    if (stack.geometry != pooled.geometry) {
      throw Error(ErrorCode::geometry_mismatch,
                  "pooled stacks must share one geometry");
    }
    pooled.members.insert(pooled.members.end(), stack.members.begin(),
                          stack.members.end());
  }
  return pooled;
}

}  // namespace fireline
