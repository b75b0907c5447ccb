#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fireline {

/// Result of one randomized equivalence/property suite.
struct VerifySuite {
  std::string name;
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  double seconds = 0.0;
  bool passed() const { return cases > 0 && mismatches == 0; }
};

/// Accelerated two-pass distance transform vs the all-pairs scan, bitwise,
/// on random masks with sides in [1, max_size].
VerifySuite verify_distance_transform(uint64_t seed, std::size_t cases,
                                      uint32_t max_size);

/// Accelerated (transform-based) Hausdorff vs the pairwise min/max oracle,
/// bitwise, on random size x size mask pairs with nonempty boundaries.
VerifySuite verify_hausdorff(uint64_t seed, std::size_t cases, uint32_t size);

/// Metric laws on random mask pairs: ASD symmetry (bitwise), ASD bounded by
/// symmetric Hausdorff, linear scaling in resolution (relative error below
/// 1e-12), translation invariance (bitwise), 90-degree rotation invariance
/// of ASD/Hausdorff (bitwise).
VerifySuite verify_metric_laws(uint64_t seed, std::size_t cases);

/// The three suites at their full sizes (1000 transforms to 16x16, 500
/// Hausdorff pairs at 32x32, 200 law pairs).
std::vector<VerifySuite> verify_all(uint64_t seed);

}  // namespace fireline
