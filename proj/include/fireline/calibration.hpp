#pragma once

#include <cstddef>

#include "fireline/raster.hpp"

namespace fireline {

struct CalibrationReport {
  double ece = 0.0;
  double brier = 0.0;
  double nll = 0.0;
  double average_precision = 0.0;
  std::size_t n_pixels = 0;
  std::size_t n_bins = 0;
  double epsilon = 0.0;
};

/// Mean squared error between probabilities and binary labels.
double brier(const ProbabilityMap& p, const BinaryMask& y);

/// Mean negative log-likelihood with probabilities clamped into
/// [epsilon, 1 - epsilon]. Requires 0 < epsilon < 0.5.
double nll(const ProbabilityMap& p, const BinaryMask& y, double epsilon);

/// Expected calibration error over n_bins equal-width confidence bins.
/// Bin edges are left-inclusive, the last bin right-inclusive; empty bins
/// contribute nothing.
double ece(const ProbabilityMap& p, const BinaryMask& y, std::size_t n_bins);

/// Area under the precision-recall curve by the step-wise sum over
/// descending unique score thresholds (ties share a threshold). Throws
/// Error(empty_mask) when y has no positive label.
double average_precision(const ProbabilityMap& p, const BinaryMask& y);

CalibrationReport compute_calibration_report(const ProbabilityMap& p,
                                             const BinaryMask& y,
                                             std::size_t n_bins, double epsilon);

}  // namespace fireline
