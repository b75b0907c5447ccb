#include "fireline/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace fireline {

double brier(const ProbabilityMap& p, const BinaryMask& y) {
  require_same_geometry(p.geometry, y.geometry, "brier");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.cells.size(); ++i) {
    const double err = p.cells[i] - (y.cells[i] ? 1.0 : 0.0);
    sum += err * err;
  }
  return sum / double(p.cells.size());
}

double nll(const ProbabilityMap& p, const BinaryMask& y, double epsilon) {
  require_same_geometry(p.geometry, y.geometry, "nll");
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw Error(ErrorCode::invalid_argument,
                "nll epsilon must lie in (0, 0.5), got " + std::to_string(epsilon));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.cells.size(); ++i) {
    const double q = std::clamp(p.cells[i], epsilon, 1.0 - epsilon);
    sum += y.cells[i] ? -std::log(q) : -std::log(1.0 - q);
  }
  return sum / double(p.cells.size());
}

double ece(const ProbabilityMap& p, const BinaryMask& y, std::size_t n_bins) {
  require_same_geometry(p.geometry, y.geometry, "ece");
  if (n_bins < 1) {
    throw Error(ErrorCode::invalid_argument, "ece needs at least one bin");
  }
  // Confidences are gathered per bin and summed in sorted order (and the
  // accuracy numerator is an integer count), so the result is exactly
  // invariant under pixel permutations.
  std::vector<std::vector<double>> conf(n_bins);
  std::vector<std::size_t> positives(n_bins, 0);
  const double nb = double(n_bins);
  for (std::size_t i = 0; i < p.cells.size(); ++i) {
    const double v = p.cells[i];
    // Left-inclusive edges at k/n_bins; nudge an off-by-one from the float
    // product back onto the documented bin.
    std::size_t bin = std::min(std::size_t(v * nb), n_bins - 1);
    while (bin + 1 < n_bins && v >= double(bin + 1) / nb) ++bin;
    while (bin > 0 && v < double(bin) / nb) --bin;
    conf[bin].push_back(v);
    positives[bin] += y.cells[i] ? 1 : 0;
  }
  const double n = double(p.cells.size());
  double result = 0.0;
  for (std::size_t b = 0; b < n_bins; ++b) {
    if (conf[b].empty()) continue;
    std::sort(conf[b].begin(), conf[b].end());
    double conf_sum = 0.0;
    for (double v : conf[b]) conf_sum += v;
    const double count = double(conf[b].size());
    const double gap = std::abs(double(positives[b]) / count - conf_sum / count);
    result += (count / n) * gap;
  }
  return result;
}

double average_precision(const ProbabilityMap& p, const BinaryMask& y) {
  require_same_geometry(p.geometry, y.geometry, "average_precision");
  const std::size_t n = p.cells.size();
  std::size_t total_positive = 0;
  for (std::size_t i = 0; i < n; ++i) total_positive += y.cells[i] ? 1 : 0;
  if (total_positive == 0) {
    throw Error(ErrorCode::empty_mask,
                "average precision is undefined without positive labels");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t(0));
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return p.cells[a] > p.cells[b];
  });

  double ap = 0.0;
  double prev_recall = 0.0;
  std::size_t tp = 0;
  std::size_t seen = 0;
  std::size_t i = 0;
  while (i < n) {
    // All pixels sharing one score form a single threshold step.
    const double score = p.cells[order[i]];
    while (i < n && p.cells[order[i]] == score) {
      tp += y.cells[order[i]] ? 1 : 0;
      ++seen;
      ++i;
    }
    const double recall = double(tp) / double(total_positive);
    const double precision = double(tp) / double(seen);
    ap += (recall - prev_recall) * precision;
    prev_recall = recall;
  }
  return ap;
}

CalibrationReport compute_calibration_report(const ProbabilityMap& p,
                                             const BinaryMask& y,
                                             std::size_t n_bins, double epsilon) {
  CalibrationReport report;
  report.brier = brier(p, y);
  report.nll = nll(p, y, epsilon);
  report.ece = ece(p, y, n_bins);
  report.average_precision = average_precision(p, y);
  report.n_pixels = p.cells.size();
  report.n_bins = n_bins;
  report.epsilon = epsilon;
  return report;
}

}  // namespace fireline
