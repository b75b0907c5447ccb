#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fireline/buffer_analysis.hpp"
#include "fireline/calibration.hpp"
#include "fireline/distance_metrics.hpp"

namespace fireline {

/// Effective run parameters, embedded verbatim in every JSON report.
struct RunConfig {
  double threshold = 0.95;
  double resolution_m = 375.0;  // applied to headerless (csv/pgm) inputs
  uint32_t ece_bins = 10;
  double nll_epsilon = 1e-7;
  std::optional<double> kde_bandwidth_m;  // unset: Silverman's rule
  uint32_t kde_grid = 512;
};

/// All serializers emit a versioned schema tag ("fireline-uq/1"), fixed key
/// order, and shortest round-trip float formatting, so identical inputs
/// give byte-identical documents.
std::string distance_report_json(const DistanceReport& report,
                                 const RunConfig& config);

std::string calibration_report_json(const CalibrationReport& report,
                                    const RunConfig& config);

struct EventCalibration {
  std::string event_id;
  CalibrationReport report;
};

/// Manifest-mode calibration: pixels pooled across all events plus the
/// per-event breakdown.
std::string calibration_set_json(const CalibrationReport& pooled,
                                 const std::vector<EventCalibration>& events,
                                 const RunConfig& config);

/// Buffer report including per-metric density curves (so downstream
/// plotting needs nothing but the document).
std::string buffer_report_json(const BufferReport& report,
                               const RunConfig& config);

}  // namespace fireline
