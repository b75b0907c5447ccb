#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fireline/distance_metrics.hpp"
#include "fireline/raster_io.hpp"

namespace fireline {

enum class DistanceMetricKind { centroid, asd, hausdorff };

const char* distance_metric_name(DistanceMetricKind kind);

/// Per-event distance values for one metric, ok-status events only.
struct DistanceSamples {
  DistanceMetricKind metric = DistanceMetricKind::centroid;
  std::vector<double> values;  // meters, finite and >= 0
  std::vector<std::string> event_ids;
};

struct DensityCurve {
  std::vector<double> xs;  // meters
  std::vector<double> ys;  // density
  double bandwidth_m = 0.0;
};

enum class KdeStatus {
  ok,
  // All samples identical and no explicit bandwidth: the Silverman rule
  // collapses to zero. The curve degenerates to a single point at the
  // common value instead of failing.
  degenerate_bandwidth,
};

struct KdeResult {
  KdeStatus status = KdeStatus::ok;
  DensityCurve curve;
};

/// Silverman's rule h = 0.9 * min(sigma, IQR/1.34) * n^(-1/5) with sample
/// (n-1) standard deviation and linearly interpolated quartiles. When the
/// IQR term is zero but the spread is not, sigma alone drives the rule so
/// a few repeated quartile values cannot zero the bandwidth; returns 0
/// only when every sample is identical.
double silverman_bandwidth(const std::vector<double>& values);

/// Gaussian-kernel density over [max(0, min-3h), max+3h] on a uniform grid.
/// Requires >= 2 finite samples and grid_points >= 16. A zero bandwidth
/// (all samples equal, none given explicitly) yields the degenerate
/// single-point curve with a warning status rather than an error.
KdeResult kde(const std::vector<double>& values,
              std::optional<double> bandwidth_m, uint32_t grid_points);

/// x at the global argmax of ys; ties break toward the smaller distance.
/// Throws Error(invalid_argument) on an empty curve.
double peak_distance(const DensityCurve& curve);

struct BufferConfig {
  double threshold = 0.95;
  std::optional<double> kde_bandwidth_m;
  uint32_t kde_grid = 512;
  unsigned max_threads = 0;  // 0: hardware count, capped by FIRELINE_UQ_THREADS
};

struct EventMetrics {
  std::string event_id;
  DistanceReport report;
};

/// One metric's slice of a buffer report: the retained samples, what was
/// skipped and why, and the density peak when enough events survived.
struct MetricBuffer {
  DistanceMetricKind metric = DistanceMetricKind::centroid;
  DistanceSamples samples;
  std::map<std::string, uint64_t> skipped;  // status name -> event count
  bool available = false;                   // >= 2 ok events
  KdeStatus kde_status = KdeStatus::ok;
  DensityCurve curve;
  double peak_m = 0.0;
  double grid_spacing_m = 0.0;  // peak quantization: grid step in meters
};

struct BufferReport {
  std::vector<EventMetrics> events;  // manifest order
  MetricBuffer centroid;
  MetricBuffer asd;
  MetricBuffer hausdorff;
};

/// aggregate stack -> threshold -> distance metrics for one event.
EventMetrics evaluate_event(const std::string& event_id, const BinaryMask& gt,
                            const PredictionStack& stack, double threshold);

/// KDE + peak per metric over already-computed event reports. Events whose
/// metric status is not ok are tallied under `skipped`; a metric with fewer
/// than two ok events is marked unavailable instead of failing.
BufferReport analyze_events(std::vector<EventMetrics> events,
                            const BufferConfig& config);

/// Full pipeline over a manifest: load each event's rasters, evaluate the
/// metrics on a bounded worker pool (results land at manifest positions, so
/// output is identical for any worker count), then reduce serially.
/// Requires >= 2 events.
BufferReport buffer_report(const std::vector<ManifestEntry>& events,
                           const BufferConfig& config);

/// Worker count the pipeline would use: max_threads if nonzero else the
/// hardware count, capped by the FIRELINE_UQ_THREADS environment variable
/// and by n_jobs, never below 1.
unsigned effective_thread_count(unsigned max_threads, size_t n_jobs);

}  // namespace fireline
