#include "fireline/buffer_analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>
#include <utility>

#include "fireline/uncertainty.hpp"

namespace fireline {

const char* distance_metric_name(DistanceMetricKind kind) {
  switch (kind) {
    case DistanceMetricKind::centroid: return "centroid";
    case DistanceMetricKind::asd: return "asd";
    case DistanceMetricKind::hausdorff: return "hausdorff";
  }
  return "?";
}

namespace {

// Linearly interpolated quantile of a sorted sample (the common "type 7"
// definition), p in [0, 1].
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const size_t n = sorted.size();
  double idx = p * static_cast<double>(n - 1);
  size_t lo = static_cast<size_t>(idx);
  if (lo >= n - 1) return sorted[n - 1];
  double frac = idx - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

void check_samples(const std::vector<double>& values) {
  if (values.size() < 2) {
    throw Error(ErrorCode::invalid_argument,
                "need at least 2 distance samples, got " +
                    std::to_string(values.size()));
  }
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw Error(ErrorCode::invalid_argument,
                  "distance samples must be finite and nonnegative");
    }
  }
}

}  // namespace

double silverman_bandwidth(const std::vector<double>& values) {
  check_samples(values);
  const size_t n = values.size();

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  double sigma = std::sqrt(ss / static_cast<double>(n - 1));

  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);

  double spread = std::min(sigma, iqr / 1.34);
  if (spread == 0.0) spread = sigma;  // collapsed quartiles, nonzero variance
  return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

KdeResult kde(const std::vector<double>& values,
              std::optional<double> bandwidth_m, uint32_t grid_points) {
  check_samples(values);
  if (grid_points < 16) {
    throw Error(ErrorCode::invalid_argument,
                "kde grid needs at least 16 points, got " +
                    std::to_string(grid_points));
  }
  double h;
  if (bandwidth_m.has_value()) {
    h = *bandwidth_m;
    if (!(std::isfinite(h) && h > 0.0)) {
      throw Error(ErrorCode::invalid_argument,
                  "kde bandwidth must be a positive finite number");
    }
  } else {
    h = silverman_bandwidth(values);
  }

  auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
  const double mn = *mn_it;
  const double mx = *mx_it;

  if (h == 0.0) {
    // Every sample sits at one value and no bandwidth was given: a point
    // mass. Report it as a one-point curve so the peak is still defined.
    KdeResult r;
    r.status = KdeStatus::degenerate_bandwidth;
    r.curve.xs = {mn};
    r.curve.ys = {1.0};
    r.curve.bandwidth_m = 0.0;
    return r;
  }

  const double lo = std::max(0.0, mn - 3.0 * h);
  const double hi = mx + 3.0 * h;
  const size_t g = grid_points;
  const double step = (hi - lo) / static_cast<double>(g - 1);
  const double norm =
      1.0 / (static_cast<double>(values.size()) * h * std::sqrt(2.0 * M_PI));

  KdeResult r;
  r.curve.bandwidth_m = h;
  r.curve.xs.resize(g);
  r.curve.ys.resize(g);
  for (size_t i = 0; i < g; ++i) {
    const double x = lo + static_cast<double>(i) * step;
    double sum = 0.0;
    for (double v : values) {
      const double z = (x - v) / h;
      sum += std::exp(-0.5 * z * z);
    }
    r.curve.xs[i] = x;
    r.curve.ys[i] = sum * norm;
  }
  return r;
}

double peak_distance(const DensityCurve& curve) {
  if (curve.xs.empty() || curve.xs.size() != curve.ys.size()) {
    throw Error(ErrorCode::invalid_argument, "empty density curve");
  }
  size_t best = 0;
  for (size_t i = 1; i < curve.ys.size(); ++i) {
    if (curve.ys[i] > curve.ys[best]) best = i;  // ties keep the smaller x
  }
  return curve.xs[best];
}

EventMetrics evaluate_event(const std::string& event_id, const BinaryMask& gt,
                            const PredictionStack& stack, double threshold) {
  UncertaintySummary summary = aggregate_stack(stack);
  BinaryMask pred = fireline::threshold(summary.mean, threshold);
  EventMetrics out;
  out.event_id = event_id;
  out.report = compute_distance_report(gt, pred);
  return out;
}

namespace {

struct MetricView {
  DistanceMetricKind kind;
  MetricStatus status;
  double meters;
};

MetricView view_metric(const DistanceReport& r, DistanceMetricKind kind) {
  switch (kind) {
    case DistanceMetricKind::centroid:
      return {kind, r.centroid_boundary.status, r.centroid_boundary.meters};
    case DistanceMetricKind::asd:
      return {kind, r.asd.status, r.asd.meters};
    case DistanceMetricKind::hausdorff:
      return {kind, r.hausdorff.status, r.hausdorff.symmetric_m};
  }
  return {kind, MetricStatus::ok, 0.0};
}

MetricBuffer reduce_metric(const std::vector<EventMetrics>& events,
                           DistanceMetricKind kind,
                           const BufferConfig& config) {
  MetricBuffer out;
  out.metric = kind;
  out.samples.metric = kind;
  for (const EventMetrics& e : events) {
    MetricView v = view_metric(e.report, kind);
    if (v.status == MetricStatus::ok) {
      out.samples.values.push_back(v.meters);
      out.samples.event_ids.push_back(e.event_id);
    } else {
      ++out.skipped[metric_status_name(v.status)];
    }
  }
  if (out.samples.values.size() < 2) return out;  // unavailable

  KdeResult kr = kde(out.samples.values, config.kde_bandwidth_m,
                     config.kde_grid);
  out.available = true;
  out.kde_status = kr.status;
  out.curve = std::move(kr.curve);
  out.peak_m = peak_distance(out.curve);
  out.grid_spacing_m =
      out.curve.xs.size() >= 2 ? out.curve.xs[1] - out.curve.xs[0] : 0.0;
  return out;
}

}  // namespace

BufferReport analyze_events(std::vector<EventMetrics> events,
                            const BufferConfig& config) {
  BufferReport report;
  report.centroid =
      reduce_metric(events, DistanceMetricKind::centroid, config);
  report.asd = reduce_metric(events, DistanceMetricKind::asd, config);
  report.hausdorff =
      reduce_metric(events, DistanceMetricKind::hausdorff, config);
  report.events = std::move(events);
  return report;
}

unsigned effective_thread_count(unsigned max_threads, size_t n_jobs) {
  unsigned n = max_threads != 0
                   ? max_threads
                   : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FIRELINE_UQ_THREADS")) {
    char* end = nullptr;
    unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) {
      n = static_cast<unsigned>(std::min<unsigned long>(n, cap));
    }
  }
  if (n_jobs < n) n = static_cast<unsigned>(std::max<size_t>(1, n_jobs));
  return std::max(1u, n);
}

BufferReport buffer_report(const std::vector<ManifestEntry>& events,
                           const BufferConfig& config) {
  if (events.size() < 2) {
    throw Error(ErrorCode::invalid_argument,
                "buffer analysis needs at least 2 events, got " +
                    std::to_string(events.size()));
  }

  std::vector<EventMetrics> results(events.size());
  std::vector<std::exception_ptr> failures(events.size());
  std::atomic<size_t> next{0};

  auto work = [&]() {
    for (size_t i; (i = next.fetch_add(1)) < events.size();) {
      try {
        const ManifestEntry& e = events[i];
        LoadedRaster gt_raster = load_raster(
            e.gt_path, format_from_path(e.gt_path), RasterKind::mask);
        const BinaryMask& gt = std::get<BinaryMask>(gt_raster);
        PredictionStack stack = load_stack(e.stack_path);
        results[i] = evaluate_event(e.event_id, gt, stack, config.threshold);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  const unsigned n_threads =
      effective_thread_count(config.max_threads, events.size());
  if (n_threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  for (size_t i = 0; i < failures.size(); ++i) {
    if (failures[i]) std::rethrow_exception(failures[i]);
  }
  return analyze_events(std::move(results), config);
}

}  // namespace fireline
