#include "fireline/report_json.hpp"

#include <json.hpp>

namespace fireline {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kSchema = "fireline-uq/1";

ordered_json config_json(const RunConfig& c) {
  ordered_json j;
  j["threshold"] = c.threshold;
  j["resolution_m"] = c.resolution_m;
  j["ece_bins"] = c.ece_bins;
  j["nll_epsilon"] = c.nll_epsilon;
  if (c.kde_bandwidth_m.has_value()) {
    j["kde_bandwidth_m"] = *c.kde_bandwidth_m;
  } else {
    j["kde_bandwidth_m"] = nullptr;
  }
  j["kde_grid"] = c.kde_grid;
  return j;
}

ordered_json centroid_json(const CentroidDistanceResult& r) {
  ordered_json j;
  j["status"] = metric_status_name(r.status);
  if (r.status == MetricStatus::ok) {
    j["meters"] = r.meters;
    j["gt_hit"] = {r.gt_hit.row, r.gt_hit.col};
    j["fp_hit"] = {r.fp_hit.row, r.fp_hit.col};
  } else {
    j["meters"] = nullptr;
  }
  return j;
}

ordered_json metric_value_json(const MetricValue& r) {
  ordered_json j;
  j["status"] = metric_status_name(r.status);
  if (r.status == MetricStatus::ok) {
    j["meters"] = r.meters;
  } else {
    j["meters"] = nullptr;
  }
  return j;
}

ordered_json hausdorff_json(const HausdorffResult& r) {
  ordered_json j;
  j["status"] = metric_status_name(r.status);
  if (r.status == MetricStatus::ok) {
    j["symmetric_m"] = r.symmetric_m;
    j["directed_gt_to_fp_m"] = r.directed_ab_m;
    j["directed_fp_to_gt_m"] = r.directed_ba_m;
  } else {
    j["symmetric_m"] = nullptr;
    j["directed_gt_to_fp_m"] = nullptr;
    j["directed_fp_to_gt_m"] = nullptr;
  }
  return j;
}

ordered_json metrics_json(const DistanceReport& r) {
  ordered_json j;
  j["centroid"] = centroid_json(r.centroid_boundary);
  j["asd"] = metric_value_json(r.asd);
  j["hausdorff"] = hausdorff_json(r.hausdorff);
  return j;
}

ordered_json calibration_json(const CalibrationReport& r) {
  ordered_json j;
  j["ece"] = r.ece;
  j["brier"] = r.brier;
  j["nll"] = r.nll;
  j["average_precision"] = r.average_precision;
  j["n_pixels"] = r.n_pixels;
  j["n_bins"] = r.n_bins;
  j["epsilon"] = r.epsilon;
  return j;
}

ordered_json metric_buffer_json(const MetricBuffer& m) {
  ordered_json j;
  j["metric"] = distance_metric_name(m.metric);
  j["available"] = m.available;
  ordered_json skipped = ordered_json::object();
  for (const auto& [status, count] : m.skipped) skipped[status] = count;
  j["skipped"] = std::move(skipped);
  j["n_samples"] = m.samples.values.size();
  j["samples_m"] = m.samples.values;
  j["sample_event_ids"] = m.samples.event_ids;
  if (!m.available) return j;

  j["kde"] = m.kde_status == KdeStatus::ok ? "ok" : "degenerate_bandwidth";
  j["bandwidth_m"] = m.curve.bandwidth_m;
  j["peak_m"] = m.peak_m;
  j["grid_spacing_m"] = m.grid_spacing_m;
  ordered_json curve;
  curve["xs_m"] = m.curve.xs;
  curve["ys"] = m.curve.ys;
  j["curve"] = std::move(curve);
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string distance_report_json(const DistanceReport& report,
                                 const RunConfig& config) {
  ordered_json j;
  j["schema"] = kSchema;
  j["kind"] = "distance_report";
  j["config"] = config_json(config);
  j["metrics"] = metrics_json(report);
  return dump(j);
}

std::string calibration_report_json(const CalibrationReport& report,
                                    const RunConfig& config) {
  ordered_json j;
  j["schema"] = kSchema;
  j["kind"] = "calibration_report";
  j["config"] = config_json(config);
  j["calibration"] = calibration_json(report);
  return dump(j);
}

std::string calibration_set_json(const CalibrationReport& pooled,
                                 const std::vector<EventCalibration>& events,
                                 const RunConfig& config) {
  ordered_json j;
  j["schema"] = kSchema;
  j["kind"] = "calibration_set_report";
  j["config"] = config_json(config);
  j["n_events"] = events.size();
  j["pooled"] = calibration_json(pooled);
  ordered_json evs = ordered_json::array();
  for (const EventCalibration& e : events) {
    ordered_json ej;
    ej["event_id"] = e.event_id;
    ej["calibration"] = calibration_json(e.report);
    evs.push_back(std::move(ej));
  }
  j["events"] = std::move(evs);
  return dump(j);
}

std::string buffer_report_json(const BufferReport& report,
                               const RunConfig& config) {
  ordered_json j;
  j["schema"] = kSchema;
  j["kind"] = "buffer_report";
  j["config"] = config_json(config);
  j["n_events"] = report.events.size();
  ordered_json metrics;
  metrics["centroid"] = metric_buffer_json(report.centroid);
  metrics["asd"] = metric_buffer_json(report.asd);
  metrics["hausdorff"] = metric_buffer_json(report.hausdorff);
  j["metrics"] = std::move(metrics);
  ordered_json evs = ordered_json::array();
  for (const EventMetrics& e : report.events) {
    ordered_json ej;
    ej["event_id"] = e.event_id;
    ej["metrics"] = metrics_json(e.report);
    evs.push_back(std::move(ej));
  }
  j["events"] = std::move(evs);
  return dump(j);
}

}  // namespace fireline
