#include "fireline/distance_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fireline {
namespace {

double pixel_distance(const Pixel& a, const Pixel& b) {
  const int64_t dr = int64_t(a.row) - b.row;
  const int64_t dc = int64_t(a.col) - b.col;
  return std::sqrt(double(dr * dr + dc * dc));
}

// Mean of the distance-transform values at the given pixels, accumulated in
// ascending order for an enumeration-order-independent result.
double mean_field_at(const DistanceField& field, const std::vector<Pixel>& at) {
  std::vector<double> values;
  values.reserve(at.size());
  for (const Pixel& p : at) {
    values.push_back(field.at(uint32_t(p.row), uint32_t(p.col)));
  }
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / double(values.size());
}

double max_field_at(const DistanceField& field, const std::vector<Pixel>& at) {
  double best = 0.0;
  for (const Pixel& p : at) {
    best = std::max(best, field.at(uint32_t(p.row), uint32_t(p.col)));
  }
  return best;
}

}  // namespace

const char* metric_status_name(MetricStatus status) {
  switch (status) {
    case MetricStatus::ok: return "ok";
    case MetricStatus::no_false_positives: return "no_false_positives";
    case MetricStatus::empty_gt: return "empty_gt";
    case MetricStatus::no_intersection: return "no_intersection";
    case MetricStatus::empty_boundary: return "empty_boundary";
  }
  return "unknown";
}

CentroidDistanceResult centroid_boundary_distance(const BinaryMask& gt,
                                                  const BinaryMask& pred) {
  require_same_geometry(gt.geometry, pred.geometry, "centroid_boundary_distance");
  CentroidDistanceResult result;
  if (!gt.any()) {
    result.status = MetricStatus::empty_gt;
    return result;
  }
  const BinaryMask fp = false_positive_mask(pred, gt);
  if (!fp.any()) {
    result.status = MetricStatus::no_false_positives;
    return result;
  }

  const PixelPoint c_gt = centroid(gt);
  const PixelPoint c_fp = centroid(fp);
  const std::vector<Pixel> axis = trace_line(c_gt, c_fp, gt.geometry);
  const BinaryMask gt_boundary = boundary(gt);
  const BinaryMask fp_boundary = boundary(fp);

  bool found_gt = false;
  Pixel hit_gt;
  for (const Pixel& p : axis) {
    if (gt_boundary.at(uint32_t(p.row), uint32_t(p.col))) {
      hit_gt = p;
      found_gt = true;
      break;
    }
  }
  bool found_fp = false;
  Pixel hit_fp;
  for (auto it = axis.rbegin(); it != axis.rend(); ++it) {
    if (fp_boundary.at(uint32_t(it->row), uint32_t(it->col))) {
      hit_fp = *it;
      found_fp = true;
      break;
    }
  }
  if (!found_gt || !found_fp) {
    result.status = MetricStatus::no_intersection;
    return result;
  }
  result.status = MetricStatus::ok;
  result.gt_hit = hit_gt;
  result.fp_hit = hit_fp;
  result.meters = pixel_distance(hit_gt, hit_fp) * gt.geometry.resolution_m;
  return result;
}

MetricValue average_surface_distance(const BinaryMask& a, const BinaryMask& b) {
  require_same_geometry(a.geometry, b.geometry, "average_surface_distance");
  const BinaryMask boundary_a = boundary(a);
  const BinaryMask boundary_b = boundary(b);
  if (!boundary_a.any() || !boundary_b.any()) {
    return {MetricStatus::empty_boundary, 0.0};
  }
  const std::vector<Pixel> pixels_a = true_pixels(boundary_a);
  const std::vector<Pixel> pixels_b = true_pixels(boundary_b);
  const DistanceField dt_a = distance_transform(boundary_a);
  const DistanceField dt_b = distance_transform(boundary_b);
  const double mean_ab = mean_field_at(dt_b, pixels_a);
  const double mean_ba = mean_field_at(dt_a, pixels_b);
  return {MetricStatus::ok,
          0.5 * (mean_ab + mean_ba) * a.geometry.resolution_m};
}

HausdorffResult hausdorff_distance(const BinaryMask& a, const BinaryMask& b) {
  require_same_geometry(a.geometry, b.geometry, "hausdorff_distance");
  const BinaryMask boundary_a = boundary(a);
  const BinaryMask boundary_b = boundary(b);
  HausdorffResult result;
  if (!boundary_a.any() || !boundary_b.any()) {
    result.status = MetricStatus::empty_boundary;
    return result;
  }
  const DistanceField dt_a = distance_transform(boundary_a);
  const DistanceField dt_b = distance_transform(boundary_b);
  const double h_ab = max_field_at(dt_b, true_pixels(boundary_a));
  const double h_ba = max_field_at(dt_a, true_pixels(boundary_b));
  const double s = a.geometry.resolution_m;
  result.status = MetricStatus::ok;
  result.directed_ab_m = h_ab * s;
  result.directed_ba_m = h_ba * s;
  result.symmetric_m = std::max(h_ab, h_ba) * s;
  return result;
}

double directed_hausdorff_px(const std::vector<Pixel>& from,
                             const std::vector<Pixel>& to) {
  if (from.empty() || to.empty()) {
    throw Error(ErrorCode::empty_mask,
                "directed Hausdorff needs nonempty pixel sets");
  }
  double worst = 0.0;
  for (const Pixel& p : from) {
    int64_t best = std::numeric_limits<int64_t>::max();
    for (const Pixel& q : to) {
      const int64_t dr = int64_t(p.row) - q.row;
      const int64_t dc = int64_t(p.col) - q.col;
      best = std::min(best, dr * dr + dc * dc);
    }
    worst = std::max(worst, std::sqrt(double(best)));
  }
  return worst;
}

HausdorffResult hausdorff_bruteforce(const BinaryMask& a, const BinaryMask& b) {
  require_same_geometry(a.geometry, b.geometry, "hausdorff_bruteforce");
  const std::vector<Pixel> pixels_a = boundary_pixels(a);
  const std::vector<Pixel> pixels_b = boundary_pixels(b);
  HausdorffResult result;
  if (pixels_a.empty() || pixels_b.empty()) {
    result.status = MetricStatus::empty_boundary;
    return result;
  }
  const double h_ab = directed_hausdorff_px(pixels_a, pixels_b);
  const double h_ba = directed_hausdorff_px(pixels_b, pixels_a);
  const double s = a.geometry.resolution_m;
  result.status = MetricStatus::ok;
  result.directed_ab_m = h_ab * s;
  result.directed_ba_m = h_ba * s;
  result.symmetric_m = std::max(h_ab, h_ba) * s;
  return result;
}

DistanceReport compute_distance_report(const BinaryMask& gt,
                                       const BinaryMask& pred) {
  require_same_geometry(gt.geometry, pred.geometry, "compute_distance_report");
  DistanceReport report;
  report.centroid_boundary = centroid_boundary_distance(gt, pred);

  if (!gt.any()) {
    report.asd = {MetricStatus::empty_gt, 0.0};
    report.hausdorff.status = MetricStatus::empty_gt;
    return report;
  }
  const BinaryMask fp = false_positive_mask(pred, gt);
  if (!fp.any()) {
    report.asd = {MetricStatus::no_false_positives, 0.0};
    report.hausdorff.status = MetricStatus::no_false_positives;
    return report;
  }
  report.asd = average_surface_distance(gt, fp);
  report.hausdorff = hausdorff_distance(gt, fp);
  return report;
}

}  // namespace fireline
