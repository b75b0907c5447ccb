#pragma once

#include <vector>

#include "fireline/morphology.hpp"
#include "fireline/raster.hpp"

namespace fireline {

enum class MetricStatus {
  ok,
  no_false_positives,
  empty_gt,
  no_intersection,
  empty_boundary,
};

const char* metric_status_name(MetricStatus status);

/// A metric outcome: meters is meaningful only when status == ok.
struct MetricValue {
  MetricStatus status = MetricStatus::ok;
  double meters = 0.0;
};

struct HausdorffResult {
  MetricStatus status = MetricStatus::ok;
  double symmetric_m = 0.0;
  double directed_ab_m = 0.0;
  double directed_ba_m = 0.0;
};

struct CentroidDistanceResult {
  MetricStatus status = MetricStatus::ok;
  double meters = 0.0;
  Pixel gt_hit;  // first ground-truth boundary pixel along the centroid axis
  Pixel fp_hit;  // first false-positive boundary pixel from the other end
};

/// Centroid-oriented boundary distance between a ground-truth mask and a
/// predicted mask. Builds the false-positive region pred AND NOT gt, traces
/// the discrete segment between the two region centroids, and measures the
/// pixel distance between the first gt-boundary pixel met from the gt
/// centroid and the first fp-boundary pixel met from the fp centroid,
/// scaled by the pixel resolution. The walk tests the rounded centroid
/// pixel itself first, then follows the trace order.
CentroidDistanceResult centroid_boundary_distance(const BinaryMask& gt,
                                                  const BinaryMask& pred);

/// Symmetric average surface distance between the exterior boundaries of a
/// and b, in meters. Each side averages exact nearest-boundary distances
/// read from the distance transform of the opposite boundary set; per-side
/// sums run over sorted values so the result is independent of pixel
/// enumeration order. Status empty_boundary when either mask is empty or
/// raster-filling.
MetricValue average_surface_distance(const BinaryMask& a, const BinaryMask& b);

/// Hausdorff distance between the exterior boundaries of a and b, in
/// meters, with both directed components. Accelerated with the exact
/// distance transform; agrees bit-for-bit with hausdorff_bruteforce.
HausdorffResult hausdorff_distance(const BinaryMask& a, const BinaryMask& b);

/// Verification twin of hausdorff_distance: explicit pairwise min-max over
/// boundary pixel sets, no distance transform involved.
HausdorffResult hausdorff_bruteforce(const BinaryMask& a, const BinaryMask& b);

/// Directed Hausdorff over raw pixel sets (pixel units), pairwise scan.
/// Exposed so degenerate 'boundary' sets can be injected directly in tests.
double directed_hausdorff_px(const std::vector<Pixel>& from,
                             const std::vector<Pixel>& to);

/// All three spatial metrics between gt and the false-positive region of
/// pred, with per-metric statuses.
struct DistanceReport {
  CentroidDistanceResult centroid_boundary;
  MetricValue asd;
  HausdorffResult hausdorff;
};

DistanceReport compute_distance_report(const BinaryMask& gt,
                                       const BinaryMask& pred);

}  // namespace fireline
