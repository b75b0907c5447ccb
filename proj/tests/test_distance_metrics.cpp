#include <doctest.h>

#include <cmath>
#include <string>

#include "fireline/distance_metrics.hpp"
#include "fireline/synthetic.hpp"
#include "oracles.hpp"

using namespace fireline;
using testutil::mask_from_art;

namespace {

// 10x10 burned square with its top-left at (row, col).
BinaryMask square10(const GridGeometry& g, uint32_t row, uint32_t col) {
  BinaryMask m(g);
  for (uint32_t r = row; r < row + 10; ++r) {
    for (uint32_t c = col; c < col + 10; ++c) m.set(r, c, true);
  }
  return m;
}

BinaryMask random_inset(uint64_t seed, const GridGeometry& g, double density) {
  BinaryMask m(g);
  for (uint32_t r = 3; r + 3 < g.height; ++r) {
    for (uint32_t c = 3; c + 3 < g.width; ++c) {
      if (uniform01(seed, 5, g.index(r, c)) < density) m.set(r, c, true);
    }
  }
  if (!m.any()) m.set(3, 3, true);
  return m;
}

}  // namespace

TEST_SUITE("distance_metrics") {

TEST_CASE("status names are stable report vocabulary") {
  CHECK(std::string(metric_status_name(MetricStatus::ok)) == "ok");
  CHECK(std::string(metric_status_name(MetricStatus::no_false_positives)) ==
        "no_false_positives");
  CHECK(std::string(metric_status_name(MetricStatus::empty_gt)) == "empty_gt");
  CHECK(std::string(metric_status_name(MetricStatus::no_intersection)) ==
        "no_intersection");
  CHECK(std::string(metric_status_name(MetricStatus::empty_boundary)) ==
        "empty_boundary");
}

TEST_CASE("centroid distance on the shifted square") {
  GridGeometry g{20, 30, 375.0};
  BinaryMask gt = square10(g, 3, 3);
  BinaryMask pred = square10(g, 3, 6);  // three columns to the right

  CentroidDistanceResult r = centroid_boundary_distance(gt, pred);
  REQUIRE(r.status == MetricStatus::ok);
  // Rounded centroids: gt (8,8), false-positive block cols 13..15 -> (8,14).
  // First gt-boundary pixel walking right from (8,8) is (8,13); first
  // fp-boundary pixel walking left from (8,14) is (8,12).
  CHECK(r.gt_hit == Pixel{8, 13});
  CHECK(r.fp_hit == Pixel{8, 12});
  CHECK(r.meters == 375.0);

  double oracle = testutil::horizontal_centroid_walk_oracle_m(gt, pred);
  CHECK(r.meters == oracle);
}

TEST_CASE("centroid distance agrees with the walk oracle for all shifts") {
  GridGeometry g{24, 40, 375.0};
  BinaryMask gt = square10(g, 7, 5);
  for (uint32_t k = 1; k <= 9; ++k) {
    BinaryMask pred = square10(g, 7, 5 + k);
    CentroidDistanceResult r = centroid_boundary_distance(gt, pred);
    REQUIRE(r.status == MetricStatus::ok);
    CHECK(r.meters == testutil::horizontal_centroid_walk_oracle_m(gt, pred));
  }
}

TEST_CASE("centroid distance degenerate statuses") {
  GridGeometry g{16, 16, 375.0};
  BinaryMask gt = square10(g, 3, 3);

  CentroidDistanceResult same = centroid_boundary_distance(gt, gt);
  CHECK(same.status == MetricStatus::no_false_positives);

  BinaryMask empty(g);
  BinaryMask pred = square10(g, 3, 4);
  CHECK(centroid_boundary_distance(empty, pred).status ==
        MetricStatus::empty_gt);

  // A prediction strictly inside the truth adds no false positives either.
  BinaryMask inner(g);
  for (uint32_t r = 5; r < 9; ++r) {
    for (uint32_t c = 5; c < 9; ++c) inner.set(r, c, true);
  }
  CHECK(centroid_boundary_distance(gt, inner).status ==
        MetricStatus::no_false_positives);
}

TEST_CASE("symmetric dilation ring yields no usable centroid axis") {
  // gt and its one-pixel dilation ring share the same centroid, so the
  // traced segment collapses to a single interior pixel.
  GridGeometry g{24, 24, 375.0};
  SyntheticSpec spec;
  spec.shape = SyntheticShape::disk;
  spec.row = 12;
  spec.col = 12;
  spec.size_a = 5;
  BinaryMask gt = make_mask(spec, g);
  BinaryMask pred = dilate(gt);
  CHECK(centroid_boundary_distance(gt, pred).status ==
        MetricStatus::no_intersection);
}

TEST_CASE("average surface distance against the all-pairs oracle") {
  BinaryMask a = mask_from_art({
      "........",
      ".##.....",
      ".##.....",
      "........",
      "........",
  });
  BinaryMask b = mask_from_art({
      "........",
      "........",
      "....##..",
      "....##..",
      "........",
  });
  MetricValue v = average_surface_distance(a, b);
  REQUIRE(v.status == MetricStatus::ok);
  CHECK(v.meters ==
        doctest::Approx(testutil::asd_oracle_m(a, b)).epsilon(1e-12));

  for (uint64_t seed = 200; seed < 215; ++seed) {
    GridGeometry g{14, 14, 375.0};
    BinaryMask x = random_inset(seed, g, 0.25);
    BinaryMask y = random_inset(seed ^ 0xff, g, 0.25);
    MetricValue m = average_surface_distance(x, y);
    REQUIRE(m.status == MetricStatus::ok);
    CHECK(m.meters ==
          doctest::Approx(testutil::asd_oracle_m(x, y)).epsilon(1e-12));
  }
}

TEST_CASE("average surface distance is exactly symmetric") {
  for (uint64_t seed = 230; seed < 245; ++seed) {
    GridGeometry g{15, 12, 375.0};
    BinaryMask x = random_inset(seed, g, 0.3);
    BinaryMask y = random_inset(seed ^ 0xabc, g, 0.3);
    MetricValue ab = average_surface_distance(x, y);
    MetricValue ba = average_surface_distance(y, x);
    CHECK(ab.status == ba.status);
    CHECK(ab.meters == ba.meters);  // bitwise
  }
}

TEST_CASE("identical masks have zero surface distance") {
  BinaryMask a = mask_from_art({"....", ".##.", "...."});
  MetricValue v = average_surface_distance(a, a);
  REQUIRE(v.status == MetricStatus::ok);
  CHECK(v.meters == 0.0);
}

TEST_CASE("surface distance needs a boundary on both sides") {
  GridGeometry g{4, 4, 375.0};
  BinaryMask empty(g);
  BinaryMask full(g, true);
  BinaryMask some = mask_from_art({"....", ".#..", "....", "...."});
  CHECK(average_surface_distance(empty, some).status ==
        MetricStatus::empty_boundary);
  CHECK(average_surface_distance(some, full).status ==
        MetricStatus::empty_boundary);
  CHECK(hausdorff_distance(empty, some).status == MetricStatus::empty_boundary);
}

TEST_CASE("hausdorff on a hand pair, against its pairwise twin") {
  BinaryMask a = mask_from_art({
      "........",
      ".#......",
      "........",
      "........",
  });
  BinaryMask b = mask_from_art({
      "........",
      "......#.",
      "........",
      "........",
  });
  HausdorffResult fast = hausdorff_distance(a, b);
  HausdorffResult slow = hausdorff_bruteforce(a, b);
  REQUIRE(fast.status == MetricStatus::ok);
  CHECK(fast.symmetric_m == slow.symmetric_m);
  CHECK(fast.directed_ab_m == slow.directed_ab_m);
  CHECK(fast.directed_ba_m == slow.directed_ba_m);
  // Single pixels five columns apart: boundary rings five apart too.
  CHECK(fast.symmetric_m == 5.0 * 375.0);
}

TEST_CASE("hausdorff equals the pairwise twin on random pairs") {
  for (uint64_t seed = 300; seed < 330; ++seed) {
    GridGeometry g{12, 17, 375.0};
    BinaryMask x = random_inset(seed, g, 0.2);
    BinaryMask y = random_inset(seed ^ 0x5a5a, g, 0.2);
    HausdorffResult fast = hausdorff_distance(x, y);
    HausdorffResult slow = hausdorff_bruteforce(x, y);
    CHECK(fast.status == slow.status);
    CHECK(fast.symmetric_m == slow.symmetric_m);
    CHECK(fast.directed_ab_m == slow.directed_ab_m);
    CHECK(fast.directed_ba_m == slow.directed_ba_m);
  }
}

TEST_CASE("directed hausdorff is asymmetric by construction") {
  std::vector<Pixel> a = {{0, 0}};
  std::vector<Pixel> b = {{0, 0}, {0, 5}};
  CHECK(directed_hausdorff_px(a, b) == 0.0);
  CHECK(directed_hausdorff_px(b, a) == 5.0);
}

TEST_CASE("asd never exceeds symmetric hausdorff") {
  for (uint64_t seed = 400; seed < 420; ++seed) {
    GridGeometry g{16, 16, 375.0};
    BinaryMask x = random_inset(seed, g, 0.25);
    BinaryMask y = random_inset(seed ^ 0x777, g, 0.25);
    MetricValue asd = average_surface_distance(x, y);
    HausdorffResult hd = hausdorff_distance(x, y);
    REQUIRE(asd.status == MetricStatus::ok);
    REQUIRE(hd.status == MetricStatus::ok);
    CHECK(asd.meters <= hd.symmetric_m);
  }
}

TEST_CASE("metrics scale linearly with resolution") {
  GridGeometry g{16, 16, 375.0};
  BinaryMask x = random_inset(41, g, 0.3);
  BinaryMask y = random_inset(42, g, 0.3);
  BinaryMask x2 = x, y2 = y;
  x2.geometry.resolution_m = 750.0;
  y2.geometry.resolution_m = 750.0;
  // Doubling the resolution doubles every metric exactly (power of two).
  CHECK(average_surface_distance(x2, y2).meters ==
        2.0 * average_surface_distance(x, y).meters);
  CHECK(hausdorff_distance(x2, y2).symmetric_m ==
        2.0 * hausdorff_distance(x, y).symmetric_m);
}

TEST_CASE("report wires statuses through all three metrics") {
  GridGeometry g{20, 30, 375.0};
  BinaryMask gt = square10(g, 3, 3);
  BinaryMask pred = square10(g, 3, 6);
  DistanceReport report = compute_distance_report(gt, pred);
  CHECK(report.centroid_boundary.status == MetricStatus::ok);
  CHECK(report.asd.status == MetricStatus::ok);
  CHECK(report.hausdorff.status == MetricStatus::ok);
  CHECK(report.centroid_boundary.meters == 375.0);
  // The surface metrics compare gt with the false-positive region, which
  // sits strictly to the right of the truth here.
  CHECK(report.asd.meters > 0.0);
  CHECK(report.asd.meters <= report.hausdorff.symmetric_m);

  DistanceReport same = compute_distance_report(gt, gt);
  CHECK(same.centroid_boundary.status == MetricStatus::no_false_positives);
  CHECK(same.asd.status == MetricStatus::no_false_positives);
  CHECK(same.hausdorff.status == MetricStatus::no_false_positives);

  BinaryMask empty(g);
  DistanceReport eg = compute_distance_report(empty, pred);
  CHECK(eg.centroid_boundary.status == MetricStatus::empty_gt);
  CHECK(eg.asd.status == MetricStatus::empty_gt);
  CHECK(eg.hausdorff.status == MetricStatus::empty_gt);
}

}  // TEST_SUITE
