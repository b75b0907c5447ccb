#include "fireline/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstring>

#include "fireline/distance_metrics.hpp"
#include "fireline/morphology.hpp"
#include "fireline/synthetic.hpp"

namespace fireline {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Random mask with cell density in (0.05, 0.95), at least one true pixel.
// Stream ids keep the draws for sizes, density, and cells independent.
BinaryMask random_mask(uint64_t case_seed, uint64_t stream,
                       const GridGeometry& g) {
  BinaryMask m(g);
  const double density = 0.05 + 0.9 * uniform01(case_seed, stream, 0);
  bool any = false;
  for (std::size_t i = 0; i < m.cells.size(); ++i) {
    if (uniform01(case_seed, stream + 1, i) < density) {
      m.cells[i] = 1;
      any = true;
    }
  }
  if (!any) m.cells[mix64(case_seed ^ stream) % m.cells.size()] = 1;
  return m;
}

// Random mask whose true pixels stay `margin` cells clear of every edge, so
// boundaries never clip and the mask can be shifted by up to margin-1
// without touching the raster rim. Nonempty.
BinaryMask random_inset_mask(uint64_t case_seed, uint64_t stream,
                             const GridGeometry& g, uint32_t margin) {
  BinaryMask m(g);
  const double density = 0.05 + 0.9 * uniform01(case_seed, stream, 0);
  bool any = false;
  for (uint32_t r = margin; r + margin < g.height; ++r) {
    for (uint32_t c = margin; c + margin < g.width; ++c) {
      const std::size_t i = g.index(r, c);
      if (uniform01(case_seed, stream + 1, i) < density) {
        m.cells[i] = 1;
        any = true;
      }
    }
  }
  if (!any) m.set(margin, margin, true);
  return m;
}

bool fields_equal(const DistanceField& a, const DistanceField& b) {
  if (!(a.geometry == b.geometry)) return false;
  return std::memcmp(a.cells.data(), b.cells.data(),
                     a.cells.size() * sizeof(double)) == 0;
}

BinaryMask with_resolution(const BinaryMask& m, double resolution_m) {
  BinaryMask out = m;
  out.geometry.resolution_m = resolution_m;
  return out;
}

bool scales_linearly(double base, double scaled, double factor) {
  if (base == 0.0) return scaled == 0.0;
  return std::fabs(scaled - factor * base) < 1e-12 * std::fabs(factor * base);
}

bool hausdorff_equal(const HausdorffResult& x, const HausdorffResult& y) {
  return x.status == y.status && x.symmetric_m == y.symmetric_m &&
         x.directed_ab_m == y.directed_ab_m &&
         x.directed_ba_m == y.directed_ba_m;
}

}  // namespace

VerifySuite verify_distance_transform(uint64_t seed, std::size_t cases,
                                      uint32_t max_size) {
  const auto start = Clock::now();
  VerifySuite suite;
  suite.name = "distance_transform";
  suite.cases = cases;
  for (std::size_t i = 0; i < cases; ++i) {
    const uint64_t cs = mix64(seed ^ (0x0d7000 + i));
    const uint32_t h =
        1 + uint32_t(uniform01(cs, 0, 0) * max_size) % max_size;
    const uint32_t w =
        1 + uint32_t(uniform01(cs, 0, 1) * max_size) % max_size;
    const BinaryMask m = random_mask(cs, 2, GridGeometry{h, w, 375.0});
    if (!fields_equal(distance_transform(m), distance_transform_bruteforce(m))) {
      ++suite.mismatches;
    }
  }
  suite.seconds = elapsed_s(start);
  return suite;
}

VerifySuite verify_hausdorff(uint64_t seed, std::size_t cases, uint32_t size) {
  const auto start = Clock::now();
  VerifySuite suite;
  suite.name = "hausdorff";
  suite.cases = cases;
  const GridGeometry g{size, size, 375.0};
  for (std::size_t i = 0; i < cases; ++i) {
    const uint64_t cs = mix64(seed ^ (0xaad000 + i));
    BinaryMask a = random_mask(cs, 2, g);
    BinaryMask b = random_mask(cs, 8, g);
    // A raster-filling mask has an empty exterior boundary; carve one cell.
    if (a.all()) a.cells[0] = 0;
    if (b.all()) b.cells[0] = 0;
    if (!hausdorff_equal(hausdorff_distance(a, b), hausdorff_bruteforce(a, b))) {
      ++suite.mismatches;
    }
  }
  suite.seconds = elapsed_s(start);
  return suite;
}

VerifySuite verify_metric_laws(uint64_t seed, std::size_t cases) {
  const auto start = Clock::now();
  VerifySuite suite;
  suite.name = "metric_laws";
  suite.cases = cases;
  const GridGeometry g{24, 24, 375.0};
  constexpr uint32_t kMargin = 4;
  constexpr int kShiftRow = 2;
  constexpr int kShiftCol = 3;

  for (std::size_t i = 0; i < cases; ++i) {
    const uint64_t cs = mix64(seed ^ (0x1aa5000 + i));
    const BinaryMask a = random_inset_mask(cs, 2, g, kMargin);
    const BinaryMask b = random_inset_mask(cs, 8, g, kMargin);
    bool ok = true;

    const MetricValue asd_ab = average_surface_distance(a, b);
    const MetricValue asd_ba = average_surface_distance(b, a);
    const HausdorffResult hd = hausdorff_distance(a, b);
    const CentroidDistanceResult cen = centroid_boundary_distance(a, b);

    // Symmetry, bitwise.
    ok &= asd_ab.status == asd_ba.status && asd_ab.meters == asd_ba.meters;
    // ASD never exceeds the symmetric Hausdorff.
    ok &= asd_ab.status == MetricStatus::ok &&
          hd.status == MetricStatus::ok && asd_ab.meters <= hd.symmetric_m;

    // Linear scaling in resolution, at x2 and x3.
    for (double factor : {2.0, 3.0}) {
      const double s = 375.0 * factor;
      const BinaryMask as = with_resolution(a, s);
      const BinaryMask bs = with_resolution(b, s);
      const MetricValue asd_s = average_surface_distance(as, bs);
      const HausdorffResult hd_s = hausdorff_distance(as, bs);
      const CentroidDistanceResult cen_s = centroid_boundary_distance(as, bs);
      ok &= asd_s.status == asd_ab.status &&
            scales_linearly(asd_ab.meters, asd_s.meters, factor);
      ok &= hd_s.status == hd.status &&
            scales_linearly(hd.symmetric_m, hd_s.symmetric_m, factor) &&
            scales_linearly(hd.directed_ab_m, hd_s.directed_ab_m, factor) &&
            scales_linearly(hd.directed_ba_m, hd_s.directed_ba_m, factor);
      ok &= cen_s.status == cen.status;
      if (cen.status == MetricStatus::ok) {
        ok &= scales_linearly(cen.meters, cen_s.meters, factor);
      }
    }

    // Translation invariance: shift both masks rigidly, everything at the
    // margin guarantees no clipping.
    const BinaryMask at = shift_mask(a, kShiftRow, kShiftCol);
    const BinaryMask bt = shift_mask(b, kShiftRow, kShiftCol);
    const MetricValue asd_t = average_surface_distance(at, bt);
    const HausdorffResult hd_t = hausdorff_distance(at, bt);
    const CentroidDistanceResult cen_t = centroid_boundary_distance(at, bt);
    ok &= asd_t.status == asd_ab.status && asd_t.meters == asd_ab.meters;
    ok &= hausdorff_equal(hd_t, hd);
    ok &= cen_t.status == cen.status;
    if (cen.status == MetricStatus::ok) ok &= cen_t.meters == cen.meters;

    // Quarter-turn invariance of the boundary-set metrics.
    const BinaryMask ar = rotate90(a);
    const BinaryMask br = rotate90(b);
    const MetricValue asd_r = average_surface_distance(ar, br);
    const HausdorffResult hd_r = hausdorff_distance(ar, br);
    ok &= asd_r.status == asd_ab.status && asd_r.meters == asd_ab.meters;
    ok &= hausdorff_equal(hd_r, hd);

    if (!ok) ++suite.mismatches;
  }
  suite.seconds = elapsed_s(start);
  return suite;
}

std::vector<VerifySuite> verify_all(uint64_t seed) {
  return {
      verify_distance_transform(seed, 1000, 16),
      verify_hausdorff(seed, 500, 32),
      verify_metric_laws(seed, 200),
  };
}

}  // namespace fireline
