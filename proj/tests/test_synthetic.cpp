#include <doctest.h>

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "fireline/morphology.hpp"
#include "fireline/raster_io.hpp"
#include "fireline/synthetic.hpp"
#include "fireline/uncertainty.hpp"

using namespace fireline;

TEST_SUITE("synthetic") {

TEST_CASE("mix64 matches the published splitmix64 sequence") {
  // splitmix64 state 0: first three outputs of the reference generator.
  CHECK(mix64(0) == 0xE220A8397B1DCDAFull);
  CHECK(mix64(0x9E3779B97F4A7C15ull) == 0x6E789E6AA1B965F4ull);
  CHECK(mix64(2 * 0x9E3779B97F4A7C15ull) == 0x06C45D188009454Full);
}

TEST_CASE("uniform01 is deterministic and lands in the unit interval") {
  CHECK(uniform01(1, 2, 3) == uniform01(1, 2, 3));
  CHECK(uniform01(1, 2, 3) != uniform01(1, 2, 4));
  CHECK(uniform01(1, 2, 3) != uniform01(1, 3, 3));
  CHECK(uniform01(1, 2, 3) != uniform01(2, 2, 3));
  double sum = 0.0;
  for (uint64_t i = 0; i < 4096; ++i) {
    double u = uniform01(42, 7, i);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(sum / 4096.0 == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("disk shapes") {
  GridGeometry g{16, 16, 375.0};
  SyntheticSpec spec;
  spec.shape = SyntheticShape::disk;
  spec.row = 5;
  spec.col = 5;
  spec.size_a = 0;
  BinaryMask single = make_mask(spec, g);
  CHECK(single.count_true() == 1);  // radius zero is one pixel
  CHECK(single.at(5, 5));

  spec.size_a = 1;
  CHECK(make_mask(spec, g).count_true() == 5);
  spec.size_a = 2;
  CHECK(make_mask(spec, g).count_true() == 13);
}

TEST_CASE("rectangle covers exactly height x width cells") {
  GridGeometry g{16, 16, 375.0};
  SyntheticSpec spec;
  spec.shape = SyntheticShape::rectangle;
  spec.row = 2;
  spec.col = 3;
  spec.size_a = 2;
  spec.size_b = 8;
  BinaryMask m = make_mask(spec, g);
  CHECK(m.count_true() == 16);
  for (uint32_t r = 2; r <= 3; ++r) {
    for (uint32_t c = 3; c <= 10; ++c) CHECK(m.at(r, c));
  }
}

TEST_CASE("two blobs are the union of two disks") {
  GridGeometry g{16, 16, 375.0};
  SyntheticSpec spec;
  spec.shape = SyntheticShape::two_blobs;
  spec.row = 3;
  spec.col = 3;
  spec.size_a = 1;
  spec.row2 = 9;
  spec.col2 = 9;
  spec.size_b = 2;
  BinaryMask m = make_mask(spec, g);
  CHECK(m.count_true() == 5 + 13);  // disjoint at this separation
  CHECK(m.at(3, 3));
  CHECK(m.at(9, 9));
}

TEST_CASE("shapes that leave the grid are rejected") {
  GridGeometry g{16, 16, 375.0};
  SyntheticSpec spec;
  spec.shape = SyntheticShape::disk;
  spec.row = 1;
  spec.col = 8;
  spec.size_a = 3;  // rows would reach -2
  CHECK_THROWS_AS(make_mask(spec, g), Error);

  spec.row = 8;
  spec.col = 14;  // cols would reach 17
  CHECK_THROWS_AS(make_mask(spec, g), Error);

  SyntheticSpec rect;
  rect.shape = SyntheticShape::rectangle;
  rect.row = 10;
  rect.col = 10;
  rect.size_a = 8;
  rect.size_b = 2;
  CHECK_THROWS_AS(make_mask(rect, g), Error);
  rect.size_a = 0;
  CHECK_THROWS_AS(make_mask(rect, g), Error);  // degenerate side
}

TEST_CASE("shape names round trip") {
  for (SyntheticShape s : {SyntheticShape::disk, SyntheticShape::rectangle,
                           SyntheticShape::two_blobs}) {
    CHECK(synthetic_shape_from_name(synthetic_shape_name(s)) == s);
  }
  CHECK_THROWS_AS(synthetic_shape_from_name("hexagon"), Error);
}

TEST_CASE("shift drops pixels pushed off the raster") {
  GridGeometry g{3, 4, 375.0};
  BinaryMask m(g);
  m.set(1, 1, true);
  BinaryMask s = shift_mask(m, 1, 2);
  CHECK(s.count_true() == 1);
  CHECK(s.at(2, 3));
  BinaryMask gone = shift_mask(m, -2, 0);
  CHECK(gone.count_true() == 0);
}

TEST_CASE("rotate90 turns clockwise and is a four-cycle") {
  GridGeometry g{2, 3, 375.0};
  BinaryMask m(g);
  m.set(0, 0, true);
  m.set(1, 2, true);
  BinaryMask r = rotate90(m);
  CHECK(r.geometry.height == 3);
  CHECK(r.geometry.width == 2);
  CHECK(r.at(0, 1));
  CHECK(r.at(2, 0));
  CHECK(r.count_true() == 2);

  BinaryMask four = rotate90(rotate90(rotate90(rotate90(m))));
  CHECK(four.cells == m.cells);
  CHECK(four.geometry == m.geometry);
}

TEST_CASE("noiseless stack thresholds back to the exact truth") {
  GridGeometry g{24, 24, 375.0};
  SyntheticSpec spec;
  spec.shape = SyntheticShape::disk;
  spec.row = 12;
  spec.col = 12;
  spec.size_a = 5;
  spec.n_members = 7;
  BinaryMask gt = make_mask(spec, g);
  PredictionStack stack = make_prediction_stack(gt, spec);
  REQUIRE(stack.member_count() == 7);
  UncertaintySummary s = aggregate_stack(stack);
  BinaryMask back = threshold(s.mean, 0.95);
  CHECK(back.cells == gt.cells);
  for (double v : s.variance.cells) CHECK(v == 0.0);
}

TEST_CASE("dilation-only stack adds exactly the boundary ring") {
  GridGeometry g{24, 24, 375.0};
  SyntheticSpec spec;
  spec.shape = SyntheticShape::disk;
  spec.row = 12;
  spec.col = 12;
  spec.size_a = 5;
  spec.dilate_by = 1;
  spec.n_members = 3;
  BinaryMask gt = make_mask(spec, g);
  PredictionStack stack = make_prediction_stack(gt, spec);
  BinaryMask pred = threshold(aggregate_stack(stack).mean, 0.95);
  BinaryMask fp = false_positive_mask(pred, gt);
  CHECK(fp.cells == boundary(gt).cells);
}

TEST_CASE("stacks are bitwise deterministic in the recipe") {
  GridGeometry g{32, 32, 375.0};
  SyntheticSpec spec;
  spec.shape = SyntheticShape::disk;
  spec.row = 16;
  spec.col = 16;
  spec.size_a = 6;
  spec.noise = 0.35;
  spec.seed = 1234;
  spec.n_members = 5;
  BinaryMask gt = make_mask(spec, g);
  PredictionStack a = make_prediction_stack(gt, spec);
  PredictionStack b = make_prediction_stack(gt, spec);
  REQUIRE(a.member_count() == b.member_count());
  for (std::size_t m = 0; m < a.member_count(); ++m) {
    CHECK(a.members[m].cells == b.members[m].cells);
  }
  // A different seed changes at least one member.
  spec.seed = 1235;
  PredictionStack c = make_prediction_stack(gt, spec);
  bool any_diff = false;
  for (std::size_t m = 0; m < a.member_count(); ++m) {
    any_diff = any_diff || a.members[m].cells != c.members[m].cells;
  }
  CHECK(any_diff);
}

TEST_CASE("noise only ever touches the perimeter") {
  GridGeometry g{32, 32, 375.0};
  SyntheticSpec spec;
  spec.shape = SyntheticShape::disk;
  spec.row = 16;
  spec.col = 16;
  spec.size_a = 6;
  spec.noise = 0.5;
  spec.seed = 88;
  spec.n_members = 20;
  BinaryMask gt = make_mask(spec, g);
  PredictionStack stack = make_prediction_stack(gt, spec);
  UncertaintySummary s = aggregate_stack(stack);
  BinaryMask rim = boundary(gt);  // no shift, no dilation: base is gt

  std::size_t rim_cells = 0;
  std::size_t rim_mixed = 0;
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    if (rim.cells[i]) {
      ++rim_cells;
      if (s.variance.cells[i] > 0.0) ++rim_mixed;
    } else {
      CHECK(s.variance.cells[i] == 0.0);  // exactly: members agree here
    }
  }
  REQUIRE(rim_cells > 0);
  // With 20 members at p = 1/2, a unanimous cell is a ~1e-6 event.
  CHECK(double(rim_mixed) / double(rim_cells) > 0.9);
}

TEST_CASE("member values straddle the detection threshold") {
  GridGeometry g{8, 8, 375.0};
  SyntheticSpec spec;
  spec.shape = SyntheticShape::disk;
  spec.row = 4;
  spec.col = 4;
  spec.size_a = 2;
  BinaryMask gt = make_mask(spec, g);
  PredictionStack stack = make_prediction_stack(gt, spec);
  std::set<double> seen(stack.members[0].cells.begin(),
                        stack.members[0].cells.end());
  CHECK(seen == std::set<double>{0.05, 0.98});
}

TEST_CASE("stack parameter validation") {
  GridGeometry g{8, 8, 375.0};
  SyntheticSpec spec;
  spec.shape = SyntheticShape::disk;
  spec.row = 4;
  spec.col = 4;
  spec.size_a = 2;
  BinaryMask gt = make_mask(spec, g);
  SyntheticSpec bad = spec;
  bad.n_members = 0;
  CHECK_THROWS_AS(make_prediction_stack(gt, bad), Error);
  bad = spec;
  bad.noise = -0.1;
  CHECK_THROWS_AS(make_prediction_stack(gt, bad), Error);
  bad.noise = 1.5;
  CHECK_THROWS_AS(make_prediction_stack(gt, bad), Error);
}

TEST_CASE("suite writer round trips through the manifest") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "fireline_synth_suite_test";
  fs::remove_all(dir);

  SyntheticSuiteConfig config;
  config.geometry = GridGeometry{32, 32, 375.0};
  config.spec.shape = SyntheticShape::disk;
  config.spec.row = 16;
  config.spec.col = 16;
  config.spec.size_a = 4;
  config.spec.offset_row = 1;
  config.spec.offset_col = 1;
  config.spec.noise = 0.3;
  config.spec.seed = 9;
  config.spec.n_members = 3;
  config.n_events = 3;

  std::string manifest_path = write_synthetic_suite(dir.string(), config);
  std::vector<ManifestEntry> events = load_manifest(manifest_path);
  REQUIRE(events.size() == 3);
  CHECK(events[0].event_id == "event_0");
  CHECK(events[2].event_id == "event_2");

  BinaryMask gt_expected = make_mask(config.spec, config.geometry);
  for (const ManifestEntry& e : events) {
    LoadedRaster loaded =
        load_raster(e.gt_path, RasterFormat::f32bin, RasterKind::mask);
    const BinaryMask& gt = std::get<BinaryMask>(loaded);
    CHECK(gt.cells == gt_expected.cells);
    CHECK(gt.geometry == gt_expected.geometry);

    PredictionStack stack = load_stack(e.stack_path);
    CHECK(stack.member_count() == 3);
    CHECK(stack.geometry == config.geometry);
  }

  // Each event reseeds the noise stream, so the stacks differ.
  PredictionStack s0 = load_stack(events[0].stack_path);
  PredictionStack s1 = load_stack(events[1].stack_path);
  bool differ = false;
  for (std::size_t m = 0; m < s0.member_count(); ++m) {
    differ = differ || s0.members[m].cells != s1.members[m].cells;
  }
  CHECK(differ);

  // And the files hold exactly what the generator produces in memory, to
  // the storage precision (cells travel as 32-bit floats).
  SyntheticSpec event0 = config.spec;
  event0.seed = mix64(config.spec.seed ^ 0ull);
  PredictionStack regen = make_prediction_stack(gt_expected, event0);
  REQUIRE(s0.member_count() == regen.member_count());
  for (std::size_t m = 0; m < regen.member_count(); ++m) {
    std::size_t mismatched = 0;
    for (std::size_t i = 0; i < regen.members[m].cells.size(); ++i) {
      if (float(s0.members[m].cells[i]) != float(regen.members[m].cells[i]))
        ++mismatched;
    }
    CHECK(mismatched == 0);
  }

  SyntheticSuiteConfig none = config;
  none.n_events = 0;
  CHECK_THROWS_AS(write_synthetic_suite(dir.string(), none), Error);
  fs::remove_all(dir);
}

}  // TEST_SUITE
