#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "fireline/raster.hpp"
#include "fireline/uncertainty.hpp"

using namespace fireline;

namespace {

ProbabilityMap map_of(const GridGeometry& g, std::vector<double> vals) {
  ProbabilityMap p(g);
  p.cells = std::move(vals);
  return p;
}

PredictionStack random_stack(uint64_t seed, const GridGeometry& g,
                             std::size_t members) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  PredictionStack s;
  s.geometry = g;
  for (std::size_t m = 0; m < members; ++m) {
    ProbabilityMap p(g);
    for (double& v : p.cells) v = u(rng);
    s.members.push_back(std::move(p));
  }
  return s;
}

}  // namespace

TEST_SUITE("uncertainty") {

TEST_CASE("single member has zero spread") {
  GridGeometry g{2, 3, 375.0};
  PredictionStack s;
  s.geometry = g;
  s.members.push_back(map_of(g, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}));
  UncertaintySummary out = aggregate_stack(s);
  CHECK(out.n_samples == 1);
  CHECK(out.mean.cells == s.members[0].cells);
  for (double v : out.variance.cells) CHECK(v == 0.0);
  for (double v : out.std.cells) CHECK(v == 0.0);
}

TEST_CASE("twenty identical members have exactly zero variance") {
  GridGeometry g{4, 4, 375.0};
  PredictionStack s;
  s.geometry = g;
  ProbabilityMap base(g);
  for (std::size_t i = 0; i < base.cells.size(); ++i)
    base.cells[i] = double(i) / 17.0;  // not exactly representable sums
  for (int m = 0; m < 20; ++m) s.members.push_back(base);
  UncertaintySummary out = aggregate_stack(s);
  CHECK(out.n_samples == 20);
  CHECK(out.mean.cells == base.cells);  // bitwise
  for (double v : out.variance.cells) CHECK(v == 0.0);
  for (double v : out.std.cells) CHECK(v == 0.0);
}

TEST_CASE("a zero-one pair hits the variance bound") {
  GridGeometry g{1, 1, 375.0};
  PredictionStack s;
  s.geometry = g;
  s.members.push_back(map_of(g, {0.0}));
  s.members.push_back(map_of(g, {1.0}));
  UncertaintySummary out = aggregate_stack(s);
  CHECK(out.mean.cells[0] == 0.5);
  CHECK(out.variance.cells[0] == 0.25);  // population variance, exact
  CHECK(out.std.cells[0] == 0.5);
}

TEST_CASE("hand mean and variance") {
  GridGeometry g{1, 1, 375.0};
  PredictionStack s;
  s.geometry = g;
  for (double v : {0.25, 0.5, 0.75, 0.5}) s.members.push_back(map_of(g, {v}));
  UncertaintySummary out = aggregate_stack(s);
  CHECK(out.mean.cells[0] == 0.5);
  // ((0.25)^2 + 0 + (0.25)^2 + 0) / 4 = 0.03125, all powers of two.
  CHECK(out.variance.cells[0] == 0.03125);
}

TEST_CASE("aggregation is exactly invariant under member permutation") {
  GridGeometry g{6, 7, 375.0};
  PredictionStack s = random_stack(991, g, 9);
  UncertaintySummary base = aggregate_stack(s);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 8; ++trial) {
    PredictionStack shuffled = s;
    std::shuffle(shuffled.members.begin(), shuffled.members.end(), rng);
    UncertaintySummary out = aggregate_stack(shuffled);
    CHECK(out.mean.cells == base.mean.cells);
    CHECK(out.variance.cells == base.variance.cells);
    CHECK(out.std.cells == base.std.cells);
  }
}

TEST_CASE("values stay inside their mathematical ranges") {
  GridGeometry g{8, 8, 375.0};
  PredictionStack s = random_stack(555, g, 13);
  UncertaintySummary out = aggregate_stack(s);
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    CHECK(out.mean.cells[i] >= 0.0);
    CHECK(out.mean.cells[i] <= 1.0);
    CHECK(out.variance.cells[i] >= 0.0);
    CHECK(out.variance.cells[i] <= 0.25);
    CHECK(out.std.cells[i] * out.std.cells[i] ==
          doctest::Approx(out.variance.cells[i]).epsilon(1e-15));
  }
  out.mean.validate();
  out.variance.validate();
}

TEST_CASE("pooling stacks equals one flat concatenated stack") {
  GridGeometry g{5, 5, 375.0};
  std::vector<PredictionStack> parts;
  PredictionStack flat;
  flat.geometry = g;
  for (uint64_t k = 0; k < 3; ++k) {
    PredictionStack part = random_stack(7000 + k, g, 20);
    for (const ProbabilityMap& m : part.members) flat.members.push_back(m);
    parts.push_back(std::move(part));
  }
  PredictionStack pooled = pool_ensembles(parts);
  REQUIRE(pooled.member_count() == 60);
  UncertaintySummary a = aggregate_stack(pooled);
  UncertaintySummary b = aggregate_stack(flat);
  CHECK(a.n_samples == 60);
  CHECK(a.mean.cells == b.mean.cells);
  CHECK(a.variance.cells == b.variance.cells);
}

TEST_CASE("pooling rejects mismatched geometry") {
  PredictionStack a = random_stack(1, GridGeometry{4, 4, 375.0}, 2);
  PredictionStack b = random_stack(2, GridGeometry{4, 5, 375.0}, 2);
  CHECK_THROWS_AS(pool_ensembles({a, b}), Error);
}

TEST_CASE("empty stack is rejected") {
  PredictionStack s;
  s.geometry = GridGeometry{4, 4, 375.0};
  CHECK_THROWS_AS(aggregate_stack(s), Error);
  CHECK_THROWS_AS(pool_ensembles({}), Error);
}

}  // TEST_SUITE
