#include <doctest.h>

#include "fireline/raster.hpp"
#include "oracles.hpp"

using namespace fireline;

TEST_SUITE("raster") {

TEST_CASE("geometry validation") {
  CHECK_NOTHROW(GridGeometry(4, 7, 375.0).validate());
  CHECK_THROWS_AS(GridGeometry(0, 7).validate(), Error);
  CHECK_THROWS_AS(GridGeometry(4, 0).validate(), Error);
  CHECK_THROWS_AS(GridGeometry(4, 7, 0.0).validate(), Error);
  CHECK_THROWS_AS(GridGeometry(4, 7, -1.0).validate(), Error);

  try {
    GridGeometry(0, 7).validate();
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_argument);
  }
}

TEST_CASE("geometry indexing is row-major") {
  GridGeometry g{3, 5, 375.0};
  CHECK(g.cell_count() == 15);
  CHECK(g.index(0, 0) == 0);
  CHECK(g.index(1, 0) == 5);
  CHECK(g.index(2, 4) == 14);
  CHECK(g.contains(0, 0));
  CHECK(g.contains(2, 4));
  CHECK_FALSE(g.contains(-1, 0));
  CHECK_FALSE(g.contains(3, 0));
  CHECK_FALSE(g.contains(0, 5));
}

TEST_CASE("geometry equality includes resolution") {
  CHECK(GridGeometry(2, 2, 375.0) == GridGeometry(2, 2, 375.0));
  CHECK(GridGeometry(2, 2, 375.0) != GridGeometry(2, 2, 750.0));
  CHECK(GridGeometry(2, 2) != GridGeometry(2, 3));
}

TEST_CASE("mask accessors and counting") {
  BinaryMask m(GridGeometry{2, 3});
  CHECK(m.count_true() == 0);
  CHECK_FALSE(m.any());
  m.set(1, 2, true);
  m.set(0, 0, true);
  CHECK(m.at(1, 2));
  CHECK(m.count_true() == 2);
  CHECK(m.any());
  CHECK_FALSE(m.all());
  BinaryMask full(GridGeometry{2, 2}, true);
  CHECK(full.all());
}

TEST_CASE("probability map validation rejects out-of-range values") {
  ProbabilityMap p(GridGeometry{1, 3});
  p.cells = {0.0, 0.5, 1.0};
  CHECK_NOTHROW(p.validate());
  p.cells[1] = 1.5;
  CHECK_THROWS_AS(p.validate(), Error);
  p.cells[1] = -0.1;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("prediction stack validation") {
  GridGeometry g{2, 2};
  PredictionStack s;
  s.geometry = g;
  CHECK_THROWS_AS(s.validate(), Error);  // no members
  s.members.emplace_back(g, 0.5);
  CHECK_NOTHROW(s.validate());
  s.members.emplace_back(GridGeometry{2, 3}, 0.5);
  CHECK_THROWS_AS(s.validate(), Error);  // geometry drift
}

TEST_CASE("threshold comparison is inclusive") {
  ProbabilityMap p = testutil::prob_from_values(1, 4, {0.05, 0.94, 0.95, 0.98});
  BinaryMask m = threshold(p, 0.95);
  CHECK_FALSE(m.at(0, 0));
  CHECK_FALSE(m.at(0, 1));
  CHECK(m.at(0, 2));  // equality counts as burned
  CHECK(m.at(0, 3));

  BinaryMask all = threshold(p, 0.0);
  CHECK(all.all());
  CHECK_THROWS_AS(threshold(p, 1.5), Error);
  CHECK_THROWS_AS(threshold(p, -0.1), Error);
}

TEST_CASE("geometry mismatch is reported with context") {
  try {
    require_same_geometry(GridGeometry{2, 2}, GridGeometry{2, 3}, "unit");
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::geometry_mismatch);
    CHECK(std::string(e.what()).find("unit") != std::string::npos);
  }
}

}  // TEST_SUITE
