#pragma once

#include <cstdint>
#include <string>

#include "fireline/raster.hpp"

namespace fireline {

enum class SyntheticShape { disk, rectangle, two_blobs };

SyntheticShape synthetic_shape_from_name(const std::string& name);
const char* synthetic_shape_name(SyntheticShape shape);

/// Recipe for a ground-truth mask and a perturbed prediction stack.
/// Everything is deterministic in (spec, seed): member noise comes from a
/// counter-based generator keyed by (seed, member, cell), never from
/// sequential state, so parallel generation cannot reorder draws.
struct SyntheticSpec {
  SyntheticShape shape = SyntheticShape::disk;
  int row = 0;     // disk / first blob center row, rectangle top row
  int col = 0;     // disk / first blob center col, rectangle left col
  int size_a = 0;  // disk radius, rectangle height, first blob radius
  int size_b = 0;  // rectangle width, second blob radius
  int row2 = 0;    // second blob center
  int col2 = 0;
  int offset_row = 0;  // prediction shift applied to the ground truth
  int offset_col = 0;
  int dilate_by = 0;   // 3x3 dilation passes applied after the shift
  double noise = 0.0;  // perimeter flip probability, in [0, 1]
  uint64_t seed = 0;
  int n_members = 1;
};

/// splitmix64 finalizer; the mixing step behind the counter RNG.
uint64_t mix64(uint64_t x);

/// Uniform draw in [0, 1) keyed by (seed, a, b).
double uniform01(uint64_t seed, uint64_t a, uint64_t b);

/// Deterministic ground-truth mask for the recipe. Throws
/// Error(out_of_range) when the shape does not fit in the grid.
BinaryMask make_mask(const SyntheticSpec& spec, const GridGeometry& g);

/// n_members soft prediction maps: the ground truth shifted and dilated per
/// spec, written as {0.05, 0.98} values (straddling the 0.95 threshold
/// asymmetrically), with each perimeter cell of the perturbed mask flipped
/// independently with probability spec.noise.
PredictionStack make_prediction_stack(const BinaryMask& gt,
                                      const SyntheticSpec& spec);

/// Translate; pixels shifted off the raster are dropped, vacated cells are
/// false.
BinaryMask shift_mask(const BinaryMask& m, int drow, int dcol);

/// Clockwise quarter turn: (r, c) -> (c, height-1-r).
BinaryMask rotate90(const BinaryMask& m);

struct SyntheticSuiteConfig {
  GridGeometry geometry{64, 64, 375.0};
  SyntheticSpec spec;
  int n_events = 2;
};

/// Writes gt + stack f32bin files per event under out_dir plus a
/// manifest.csv referencing them; each event reseeds the noise stream.
/// Returns the manifest path.
std::string write_synthetic_suite(const std::string& out_dir,
                                  const SyntheticSuiteConfig& config);

}  // namespace fireline
