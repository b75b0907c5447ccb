#pragma once

#include <vector>

#include "fireline/raster.hpp"

namespace fireline {

/// Integer pixel coordinate, (row, col).
struct Pixel {
  int row = 0;
  int col = 0;

  bool operator==(const Pixel& other) const {
    return row == other.row && col == other.col;
  }
  bool operator<(const Pixel& other) const {
    return row != other.row ? row < other.row : col < other.col;
  }
};

/// Real-valued pixel location; centroids carry sub-pixel precision.
struct PixelPoint {
  double row = 0.0;
  double col = 0.0;
};

/// Exact Euclidean distances in pixel units to the nearest true source cell.
/// Every stored value is sqrt(double(dr*dr + dc*dc)) for integer offsets, so
/// two routes that agree on the integer agree bit-for-bit on the double.
struct DistanceField {
  GridGeometry geometry;
  std::vector<double> cells;

  double at(uint32_t row, uint32_t col) const {
    return cells[geometry.index(row, col)];
  }
};

/// Morphological dilation with the full 3x3 (8-connected) structuring
/// element. Pixels outside the raster do not exist; no wrapping.
BinaryMask dilate(const BinaryMask& m);

/// Exterior boundary: dilate(m) AND NOT m. Empty for the empty mask and for
/// a raster-filling mask.
BinaryMask boundary(const BinaryMask& m);

/// Boundary pixels in row-major order.
std::vector<Pixel> boundary_pixels(const BinaryMask& m);

/// Row-major list of all true pixels.
std::vector<Pixel> true_pixels(const BinaryMask& m);

/// Arithmetic mean of true-pixel coordinates. Throws Error(empty_mask) when
/// the mask has no true pixel.
PixelPoint centroid(const BinaryMask& m);

/// Pixelwise pred AND NOT gt. Throws on geometry mismatch.
BinaryMask false_positive_mask(const BinaryMask& pred, const BinaryMask& gt);

/// Exact Euclidean distance transform of the true-cell set, linear-time
/// two-pass (per-column integer scan, then per-row lower envelope of
/// parabolas over squared distances). Throws Error(empty_mask) when the
/// source has no true pixel.
DistanceField distance_transform(const BinaryMask& source);

/// Testing oracle: per-cell scan over every source pixel. Same value
/// contract as distance_transform, bit for bit.
DistanceField distance_transform_bruteforce(const BinaryMask& source);

/// Bresenham rasterization from round(a) to round(b), both endpoints
/// included, 8-connected, no repeated pixels. The traversal is computed in a
/// canonical endpoint order so that swapping a and b yields the same pixel
/// set. Rounding is half-away-from-zero. Throws when a rounded endpoint
/// falls outside the raster.
std::vector<Pixel> trace_line(const PixelPoint& a, const PixelPoint& b,
                              const GridGeometry& g);

}  // namespace fireline
