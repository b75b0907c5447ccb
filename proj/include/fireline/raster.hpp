#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fireline {

enum class ErrorCode {
  invalid_argument,
  io_error,
  format_error,
  geometry_mismatch,
  empty_mask,
  out_of_range,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Raster grid descriptor. Storage is row-major with the origin at the
/// top-left corner; all coordinates in this library are (row, col) pairs.
struct GridGeometry {
  uint32_t height = 0;
  uint32_t width = 0;
  double resolution_m = 375.0;  // meters per pixel

  GridGeometry() = default;
  GridGeometry(uint32_t h, uint32_t w, double res = 375.0);

  std::size_t cell_count() const { return std::size_t(height) * width; }

  std::size_t index(uint32_t row, uint32_t col) const {
    return std::size_t(row) * width + col;
  }

  bool contains(long row, long col) const {
    return row >= 0 && col >= 0 && row < long(height) && col < long(width);
  }

  bool operator==(const GridGeometry& other) const {
    return height == other.height && width == other.width &&
           resolution_m == other.resolution_m;
  }
  bool operator!=(const GridGeometry& other) const { return !(*this == other); }

  // Throws Error(invalid_argument) on empty dimensions or a non-finite or
  // non-positive resolution.
  void validate() const;
};

/// 2-D boolean raster (fire / no-fire). Cells hold 0 or 1.
struct BinaryMask {
  GridGeometry geometry;
  std::vector<uint8_t> cells;

  BinaryMask() = default;
  explicit BinaryMask(const GridGeometry& g, bool fill = false);

  bool at(uint32_t row, uint32_t col) const {
    return cells[geometry.index(row, col)] != 0;
  }
  void set(uint32_t row, uint32_t col, bool value) {
    cells[geometry.index(row, col)] = value ? 1 : 0;
  }

  std::size_t count_true() const;
  bool any() const { return count_true() > 0; }
  bool all() const { return count_true() == geometry.cell_count(); }

  // Cells length must match the geometry.
  void validate() const;
};

/// 2-D raster of burn probabilities in [0, 1].
struct ProbabilityMap {
  GridGeometry geometry;
  std::vector<double> cells;

  ProbabilityMap() = default;
  explicit ProbabilityMap(const GridGeometry& g, double fill = 0.0);

  double at(uint32_t row, uint32_t col) const {
    return cells[geometry.index(row, col)];
  }
  void set(uint32_t row, uint32_t col, double value) {
    cells[geometry.index(row, col)] = value;
  }

  // Cells length must match the geometry; every value finite and in [0, 1].
  void validate() const;
};

/// Ordered collection of probability maps from stochastic passes or pooled
/// ensemble members. All members share one geometry.
struct PredictionStack {
  GridGeometry geometry;
  std::vector<ProbabilityMap> members;

  std::size_t member_count() const { return members.size(); }

  // Requires >= 1 member, all with identical geometry.
  void validate() const;
};

void require_same_geometry(const GridGeometry& a, const GridGeometry& b,
                           const char* context);

/// Binarize a probability map: cell true iff p >= t (inclusive comparison,
/// so t = 0 yields the all-true mask). Requires t in [0, 1].
BinaryMask threshold(const ProbabilityMap& p, double t);

}  // namespace fireline
