#include "fireline/raster.hpp"

#include <algorithm>
#include <cmath>

namespace fireline {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::io_error: return "io_error";
    case ErrorCode::format_error: return "format_error";
    case ErrorCode::geometry_mismatch: return "geometry_mismatch";
    case ErrorCode::empty_mask: return "empty_mask";
    case ErrorCode::out_of_range: return "out_of_range";
  }
  return "unknown";
}

GridGeometry::GridGeometry(uint32_t h, uint32_t w, double res)
    : height(h), width(w), resolution_m(res) {
  validate();
}

void GridGeometry::validate() const {
  if (height < 1 || width < 1) {
    throw Error(ErrorCode::invalid_argument,
                "grid dimensions must be at least 1x1, got " +
                    std::to_string(height) + "x" + std::to_string(width));
  }
  if (!std::isfinite(resolution_m) || resolution_m <= 0.0) {
    throw Error(ErrorCode::invalid_argument,
                "pixel resolution must be finite and > 0, got " +
                    std::to_string(resolution_m));
  }
}

BinaryMask::BinaryMask(const GridGeometry& g, bool fill)
    : geometry(g), cells(g.cell_count(), fill ? 1 : 0) {
  geometry.validate();
}

std::size_t BinaryMask::count_true() const {
  return std::size_t(std::count_if(cells.begin(), cells.end(),
                                   [](uint8_t v) { return v != 0; }));
}

void BinaryMask::validate() const {
  geometry.validate();
  if (cells.size() != geometry.cell_count()) {
    throw Error(ErrorCode::invalid_argument,
                "mask cell count " + std::to_string(cells.size()) +
                    " does not match geometry " +
                    std::to_string(geometry.cell_count()));
  }
}

ProbabilityMap::ProbabilityMap(const GridGeometry& g, double fill)
    : geometry(g), cells(g.cell_count(), fill) {
  geometry.validate();
}

void ProbabilityMap::validate() const {
  geometry.validate();
  if (cells.size() != geometry.cell_count()) {
    throw Error(ErrorCode::invalid_argument,
                "probability cell count " + std::to_string(cells.size()) +
                    " does not match geometry " +
                    std::to_string(geometry.cell_count()));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const double v = cells[i];
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw Error(ErrorCode::out_of_range,
                  "probability value " + std::to_string(v) + " at cell " +
                      std::to_string(i) + " is outside [0, 1]");
    }
  }
}

void PredictionStack::validate() const {
  if (members.empty()) {
    throw Error(ErrorCode::invalid_argument, "prediction stack has no members");
  }
  for (const auto& m : members) {
    m.validate();
    if (m.geometry != geometry) {
      throw Error(ErrorCode::geometry_mismatch,
                  "stack member geometry does not match stack geometry");
    }
  }
}

void require_same_geometry(const GridGeometry& a, const GridGeometry& b,
                           const char* context) {
  if (a != b) {
    throw Error(ErrorCode::geometry_mismatch,
                std::string(context) + ": geometries differ (" +
                    std::to_string(a.height) + "x" + std::to_string(a.width) +
                    " @ " + std::to_string(a.resolution_m) + "m vs " +
                    std::to_string(b.height) + "x" + std::to_string(b.width) +
                    " @ " + std::to_string(b.resolution_m) + "m)");
  }
}

BinaryMask threshold(const ProbabilityMap& p, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw Error(ErrorCode::invalid_argument,
                "threshold must lie in [0, 1], got " + std::to_string(t));
  }
  BinaryMask out(p.geometry);
  for (std::size_t i = 0; i < p.cells.size(); ++i) {
    out.cells[i] = p.cells[i] >= t ? 1 : 0;
  }
  return out;
}

}  // namespace fireline
