#include "fireline/synthetic.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <utility>

#include "fireline/morphology.hpp"
#include "fireline/raster_io.hpp"

namespace fireline {

namespace fs = std::filesystem;

SyntheticShape synthetic_shape_from_name(const std::string& name) {
  if (name == "disk") return SyntheticShape::disk;
  if (name == "rectangle") return SyntheticShape::rectangle;
  if (name == "two_blobs") return SyntheticShape::two_blobs;
  throw Error(ErrorCode::invalid_argument, "unknown shape '" + name + "'");
}

const char* synthetic_shape_name(SyntheticShape shape) {
  switch (shape) {
    case SyntheticShape::disk: return "disk";
    case SyntheticShape::rectangle: return "rectangle";
    case SyntheticShape::two_blobs: return "two_blobs";
  }
  return "?";
}

uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double uniform01(uint64_t seed, uint64_t a, uint64_t b) {
  uint64_t h = mix64(mix64(mix64(seed) ^ a) ^ b);
  // Top 53 bits -> [0, 1) with full double granularity.
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

namespace {

void require_inside(const GridGeometry& g, int64_t row, int64_t col,
                    const char* what) {
  if (row < 0 || col < 0 || row >= static_cast<int64_t>(g.height) ||
      col >= static_cast<int64_t>(g.width)) {
    throw Error(ErrorCode::out_of_range,
                std::string(what) + " does not fit in the grid");
  }
}

void stamp_disk(BinaryMask& m, int row, int col, int radius,
                const char* what) {
  if (radius < 0) {
    throw Error(ErrorCode::invalid_argument, "radius must be >= 0");
  }
  const GridGeometry& g = m.geometry;
  require_inside(g, int64_t{row} - radius, int64_t{col} - radius, what);
  require_inside(g, int64_t{row} + radius, int64_t{col} + radius, what);
  const int64_t rr = int64_t{radius} * radius;
  for (int r = row - radius; r <= row + radius; ++r) {
    for (int c = col - radius; c <= col + radius; ++c) {
      int64_t dr = r - row;
      int64_t dc = c - col;
      if (dr * dr + dc * dc <= rr) {
        m.set(static_cast<uint32_t>(r), static_cast<uint32_t>(c), true);
      }
    }
  }
}

}  // namespace

BinaryMask make_mask(const SyntheticSpec& spec, const GridGeometry& g) {
  g.validate();
  BinaryMask m(g);
  switch (spec.shape) {
    case SyntheticShape::disk:
      stamp_disk(m, spec.row, spec.col, spec.size_a, "disk");
      break;
    case SyntheticShape::rectangle: {
      if (spec.size_a < 1 || spec.size_b < 1) {
        throw Error(ErrorCode::invalid_argument,
                    "rectangle sides must be >= 1");
      }
      require_inside(g, spec.row, spec.col, "rectangle");
      require_inside(g, int64_t{spec.row} + spec.size_a - 1,
                     int64_t{spec.col} + spec.size_b - 1, "rectangle");
      for (int r = spec.row; r < spec.row + spec.size_a; ++r) {
        for (int c = spec.col; c < spec.col + spec.size_b; ++c) {
          m.set(static_cast<uint32_t>(r), static_cast<uint32_t>(c), true);
        }
      }
      break;
    }
    case SyntheticShape::two_blobs:
      stamp_disk(m, spec.row, spec.col, spec.size_a, "first blob");
      stamp_disk(m, spec.row2, spec.col2, spec.size_b, "second blob");
      break;
  }
  return m;
}

PredictionStack make_prediction_stack(const BinaryMask& gt,
                                      const SyntheticSpec& spec) {
  if (spec.n_members < 1) {
    throw Error(ErrorCode::invalid_argument, "n_members must be >= 1");
  }
  if (!(spec.noise >= 0.0 && spec.noise <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "noise must be in [0, 1]");
  }
  BinaryMask base = shift_mask(gt, spec.offset_row, spec.offset_col);
  for (int i = 0; i < spec.dilate_by; ++i) base = dilate(base);
  const BinaryMask perimeter = boundary(base);

  constexpr double kInside = 0.98;   // above the 0.95 default threshold
  constexpr double kOutside = 0.05;  // well below it
  const GridGeometry& g = gt.geometry;
  const size_t n = base.cells.size();

  PredictionStack stack(g);
  stack.members.reserve(static_cast<size_t>(spec.n_members));
  for (int member = 0; member < spec.n_members; ++member) {
    ProbabilityMap p(g);
    for (size_t i = 0; i < n; ++i) {
      bool on = base.cells[i] != 0;
      if (perimeter.cells[i] != 0 && spec.noise > 0.0 &&
          uniform01(spec.seed, static_cast<uint64_t>(member), i) <
              spec.noise) {
        on = !on;
      }
      p.cells[i] = on ? kInside : kOutside;
    }
    stack.members.push_back(std::move(p));
  }
  return stack;
}

BinaryMask shift_mask(const BinaryMask& m, int drow, int dcol) {
  const GridGeometry& g = m.geometry;
  BinaryMask out(g);
  for (uint32_t r = 0; r < g.height; ++r) {
    int64_t sr = static_cast<int64_t>(r) - drow;
    if (sr < 0 || sr >= static_cast<int64_t>(g.height)) continue;
    for (uint32_t c = 0; c < g.width; ++c) {
      int64_t sc = static_cast<int64_t>(c) - dcol;
      if (sc < 0 || sc >= static_cast<int64_t>(g.width)) continue;
      out.cells[g.index(r, c)] =
          m.cells[g.index(static_cast<uint32_t>(sr),
                          static_cast<uint32_t>(sc))];
    }
  }
  return out;
}

BinaryMask rotate90(const BinaryMask& m) {
  GridGeometry g{m.geometry.width, m.geometry.height, m.geometry.resolution_m};
  BinaryMask out(g);
  for (uint32_t r = 0; r < m.geometry.height; ++r) {
    for (uint32_t c = 0; c < m.geometry.width; ++c) {
      out.cells[g.index(c, m.geometry.height - 1 - r)] =
          m.cells[m.geometry.index(r, c)];
    }
  }
  return out;
}

std::string write_synthetic_suite(const std::string& out_dir,
                                  const SyntheticSuiteConfig& config) {
  if (config.n_events < 1) {
    throw Error(ErrorCode::invalid_argument, "n_events must be >= 1");
  }
  const BinaryMask gt = make_mask(config.spec, config.geometry);

  fs::path root(out_dir);
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) {
    throw Error(ErrorCode::io_error,
                "cannot create directory '" + root.string() + "'");
  }

  fs::path manifest_path = root / "manifest.csv";
  std::ofstream manifest(manifest_path, std::ios::binary);
  if (!manifest) {
    throw Error(ErrorCode::io_error,
                "cannot open '" + manifest_path.string() + "' for writing");
  }
  manifest << "event_id,gt_path,stack_path\n";

  for (int e = 0; e < config.n_events; ++e) {
    SyntheticSpec spec = config.spec;
    spec.seed = mix64(config.spec.seed ^ static_cast<uint64_t>(e));
    PredictionStack stack = make_prediction_stack(gt, spec);

    std::string event_id = "event_" + std::to_string(e);
    fs::path dir = root / event_id;
    fs::create_directories(dir, ec);
    if (ec) {
      throw Error(ErrorCode::io_error,
                  "cannot create directory '" + dir.string() + "'");
    }
    save_raster(gt, (dir / "gt.f32bin").string(), RasterFormat::f32bin);
    save_stack(stack, (dir / "stack.f32bin").string());
    manifest << event_id << "," << event_id << "/gt.f32bin," << event_id
             << "/stack.f32bin\n";
  }
  manifest.flush();
  if (!manifest) {
    throw Error(ErrorCode::io_error,
                "failed writing '" + manifest_path.string() + "'");
  }
  return manifest_path.string();
}

}  // namespace fireline
