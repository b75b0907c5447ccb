#include "fireline/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fireline {
namespace {

int round_half_away(double v) { return int(std::lround(v)); }

// 1-D squared-distance transform (Felzenszwalb/Huttenlocher lower envelope)
// over integer costs. n <= a few thousand here; all envelope evaluations are
// exact int64 arithmetic, intersections use doubles whose rounding cannot
// change any integer minimum (a misassigned grid point would change the
// value by less than 1, and values are integers).
void squared_dt_1d(const std::vector<int64_t>& f, std::vector<int64_t>& d,
                   std::vector<int>& v, std::vector<double>& z) {
  const int n = int(f.size());
  v.assign(std::size_t(n), 0);
  z.assign(std::size_t(n) + 1, 0.0);
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  for (int q = 1; q < n; ++q) {
    double s = 0.0;
    while (true) {
      const int p = v[std::size_t(k)];
      s = double((f[std::size_t(q)] + int64_t(q) * q) -
                 (f[std::size_t(p)] + int64_t(p) * p)) /
          double(2 * (q - p));
      if (s > z[std::size_t(k)]) break;
      --k;
    }
    ++k;
    v[std::size_t(k)] = q;
    z[std::size_t(k)] = s;
    z[std::size_t(k) + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  d.assign(std::size_t(n), 0);
  for (int q = 0; q < n; ++q) {
    while (z[std::size_t(k) + 1] < double(q)) ++k;
    const int64_t dq = int64_t(q) - v[std::size_t(k)];
    d[std::size_t(q)] = dq * dq + f[std::size_t(v[std::size_t(k)])];
  }
}

}  // namespace

BinaryMask dilate(const BinaryMask& m) {
  m.validate();
  const GridGeometry& g = m.geometry;
  BinaryMask out(g);
  for (long r = 0; r < long(g.height); ++r) {
    for (long c = 0; c < long(g.width); ++c) {
      if (!m.at(uint32_t(r), uint32_t(c))) continue;
      for (long dr = -1; dr <= 1; ++dr) {
        for (long dc = -1; dc <= 1; ++dc) {
          if (g.contains(r + dr, c + dc)) {
            out.set(uint32_t(r + dr), uint32_t(c + dc), true);
          }
        }
      }
    }
  }
  return out;
}

BinaryMask boundary(const BinaryMask& m) {
  BinaryMask d = dilate(m);
  for (std::size_t i = 0; i < d.cells.size(); ++i) {
    if (m.cells[i]) d.cells[i] = 0;
  }
  return d;
}

std::vector<Pixel> boundary_pixels(const BinaryMask& m) {
  return true_pixels(boundary(m));
}

std::vector<Pixel> true_pixels(const BinaryMask& m) {
  std::vector<Pixel> out;
  for (uint32_t r = 0; r < m.geometry.height; ++r) {
    for (uint32_t c = 0; c < m.geometry.width; ++c) {
      if (m.at(r, c)) out.push_back({int(r), int(c)});
    }
  }
  return out;
}

PixelPoint centroid(const BinaryMask& m) {
  m.validate();
  int64_t sum_row = 0;
  int64_t sum_col = 0;
  int64_t n = 0;
  for (uint32_t r = 0; r < m.geometry.height; ++r) {
    for (uint32_t c = 0; c < m.geometry.width; ++c) {
      if (m.at(r, c)) {
        sum_row += r;
        sum_col += c;
        ++n;
      }
    }
  }
  if (n == 0) {
    throw Error(ErrorCode::empty_mask, "centroid of an empty mask is undefined");
  }
  return {double(sum_row) / double(n), double(sum_col) / double(n)};
}

BinaryMask false_positive_mask(const BinaryMask& pred, const BinaryMask& gt) {
  require_same_geometry(pred.geometry, gt.geometry, "false_positive_mask");
  BinaryMask out(pred.geometry);
  for (std::size_t i = 0; i < out.cells.size(); ++i) {
    out.cells[i] = (pred.cells[i] && !gt.cells[i]) ? 1 : 0;
  }
  return out;
}

DistanceField distance_transform(const BinaryMask& source) {
  source.validate();
  if (!source.any()) {
    throw Error(ErrorCode::empty_mask,
                "distance transform needs at least one source pixel");
  }
  const GridGeometry& g = source.geometry;
  const int h = int(g.height);
  const int w = int(g.width);
  // Larger than any possible pixel distance on this grid; squares fit int64.
  const int64_t inf = int64_t(h) + int64_t(w) + 1;

  // Pass 1: per column, integer row-distance to the nearest source cell in
  // that column (two sweeps).
  std::vector<int64_t> rowdist(std::size_t(h) * std::size_t(w), inf);
  for (int c = 0; c < w; ++c) {
    int64_t d = inf;
    for (int r = 0; r < h; ++r) {
      d = source.at(uint32_t(r), uint32_t(c)) ? 0 : std::min(d + 1, inf);
      rowdist[std::size_t(r) * std::size_t(w) + std::size_t(c)] = d;
    }
    d = rowdist[std::size_t(h - 1) * std::size_t(w) + std::size_t(c)];
    for (int r = h - 2; r >= 0; --r) {
      d = std::min(d + 1, inf);
      auto& cell = rowdist[std::size_t(r) * std::size_t(w) + std::size_t(c)];
      cell = std::min(cell, d);
      d = cell;
    }
  }

  // Pass 2: per row, squared-distance lower envelope over column offsets.
  DistanceField field;
  field.geometry = g;
  field.cells.resize(g.cell_count());
  std::vector<int64_t> f(static_cast<std::size_t>(w));
  std::vector<int64_t> d;
  std::vector<int> v;
  std::vector<double> z;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const int64_t rd = rowdist[std::size_t(r) * std::size_t(w) + std::size_t(c)];
      f[std::size_t(c)] = rd * rd;
    }
    squared_dt_1d(f, d, v, z);
    for (int c = 0; c < w; ++c) {
      field.cells[g.index(uint32_t(r), uint32_t(c))] =
          std::sqrt(double(d[std::size_t(c)]));
    }
  }
  return field;
}

DistanceField distance_transform_bruteforce(const BinaryMask& source) {
  source.validate();
  const std::vector<Pixel> sources = true_pixels(source);
  if (sources.empty()) {
    throw Error(ErrorCode::empty_mask,
                "distance transform needs at least one source pixel");
  }
  const GridGeometry& g = source.geometry;
  DistanceField field;
  field.geometry = g;
  field.cells.resize(g.cell_count());
  for (uint32_t r = 0; r < g.height; ++r) {
    for (uint32_t c = 0; c < g.width; ++c) {
      int64_t best = std::numeric_limits<int64_t>::max();
      for (const Pixel& s : sources) {
        const int64_t dr = int64_t(r) - s.row;
        const int64_t dc = int64_t(c) - s.col;
        best = std::min(best, dr * dr + dc * dc);
      }
      field.cells[g.index(r, c)] = std::sqrt(double(best));
    }
  }
  return field;
}

namespace {

// Integer Bresenham, endpoints inclusive, 8-connected, no repeats.
std::vector<Pixel> bresenham(Pixel a, Pixel b) {
  std::vector<Pixel> out;
  int d_col = b.col - a.col;
  int d_row = b.row - a.row;
  const int step_col = d_col < 0 ? -1 : 1;
  const int step_row = d_row < 0 ? -1 : 1;
  d_col = std::abs(d_col) * 2;
  d_row = std::abs(d_row) * 2;
  int col = a.col;
  int row = a.row;
  out.push_back({row, col});
  if (d_col > d_row) {
    int err = d_row - d_col / 2;
    while (col != b.col) {
      if (err >= 0) {
        row += step_row;
        err -= d_col;
      }
      col += step_col;
      err += d_row;
      out.push_back({row, col});
    }
  } else {
    int err = d_col - d_row / 2;
    while (row != b.row) {
      if (err >= 0) {
        col += step_col;
        err -= d_row;
      }
      row += step_row;
      err += d_col;
      out.push_back({row, col});
    }
  }
  return out;
}

}  // namespace

std::vector<Pixel> trace_line(const PixelPoint& a, const PixelPoint& b,
                              const GridGeometry& g) {
  const Pixel pa{round_half_away(a.row), round_half_away(a.col)};
  const Pixel pb{round_half_away(b.row), round_half_away(b.col)};
  if (!g.contains(pa.row, pa.col) || !g.contains(pb.row, pb.col)) {
    throw Error(ErrorCode::out_of_range,
                "trace_line endpoints must lie inside the raster");
  }
  // Canonical endpoint ordering keeps the pixel set symmetric in (a, b).
  if (pb < pa) {
    std::vector<Pixel> rev = bresenham(pb, pa);
    std::reverse(rev.begin(), rev.end());
    return rev;
  }
  return bresenham(pa, pb);
}

}  // namespace fireline
