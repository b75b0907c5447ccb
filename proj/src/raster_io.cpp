#include "fireline/raster_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace fireline {
namespace {

constexpr char kMagic[4] = {'F', 'U', 'Q', '1'};
constexpr uint8_t kKindProbability = 0;
constexpr uint8_t kKindMask = 1;
constexpr uint8_t kKindStack = 2;

void put_u32_le(std::string& out, uint32_t v) {
  out.push_back(char(v & 0xff));
  out.push_back(char((v >> 8) & 0xff));
  out.push_back(char((v >> 16) & 0xff));
  out.push_back(char((v >> 24) & 0xff));
}

void put_f64_le(std::string& out, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  for (int i = 0; i < 8; ++i) out.push_back(char((bits >> (8 * i)) & 0xff));
}

void put_f32_le(std::string& out, float v) {
  uint32_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  put_u32_le(out, bits);
}

class ByteReader {
 public:
  ByteReader(const std::string& data, const std::string& path)
      : data_(data), path_(path) {}

  uint32_t u32() {
    need(4);
    uint32_t v = uint32_t(uint8_t(data_[pos_])) |
                 uint32_t(uint8_t(data_[pos_ + 1])) << 8 |
                 uint32_t(uint8_t(data_[pos_ + 2])) << 16 |
                 uint32_t(uint8_t(data_[pos_ + 3])) << 24;
    pos_ += 4;
    return v;
  }

  uint8_t u8() {
    need(1);
    return uint8_t(data_[pos_++]);
  }

  double f64() {
    need(8);
    uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= uint64_t(uint8_t(data_[pos_ + i])) << (8 * i);
    pos_ += 8;
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }

  float f32() {
    uint32_t bits = u32();
    float v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
  }

  std::size_t remaining() const { return data_.size() - pos_; }

  void need(std::size_t n) const {
    if (pos_ + n > data_.size()) {
      throw Error(ErrorCode::format_error,
                  path_ + ": truncated f32bin file (need " + std::to_string(n) +
                      " bytes at offset " + std::to_string(pos_) + ")");
    }
  }

 private:
  const std::string& data_;
  const std::string& path_;
  std::size_t pos_ = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io_error, path + ": cannot open for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorCode::io_error, path + ": read failed");
  }
  return std::move(buf).str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::io_error, path + ": cannot open for writing");
  }
  out.write(data.data(), std::streamsize(data.size()));
  if (!out) {
    throw Error(ErrorCode::io_error, path + ": write failed");
  }
}

struct F32binHeader {
  GridGeometry geometry;
  uint8_t kind = 0;
  uint32_t member_count = 1;
};

F32binHeader read_f32bin_header(ByteReader& r, const std::string& path) {
  r.need(4);
  char magic[4];
  for (int i = 0; i < 4; ++i) magic[i] = char(r.u8());
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw Error(ErrorCode::format_error, path + ": bad magic, not an f32bin file");
  }
  F32binHeader h;
  h.geometry.height = r.u32();
  h.geometry.width = r.u32();
  h.geometry.resolution_m = r.f64();
  h.kind = r.u8();
  if (h.kind > kKindStack) {
    throw Error(ErrorCode::format_error,
                path + ": unknown raster kind " + std::to_string(h.kind));
  }
  if (h.kind == kKindStack) {
    h.member_count = r.u32();
    if (h.member_count < 1) {
      throw Error(ErrorCode::format_error, path + ": stack with zero members");
    }
  }
  try {
    h.geometry.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::format_error, path + ": bad header: " + e.what());
  }
  return h;
}

std::vector<double> read_cells(ByteReader& r, std::size_t count,
                               const std::string& path) {
  if (r.remaining() != count * 4) {
    throw Error(ErrorCode::format_error,
                path + ": payload size mismatch, expected " +
                    std::to_string(count * 4) + " bytes, found " +
                    std::to_string(r.remaining()));
  }
  std::vector<double> cells(count);
  for (std::size_t i = 0; i < count; ++i) cells[i] = double(r.f32());
  return cells;
}

void check_probability_values(const std::vector<double>& cells,
                              const std::string& path) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!std::isfinite(cells[i]) || cells[i] < 0.0 || cells[i] > 1.0) {
      throw Error(ErrorCode::out_of_range,
                  path + ": probability value " + std::to_string(cells[i]) +
                      " at cell " + std::to_string(i) + " is outside [0, 1]");
    }
  }
}

BinaryMask cells_to_mask(const GridGeometry& g, const std::vector<double>& cells,
                         const std::string& path) {
  BinaryMask mask(g);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] == 0.0) {
      mask.cells[i] = 0;
    } else if (cells[i] == 1.0) {
      mask.cells[i] = 1;
    } else {
      throw Error(ErrorCode::out_of_range,
                  path + ": mask value " + std::to_string(cells[i]) +
                      " at cell " + std::to_string(i) + " is not 0 or 1");
    }
  }
  return mask;
}

bool all_binary(const std::vector<double>& cells) {
  return std::all_of(cells.begin(), cells.end(),
                     [](double v) { return v == 0.0 || v == 1.0; });
}

LoadedRaster finish_load(const GridGeometry& g, std::vector<double> cells,
                         RasterKind kind, const std::string& path) {
  if (kind == RasterKind::auto_detect) {
    kind = all_binary(cells) ? RasterKind::mask : RasterKind::probability;
  }
  if (kind == RasterKind::mask) {
    return cells_to_mask(g, cells, path);
  }
  check_probability_values(cells, path);
  ProbabilityMap map;
  map.geometry = g;
  map.cells = std::move(cells);
  return map;
}

LoadedRaster load_f32bin(const std::string& path, RasterKind kind) {
  const std::string data = read_file(path);
  ByteReader r(data, path);
  const F32binHeader h = read_f32bin_header(r, path);
  if (h.kind == kKindStack) {
    throw Error(ErrorCode::format_error,
                path + ": stacked file, expected a single raster");
  }
  std::vector<double> cells = read_cells(r, h.geometry.cell_count(), path);
  // The header's kind wins; a kind request may narrow it but not contradict it.
  RasterKind file_kind =
      h.kind == kKindMask ? RasterKind::mask : RasterKind::probability;
  if (kind != RasterKind::auto_detect && kind != file_kind) {
    if (kind == RasterKind::mask) {
      // Re-reading a probability file as a mask is fine when the values allow it.
      return cells_to_mask(h.geometry, cells, path);
    }
    // Mask file as probability map: {0,1} values are valid probabilities.
  }
  return finish_load(h.geometry, std::move(cells), file_kind, path);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& token, const std::string& path) {
  const std::string t = trim(token);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) {
    throw Error(ErrorCode::format_error,
                path + ": cannot parse value '" + token + "'");
  }
  return v;
}

LoadedRaster load_csv(const std::string& path, RasterKind kind,
                      double resolution_m) {
  const std::vector<std::string> lines = split_lines(read_file(path));
  if (lines.empty()) {
    throw Error(ErrorCode::format_error, path + ": empty csv raster");
  }
  std::vector<double> cells;
  std::size_t width = 0;
  for (std::size_t row = 0; row < lines.size(); ++row) {
    std::vector<double> values;
    std::size_t start = 0;
    const std::string& line = lines[row];
    while (true) {
      std::size_t comma = line.find(',', start);
      std::string token = comma == std::string::npos
                              ? line.substr(start)
                              : line.substr(start, comma - start);
      values.push_back(parse_double(token, path));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (row == 0) {
      width = values.size();
    } else if (values.size() != width) {
      throw Error(ErrorCode::format_error,
                  path + ": row " + std::to_string(row) + " has " +
                      std::to_string(values.size()) + " values, expected " +
                      std::to_string(width));
    }
    cells.insert(cells.end(), values.begin(), values.end());
  }
  GridGeometry g(uint32_t(lines.size()), uint32_t(width), resolution_m);
  return finish_load(g, std::move(cells), kind, path);
}

LoadedRaster load_pgm(const std::string& path, RasterKind kind,
                      double resolution_m) {
  const std::string data = read_file(path);
  // Plain PGM tokenizer: whitespace-separated tokens, '#' starts a comment.
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < data.size()) {
    char c = data[i];
    if (c == '#') {
      while (i < data.size() && data[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else {
      std::size_t start = i;
      while (i < data.size() && !std::isspace(static_cast<unsigned char>(data[i])) &&
             data[i] != '#') {
        ++i;
      }
      tokens.push_back(data.substr(start, i - start));
    }
  }
  if (tokens.empty() || tokens[0] != "P2") {
    throw Error(ErrorCode::format_error, path + ": not a plain PGM (P2) file");
  }
  if (tokens.size() < 4) {
    throw Error(ErrorCode::format_error, path + ": truncated PGM header");
  }
  auto parse_int = [&](const std::string& t) -> long {
    long v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
      throw Error(ErrorCode::format_error, path + ": bad PGM token '" + t + "'");
    }
    return v;
  };
  const long width = parse_int(tokens[1]);
  const long height = parse_int(tokens[2]);
  const long maxval = parse_int(tokens[3]);
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::format_error, path + ": bad PGM dimensions");
  }
  if (maxval != 255) {
    throw Error(ErrorCode::format_error,
                path + ": PGM maxval must be 255, got " + std::to_string(maxval));
  }
  const std::size_t count = std::size_t(width) * std::size_t(height);
  if (tokens.size() != 4 + count) {
    throw Error(ErrorCode::format_error,
                path + ": PGM pixel count mismatch, expected " +
                    std::to_string(count) + ", found " +
                    std::to_string(tokens.size() - 4));
  }
  GridGeometry g(uint32_t(height), uint32_t(width), resolution_m);
  std::vector<long> raw(count);
  for (std::size_t k = 0; k < count; ++k) {
    raw[k] = parse_int(tokens[4 + k]);
    if (raw[k] < 0 || raw[k] > 255) {
      throw Error(ErrorCode::out_of_range,
                  path + ": PGM value " + std::to_string(raw[k]) +
                      " outside [0, 255]");
    }
  }
  if (kind == RasterKind::auto_detect) {
    const bool binary = std::all_of(raw.begin(), raw.end(),
                                    [](long v) { return v == 0 || v == 255; });
    kind = binary ? RasterKind::mask : RasterKind::probability;
  }
  if (kind == RasterKind::mask) {
    BinaryMask mask(g);
    for (std::size_t k = 0; k < count; ++k) {
      if (raw[k] == 0) {
        mask.cells[k] = 0;
      } else if (raw[k] == 255) {
        mask.cells[k] = 1;
      } else {
        throw Error(ErrorCode::out_of_range,
                    path + ": PGM mask value " + std::to_string(raw[k]) +
                        " is not 0 or 255");
      }
    }
    return mask;
  }
  ProbabilityMap map(g);
  for (std::size_t k = 0; k < count; ++k) map.cells[k] = double(raw[k]) / 255.0;
  return map;
}

std::string f32bin_bytes(const GridGeometry& g, uint8_t kind,
                         uint32_t member_count,
                         const std::vector<const std::vector<double>*>& layers) {
  std::string out;
  out.reserve(25 + std::size_t(member_count) * g.cell_count() * 4);
  out.append(kMagic, 4);
  put_u32_le(out, g.height);
  put_u32_le(out, g.width);
  put_f64_le(out, g.resolution_m);
  out.push_back(char(kind));
  if (kind == kKindStack) put_u32_le(out, member_count);
  for (const auto* layer : layers) {
    for (double v : *layer) put_f32_le(out, float(v));
  }
  return out;
}

std::string csv_bytes(const GridGeometry& g, const std::vector<double>& cells,
                      bool as_mask) {
  std::string out;
  char buf[32];
  for (uint32_t r = 0; r < g.height; ++r) {
    for (uint32_t c = 0; c < g.width; ++c) {
      if (c) out.push_back(',');
      double v = cells[g.index(r, c)];
      if (as_mask) {
        out.push_back(v != 0.0 ? '1' : '0');
      } else {
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
        out.append(buf, ptr);
        (void)ec;
      }
    }
    out.push_back('\n');
  }
  return out;
}

std::string pgm_bytes(const GridGeometry& g, const std::vector<double>& cells,
                      bool as_mask) {
  std::string out = "P2\n";
  out += std::to_string(g.width) + " " + std::to_string(g.height) + "\n255\n";
  for (uint32_t r = 0; r < g.height; ++r) {
    for (uint32_t c = 0; c < g.width; ++c) {
      if (c) out.push_back(' ');
      double v = cells[g.index(r, c)];
      long q = as_mask ? (v != 0.0 ? 255 : 0) : std::lround(v * 255.0);
      out += std::to_string(q);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace

RasterFormat format_from_name(const std::string& name) {
  if (name == "f32bin") return RasterFormat::f32bin;
  if (name == "csv") return RasterFormat::csv;
  if (name == "pgm") return RasterFormat::pgm;
  throw Error(ErrorCode::invalid_argument, "unknown raster format '" + name + "'");
}

const char* format_name(RasterFormat format) {
  switch (format) {
    case RasterFormat::f32bin: return "f32bin";
    case RasterFormat::csv: return "csv";
    case RasterFormat::pgm: return "pgm";
  }
  return "unknown";
}

RasterFormat format_from_path(const std::string& path) {
  std::string ext = fs::path(path).extension().string();
  for (char& c : ext) c = char(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".csv") return RasterFormat::csv;
  if (ext == ".pgm") return RasterFormat::pgm;
  return RasterFormat::f32bin;
}

LoadedRaster load_raster(const std::string& path, RasterFormat format,
                         RasterKind kind, double resolution_m) {
  switch (format) {
    case RasterFormat::f32bin: return load_f32bin(path, kind);
    case RasterFormat::csv: return load_csv(path, kind, resolution_m);
    case RasterFormat::pgm: return load_pgm(path, kind, resolution_m);
  }
  throw Error(ErrorCode::invalid_argument, "unknown raster format");
}

void save_raster(const ProbabilityMap& map, const std::string& path,
                 RasterFormat format) {
  map.validate();
  switch (format) {
    case RasterFormat::f32bin:
      write_file(path, f32bin_bytes(map.geometry, kKindProbability, 1, {&map.cells}));
      return;
    case RasterFormat::csv:
      write_file(path, csv_bytes(map.geometry, map.cells, false));
      return;
    case RasterFormat::pgm:
      write_file(path, pgm_bytes(map.geometry, map.cells, false));
      return;
  }
}

void save_raster(const BinaryMask& mask, const std::string& path,
                 RasterFormat format) {
  mask.validate();
  std::vector<double> cells(mask.cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    cells[i] = mask.cells[i] ? 1.0 : 0.0;
  }
  switch (format) {
    case RasterFormat::f32bin:
      write_file(path, f32bin_bytes(mask.geometry, kKindMask, 1, {&cells}));
      return;
    case RasterFormat::csv:
      write_file(path, csv_bytes(mask.geometry, cells, true));
      return;
    case RasterFormat::pgm:
      write_file(path, pgm_bytes(mask.geometry, cells, true));
      return;
  }
}

bool is_stack_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  char header[21];
  if (!in.read(header, 21)) return false;
  return std::memcmp(header, kMagic, 4) == 0 && uint8_t(header[20]) == kKindStack;
}

PredictionStack load_stack(const std::string& path, double resolution_m) {
  if (fs::is_directory(path)) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() &&
          entry.path().extension().string() == ".f32bin") {
        files.push_back(entry.path().string());
      }
    }
    if (files.empty()) {
      throw Error(ErrorCode::io_error,
                  path + ": directory contains no .f32bin members");
    }
    std::sort(files.begin(), files.end());
    PredictionStack stack;
    for (const auto& file : files) {
      LoadedRaster raster = load_raster(file, RasterFormat::f32bin,
                                        RasterKind::probability, resolution_m);
      stack.members.push_back(std::get<ProbabilityMap>(std::move(raster)));
    }
    stack.geometry = stack.members.front().geometry;
    stack.validate();
    return stack;
  }

  const std::string data = read_file(path);
  ByteReader r(data, path);
  const F32binHeader h = read_f32bin_header(r, path);
  if (h.kind != kKindStack) {
    // A single probability raster is a one-member stack.
    std::vector<double> cells = read_cells(r, h.geometry.cell_count(), path);
    if (h.kind == kKindMask) {
      cells_to_mask(h.geometry, cells, path);  // value check only
    } else {
      check_probability_values(cells, path);
    }
    PredictionStack stack;
    stack.geometry = h.geometry;
    ProbabilityMap map;
    map.geometry = h.geometry;
    map.cells = std::move(cells);
    stack.members.push_back(std::move(map));
    return stack;
  }

  const std::size_t per_member = h.geometry.cell_count();
  if (r.remaining() != std::size_t(h.member_count) * per_member * 4) {
    throw Error(ErrorCode::format_error,
                path + ": stack payload size mismatch for " +
                    std::to_string(h.member_count) + " members");
  }
  PredictionStack stack;
  stack.geometry = h.geometry;
  stack.members.reserve(h.member_count);
  for (uint32_t m = 0; m < h.member_count; ++m) {
    ProbabilityMap map;
    map.geometry = h.geometry;
    map.cells.resize(per_member);
    for (std::size_t i = 0; i < per_member; ++i) map.cells[i] = double(r.f32());
    check_probability_values(map.cells, path);
    stack.members.push_back(std::move(map));
  }
  return stack;
}

void save_stack(const PredictionStack& stack, const std::string& path) {
  stack.validate();
  std::vector<const std::vector<double>*> layers;
  layers.reserve(stack.members.size());
  for (const auto& m : stack.members) layers.push_back(&m.cells);
  write_file(path, f32bin_bytes(stack.geometry, kKindStack,
                                uint32_t(stack.members.size()), layers));
}

std::vector<ManifestEntry> load_manifest(const std::string& path) {
  const std::vector<std::string> lines = split_lines(read_file(path));
  if (lines.empty()) {
    throw Error(ErrorCode::format_error, path + ": empty manifest");
  }
  auto split_row = [](const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = line.find(',', start);
      fields.push_back(trim(comma == std::string::npos
                                ? line.substr(start)
                                : line.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return fields;
  };
  const std::vector<std::string> header = split_row(lines[0]);
  if (header.size() != 3 || header[0] != "event_id" || header[1] != "gt_path" ||
      header[2] != "stack_path") {
    throw Error(ErrorCode::format_error,
                path + ": manifest header must be 'event_id,gt_path,stack_path'");
  }
  const fs::path base = fs::path(path).parent_path();
  std::vector<ManifestEntry> entries;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const std::vector<std::string> fields = split_row(lines[i]);
    if (fields.size() != 3) {
      throw Error(ErrorCode::format_error,
                  path + ": manifest row " + std::to_string(i) +
                      " must have 3 fields");
    }
    auto resolve = [&](const std::string& p) {
      fs::path fp(p);
      return fp.is_absolute() ? fp.string() : (base / fp).string();
    };
    entries.push_back({fields[0], resolve(fields[1]), resolve(fields[2])});
  }
  return entries;
}

}  // namespace fireline
