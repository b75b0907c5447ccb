#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fireline/raster.hpp"

namespace fireline {

enum class RasterFormat { f32bin, csv, pgm };

// What the caller wants a headerless (csv/pgm) file read as. f32bin files
// carry the kind in their header; auto_detect on csv/pgm classifies a file
// whose values are all in {0,1} ({0,255} for pgm) as a mask.
enum class RasterKind { probability, mask, auto_detect };

using LoadedRaster = std::variant<ProbabilityMap, BinaryMask>;

RasterFormat format_from_name(const std::string& name);
const char* format_name(RasterFormat format);

// Guess the format from a file extension (.f32bin, .csv, .pgm); defaults to
// f32bin for unknown extensions.
RasterFormat format_from_path(const std::string& path);

// Loads a single raster. resolution_m applies only to headerless formats
// (csv, pgm); f32bin carries its own. Throws Error(io_error) on unreadable
// files, Error(format_error) on malformed content, Error(out_of_range) on
// value violations for the requested kind.
LoadedRaster load_raster(const std::string& path, RasterFormat format,
                         RasterKind kind, double resolution_m = 375.0);

void save_raster(const ProbabilityMap& map, const std::string& path,
                 RasterFormat format);
void save_raster(const BinaryMask& mask, const std::string& path,
                 RasterFormat format);

// True if the file starts with the f32bin magic and declares the stacked
// kind. Returns false for anything unreadable.
bool is_stack_file(const std::string& path);

// Loads a prediction stack from a stacked f32bin file (kind 2), a single
// probability f32bin (one member), or a directory of f32bin members taken
// in lexicographic filename order.
PredictionStack load_stack(const std::string& path, double resolution_m = 375.0);

void save_stack(const PredictionStack& stack, const std::string& path);

struct ManifestEntry {
  std::string event_id;
  std::string gt_path;
  std::string stack_path;
};

// Parses an events manifest: CSV with header `event_id,gt_path,stack_path`.
// Relative paths are resolved against the manifest's directory.
std::vector<ManifestEntry> load_manifest(const std::string& path);

}  // namespace fireline
