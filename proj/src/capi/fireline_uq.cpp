#include "fireline_uq.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fireline/buffer_analysis.hpp"
#include "fireline/calibration.hpp"
#include "fireline/distance_metrics.hpp"
#include "fireline/raster.hpp"
#include "fireline/raster_io.hpp"
#include "fireline/report_json.hpp"
#include "fireline/synthetic.hpp"
#include "fireline/uncertainty.hpp"
#include "fireline/verify.hpp"

using namespace fireline;

struct fuq_raster {
  LoadedRaster data;
  // Cells exposed to C as doubles regardless of the underlying kind.
  std::vector<double> cell_view;

  explicit fuq_raster(LoadedRaster r) : data(std::move(r)) { rebuild_view(); }

  void rebuild_view() {
    if (const auto* mask = std::get_if<BinaryMask>(&data)) {
      cell_view.assign(mask->cells.begin(), mask->cells.end());
    } else {
      cell_view = std::get<ProbabilityMap>(data).cells;
    }
  }

  const GridGeometry& geometry() const {
    if (const auto* mask = std::get_if<BinaryMask>(&data)) {
      return mask->geometry;
    }
    return std::get<ProbabilityMap>(data).geometry;
  }

  bool is_mask() const { return std::holds_alternative<BinaryMask>(data); }
};

struct fuq_stack {
  PredictionStack data;
};

namespace {

thread_local std::string t_last_error = "no error";

fuq_status status_from(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return FUQ_ERR_INVALID_ARGUMENT;
    case ErrorCode::io_error: return FUQ_ERR_IO;
    case ErrorCode::format_error: return FUQ_ERR_FORMAT;
    case ErrorCode::geometry_mismatch: return FUQ_ERR_GEOMETRY_MISMATCH;
    case ErrorCode::empty_mask: return FUQ_ERR_EMPTY_MASK;
    case ErrorCode::out_of_range: return FUQ_ERR_OUT_OF_RANGE;
  }
  return FUQ_ERR_INTERNAL;
}

template <typename Fn>
fuq_status guarded(Fn&& fn) {
  try {
    fn();
    return FUQ_OK;
  } catch (const Error& e) {
    t_last_error = e.what();
    return status_from(e.code());
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return FUQ_ERR_INTERNAL;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return FUQ_ERR_INTERNAL;
  } catch (...) {
    t_last_error = "unknown error";
    return FUQ_ERR_INTERNAL;
  }
}

void require(bool condition, const char* message) {
  if (!condition) throw Error(ErrorCode::invalid_argument, message);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

RunConfig to_run_config(const fuq_config* c) {
  RunConfig rc;
  if (!c) return rc;
  rc.threshold = c->threshold;
  rc.resolution_m = c->resolution_m;
  rc.ece_bins = c->ece_bins;
  rc.nll_epsilon = c->nll_epsilon;
  if (c->kde_bandwidth_m > 0.0) rc.kde_bandwidth_m = c->kde_bandwidth_m;
  rc.kde_grid = c->kde_grid;
  return rc;
}

BufferConfig to_buffer_config(const fuq_config* c) {
  BufferConfig bc;
  if (!c) return bc;
  bc.threshold = c->threshold;
  if (c->kde_bandwidth_m > 0.0) bc.kde_bandwidth_m = c->kde_bandwidth_m;
  bc.kde_grid = c->kde_grid;
  bc.max_threads = c->max_threads;
  return bc;
}

const BinaryMask& as_mask(const fuq_raster* r, const char* what) {
  require(r != nullptr, "raster is null");
  const auto* mask = std::get_if<BinaryMask>(&r->data);
  if (!mask) {
    throw Error(ErrorCode::invalid_argument,
                std::string(what) + " must be a binary mask; load it with "
                                    "want_mask or threshold it first");
  }
  return *mask;
}

ProbabilityMap as_probability(const fuq_raster* r) {
  require(r != nullptr, "raster is null");
  if (const auto* mask = std::get_if<BinaryMask>(&r->data)) {
    ProbabilityMap p(mask->geometry);
    for (std::size_t i = 0; i < mask->cells.size(); ++i) {
      p.cells[i] = mask->cells[i] ? 1.0 : 0.0;
    }
    return p;
  }
  return std::get<ProbabilityMap>(r->data);
}

// Calibration of one (probability, mask) event set pooled into a single
// pixel population; events may differ in geometry.
CalibrationReport pooled_calibration(
    const std::vector<ProbabilityMap>& probs,
    const std::vector<const BinaryMask*>& masks, const RunConfig& rc) {
  std::size_t total = 0;
  for (const ProbabilityMap& p : probs) total += p.cells.size();
  require(total > 0, "no pixels to pool");
  require(total <= UINT32_MAX, "pooled pixel count exceeds raster limits");
  GridGeometry g{1, static_cast<uint32_t>(total), 1.0};
  ProbabilityMap p(g);
  BinaryMask y(g);
  std::size_t at = 0;
  for (std::size_t e = 0; e < probs.size(); ++e) {
    const auto& pc = probs[e].cells;
    const auto& yc = masks[e]->cells;
    std::copy(pc.begin(), pc.end(), p.cells.begin() + long(at));
    std::copy(yc.begin(), yc.end(), y.cells.begin() + long(at));
    at += pc.size();
  }
  return compute_calibration_report(p, y, rc.ece_bins, rc.nll_epsilon);
}

}  // namespace

extern "C" {

const char* fuq_last_error(void) { return t_last_error.c_str(); }

const char* fuq_version(void) { return "1.0.0"; }

void fuq_config_default(fuq_config* config) {
  if (!config) return;
  config->threshold = 0.95;
  config->resolution_m = 375.0;
  config->ece_bins = 10;
  config->nll_epsilon = 1e-7;
  config->kde_bandwidth_m = 0.0;  // automatic
  config->kde_grid = 512;
  config->max_threads = 0;
}

fuq_status fuq_raster_load(const char* path, const char* format, int want_mask,
                           double resolution_m, fuq_raster** out) {
  return guarded([&] {
    require(path && out, "path and out must be non-null");
    *out = nullptr;
    RasterFormat fmt =
        format ? format_from_name(format) : format_from_path(path);
    RasterKind kind =
        want_mask ? RasterKind::mask : RasterKind::auto_detect;
    LoadedRaster r = load_raster(path, fmt, kind, resolution_m);
    *out = new fuq_raster(std::move(r));
  });
}

fuq_status fuq_raster_save(const fuq_raster* raster, const char* path,
                           const char* format) {
  return guarded([&] {
    require(raster && path, "raster and path must be non-null");
    RasterFormat fmt =
        format ? format_from_name(format) : format_from_path(path);
    if (const auto* mask = std::get_if<BinaryMask>(&raster->data)) {
      save_raster(*mask, path, fmt);
    } else {
      save_raster(std::get<ProbabilityMap>(raster->data), path, fmt);
    }
  });
}

void fuq_raster_free(fuq_raster* raster) { delete raster; }

uint32_t fuq_raster_height(const fuq_raster* raster) {
  return raster ? raster->geometry().height : 0;
}

uint32_t fuq_raster_width(const fuq_raster* raster) {
  return raster ? raster->geometry().width : 0;
}

double fuq_raster_resolution_m(const fuq_raster* raster) {
  return raster ? raster->geometry().resolution_m : 0.0;
}

int fuq_raster_is_mask(const fuq_raster* raster) {
  return raster && raster->is_mask() ? 1 : 0;
}

const double* fuq_raster_cells(const fuq_raster* raster) {
  return raster ? raster->cell_view.data() : nullptr;
}

int fuq_path_is_stack(const char* path) {
  if (!path) return 0;
  try {
    std::error_code ec;
    if (std::filesystem::is_directory(path, ec)) return 1;
    return is_stack_file(path) ? 1 : 0;
  } catch (...) {
    return 0;
  }
}

fuq_status fuq_stack_load(const char* path, double resolution_m,
                          fuq_stack** out) {
  return guarded([&] {
    require(path && out, "path and out must be non-null");
    *out = nullptr;
    *out = new fuq_stack{load_stack(path, resolution_m)};
  });
}

fuq_status fuq_stack_save(const fuq_stack* stack, const char* path) {
  return guarded([&] {
    require(stack && path, "stack and path must be non-null");
    save_stack(stack->data, path);
  });
}

void fuq_stack_free(fuq_stack* stack) { delete stack; }

uint32_t fuq_stack_members(const fuq_stack* stack) {
  return stack ? static_cast<uint32_t>(stack->data.member_count()) : 0;
}

fuq_status fuq_threshold(const fuq_raster* probability, double threshold,
                         fuq_raster** out_mask) {
  return guarded([&] {
    require(probability && out_mask, "probability and out_mask must be non-null");
    *out_mask = nullptr;
    ProbabilityMap p = as_probability(probability);
    *out_mask = new fuq_raster(LoadedRaster{fireline::threshold(p, threshold)});
  });
}

fuq_status fuq_aggregate(const fuq_stack* stack, fuq_raster** out_mean,
                         fuq_raster** out_variance, fuq_raster** out_std) {
  return guarded([&] {
    require(stack != nullptr, "stack is null");
    if (out_mean) *out_mean = nullptr;
    if (out_variance) *out_variance = nullptr;
    if (out_std) *out_std = nullptr;
    UncertaintySummary s = aggregate_stack(stack->data);
    if (out_mean) *out_mean = new fuq_raster(LoadedRaster{std::move(s.mean)});
    if (out_variance) {
      *out_variance = new fuq_raster(LoadedRaster{std::move(s.variance)});
    }
    if (out_std) *out_std = new fuq_raster(LoadedRaster{std::move(s.std)});
  });
}

fuq_status fuq_distance_report_json(const fuq_raster* gt,
                                    const fuq_raster* pred,
                                    const fuq_config* config,
                                    char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "out_json is null");
    *out_json = nullptr;
    const BinaryMask& gt_mask = as_mask(gt, "ground truth");
    const BinaryMask& pred_mask = as_mask(pred, "prediction");
    DistanceReport report = compute_distance_report(gt_mask, pred_mask);
    *out_json = dup_string(distance_report_json(report, to_run_config(config)));
  });
}

fuq_status fuq_calibration_report_json(const fuq_raster* probability,
                                       const fuq_raster* gt,
                                       const fuq_config* config,
                                       char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "out_json is null");
    *out_json = nullptr;
    RunConfig rc = to_run_config(config);
    ProbabilityMap p = as_probability(probability);
    const BinaryMask& y = as_mask(gt, "ground truth");
    CalibrationReport report =
        compute_calibration_report(p, y, rc.ece_bins, rc.nll_epsilon);
    *out_json = dup_string(calibration_report_json(report, rc));
  });
}

fuq_status fuq_calibration_manifest_json(const char* manifest_path,
                                         const fuq_config* config,
                                         char** out_json) {
  return guarded([&] {
    require(manifest_path && out_json,
            "manifest_path and out_json must be non-null");
    *out_json = nullptr;
    RunConfig rc = to_run_config(config);
    std::vector<ManifestEntry> entries = load_manifest(manifest_path);
    require(!entries.empty(), "manifest lists no events");

    std::vector<EventCalibration> events;
    std::vector<ProbabilityMap> probs;
    std::vector<BinaryMask> masks;
    events.reserve(entries.size());
    probs.reserve(entries.size());
    masks.reserve(entries.size());
    for (const ManifestEntry& e : entries) {
      LoadedRaster gt_raster = load_raster(
          e.gt_path, format_from_path(e.gt_path), RasterKind::mask,
          rc.resolution_m);
      BinaryMask gt = std::get<BinaryMask>(std::move(gt_raster));
      PredictionStack stack = load_stack(e.stack_path, rc.resolution_m);
      UncertaintySummary s = aggregate_stack(stack);
      require_same_geometry(gt.geometry, s.mean.geometry, "calibration");
      events.push_back(
          {e.event_id, compute_calibration_report(s.mean, gt, rc.ece_bins,
                                                  rc.nll_epsilon)});
      probs.push_back(std::move(s.mean));
      masks.push_back(std::move(gt));
    }
    std::vector<const BinaryMask*> mask_ptrs;
    mask_ptrs.reserve(masks.size());
    for (const BinaryMask& m : masks) mask_ptrs.push_back(&m);
    CalibrationReport pooled = pooled_calibration(probs, mask_ptrs, rc);
    *out_json = dup_string(calibration_set_json(pooled, events, rc));
  });
}

fuq_status fuq_buffer_report_json(const char* manifest_path,
                                  const fuq_config* config, char** out_json) {
  return guarded([&] {
    require(manifest_path && out_json,
            "manifest_path and out_json must be non-null");
    *out_json = nullptr;
    std::vector<ManifestEntry> entries = load_manifest(manifest_path);
    BufferReport report = buffer_report(entries, to_buffer_config(config));
    *out_json = dup_string(buffer_report_json(report, to_run_config(config)));
  });
}

void fuq_synth_params_default(fuq_synth_params* params) {
  if (!params) return;
  *params = fuq_synth_params{};
  params->shape = "disk";
  params->height = 64;
  params->width = 64;
  params->resolution_m = 375.0;
  params->row = 32;
  params->col = 32;
  params->size_a = 10;
  params->size_b = 10;
  params->row2 = 32;
  params->col2 = 48;
  params->dilate_by = 1;
  params->noise = 0.0;
  params->seed = 1;
  params->n_members = 20;
  params->n_events = 2;
}

fuq_status fuq_synth_suite(const char* out_dir,
                           const fuq_synth_params* params,
                           char** out_manifest_path) {
  return guarded([&] {
    require(out_dir && params && out_manifest_path,
            "out_dir, params, and out_manifest_path must be non-null");
    *out_manifest_path = nullptr;
    require(params->shape != nullptr, "shape is null");
    SyntheticSuiteConfig cfg;
    cfg.geometry =
        GridGeometry{params->height, params->width, params->resolution_m};
    cfg.spec.shape = synthetic_shape_from_name(params->shape);
    cfg.spec.row = params->row;
    cfg.spec.col = params->col;
    cfg.spec.size_a = params->size_a;
    cfg.spec.size_b = params->size_b;
    cfg.spec.row2 = params->row2;
    cfg.spec.col2 = params->col2;
    cfg.spec.offset_row = params->offset_row;
    cfg.spec.offset_col = params->offset_col;
    cfg.spec.dilate_by = params->dilate_by;
    cfg.spec.noise = params->noise;
    cfg.spec.seed = params->seed;
    cfg.spec.n_members = params->n_members;
    cfg.n_events = params->n_events;
    *out_manifest_path = dup_string(write_synthetic_suite(out_dir, cfg));
  });
}

fuq_status fuq_verify_run(uint64_t seed, char** out_text, int* out_failed) {
  return guarded([&] {
    require(out_text != nullptr, "out_text is null");
    *out_text = nullptr;
    std::vector<VerifySuite> suites = verify_all(seed);
    std::string text;
    int failed = 0;
    for (const VerifySuite& s : suites) {
      text += s.name + ": cases=" + std::to_string(s.cases) +
              " mismatches=" + std::to_string(s.mismatches) +
              (s.passed() ? " PASS" : " FAIL") + "\n";
      if (!s.passed()) ++failed;
    }
    if (out_failed) *out_failed = failed;
    *out_text = dup_string(text);
  });
}

void fuq_string_free(char* s) { std::free(s); }

}  // extern "C"
