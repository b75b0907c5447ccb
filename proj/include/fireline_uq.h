/* C interface to the fireline uncertainty library.
 *
 * Every function that can fail returns fuq_status; on failure
 * fuq_last_error() gives a thread-local human-readable message. Objects
 * returned through out-parameters are owned by the caller and released
 * with the matching *_free function. Strings returned through char**
 * out-parameters are released with fuq_string_free.
 */
#ifndef FIRELINE_UQ_H
#define FIRELINE_UQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FUQ_API __declspec(dllexport)
#else
#define FUQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fuq_status {
  FUQ_OK = 0,
  FUQ_ERR_INVALID_ARGUMENT = 1,
  FUQ_ERR_IO = 2,
  FUQ_ERR_FORMAT = 3,
  FUQ_ERR_GEOMETRY_MISMATCH = 4,
  FUQ_ERR_EMPTY_MASK = 5,
  FUQ_ERR_OUT_OF_RANGE = 6,
  FUQ_ERR_INTERNAL = 7
} fuq_status;

/* Message for the most recent failure on the calling thread; never NULL. */
FUQ_API const char* fuq_last_error(void);

FUQ_API const char* fuq_version(void);

/* Run parameters shared by the report functions. Obtain defaults with
 * fuq_config_default, then override fields. kde_bandwidth_m <= 0 selects
 * the automatic (Silverman) bandwidth. max_threads 0 selects the hardware
 * count; the FIRELINE_UQ_THREADS environment variable caps it either way. */
typedef struct fuq_config {
  double threshold;
  double resolution_m;
  uint32_t ece_bins;
  double nll_epsilon;
  double kde_bandwidth_m;
  uint32_t kde_grid;
  unsigned max_threads;
} fuq_config;

FUQ_API void fuq_config_default(fuq_config* config);

/* ---- rasters ------------------------------------------------------- */

/* A single raster: probability map or binary mask. */
typedef struct fuq_raster fuq_raster;

/* format: "f32bin", "csv", "pgm", or NULL to infer from the extension.
 * want_mask nonzero requires/derives a binary mask (values {0,1});
 * resolution_m applies only to formats without an embedded resolution. */
FUQ_API fuq_status fuq_raster_load(const char* path, const char* format,
                                   int want_mask, double resolution_m,
                                   fuq_raster** out);
FUQ_API fuq_status fuq_raster_save(const fuq_raster* raster, const char* path,
                                   const char* format);
FUQ_API void fuq_raster_free(fuq_raster* raster);

FUQ_API uint32_t fuq_raster_height(const fuq_raster* raster);
FUQ_API uint32_t fuq_raster_width(const fuq_raster* raster);
FUQ_API double fuq_raster_resolution_m(const fuq_raster* raster);
FUQ_API int fuq_raster_is_mask(const fuq_raster* raster);
/* Row-major cells, height*width doubles; masks read as 0.0 / 1.0. */
FUQ_API const double* fuq_raster_cells(const fuq_raster* raster);

/* ---- prediction stacks ---------------------------------------------- */

typedef struct fuq_stack fuq_stack;

/* Nonzero if path is a stacked f32bin file or a directory of members. */
FUQ_API int fuq_path_is_stack(const char* path);

FUQ_API fuq_status fuq_stack_load(const char* path, double resolution_m,
                                  fuq_stack** out);
FUQ_API fuq_status fuq_stack_save(const fuq_stack* stack, const char* path);
FUQ_API void fuq_stack_free(fuq_stack* stack);
FUQ_API uint32_t fuq_stack_members(const fuq_stack* stack);

/* ---- operations ------------------------------------------------------ */

/* Binary mask of cells with probability >= threshold. */
FUQ_API fuq_status fuq_threshold(const fuq_raster* probability,
                                 double threshold, fuq_raster** out_mask);

/* Cellwise mean / population variance / std over stack members. Any of the
 * out-parameters may be NULL when that surface is not needed. */
FUQ_API fuq_status fuq_aggregate(const fuq_stack* stack, fuq_raster** out_mean,
                                 fuq_raster** out_variance,
                                 fuq_raster** out_std);

/* Distance metrics between a ground-truth mask and a predicted mask
 * (centroid-oriented boundary distance, average surface distance,
 * Hausdorff), serialized as a JSON report. */
FUQ_API fuq_status fuq_distance_report_json(const fuq_raster* gt,
                                            const fuq_raster* pred,
                                            const fuq_config* config,
                                            char** out_json);

/* Calibration scores (ECE, Brier, NLL, average precision) of a probability
 * map against a mask. */
FUQ_API fuq_status fuq_calibration_report_json(const fuq_raster* probability,
                                               const fuq_raster* gt,
                                               const fuq_config* config,
                                               char** out_json);

/* Calibration over an events manifest (CSV: event_id,gt_path,stack_path):
 * per-event scores plus a pooled score over all pixels. */
FUQ_API fuq_status fuq_calibration_manifest_json(const char* manifest_path,
                                                 const fuq_config* config,
                                                 char** out_json);

/* Full buffer analysis over an events manifest: per-event distance
 * metrics, per-metric KDE + peak. Runs events on a worker pool; the
 * report is independent of the worker count. */
FUQ_API fuq_status fuq_buffer_report_json(const char* manifest_path,
                                          const fuq_config* config,
                                          char** out_json);

/* ---- synthetic suites ------------------------------------------------ */

typedef struct fuq_synth_params {
  const char* shape; /* "disk", "rectangle", "two_blobs" */
  uint32_t height;
  uint32_t width;
  double resolution_m;
  int32_t row, col;      /* center (disk/blob) or top-left (rectangle) */
  int32_t size_a;        /* radius / rect height / first blob radius */
  int32_t size_b;        /* rect width / second blob radius */
  int32_t row2, col2;    /* second blob center */
  int32_t offset_row, offset_col;
  int32_t dilate_by;
  double noise;          /* perimeter flip probability */
  uint64_t seed;
  int32_t n_members;
  int32_t n_events;
} fuq_synth_params;

FUQ_API void fuq_synth_params_default(fuq_synth_params* params);

/* Writes per-event gt + stack f32bin files and a manifest.csv under
 * out_dir; returns the manifest path. */
FUQ_API fuq_status fuq_synth_suite(const char* out_dir,
                                   const fuq_synth_params* params,
                                   char** out_manifest_path);

/* ---- verification ---------------------------------------------------- */

/* Runs the oracle-vs-accelerated equivalence suites (distance transform,
 * Hausdorff, metric laws). Writes a one-line-per-suite text summary to
 * out_text and the number of failed suites to out_failed. */
FUQ_API fuq_status fuq_verify_run(uint64_t seed, char** out_text,
                                  int* out_failed);

FUQ_API void fuq_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* FIRELINE_UQ_H */
