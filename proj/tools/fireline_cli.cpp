// Command-line front end for the fireline uncertainty library. All
// computation goes through the C API; this file only wires flags, files,
// and SVG rendering of buffer-report density curves.
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fireline_uq.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;

struct RasterDeleter {
  void operator()(fuq_raster* r) const { fuq_raster_free(r); }
};
struct StackDeleter {
  void operator()(fuq_stack* s) const { fuq_stack_free(s); }
};
struct StringDeleter {
  void operator()(char* s) const { fuq_string_free(s); }
};
using RasterPtr = std::unique_ptr<fuq_raster, RasterDeleter>;
using StackPtr = std::unique_ptr<fuq_stack, StackDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Shared flag values; each subcommand registers only the flags it uses.
struct Options {
  double threshold = 0.95;
  double resolution_m = 375.0;
  uint32_t ece_bins = 10;
  double nll_epsilon = 1e-7;
  double kde_bandwidth = 0.0;  // 0: automatic
  uint32_t kde_grid = 512;
  std::string format;  // empty: by file extension
  std::string out;     // empty: stdout
};

fuq_config make_config(const Options& o) {
  fuq_config c;
  fuq_config_default(&c);
  c.threshold = o.threshold;
  c.resolution_m = o.resolution_m;
  c.ece_bins = o.ece_bins;
  c.nll_epsilon = o.nll_epsilon;
  c.kde_bandwidth_m = o.kde_bandwidth;
  c.kde_grid = o.kde_grid;
  return c;
}

int fail(fuq_status status) {
  std::cerr << "error: " << fuq_last_error() << "\n";
  return status == FUQ_ERR_INTERNAL ? kExitInternal : kExitInput;
}

int fail_msg(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitInput;
}

const char* format_or_null(const Options& o) {
  return o.format.empty() ? nullptr : o.format.c_str();
}

int write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream f(out_path, std::ios::binary);
  f << text;
  f.flush();
  if (!f) return fail_msg("cannot write '" + out_path + "'");
  return kExitOk;
}

int load_mask(const std::string& path, const Options& o, RasterPtr& out) {
  fuq_raster* raw = nullptr;
  fuq_status st =
      fuq_raster_load(path.c_str(), format_or_null(o), 1, o.resolution_m, &raw);
  if (st != FUQ_OK) return fail(st);
  out.reset(raw);
  return kExitOk;
}

// Loads a prediction input: a stacked file / member directory is averaged
// into its mean probability map, a plain raster is used as-is.
int load_probability(const std::string& path, const Options& o,
                     RasterPtr& out) {
  if (fuq_path_is_stack(path.c_str())) {
    fuq_stack* stack_raw = nullptr;
    fuq_status st = fuq_stack_load(path.c_str(), o.resolution_m, &stack_raw);
    if (st != FUQ_OK) return fail(st);
    StackPtr stack(stack_raw);
    fuq_raster* mean = nullptr;
    st = fuq_aggregate(stack.get(), &mean, nullptr, nullptr);
    if (st != FUQ_OK) return fail(st);
    out.reset(mean);
    return kExitOk;
  }
  fuq_raster* raw = nullptr;
  fuq_status st =
      fuq_raster_load(path.c_str(), format_or_null(o), 0, o.resolution_m, &raw);
  if (st != FUQ_OK) return fail(st);
  out.reset(raw);
  return kExitOk;
}

// ---- SVG rendering of one buffer metric -------------------------------

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Histogram + KDE polyline, self-contained (inline styling only).
std::string render_metric_svg(const std::string& metric_name,
                              const json& metric) {
  const std::vector<double> samples =
      metric.at("samples_m").get<std::vector<double>>();
  const std::vector<double> xs =
      metric.at("curve").at("xs_m").get<std::vector<double>>();
  const std::vector<double> ys =
      metric.at("curve").at("ys").get<std::vector<double>>();
  const double peak = metric.at("peak_m").get<double>();

  double x0 = xs.front();
  double x1 = xs.back();
  if (x1 <= x0) {  // degenerate single-point curve
    x0 -= 1.0;
    x1 += 1.0;
  }

  // Density-scaled histogram so bars and curve share the y axis.
  constexpr int kBins = 24;
  const double bin_w = (x1 - x0) / kBins;
  std::vector<double> hist(kBins, 0.0);
  for (double v : samples) {
    int b = static_cast<int>((v - x0) / bin_w);
    if (b < 0) b = 0;
    if (b >= kBins) b = kBins - 1;
    hist[static_cast<size_t>(b)] += 1.0;
  }
  double y_max = 0.0;
  for (double& h : hist) {
    h /= static_cast<double>(samples.size()) * bin_w;
    y_max = std::max(y_max, h);
  }
  for (double y : ys) y_max = std::max(y_max, y);
  if (y_max <= 0.0) y_max = 1.0;
  y_max *= 1.05;

  constexpr double W = 640, H = 400, ml = 64, mr = 20, mt = 28, mb = 48;
  const double pw = W - ml - mr;
  const double ph = H - mt - mb;
  auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return mt + ph - y / y_max * ph; };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(W) +
       "\" height=\"" + num(H) + "\" viewBox=\"0 0 " + num(W) + " " + num(H) +
       "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + num(W) + "\" height=\"" + num(H) +
       "\" fill=\"#ffffff\"/>\n";
  s += "<text x=\"" + num(ml) + "\" y=\"18\" font-family=\"sans-serif\" "
       "font-size=\"14\" fill=\"#222222\">" +
       metric_name + " distance density (peak " + num(peak) + " m)</text>\n";

  for (int b = 0; b < kBins; ++b) {
    if (hist[static_cast<size_t>(b)] <= 0.0) continue;
    const double bx0 = px(x0 + b * bin_w);
    const double bx1 = px(x0 + (b + 1) * bin_w);
    const double by = py(hist[static_cast<size_t>(b)]);
    s += "<rect x=\"" + num(bx0) + "\" y=\"" + num(by) + "\" width=\"" +
         num(bx1 - bx0) + "\" height=\"" + num(mt + ph - by) +
         "\" fill=\"#9bbbe3\" fill-opacity=\"0.8\"/>\n";
  }

  std::string points;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) points += " ";
    points += num(px(xs[i])) + "," + num(py(ys[i]));
  }
  s += "<polyline points=\"" + points +
       "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n";

  // Axes with a few labeled ticks.
  s += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt + ph) + "\" x2=\"" +
       num(ml + pw) + "\" y2=\"" + num(mt + ph) +
       "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  s += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(ml) +
       "\" y2=\"" + num(mt + ph) + "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double x = x0 + (x1 - x0) * t / 4.0;
    s += "<line x1=\"" + num(px(x)) + "\" y1=\"" + num(mt + ph) + "\" x2=\"" +
         num(px(x)) + "\" y2=\"" + num(mt + ph + 5) +
         "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    s += "<text x=\"" + num(px(x)) + "\" y=\"" + num(mt + ph + 20) +
         "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#222222\" "
         "text-anchor=\"middle\">" +
         num(x) + "</text>\n";
  }
  for (int t = 0; t <= 3; ++t) {
    const double y = y_max * t / 3.0;
    s += "<line x1=\"" + num(ml - 5) + "\" y1=\"" + num(py(y)) + "\" x2=\"" +
         num(ml) + "\" y2=\"" + num(py(y)) +
         "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    s += "<text x=\"" + num(ml - 8) + "\" y=\"" + num(py(y) + 4) +
         "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#222222\" "
         "text-anchor=\"end\">" +
         num(y) + "</text>\n";
  }
  s += "<text x=\"" + num(ml + pw / 2) + "\" y=\"" + num(H - 8) +
       "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222222\" "
       "text-anchor=\"middle\">distance (m)</text>\n";
  s += "</svg>\n";
  return s;
}

int write_buffer_svgs(const std::string& svg_dir, const std::string& json_text) {
  json report;
  try {
    report = json::parse(json_text);
  } catch (const std::exception& e) {
    std::cerr << "error: cannot parse buffer report: " << e.what() << "\n";
    return kExitInternal;
  }
  std::error_code ec;
  fs::create_directories(svg_dir, ec);
  if (ec) return fail_msg("cannot create directory '" + svg_dir + "'");
  for (const char* name : {"centroid", "asd", "hausdorff"}) {
    const json& metric = report.at("metrics").at(name);
    if (!metric.at("available").get<bool>()) {
      std::cerr << "note: metric '" << name
                << "' unavailable, no SVG written\n";
      continue;
    }
    const fs::path path = fs::path(svg_dir) / ("buffer_" + std::string(name) + ".svg");
    std::ofstream f(path, std::ios::binary);
    f << render_metric_svg(name, metric);
    f.flush();
    if (!f) return fail_msg("cannot write '" + path.string() + "'");
  }
  return kExitOk;
}

// ---- subcommands -------------------------------------------------------

int run_metrics(const std::string& gt_path, const std::string& pred_path,
                const Options& o) {
  RasterPtr gt;
  int rc = load_mask(gt_path, o, gt);
  if (rc != kExitOk) return rc;

  RasterPtr pred;
  rc = load_probability(pred_path, o, pred);
  if (rc != kExitOk) return rc;
  if (!fuq_raster_is_mask(pred.get())) {
    fuq_raster* mask = nullptr;
    fuq_status st = fuq_threshold(pred.get(), o.threshold, &mask);
    if (st != FUQ_OK) return fail(st);
    pred.reset(mask);
  }

  fuq_config config = make_config(o);
  char* json_raw = nullptr;
  fuq_status st =
      fuq_distance_report_json(gt.get(), pred.get(), &config, &json_raw);
  if (st != FUQ_OK) return fail(st);
  StringPtr json_text(json_raw);
  return write_output(o.out, json_text.get());
}

int run_calibrate(const std::string& prob_path, const std::string& gt_path,
                  const std::string& manifest, const Options& o) {
  fuq_config config = make_config(o);
  char* json_raw = nullptr;
  fuq_status st;
  if (!manifest.empty()) {
    if (!prob_path.empty() || !gt_path.empty()) {
      return fail_msg("--manifest replaces the PROB and GT arguments");
    }
    st = fuq_calibration_manifest_json(manifest.c_str(), &config, &json_raw);
  } else {
    if (prob_path.empty() || gt_path.empty()) {
      return fail_msg("calibrate needs PROB and GT paths (or --manifest)");
    }
    RasterPtr prob;
    int rc = load_probability(prob_path, o, prob);
    if (rc != kExitOk) return rc;
    RasterPtr gt;
    rc = load_mask(gt_path, o, gt);
    if (rc != kExitOk) return rc;
    st = fuq_calibration_report_json(prob.get(), gt.get(), &config, &json_raw);
  }
  if (st != FUQ_OK) return fail(st);
  StringPtr json_text(json_raw);
  return write_output(o.out, json_text.get());
}

int run_buffer(const std::string& manifest, const std::string& svg_dir,
               const Options& o) {
  fuq_config config = make_config(o);
  char* json_raw = nullptr;
  fuq_status st =
      fuq_buffer_report_json(manifest.c_str(), &config, &json_raw);
  if (st != FUQ_OK) return fail(st);
  StringPtr json_text(json_raw);
  if (!svg_dir.empty()) {
    int rc = write_buffer_svgs(svg_dir, json_text.get());
    if (rc != kExitOk) return rc;
  }
  return write_output(o.out, json_text.get());
}

int run_aggregate(const std::string& stack_path, const std::string& out_mean,
                  const std::string& out_variance, const std::string& out_std,
                  const Options& o) {
  if (out_mean.empty() && out_variance.empty() && out_std.empty()) {
    return fail_msg(
        "aggregate needs at least one of --out-mean, --out-variance, "
        "--out-std");
  }
  fuq_stack* stack_raw = nullptr;
  fuq_status st =
      fuq_stack_load(stack_path.c_str(), o.resolution_m, &stack_raw);
  if (st != FUQ_OK) return fail(st);
  StackPtr stack(stack_raw);

  fuq_raster *mean_raw = nullptr, *var_raw = nullptr, *std_raw = nullptr;
  st = fuq_aggregate(stack.get(), out_mean.empty() ? nullptr : &mean_raw,
                     out_variance.empty() ? nullptr : &var_raw,
                     out_std.empty() ? nullptr : &std_raw);
  if (st != FUQ_OK) return fail(st);
  RasterPtr mean(mean_raw), variance(var_raw), stddev(std_raw);

  const char* fmt = format_or_null(o);
  if (!out_mean.empty()) {
    st = fuq_raster_save(mean.get(), out_mean.c_str(), fmt);
    if (st != FUQ_OK) return fail(st);
  }
  if (!out_variance.empty()) {
    st = fuq_raster_save(variance.get(), out_variance.c_str(), fmt);
    if (st != FUQ_OK) return fail(st);
  }
  if (!out_std.empty()) {
    st = fuq_raster_save(stddev.get(), out_std.c_str(), fmt);
    if (st != FUQ_OK) return fail(st);
  }
  return kExitOk;
}

int run_synth(const std::string& out_dir, const fuq_synth_params& params) {
  char* manifest_raw = nullptr;
  fuq_status st = fuq_synth_suite(out_dir.c_str(), &params, &manifest_raw);
  if (st != FUQ_OK) return fail(st);
  StringPtr manifest(manifest_raw);
  std::cout << manifest.get() << "\n";
  return kExitOk;
}

int run_verify(uint64_t seed) {
  char* text_raw = nullptr;
  int failed = 0;
  fuq_status st = fuq_verify_run(seed, &text_raw, &failed);
  if (st != FUQ_OK) return fail(st);
  StringPtr text(text_raw);
  std::cout << text.get();
  if (failed != 0) {
    std::cerr << "error: " << failed << " verification suite(s) failed\n";
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wildfire prediction spatial-uncertainty toolkit"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Raster format override")
        ->check(CLI::IsMember({"f32bin", "csv", "pgm"}));
  };
  auto add_resolution = [&](CLI::App* cmd) {
    cmd->add_option("--resolution-m", o.resolution_m,
                    "Pixel resolution for formats without one embedded");
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out, "Write the JSON report here (default stdout)");
  };

  // metrics
  std::string gt_path, pred_path;
  CLI::App* metrics =
      app.add_subcommand("metrics", "Boundary distance metrics between a "
                                    "ground-truth mask and a prediction");
  metrics->add_option("gt", gt_path, "Ground-truth mask")->required();
  metrics->add_option("pred", pred_path,
                      "Predicted mask, probability raster, or stack")
      ->required();
  metrics->add_option("--threshold", o.threshold,
                      "Probability threshold for soft predictions");
  add_resolution(metrics);
  add_format(metrics);
  add_out(metrics);

  // calibrate
  std::string prob_path, cal_gt_path, cal_manifest;
  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "Calibration scores of probabilities against a mask");
  calibrate->add_option("prob", prob_path, "Probability raster or stack");
  calibrate->add_option("gt", cal_gt_path, "Ground-truth mask");
  calibrate->add_option("--manifest", cal_manifest,
                        "Events manifest (per-event + pooled scores)");
  calibrate->add_option("--ece-bins", o.ece_bins, "Calibration bin count");
  calibrate->add_option("--nll-epsilon", o.nll_epsilon,
                        "Probability clamp for the log-likelihood");
  add_resolution(calibrate);
  add_format(calibrate);
  add_out(calibrate);

  // buffer
  std::string buf_manifest, svg_dir;
  CLI::App* buffer = app.add_subcommand(
      "buffer", "Distance-sample density and peak (buffer zone) per metric");
  buffer->add_option("manifest", buf_manifest, "Events manifest CSV")
      ->required();
  buffer->add_option("--threshold", o.threshold,
                     "Probability threshold for stack means");
  buffer->add_option("--kde-bandwidth", o.kde_bandwidth,
                     "Fixed KDE bandwidth in meters (default: Silverman)");
  buffer->add_option("--kde-grid", o.kde_grid, "KDE evaluation grid points");
  buffer->add_option("--svg", svg_dir,
                     "Also write one histogram+density SVG per metric here");
  add_resolution(buffer);
  add_out(buffer);

  // aggregate
  std::string stack_path, out_mean, out_variance, out_std;
  CLI::App* aggregate = app.add_subcommand(
      "aggregate", "Per-pixel mean/variance/std over a prediction stack");
  aggregate->add_option("stack", stack_path, "Stacked f32bin or member dir")
      ->required();
  aggregate->add_option("--out-mean", out_mean, "Mean raster path");
  aggregate->add_option("--out-variance", out_variance, "Variance raster path");
  aggregate->add_option("--out-std", out_std, "Std raster path");
  add_resolution(aggregate);
  add_format(aggregate);

  // synth
  std::string synth_dir, shape = "disk";
  fuq_synth_params params;
  fuq_synth_params_default(&params);
  uint32_t s_height = params.height, s_width = params.width;
  double s_resolution = params.resolution_m, s_noise = params.noise;
  int32_t s_row = params.row, s_col = params.col, s_size_a = params.size_a,
          s_size_b = params.size_b, s_row2 = params.row2, s_col2 = params.col2,
          s_offset_row = params.offset_row, s_offset_col = params.offset_col,
          s_dilate = params.dilate_by, s_members = params.n_members,
          s_events = params.n_events;
  uint64_t s_seed = params.seed;
  CLI::App* synth = app.add_subcommand(
      "synth", "Write a synthetic ground-truth + prediction-stack suite");
  synth->add_option("out_dir", synth_dir, "Output directory")->required();
  synth->add_option("--shape", shape, "disk, rectangle, or two_blobs")
      ->check(CLI::IsMember({"disk", "rectangle", "two_blobs"}));
  synth->add_option("--height", s_height, "Grid height");
  synth->add_option("--width", s_width, "Grid width");
  synth->add_option("--resolution-m", s_resolution, "Pixel resolution");
  synth->add_option("--row", s_row, "Shape row (center or top)");
  synth->add_option("--col", s_col, "Shape col (center or left)");
  synth->add_option("--size-a", s_size_a, "Radius / rect height");
  synth->add_option("--size-b", s_size_b, "Rect width / second radius");
  synth->add_option("--row2", s_row2, "Second blob center row");
  synth->add_option("--col2", s_col2, "Second blob center col");
  synth->add_option("--offset-row", s_offset_row, "Prediction row shift");
  synth->add_option("--offset-col", s_offset_col, "Prediction col shift");
  synth->add_option("--dilate-by", s_dilate, "Prediction dilation passes");
  synth->add_option("--noise", s_noise, "Perimeter flip probability");
  synth->add_option("--seed", s_seed, "Noise seed");
  synth->add_option("--members", s_members, "Stack members per event");
  synth->add_option("--events", s_events, "Event count");

  // verify
  uint64_t verify_seed = 20260819;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run oracle-vs-accelerated equivalence suites");
  verify->add_option("--seed", verify_seed, "Suite seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (metrics->parsed()) return run_metrics(gt_path, pred_path, o);
    if (calibrate->parsed()) {
      return run_calibrate(prob_path, cal_gt_path, cal_manifest, o);
    }
    if (buffer->parsed()) return run_buffer(buf_manifest, svg_dir, o);
    if (aggregate->parsed()) {
      return run_aggregate(stack_path, out_mean, out_variance, out_std, o);
    }
    if (synth->parsed()) {
      params.shape = shape.c_str();
      params.height = s_height;
      params.width = s_width;
      params.resolution_m = s_resolution;
      params.row = s_row;
      params.col = s_col;
      params.size_a = s_size_a;
      params.size_b = s_size_b;
      params.row2 = s_row2;
      params.col2 = s_col2;
      params.offset_row = s_offset_row;
      params.offset_col = s_offset_col;
      params.dilate_by = s_dilate;
      params.noise = s_noise;
      params.seed = s_seed;
      params.n_members = s_members;
      params.n_events = s_events;
      return run_synth(synth_dir, params);
    }
    if (verify->parsed()) return run_verify(verify_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInput;
}
