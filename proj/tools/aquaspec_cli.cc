/* Copyright 2026 The Aquaspec Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// aquaspec command-line front end. Every operation goes through the public C
// interface in aquaspec/aquaspec.h.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aquaspec/aquaspec.h"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitCompute = 3;

// Failure carrying the process exit code.
struct CliError {
  int exit_code;
  std::string message;
};

int ExitCodeFor(aq_status s) {
  switch (s) {
    case AQ_OK:
      return kExitOk;
    case AQ_ERR_INVALID_ARGUMENT:
    case AQ_ERR_EVEN_WINDOW:
    case AQ_ERR_NON_POSITIVE_WEIGHT:
      return kExitUsage;
    case AQ_ERR_EMPTY_MAX_DOMAIN:
    case AQ_ERR_NO_DEFINED_PIXELS:
    case AQ_ERR_DEGENERATE_RANGE:
    case AQ_ERR_NO_VALID_PIXELS:
    case AQ_ERR_EMPTY_MATRIX:
    case AQ_ERR_INTERNAL:
      return kExitCompute;
    default:
      return kExitInput;
  }
}

void Check(aq_status s) {
  if (s != AQ_OK) throw CliError{ExitCodeFor(s), aq_last_error()};
}

[[noreturn]] void Usage(const std::string& message) { throw CliError{kExitUsage, message}; }

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using ScenePtr = std::unique_ptr<aq_scene, Deleter<aq_scene, aq_scene_free>>;
using MapPtr = std::unique_ptr<aq_map, Deleter<aq_map, aq_map_free>>;
using MaskPtr = std::unique_ptr<aq_mask, Deleter<aq_mask, aq_mask_free>>;
using ProbPtr = std::unique_ptr<aq_prob_map, Deleter<aq_prob_map, aq_prob_map_free>>;
using ProfilePtr =
    std::unique_ptr<aq_depth_profile, Deleter<aq_depth_profile, aq_depth_profile_free>>;
using PatchesPtr = std::unique_ptr<aq_patch_list, Deleter<aq_patch_list, aq_patch_list_free>>;
using PalettePtr = std::unique_ptr<aq_palette, Deleter<aq_palette, aq_palette_free>>;
using ImagePtr = std::unique_ptr<aq_image, Deleter<aq_image, aq_image_free>>;

std::string TakeString(char* s) {
  std::string out(s);
  aq_string_free(s);
  return out;
}

ScenePtr LoadScene(const std::string& path) {
  aq_scene* s = nullptr;
  Check(aq_scene_load(path.c_str(), &s));
  return ScenePtr(s);
}

MapPtr ReadMap(const std::string& path) {
  aq_map* m = nullptr;
  Check(aq_map_read(path.c_str(), &m));
  return MapPtr(m);
}

MaskPtr ReadMask(const std::string& path) {
  aq_mask* m = nullptr;
  Check(aq_mask_read(path.c_str(), &m));
  return MaskPtr(m);
}

bool IsPng(const std::string& path) {
  std::string ext = std::filesystem::path(path).extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".png";
}

aq_index_kind ParseKind(const std::string& name) {
  aq_index_kind kind;
  if (aq_index_kind_parse(name.c_str(), &kind) != AQ_OK) {
    Usage("unknown index kind '" + name + "'");
  }
  return kind;
}

void Emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string Percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", v * 100.0);
  return buf;
}

std::string MeanSigma(double mean, double sigma) {
  char* s = nullptr;
  Check(aq_format_mean_sigma(mean, sigma, &s));
  return TakeString(s);
}

// ---- index ------------------------------------------------------------------

struct IndexArgs {
  std::string manifest;
  std::string kind;
  std::string mask;
  std::string out;
  bool pretty = false;
};

int RunIndex(const IndexArgs& a) {
  const aq_index_kind kind = ParseKind(a.kind);
  ScenePtr scene = LoadScene(a.manifest);
  MaskPtr mask;
  if (!a.mask.empty()) {
    int w, h;
    Check(aq_scene_size(scene.get(), &w, &h));
    aq_mask* m = nullptr;
    Check(aq_mask_read(a.mask.c_str(), &m));
    mask.reset(m);
    int mw, mh;
    Check(aq_mask_size(m, &mw, &mh));
    if (mw != w || mh != h) {
      throw CliError{kExitInput, "MaskDimensionMismatch: mask '" + a.mask + "' is " +
                                     std::to_string(mw) + "x" + std::to_string(mh) +
                                     ", scene is " + std::to_string(w) + "x" +
                                     std::to_string(h)};
    }
  }
  aq_map* raw = nullptr;
  Check(aq_index_compute(scene.get(), kind, mask.get(), &raw));
  MapPtr map(raw);
  Check(aq_map_write(map.get(), a.out.c_str()));

  std::ifstream side(a.out + ".json");
  json sidecar = json::parse(side);
  json report = {{"kind", aq_index_kind_name(kind)},
                 {"out", a.out},
                 {"stats", sidecar.value("stats", json(nullptr))}};
  double b08_max;
  if (aq_map_b08_max(map.get(), &b08_max)) report["b08_max"] = b08_max;
  if (a.pretty) {
    const json& st = report["stats"];
    if (st.is_null()) {
      std::cout << report["kind"].get<std::string>() << ": no defined pixels\n";
    } else {
      std::cout << report["kind"].get<std::string>() << ": "
                << MeanSigma(st["mean"].get<double>(), st["sigma"].get<double>())
                << " (n=" << st["count"].get<uint64_t>() << ")\n";
    }
  } else {
    Emit(report);
  }
  return kExitOk;
}

// ---- segment ------------------------------------------------------------------

struct SegmentArgs {
  std::string map;
  std::string method = "fixed";
  std::optional<double> t;
  std::string preset;
  int bins = 256;
  std::string out;
  bool pretty = false;
};

int RunSegment(const SegmentArgs& a) {
  double threshold = 0.0;
  if (a.method == "fixed") {
    if (a.t && !a.preset.empty()) Usage("--t and --preset are mutually exclusive");
    if (a.t) {
      threshold = *a.t;
    } else if (a.preset == "ndwi") {
      threshold = 0.2;
    } else if (a.preset == "mndwi") {
      threshold = 0.35;
    } else if (a.preset.empty()) {
      Usage("--method fixed needs --t or --preset");
    } else {
      Usage("unknown preset '" + a.preset + "' (expected ndwi or mndwi)");
    }
  } else if (a.method == "otsu") {
    if (a.t || !a.preset.empty()) Usage("--t and --preset apply to --method fixed only");
  } else {
    Usage("unknown method '" + a.method + "' (expected fixed or otsu)");
  }
  MapPtr map = ReadMap(a.map);
  if (aq_map_get_type(map.get()) != AQ_MAP_INDEX) {
    throw CliError{kExitInput, "KindMismatch: '" + a.map + "' is not an index map"};
  }
  aq_mask* raw = nullptr;
  if (a.method == "fixed") {
    Check(aq_threshold_fixed(map.get(), threshold, &raw));
  } else {
    Check(aq_threshold_otsu(map.get(), a.bins, &threshold, &raw));
  }
  MaskPtr mask(raw);
  Check(aq_mask_write(mask.get(), a.out.c_str()));
  double fraction = 0.0;
  Check(aq_mask_water_fraction(mask.get(), &fraction));
  aq_index_kind kind;
  Check(aq_map_kind(map.get(), &kind));

  if (a.pretty) {
    std::cout << "method     " << a.method << "\nthreshold  " << threshold
              << "\nwater      " << Percent(fraction) << "\n";
  } else {
    Emit({{"method", a.method},
          {"source_kind", aq_index_kind_name(kind)},
          {"threshold", threshold},
          {"water_fraction", fraction},
          {"out", a.out}});
  }
  return kExitOk;
}

// ---- stats --------------------------------------------------------------------

struct StatsArgs {
  std::string map;
  std::string mask;
  bool sigma = false;
  int window = 5;
  std::string depth;
  int bins = 10;
  std::optional<double> depth_scale;
  std::string out;
  bool pretty = false;
};

int RunStats(const StatsArgs& a) {
  if (a.sigma && !a.depth.empty()) Usage("--sigma and --depth-profile are mutually exclusive");
  if ((a.sigma || !a.depth.empty()) && a.out.empty()) Usage("--out is required");
  if (a.window % 2 == 0) Usage("--window must be odd, got " + std::to_string(a.window));
  if (a.depth_scale && !(*a.depth_scale > 0.0)) Usage("--depth-scale must be positive");

  MapPtr map = ReadMap(a.map);
  MaskPtr mask = ReadMask(a.mask);
  if (aq_map_get_type(map.get()) != AQ_MAP_INDEX) {
    throw CliError{kExitInput, "KindMismatch: '" + a.map + "' is not an index map"};
  }
  aq_global_stats g;
  Check(aq_map_global_stats(map.get(), mask.get(), &g));
  json report = {{"count", g.count}};
  if (g.count > 0) {
    report["mean"] = g.mean;
    report["sigma"] = g.sigma;
    report["min"] = g.min;
    report["max"] = g.max;
    report["summary"] = MeanSigma(g.mean, g.sigma);
  }
  std::ostringstream human;
  human << "water pixels  " << g.count << "\n";
  if (g.count > 0) human << "mean ± sigma  " << report["summary"].get<std::string>() << "\n";

  if (a.sigma) {
    aq_map* raw = nullptr;
    Check(aq_local_sigma(map.get(), mask.get(), a.window, &raw));
    MapPtr sigma(raw);
    Check(aq_map_write(sigma.get(), a.out.c_str()));
    aq_homogeneity_counts c;
    Check(aq_homogeneity_counts_of(sigma.get(), &c));
    const double total = static_cast<double>(c.stable + c.transitional + c.variable);
    auto frac = [&](uint64_t n) { return total > 0 ? json(n / total) : json(nullptr); };
    report["window"] = a.window;
    report["sigma_out"] = a.out;
    report["homogeneity"] = {{"stable", frac(c.stable)},
                             {"transitional", frac(c.transitional)},
                             {"variable", frac(c.variable)},
                             {"counts",
                              {{"stable", c.stable},
                               {"transitional", c.transitional},
                               {"variable", c.variable}}}};
    if (total > 0) {
      human << "stable        " << Percent(c.stable / total) << "\n"
            << "transitional  " << Percent(c.transitional / total) << "\n"
            << "variable      " << Percent(c.variable / total) << "\n";
    }
  } else if (!a.depth.empty()) {
    MapPtr depth = ReadMap(a.depth);
    aq_depth_profile* raw = nullptr;
    Check(aq_depth_profile_compute(map.get(), depth.get(), mask.get(), a.bins,
                                   a.depth_scale.value_or(0.0), &raw));
    ProfilePtr profile(raw);
    const std::string bins_path = a.out + ".json";
    Check(aq_depth_profile_write_csv(profile.get(), a.out.c_str()));
    Check(aq_depth_profile_write_json(profile.get(), bins_path.c_str()));
    const size_t pairs = aq_depth_profile_pair_count(profile.get());
    report["depth_profile"] = {{"pairs", pairs}, {"csv", a.out}, {"bins", bins_path}};
    human << "depth pairs   " << pairs << "\n";
  }
  if (a.pretty) {
    std::cout << human.str();
  } else {
    Emit(report);
  }
  return kExitOk;
}

// ---- eval ---------------------------------------------------------------------

struct EvalArgs {
  std::string pred;
  std::string ref;
  bool loss = false;
  bool pretty = false;
};

int RunEval(const EvalArgs& a) {
  MaskPtr ref = ReadMask(a.ref);
  if (a.loss) {
    aq_prob_map* raw = nullptr;
    Check(aq_prob_map_read(a.pred.c_str(), &raw));
    ProbPtr pred(raw);
    aq_loss l;
    Check(aq_loss_composite(pred.get(), ref.get(), &l));
    if (a.pretty) {
      std::cout << "total  " << l.total << "\nce     " << l.ce << "\ndice   " << l.dice << "\n";
    } else {
      Emit({{"total", l.total}, {"ce", l.ce}, {"dice", l.dice}});
    }
    return kExitOk;
  }
  MaskPtr pred = ReadMask(a.pred);
  aq_confusion_matrix cm;
  Check(aq_confusion(pred.get(), ref.get(), &cm));
  char* text = nullptr;
  if (a.pretty) {
    Check(aq_metrics_to_table(&cm, &text));
    std::cout << TakeString(text);
  } else {
    Check(aq_metrics_to_json(&cm, &text));
    std::cout << TakeString(text) << "\n";
  }
  return kExitOk;
}

// ---- sample -------------------------------------------------------------------

struct SampleArgs {
  std::string manifest;
  std::string mask;
  int count = 25;
  int size = 512;
  double min_water = 0.015;
  uint64_t seed = 0;
  int64_t max_attempts = 0;
  std::string out;
};

int RunSample(const SampleArgs& a) {
  ScenePtr scene = LoadScene(a.manifest);
  MaskPtr mask = ReadMask(a.mask);
  aq_patch_list* raw = nullptr;
  Check(aq_sample_patches(scene.get(), mask.get(), a.count, a.size, a.min_water, a.seed,
                          a.max_attempts, &raw));
  PatchesPtr patches(raw);
  if (aq_patch_list_shortfall(patches.get())) {
    std::cerr << "aquaspec: only " << aq_patch_list_size(patches.get()) << " of " << a.count
              << " patches met the water threshold\n";
  }
  char* text = nullptr;
  Check(aq_patch_list_to_json(patches.get(), &text));
  const std::string body = TakeString(text);
  if (!a.out.empty()) {
    std::ofstream f(a.out, std::ios::binary);
    f << body;
    if (!f) throw CliError{kExitInput, "IoError: cannot write '" + a.out + "'"};
  }
  std::cout << body;
  return kExitOk;
}

// ---- render -------------------------------------------------------------------

struct RenderArgs {
  std::string input;
  std::string palette;
  bool colorbar = false;
  int scale = 1;
  std::string title;
  std::string overlay;
  double alpha = 0.5;
  std::string water_color = "#08306B";
  std::string out;
};

bool ParseHex(const std::string& s, uint8_t rgb[3]) {
  if (s.size() != 7 || s[0] != '#') return false;
  for (int i = 0; i < 3; ++i) {
    const std::string part = s.substr(1 + 2 * i, 2);
    char* end = nullptr;
    const long v = std::strtol(part.c_str(), &end, 16);
    if (end != part.c_str() + 2) return false;
    rgb[i] = static_cast<uint8_t>(v);
  }
  return true;
}

PalettePtr ResolvePalette(const std::string& spec, const aq_map* map) {
  aq_palette* raw = nullptr;
  if (spec.empty()) {
    Check(aq_palette_for_map(map, &raw));
  } else if (spec.find(".json") != std::string::npos || spec.find('/') != std::string::npos ||
             std::filesystem::is_regular_file(spec)) {
    Check(aq_palette_load_json(spec.c_str(), &raw));
  } else {
    Check(aq_palette_builtin(spec.c_str(), &raw));
  }
  return PalettePtr(raw);
}

int RunRender(const RenderArgs& a) {
  if (a.scale < 1) Usage("--scale must be at least 1");
  ImagePtr image;
  if (!a.overlay.empty()) {
    uint8_t rgb[3];
    if (!ParseHex(a.water_color, rgb)) Usage("--water-color must look like #RRGGBB");
    ScenePtr scene = LoadScene(a.overlay);
    MaskPtr mask = ReadMask(a.input);
    aq_image* raw = nullptr;
    Check(aq_render_mask_overlay(scene.get(), mask.get(), rgb, a.alpha, &raw));
    image.reset(raw);
  } else {
    MapPtr map;
    if (IsPng(a.input)) {
      MaskPtr mask = ReadMask(a.input);
      aq_map* raw = nullptr;
      Check(aq_map_from_mask(mask.get(), &raw));
      map.reset(raw);
    } else {
      map = ReadMap(a.input);
    }
    PalettePtr palette = ResolvePalette(a.palette, map.get());
    aq_render_options opts{a.scale, a.colorbar ? 1 : 0,
                           a.title.empty() ? nullptr : a.title.c_str()};
    aq_image* raw = nullptr;
    Check(aq_render_map(map.get(), palette.get(), &opts, &raw));
    image.reset(raw);
  }
  json warnings = json::array();
  for (size_t i = 0; i < aq_image_warning_count(image.get()); ++i) {
    const char* w = aq_image_warning(image.get(), i);
    std::cerr << "aquaspec: warning: " << w << "\n";
    warnings.push_back(w);
  }
  Check(aq_image_write_png(image.get(), a.out.c_str()));
  int w, h;
  Check(aq_image_size(image.get(), &w, &h));
  Emit({{"out", a.out}, {"width", w}, {"height", h}, {"warnings", warnings}});
  return kExitOk;
}

// ---- synth --------------------------------------------------------------------

struct SynthArgs {
  std::string out;
  int width = 256;
  int height = 256;
  double radius = 0.0;
  uint64_t seed = 7;
};

int RunSynth(const SynthArgs& a) {
  Check(aq_synth_write(a.out.c_str(), a.width, a.height, a.radius, a.seed));
  Emit({{"manifest", (std::filesystem::path(a.out) / "manifest.json").string()},
        {"truth", (std::filesystem::path(a.out) / "truth.png").string()}});
  return kExitOk;
}

// ---- configuration files -------------------------------------------------------

// Reads {"<subcommand>": {"<flag>": value, ...}, "<global flag>": value}.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool,
                        std::string) const override {
    return Collect(app, default_also).dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json root;
    try {
      root = json::parse(input);
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
    std::vector<CLI::ConfigItem> items;
    Flatten(root, {}, items);
    return items;
  }

 private:
  static json Collect(const CLI::App* app, bool default_also) {
    json j = json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const std::string& name = opt->get_lnames().front();
      if (opt->count() > 0) {
        const auto& res = opt->results();
        j[name] = res.size() == 1 ? json(res.front()) : json(res);
      } else if (default_also && !opt->get_default_str().empty()) {
        j[name] = opt->get_default_str();
      }
    }
    for (const CLI::App* sub : app->get_subcommands({})) {
      json child = Collect(sub, default_also);
      if (!child.empty()) j[sub->get_name()] = child;
    }
    return j;
  }

  static std::string Scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void Flatten(const json& obj, std::vector<std::string> parents,
                      std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : obj.items()) {
      if (value.is_object()) {
        auto next = parents;
        next.push_back(key);
        Flatten(value, next, items);
        continue;
      }
      if (value.is_null()) continue;
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(Scalar(v));
      } else {
        item.inputs.push_back(Scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

int Main(int argc, char** argv) {
  CLI::App app{"aquaspec: spectral water analysis for Sentinel-2 style scenes"};
  app.name("aquaspec");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(aq_version()));
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file with per-subcommand flag defaults");
  app.allow_config_extras(CLI::config_extras_mode::error);
  int threads = 0;
  app.add_option("--threads", threads,
                 "Worker threads (default: AQUASPEC_THREADS or hardware concurrency)")
      ->check(CLI::NonNegativeNumber);

  IndexArgs index;
  auto* index_cmd = app.add_subcommand("index", "Compute a spectral index map from a scene");
  index_cmd->add_option("manifest", index.manifest, "Scene manifest JSON")->required();
  index_cmd->add_option("--index", index.kind,
                        "ndwi, mndwi, turbidity, ndci, ndosi or rel_bathymetry")
      ->required();
  index_cmd->add_option("--mask", index.mask, "Water mask restricting the B08 maximum");
  index_cmd->add_option("--out", index.out, "Output float32 TIFF")->required();
  index_cmd->add_flag("--pretty", index.pretty, "Human-readable summary");

  SegmentArgs segment;
  auto* segment_cmd = app.add_subcommand("segment", "Threshold an index map into a water mask");
  segment_cmd->add_option("map", segment.map, "Index map TIFF")->required();
  segment_cmd->add_option("--method", segment.method, "fixed or otsu")->capture_default_str();
  segment_cmd->add_option("--t", segment.t, "Fixed threshold; water is value > t");
  segment_cmd->add_option("--preset", segment.preset, "ndwi (t=0.2) or mndwi (t=0.35)");
  segment_cmd->add_option("--bins", segment.bins, "Otsu histogram bins")->capture_default_str();
  segment_cmd->add_option("--out", segment.out, "Output mask PNG")->required();
  segment_cmd->add_flag("--pretty", segment.pretty, "Human-readable report");

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Water-masked statistics of an index map");
  stats_cmd->add_option("map", stats.map, "Index map TIFF")->required();
  stats_cmd->add_option("mask", stats.mask, "Water mask PNG")->required();
  stats_cmd->add_flag("--sigma", stats.sigma, "Write the local standard deviation map");
  stats_cmd->add_option("--window", stats.window, "Odd window size")->capture_default_str();
  stats_cmd->add_option("--depth-profile", stats.depth, "Depth proxy map TIFF");
  stats_cmd->add_option("--bins", stats.bins, "Depth bins")->capture_default_str();
  stats_cmd->add_option("--depth-scale", stats.depth_scale,
                        "Multiply depth by this factor (metric calibration)");
  stats_cmd->add_option("--out", stats.out, "Output path for the sigma map or depth CSV");
  stats_cmd->add_flag("--pretty", stats.pretty, "Human-readable report");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Compare a prediction with a reference mask");
  eval_cmd->add_option("pred", eval.pred, "Predicted mask PNG or probability TIFF")->required();
  eval_cmd->add_option("ref", eval.ref, "Reference mask PNG")->required();
  eval_cmd->add_flag("--loss", eval.loss, "Treat pred as a probability map and report losses");
  eval_cmd->add_flag("--pretty", eval.pretty, "Human-readable table");

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Draw water-biased training patches");
  sample_cmd->add_option("manifest", sample.manifest, "Scene manifest JSON")->required();
  sample_cmd->add_option("mask", sample.mask, "Water mask PNG")->required();
  sample_cmd->add_option("--count", sample.count)->capture_default_str();
  sample_cmd->add_option("--size", sample.size)->capture_default_str();
  sample_cmd->add_option("--min-water", sample.min_water)->capture_default_str();
  sample_cmd->add_option("--seed", sample.seed)->capture_default_str();
  sample_cmd->add_option("--max-attempts", sample.max_attempts,
                         "Draw budget (default 1000 per requested patch)");
  sample_cmd->add_option("--out", sample.out, "Also write the JSON to this file");

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "Render a map or mask to PNG");
  render_cmd->add_option("input", render.input, "Map TIFF or mask PNG")->required();
  render_cmd->add_option("--palette", render.palette, "Built-in palette name or palette JSON");
  render_cmd->add_flag("--colorbar", render.colorbar, "Append a labelled colour bar");
  render_cmd->add_option("--scale", render.scale, "Integer upscale factor")->capture_default_str();
  render_cmd->add_option("--title", render.title, "Title drawn above the map");
  render_cmd->add_option("--overlay", render.overlay,
                         "Scene manifest; draws input mask over a true-colour composite");
  render_cmd->add_option("--alpha", render.alpha, "Overlay opacity")->capture_default_str();
  render_cmd->add_option("--water-color", render.water_color, "Overlay colour #RRGGBB")
      ->capture_default_str();
  render_cmd->add_option("--out", render.out, "Output PNG")->required();

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "");
  synth_cmd->group("");
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();
  synth_cmd->add_option("--width", synth.width);
  synth_cmd->add_option("--height", synth.height);
  synth_cmd->add_option("--radius", synth.radius);
  synth_cmd->add_option("--seed", synth.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::FileError& e) {
    std::cerr << "aquaspec: " << e.what() << "\n";
    return kExitInput;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (threads > 0) aq_set_threads(threads);
  try {
    if (index_cmd->parsed()) return RunIndex(index);
    if (segment_cmd->parsed()) return RunSegment(segment);
    if (stats_cmd->parsed()) return RunStats(stats);
    if (eval_cmd->parsed()) return RunEval(eval);
    if (sample_cmd->parsed()) return RunSample(sample);
    if (render_cmd->parsed()) return RunRender(render);
    if (synth_cmd->parsed()) return RunSynth(synth);
  } catch (const CliError& e) {
    std::cerr << "aquaspec: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "aquaspec: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return Main(argc, argv); }
