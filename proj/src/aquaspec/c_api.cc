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

#include "aquaspec/aquaspec.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <variant>

#include "aquaspec/analytics.h"
#include "aquaspec/evaluation.h"
#include "aquaspec/indices.h"
#include "aquaspec/numeric.h"
#include "aquaspec/raster_io.h"
#include "aquaspec/scene_io.h"
#include "aquaspec/segmentation.h"
#include "aquaspec/synth.h"
#include "aquaspec/viz.h"
#include "json.hpp"

using namespace aquaspec;

struct aq_scene {
  Scene scene;
};

struct aq_map {
  std::variant<IndexMap, SigmaMap, MaskedGrid> map;

  const MaskedGrid& grid() const {
    return std::visit([](const auto& m) -> const MaskedGrid& { return m; }, map);
  }
};

struct aq_mask {
  BinaryMask mask;
};

struct aq_prob_map {
  ProbabilityMap map;
};

struct aq_depth_profile {
  DepthProfile profile;
};

struct aq_patch_list {
  PatchSample sample;
};

struct aq_palette {
  Palette palette;
};

struct aq_image {
  RgbaImage image;
  std::vector<std::string> warnings;
};

namespace {

thread_local std::string g_last_error;

class ArgumentError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

template <typename F>
aq_status Guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return AQ_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<aq_status>(e.code());
  } catch (const ArgumentError& e) {
    g_last_error = std::string("InvalidArgument: ") + e.what();
    return AQ_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return AQ_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return AQ_ERR_INTERNAL;
  }
}

template <typename... Ptrs>
void Require(const Ptrs*... ptrs) {
  if (((ptrs == nullptr) || ...)) throw ArgumentError("null argument");
}

const IndexMap& AsIndex(const aq_map* m, const char* role) {
  if (const auto* idx = std::get_if<IndexMap>(&m->map)) return *idx;
  throw Error(ErrorCode::kKindMismatch, std::string("KindMismatch: ") + role + " must be an index map");
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void CheckCount(size_t have, size_t need) {
  if (have < need) throw ArgumentError("output buffer too small");
}

}  // namespace

extern "C" {

const char* aq_version(void) { return "1.0.0"; }

const char* aq_status_name(aq_status status) {
  switch (status) {
    case AQ_OK: return "OK";
    case AQ_ERR_INTERNAL: return "InternalError";
    default: break;
  }
  if (status >= AQ_ERR_INVALID_ARGUMENT && status <= AQ_ERR_IO) {
    return ErrorCodeName(static_cast<ErrorCode>(status));
  }
  return "Unknown";
}

const char* aq_last_error(void) { return g_last_error.c_str(); }

void aq_set_threads(int n) { SetThreadCount(n); }

void aq_string_free(char* s) { std::free(s); }

const char* aq_index_kind_name(aq_index_kind kind) {
  if (kind < AQ_NDWI || kind > AQ_REL_BATHYMETRY) return "UNKNOWN";
  return IndexKindName(static_cast<IndexKind>(kind)).data();
}

aq_status aq_index_kind_parse(const char* name, aq_index_kind* out) {
  return Guard([&] {
    Require(name, out);
    const auto kind = ParseIndexKind(name);
    if (!kind) throw ArgumentError(std::string("unknown index kind '") + name + "'");
    *out = static_cast<aq_index_kind>(*kind);
  });
}

// ---- Scenes -----------------------------------------------------------------

aq_status aq_scene_load(const char* manifest_path, aq_scene** out) {
  return Guard([&] {
    Require(manifest_path, out);
    *out = new aq_scene{LoadScene(manifest_path)};
  });
}

void aq_scene_free(aq_scene* scene) { delete scene; }

aq_status aq_scene_size(const aq_scene* scene, int* width, int* height) {
  return Guard([&] {
    Require(scene, width, height);
    *width = scene->scene.width();
    *height = scene->scene.height();
  });
}

aq_status aq_scene_band(const aq_scene* scene, int band, double* out, size_t count) {
  return Guard([&] {
    Require(scene, out);
    if (band < 0 || band >= kBandCount) throw ArgumentError("band index out of range");
    const BandGrid& g = scene->scene.bands[band];
    CheckCount(count, g.size());
    std::copy(g.data.begin(), g.data.end(), out);
  });
}

aq_status aq_scene_valid(const aq_scene* scene, uint8_t* out, size_t count) {
  return Guard([&] {
    Require(scene, out);
    const BoolGrid& v = scene->scene.valid;
    CheckCount(count, v.size());
    std::copy(v.data.begin(), v.data.end(), out);
  });
}

aq_status aq_scene_extract_patch(const aq_scene* scene, int x, int y, int size,
                                 aq_scene** out) {
  return Guard([&] {
    Require(scene, out);
    *out = new aq_scene{ExtractPatch(scene->scene, PatchSpec{x, y, size})};
  });
}

aq_status aq_synth_write(const char* dir, int width, int height, double radius,
                         uint64_t seed) {
  return Guard([&] {
    Require(dir);
    SynthOptions o;
    o.width = width;
    o.height = height;
    o.radius = radius;
    o.seed = seed;
    WriteSyntheticScene(dir, MakeSyntheticScene(o));
  });
}

// ---- Maps -------------------------------------------------------------------

aq_status aq_index_compute(const aq_scene* scene, aq_index_kind kind,
                           const aq_mask* water_or_null, aq_map** out) {
  return Guard([&] {
    Require(scene, out);
    if (kind < AQ_NDWI || kind > AQ_REL_BATHYMETRY) throw ArgumentError("unknown index kind");
    *out = new aq_map{ComputeIndex(scene->scene, static_cast<IndexKind>(kind),
                                   water_or_null ? &water_or_null->mask : nullptr)};
  });
}

aq_status aq_map_read(const char* path, aq_map** out) {
  return Guard([&] {
    Require(path, out);
    nlohmann::json side;
    try {
      side = nlohmann::json::parse(ReadTextFile(SidecarPath(path)));
    } catch (const nlohmann::json::exception& e) {
      Fail(ErrorCode::kFormat, std::string("sidecar of '") + path + "': " + e.what());
    }
    const std::string type = side.is_object() ? side.value("type", "") : "";
    if (type == "sigma") {
      *out = new aq_map{ReadSigmaMap(path)};
    } else {
      *out = new aq_map{ReadIndexMap(path)};
    }
  });
}

aq_status aq_map_write(const aq_map* map, const char* path) {
  return Guard([&] {
    Require(map, path);
    if (const auto* idx = std::get_if<IndexMap>(&map->map)) {
      WriteIndexMap(path, *idx);
    } else if (const auto* sig = std::get_if<SigmaMap>(&map->map)) {
      WriteSigmaMap(path, *sig);
    } else {
      throw ArgumentError("mask-derived maps are written with aq_mask_write");
    }
  });
}

aq_status aq_map_from_mask(const aq_mask* mask, aq_map** out) {
  return Guard([&] {
    Require(mask, out);
    *out = new aq_map{MaskAsGrid(mask->mask)};
  });
}

void aq_map_free(aq_map* map) { delete map; }

aq_status aq_map_size(const aq_map* map, int* width, int* height) {
  return Guard([&] {
    Require(map, width, height);
    *width = map->grid().width();
    *height = map->grid().height();
  });
}

aq_map_type aq_map_get_type(const aq_map* map) {
  if (!map) return AQ_MAP_INDEX;
  return static_cast<aq_map_type>(map->map.index());
}

aq_status aq_map_kind(const aq_map* map, aq_index_kind* out) {
  return Guard([&] {
    Require(map, out);
    if (const auto* idx = std::get_if<IndexMap>(&map->map)) {
      *out = static_cast<aq_index_kind>(idx->kind);
    } else if (const auto* sig = std::get_if<SigmaMap>(&map->map)) {
      *out = static_cast<aq_index_kind>(sig->source_kind);
    } else {
      throw ArgumentError("mask maps carry no index kind");
    }
  });
}

aq_status aq_map_values(const aq_map* map, double* out, size_t count) {
  return Guard([&] {
    Require(map, out);
    const MaskedGrid& g = map->grid();
    CheckCount(count, g.values.size());
    for (size_t i = 0; i < g.values.size(); ++i) {
      out[i] = g.defined.data[i] ? g.values.data[i] : std::nan("");
    }
  });
}

int aq_map_b08_max(const aq_map* map, double* out) {
  if (!map || !out) return 0;
  const auto* idx = std::get_if<IndexMap>(&map->map);
  if (!idx || !idx->b08_max) return 0;
  *out = *idx->b08_max;
  return 1;
}

aq_status aq_map_apply_mask(const aq_map* map, const aq_mask* mask, aq_map** out) {
  return Guard([&] {
    Require(map, mask, out);
    *out = new aq_map{ApplyMask(AsIndex(map, "map"), mask->mask)};
  });
}

aq_status aq_map_global_stats(const aq_map* map, const aq_mask* water,
                              aq_global_stats* out) {
  return Guard([&] {
    Require(map, water, out);
    const GlobalStats s = GlobalMaskedStats(AsIndex(map, "map"), water->mask);
    *out = {s.count, s.mean, s.sigma, s.min, s.max};
  });
}

aq_status aq_format_mean_sigma(double mean, double sigma, char** out) {
  return Guard([&] {
    Require(out);
    *out = CopyString(FormatMeanSigma(mean, sigma));
  });
}

// ---- Segmentation -------------------------------------------------------------

aq_status aq_threshold_fixed(const aq_map* map, double t, aq_mask** out) {
  return Guard([&] {
    Require(map, out);
    const IndexMap& idx = AsIndex(map, "map");
    *out = new aq_mask{ThresholdFixed(idx, t)};
  });
}

aq_status aq_threshold_otsu(const aq_map* map, int bins, double* threshold,
                            aq_mask** out) {
  return Guard([&] {
    Require(map, out);
    OtsuResult r = ThresholdOtsu(AsIndex(map, "map"), bins);
    if (threshold) *threshold = r.threshold;
    *out = new aq_mask{std::move(r.mask)};
  });
}

aq_status aq_mask_load_external(const char* path, int width, int height, aq_mask** out) {
  return Guard([&] {
    Require(path, out);
    *out = new aq_mask{LoadExternalMask(path, width, height)};
  });
}

aq_status aq_mask_read(const char* path, aq_mask** out) {
  return Guard([&] {
    Require(path, out);
    *out = new aq_mask{ReadMask(path)};
  });
}

aq_status aq_mask_write(const aq_mask* mask, const char* path) {
  return Guard([&] {
    Require(mask, path);
    WriteMask(path, mask->mask);
  });
}

void aq_mask_free(aq_mask* mask) { delete mask; }

aq_status aq_mask_size(const aq_mask* mask, int* width, int* height) {
  return Guard([&] {
    Require(mask, width, height);
    *width = mask->mask.width();
    *height = mask->mask.height();
  });
}

aq_status aq_mask_water_fraction(const aq_mask* mask, double* out) {
  return Guard([&] {
    Require(mask, out);
    *out = WaterFraction(mask->mask);
  });
}

aq_mask_method aq_mask_get_method(const aq_mask* mask) {
  if (!mask) return AQ_MASK_EXTERNAL;
  return static_cast<aq_mask_method>(mask->mask.provenance.method);
}

int aq_mask_threshold(const aq_mask* mask, double* out) {
  if (!mask || !out || !mask->mask.provenance.threshold) return 0;
  *out = *mask->mask.provenance.threshold;
  return 1;
}

aq_status aq_mask_classes(const aq_mask* mask, uint8_t* out, size_t count) {
  return Guard([&] {
    Require(mask, out);
    const BinaryMask& m = mask->mask;
    CheckCount(count, m.valid.size());
    for (size_t i = 0; i < m.valid.size(); ++i) {
      out[i] = m.valid.data[i] ? m.water.data[i] : 255;
    }
  });
}

// ---- Analytics ----------------------------------------------------------------

aq_status aq_local_sigma(const aq_map* index, const aq_mask* water, int window,
                         aq_map** out) {
  return Guard([&] {
    Require(index, water, out);
    *out = new aq_map{LocalSigma(AsIndex(index, "index"), water->mask, window)};
  });
}

aq_status aq_homogeneity_counts_of(const aq_map* sigma, aq_homogeneity_counts* out) {
  return Guard([&] {
    Require(sigma, out);
    const auto* sig = std::get_if<SigmaMap>(&sigma->map);
    if (!sig) Fail(ErrorCode::kKindMismatch, "homogeneity needs a sigma map");
    const HomogeneityCounts c = CountHomogeneity(ClassifyHomogeneity(*sig));
    *out = {c.stable, c.transitional, c.variable};
  });
}

aq_status aq_depth_profile_compute(const aq_map* index, const aq_map* depth,
                                   const aq_mask* water, int bins, double depth_scale,
                                   aq_depth_profile** out) {
  return Guard([&] {
    Require(index, depth, water, out);
    std::optional<double> scale;
    if (depth_scale > 0.0) scale = depth_scale;
    *out = new aq_depth_profile{ComputeDepthProfile(
        AsIndex(index, "index"), AsIndex(depth, "depth"), water->mask, bins, scale)};
  });
}

void aq_depth_profile_free(aq_depth_profile* profile) { delete profile; }

size_t aq_depth_profile_pair_count(const aq_depth_profile* profile) {
  return profile ? profile->profile.pairs.size() : 0;
}

aq_status aq_depth_profile_write_csv(const aq_depth_profile* profile, const char* path) {
  return Guard([&] {
    Require(profile, path);
    WriteTextFile(path, DepthPairsCsv(profile->profile));
  });
}

aq_status aq_depth_profile_write_json(const aq_depth_profile* profile, const char* path) {
  return Guard([&] {
    Require(profile, path);
    WriteTextFile(path, DepthBinsJson(profile->profile));
  });
}

// ---- Evaluation -----------------------------------------------------------------

aq_status aq_confusion(const aq_mask* pred, const aq_mask* ref, aq_confusion_matrix* out) {
  return Guard([&] {
    Require(pred, ref, out);
    const ConfusionMatrix cm = Confusion(pred->mask, ref->mask);
    *out = {cm.tp, cm.fp, cm.fn, cm.tn};
  });
}

namespace {

ConfusionMatrix FromC(const aq_confusion_matrix& c) { return {c.tp, c.fp, c.fn, c.tn}; }

}  // namespace

aq_status aq_metrics_compute(const aq_confusion_matrix* cm, aq_metrics* out) {
  return Guard([&] {
    Require(cm, out);
    const MetricsReport m = ComputeMetrics(FromC(*cm));
    aq_metrics r{};
    auto put = [](const std::optional<double>& v, double& value, int& has) {
      has = v.has_value();
      value = v.value_or(std::nan(""));
    };
    put(m.accuracy, r.accuracy, r.has_accuracy);
    put(m.iou, r.iou, r.has_iou);
    put(m.dice, r.dice, r.has_dice);
    put(m.recall, r.recall, r.has_recall);
    put(m.precision, r.precision, r.has_precision);
    put(m.specificity, r.specificity, r.has_specificity);
    *out = r;
  });
}

aq_status aq_metrics_to_json(const aq_confusion_matrix* cm, char** out) {
  return Guard([&] {
    Require(cm, out);
    const ConfusionMatrix c = FromC(*cm);
    *out = CopyString(MetricsJson(c, ComputeMetrics(c)));
  });
}

aq_status aq_metrics_to_table(const aq_confusion_matrix* cm, char** out) {
  return Guard([&] {
    Require(cm, out);
    *out = CopyString(MetricsTable(ComputeMetrics(FromC(*cm))));
  });
}

aq_status aq_prob_map_read(const char* path, aq_prob_map** out) {
  return Guard([&] {
    Require(path, out);
    *out = new aq_prob_map{ReadProbabilityMap(path)};
  });
}

aq_status aq_prob_map_create(int width, int height, const double* values,
                             aq_prob_map** out) {
  return Guard([&] {
    Require(values, out);
    if (width <= 0 || height <= 0) throw ArgumentError("dimensions must be positive");
    ProbabilityMap pm{Grid<double>(width, height, 0.0), BoolGrid(width, height, 0)};
    for (size_t i = 0; i < pm.p_water.size(); ++i) {
      if (std::isnan(values[i])) continue;
      if (!(values[i] >= 0.0 && values[i] <= 1.0)) throw ArgumentError("probability outside [0, 1]");
      pm.p_water.data[i] = values[i];
      pm.valid.data[i] = 1;
    }
    *out = new aq_prob_map{std::move(pm)};
  });
}

void aq_prob_map_free(aq_prob_map* map) { delete map; }

aq_status aq_loss_weighted_ce(const aq_prob_map* pred, const aq_mask* ref,
                              double w_land, double w_water, double* out) {
  return Guard([&] {
    Require(pred, ref, out);
    *out = WeightedCrossEntropy(pred->map, ref->mask, w_land, w_water);
  });
}

aq_status aq_loss_dice(const aq_prob_map* pred, const aq_mask* ref, double smooth,
                       double* out) {
  return Guard([&] {
    Require(pred, ref, out);
    *out = DiceLoss(pred->map, ref->mask, smooth);
  });
}

aq_status aq_loss_composite(const aq_prob_map* pred, const aq_mask* ref, aq_loss* out) {
  return Guard([&] {
    Require(pred, ref, out);
    const CompositeLoss l = ComputeCompositeLoss(pred->map, ref->mask);
    *out = {l.total, l.ce, l.dice};
  });
}

// ---- Sampling -------------------------------------------------------------------

aq_status aq_sample_patches(const aq_scene* scene, const aq_mask* water, int count,
                            int size, double min_water_fraction, uint64_t seed,
                            int64_t max_attempts, aq_patch_list** out) {
  return Guard([&] {
    Require(scene, water, out);
    PatchSampling o;
    o.count = count;
    o.size = size;
    o.min_water_fraction = min_water_fraction;
    o.seed = seed;
    if (max_attempts > 0) o.max_attempts = max_attempts;
    *out = new aq_patch_list{SampleWaterBiasedPatches(scene->scene, water->mask, o)};
  });
}

void aq_patch_list_free(aq_patch_list* list) { delete list; }

size_t aq_patch_list_size(const aq_patch_list* list) {
  return list ? list->sample.patches.size() : 0;
}

aq_status aq_patch_list_get(const aq_patch_list* list, size_t i, aq_patch* out) {
  return Guard([&] {
    Require(list, out);
    if (i >= list->sample.patches.size()) throw ArgumentError("patch index out of range");
    const PatchSpec& p = list->sample.patches[i];
    *out = {p.x, p.y, p.size};
  });
}

int aq_patch_list_shortfall(const aq_patch_list* list) {
  return list && list->sample.shortfall ? 1 : 0;
}

aq_status aq_patch_list_to_json(const aq_patch_list* list, char** out) {
  return Guard([&] {
    Require(list, out);
    *out = CopyString(PatchSampleToJson(list->sample));
  });
}

// ---- Palettes and rendering ---------------------------------------------------------

aq_status aq_palette_builtin(const char* name, aq_palette** out) {
  return Guard([&] {
    Require(name, out);
    *out = new aq_palette{BuiltinPalette(std::string_view(name))};
  });
}

aq_status aq_palette_for_map(const aq_map* map, aq_palette** out) {
  return Guard([&] {
    Require(map, out);
    if (const auto* idx = std::get_if<IndexMap>(&map->map)) {
      *out = new aq_palette{BuiltinPalette(PaletteKindFor(idx->kind))};
    } else if (std::holds_alternative<SigmaMap>(map->map)) {
      *out = new aq_palette{BuiltinPalette(PaletteKind::kSigma)};
    } else {
      *out = new aq_palette{BuiltinPalette(PaletteKind::kMask)};
    }
  });
}

aq_status aq_palette_load_json(const char* path, aq_palette** out) {
  return Guard([&] {
    Require(path, out);
    std::string text;
    try {
      text = ReadTextFile(path);
    } catch (const Error& e) {
      Fail(ErrorCode::kFormat, e.what());
    }
    *out = new aq_palette{PaletteFromJson(text)};
  });
}

aq_status aq_palette_to_json(const aq_palette* palette, char** out) {
  return Guard([&] {
    Require(palette, out);
    *out = CopyString(PaletteToJson(palette->palette));
  });
}

void aq_palette_free(aq_palette* palette) { delete palette; }

aq_status aq_palette_color(const aq_palette* palette, double value, int defined,
                           uint8_t rgb[3]) {
  return Guard([&] {
    Require(palette, rgb);
    const Rgb c = MapValueToColor(palette->palette, defined ? value : std::nan(""));
    rgb[0] = c.r;
    rgb[1] = c.g;
    rgb[2] = c.b;
  });
}

aq_status aq_render_map(const aq_map* map, const aq_palette* palette,
                        const aq_render_options* options, aq_image** out) {
  return Guard([&] {
    Require(map, palette, out);
    RenderOptions o;
    if (options) {
      o.scale = options->scale;
      o.colorbar = options->colorbar != 0;
      if (options->title) o.title = std::string(options->title);
    }
    RenderResult r;
    if (const auto* idx = std::get_if<IndexMap>(&map->map)) {
      r = RenderMap(*idx, palette->palette, o);
    } else if (const auto* sig = std::get_if<SigmaMap>(&map->map)) {
      r = RenderMap(*sig, palette->palette, o);
    } else {
      r = RenderMap(map->grid(), Domain{0.0, 1.0}, palette->palette, o);
    }
    *out = new aq_image{std::move(r.image), std::move(r.warnings)};
  });
}

aq_status aq_render_mask_overlay(const aq_scene* scene, const aq_mask* mask,
                                 const uint8_t water_rgb[3], double alpha,
                                 aq_image** out) {
  return Guard([&] {
    Require(scene, mask, water_rgb, out);
    *out = new aq_image{RenderMaskOverlay(scene->scene, mask->mask,
                                          Rgb{water_rgb[0], water_rgb[1], water_rgb[2]}, alpha),
                        {}};
  });
}

void aq_image_free(aq_image* image) { delete image; }

aq_status aq_image_size(const aq_image* image, int* width, int* height) {
  return Guard([&] {
    Require(image, width, height);
    *width = image->image.width;
    *height = image->image.height;
  });
}

const uint8_t* aq_image_pixels(const aq_image* image) {
  return image ? image->image.rgba.data() : nullptr;
}

size_t aq_image_warning_count(const aq_image* image) {
  return image ? image->warnings.size() : 0;
}

const char* aq_image_warning(const aq_image* image, size_t i) {
  if (!image || i >= image->warnings.size()) return nullptr;
  return image->warnings[i].c_str();
}

aq_status aq_image_write_png(const aq_image* image, const char* path) {
  return Guard([&] {
    Require(image, path);
    WritePngRgba(path, image->image);
  });
}

}  // extern "C"
