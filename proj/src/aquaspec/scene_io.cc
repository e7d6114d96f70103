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

#include "aquaspec/scene_io.h"

#include <filesystem>
#include <random>

#include "aquaspec/raster_io.h"
#include "json.hpp"

namespace aquaspec {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void ManifestError(const std::string& what) {
  Fail(ErrorCode::kManifestParse, what);
}

template <typename T>
Grid<T> ResampleGrid(const Grid<T>& src, int tw, int th) {
  if (tw <= 0 || th <= 0 || src.width <= 0 || src.height <= 0 ||
      tw % src.width != 0 || th % src.height != 0) {
    Fail(ErrorCode::kUnsupportedRatio,
         std::to_string(src.width) + "x" + std::to_string(src.height) +
             " -> " + std::to_string(tw) + "x" + std::to_string(th));
  }
  Grid<T> out(tw, th);
  for (int y = 0; y < th; ++y) {
    const int sy = static_cast<int>(int64_t(y) * src.height / th);
    for (int x = 0; x < tw; ++x) {
      const int sx = static_cast<int>(int64_t(x) * src.width / tw);
      out.at(x, y) = src.at(sx, sy);
    }
  }
  return out;
}

// Summed-area table with one row/column of zero padding.
struct Integral {
  int w = 0, h = 0;
  std::vector<int64_t> s;

  template <typename Pred>
  Integral(int width, int height, Pred pred)
      : w(width), h(height), s(size_t(width + 1) * (height + 1), 0) {
    for (int y = 0; y < h; ++y) {
      int64_t row = 0;
      for (int x = 0; x < w; ++x) {
        row += pred(size_t(y) * w + x) ? 1 : 0;
        s[size_t(y + 1) * (w + 1) + x + 1] = s[size_t(y) * (w + 1) + x + 1] + row;
      }
    }
  }

  int64_t Sum(int x0, int y0, int size) const {
    const int x1 = x0 + size, y1 = y0 + size;
    auto at = [&](int x, int y) { return s[size_t(y) * (w + 1) + x]; };
    return at(x1, y1) - at(x0, y1) - at(x1, y0) + at(x0, y0);
  }
};

}  // namespace

SceneManifest ParseManifest(const std::string& json_text,
                            const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    ManifestError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) ManifestError("manifest must be a JSON object");

  SceneManifest m;
  m.base_dir = base_dir;
  try {
    for (const char* key : {"scene_id", "width", "height", "bands"}) {
      if (!doc.contains(key)) ManifestError(std::string("missing field '") + key + "'");
    }
    m.scene_id = doc.at("scene_id").get<std::string>();
    m.width = doc.at("width").get<int>();
    m.height = doc.at("height").get<int>();
    if (!doc.at("width").is_number_integer() || !doc.at("height").is_number_integer() ||
        m.width <= 0 || m.height <= 0) {
      ManifestError("width and height must be positive integers");
    }
    if (doc.contains("reflectance_scale")) {
      m.reflectance_scale = doc.at("reflectance_scale").get<double>();
    }
    if (!(m.reflectance_scale > 0.0)) ManifestError("reflectance_scale must be > 0");
    if (doc.contains("nodata_dn") && !doc.at("nodata_dn").is_null()) {
      const auto& nd = doc.at("nodata_dn");
      if (!nd.is_number_integer() || nd.get<int64_t>() < 0 || nd.get<int64_t>() > 65535) {
        ManifestError("nodata_dn must be an integer in [0, 65535]");
      }
      m.nodata_dn = static_cast<uint16_t>(nd.get<int64_t>());
    }
    const json& bands = doc.at("bands");
    if (!bands.is_object()) ManifestError("'bands' must be an object");
    std::array<bool, kBandCount> seen{};
    for (const auto& [name, entry] : bands.items()) {
      const auto id = ParseBand(name);
      if (!id) ManifestError("unknown band '" + name + "'");
      if (!entry.is_object() || !entry.contains("path")) {
        ManifestError("band '" + name + "' needs a 'path'");
      }
      BandSource& src = m.band(*id);
      src.path = entry.at("path").get<std::string>();
      src.native_resolution_m = entry.value("native_resolution_m", 10);
      if (src.native_resolution_m != 10 && src.native_resolution_m != 20) {
        ManifestError("band '" + name + "': native_resolution_m must be 10 or 20");
      }
      seen[static_cast<int>(*id)] = true;
    }
    for (BandId b : kAllBands) {
      if (!seen[static_cast<int>(b)]) {
        ManifestError("missing band '" + std::string(BandName(b)) + "'");
      }
    }
  } catch (const json::exception& e) {
    ManifestError(std::string("bad field type: ") + e.what());
  }
  return m;
}

SceneManifest ReadManifest(const std::string& path) {
  std::string text;
  try {
    text = ReadTextFile(path);
  } catch (const Error& e) {
    ManifestError(e.what());
  }
  return ParseManifest(text, fs::path(path).parent_path().string());
}

std::string SerializeManifest(const SceneManifest& m) {
  json doc;
  doc["scene_id"] = m.scene_id;
  doc["width"] = m.width;
  doc["height"] = m.height;
  doc["reflectance_scale"] = m.reflectance_scale;
  doc["nodata_dn"] = m.nodata_dn ? json(*m.nodata_dn) : json(nullptr);
  json bands = json::object();
  for (BandId b : kAllBands) {
    bands[std::string(BandName(b))] = {
        {"path", m.band(b).path},
        {"native_resolution_m", m.band(b).native_resolution_m}};
  }
  doc["bands"] = std::move(bands);
  return doc.dump(2) + "\n";
}

void WriteManifest(const std::string& path, const SceneManifest& manifest) {
  WriteTextFile(path, SerializeManifest(manifest));
}

BandGrid ResampleNearest(const BandGrid& grid, int target_width,
                         int target_height) {
  BandGrid out;
  static_cast<Grid<double>&>(out) = ResampleGrid<double>(grid, target_width, target_height);
  out.native_resolution_m = grid.native_resolution_m;
  return out;
}

Scene AssembleScene(const SceneManifest& manifest,
                    std::array<Grid<uint16_t>, kBandCount> raw) {
  Scene scene;
  scene.manifest = manifest;
  const SceneManifest& m = scene.manifest;
  scene.valid = BoolGrid(m.width, m.height, 1);
  for (BandId b : kAllBands) {
    const BandSource& src = m.band(b);
    Grid<uint16_t>& dn = raw[static_cast<int>(b)];
    const int factor = src.native_resolution_m / 10;
    if (factor < 1 || int64_t(dn.width) * factor != m.width ||
        int64_t(dn.height) * factor != m.height) {
      Fail(ErrorCode::kDimensionMismatch,
           std::string(BandName(b)) + " is " + std::to_string(dn.width) + "x" +
               std::to_string(dn.height) + " at " +
               std::to_string(src.native_resolution_m) + " m, manifest grid is " +
               std::to_string(m.width) + "x" + std::to_string(m.height));
    }
    if (factor != 1) dn = ResampleGrid(dn, m.width, m.height);

    BandGrid& grid = scene.bands[static_cast<int>(b)];
    grid = BandGrid(m.width, m.height, src.native_resolution_m);
    for (size_t i = 0; i < dn.size(); ++i) {
      grid.data[i] = dn.data[i] / m.reflectance_scale;
      if (m.nodata_dn && dn.data[i] == *m.nodata_dn) scene.valid.data[i] = 0;
    }
  }
  return scene;
}

Scene LoadScene(const std::string& manifest_path) {
  const SceneManifest m = ReadManifest(manifest_path);
  std::array<Grid<uint16_t>, kBandCount> raw;
  for (BandId b : kAllBands) {
    fs::path p(m.band(b).path);
    if (p.is_relative()) p = fs::path(m.base_dir) / p;
    try {
      raw[static_cast<int>(b)] = ReadTiffU16(p.string());
    } catch (const Error& e) {
      Fail(ErrorCode::kBandFile, std::string(BandName(b)) + ": " + e.what());
    }
  }
  return AssembleScene(m, std::move(raw));
}

Scene ExtractPatch(const Scene& scene, const PatchSpec& spec) {
  if (spec.size <= 0 || spec.x < 0 || spec.y < 0 ||
      int64_t(spec.x) + spec.size > scene.width() ||
      int64_t(spec.y) + spec.size > scene.height()) {
    Fail(ErrorCode::kOutOfBounds,
         "patch (" + std::to_string(spec.x) + "," + std::to_string(spec.y) +
             ") size " + std::to_string(spec.size) + " outside " +
             std::to_string(scene.width()) + "x" + std::to_string(scene.height()));
  }
  Scene out;
  out.manifest = scene.manifest;
  out.manifest.width = spec.size;
  out.manifest.height = spec.size;
  out.valid = BoolGrid(spec.size, spec.size);
  for (int i = 0; i < kBandCount; ++i) {
    out.bands[i] = BandGrid(spec.size, spec.size, scene.bands[i].native_resolution_m);
  }
  for (int y = 0; y < spec.size; ++y) {
    for (int x = 0; x < spec.size; ++x) {
      out.valid.at(x, y) = scene.valid.at(spec.x + x, spec.y + y);
      for (int i = 0; i < kBandCount; ++i) {
        out.bands[i].at(x, y) = scene.bands[i].at(spec.x + x, spec.y + y);
      }
    }
  }
  return out;
}

PatchSample SampleWaterBiasedPatches(const Scene& scene,
                                     const BinaryMask& water,
                                     const PatchSampling& options) {
  RequireSameShape(scene.width(), scene.height(), water.width(), water.height(),
                   "water mask vs scene", ErrorCode::kMaskDimensionMismatch);
  if (options.count < 0) Fail(ErrorCode::kInvalidArgument, "count must be >= 0");
  if (!(options.min_water_fraction >= 0.0 && options.min_water_fraction <= 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "min_water_fraction must lie in [0, 1]");
  }
  if (options.size <= 0 || options.size > scene.width() ||
      options.size > scene.height()) {
    Fail(ErrorCode::kPatchLargerThanScene,
         "patch size " + std::to_string(options.size) + " vs scene " +
             std::to_string(scene.width()) + "x" + std::to_string(scene.height()));
  }

  PatchSample result;
  if (options.count == 0) return result;

  const int w = scene.width(), h = scene.height();
  auto usable = [&](size_t i) { return scene.valid.data[i] && water.valid.data[i]; };
  const Integral valid_sum(w, h, usable);
  const Integral water_sum(w, h, [&](size_t i) { return usable(i) && water.water.data[i]; });

  const int64_t attempts = options.max_attempts.value_or(int64_t(1000) * options.count);
  const uint64_t span_x = uint64_t(w - options.size) + 1;
  const uint64_t span_y = uint64_t(h - options.size) + 1;
  std::mt19937_64 rng(options.seed);

  for (int64_t a = 0; a < attempts && int(result.patches.size()) < options.count; ++a) {
    const int x = static_cast<int>(rng() % span_x);
    const int y = static_cast<int>(rng() % span_y);
    const int64_t n_valid = valid_sum.Sum(x, y, options.size);
    if (n_valid == 0) continue;
    const double fraction =
        static_cast<double>(water_sum.Sum(x, y, options.size)) / static_cast<double>(n_valid);
    if (fraction >= options.min_water_fraction) {
      result.patches.push_back({x, y, options.size});
    }
  }
  result.shortfall = int(result.patches.size()) < options.count;
  return result;
}

std::string PatchSampleToJson(const PatchSample& sample) {
  json patches = json::array();
  for (const PatchSpec& p : sample.patches) {
    patches.push_back({{"x", p.x}, {"y", p.y}, {"size", p.size}});
  }
  json doc = {{"patches", std::move(patches)}, {"shortfall", sample.shortfall}};
  return doc.dump(2) + "\n";
}

}  // namespace aquaspec
