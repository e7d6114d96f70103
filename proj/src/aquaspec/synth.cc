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

#include "aquaspec/synth.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>

#include "aquaspec/raster_io.h"
#include "aquaspec/segmentation.h"

namespace aquaspec {

namespace fs = std::filesystem;

namespace {

struct Reflectance {
  double b02, b03, b04, b08, b11, b12;
};

// r is the normalised distance from the lake centre (0 centre, 1 shore).
Reflectance WaterPixel(double r) {
  return {0.070, 0.090, 0.050 + 0.030 * r, 0.004 + 0.036 * r, 0.010, 0.006};
}

Reflectance LandPixel(double x, double y) {
  const double tex = 0.03 * std::sin(x * 0.11) * std::cos(y * 0.07);
  return {0.090, 0.110, 0.140, 0.320 + tex, 0.280 - tex, 0.190};
}

double Unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

uint16_t ToDn(double refl, double scale) {
  return static_cast<uint16_t>(std::clamp(std::lround(refl * scale), 1L, 65535L));
}

}  // namespace

SynthScene MakeSyntheticScene(const SynthOptions& o) {
  if (o.width <= 0 || o.height <= 0) Fail(ErrorCode::kInvalidArgument, "bad synthetic size");
  if (o.swir_at_20m && (o.width % 2 || o.height % 2)) {
    Fail(ErrorCode::kInvalidArgument, "20 m bands need even scene dimensions");
  }
  SynthScene s;
  SceneManifest& m = s.manifest;
  m.scene_id = "synthetic-lake";
  m.width = o.width;
  m.height = o.height;
  m.reflectance_scale = 10000.0;
  m.nodata_dn = uint16_t{0};
  for (BandId b : kAllBands) {
    const bool coarse = o.swir_at_20m && (b == BandId::kB11 || b == BandId::kB12);
    m.band(b) = {"bands/" + std::string(BandName(b)) + ".tif", coarse ? 20 : 10};
  }

  const double cx = o.width / 2.0, cy = o.height / 2.0;
  const double radius = o.radius > 0 ? o.radius : 0.3 * std::min(o.width, o.height);
  auto sample = [&](double px, double py) {
    const double r = std::hypot(px - cx, py - cy) / radius;
    return std::pair{r <= 1.0, r <= 1.0 ? WaterPixel(r) : LandPixel(px, py)};
  };

  std::mt19937_64 rng(o.seed);
  auto jitter = [&](double v) { return v + o.noise * (2.0 * Unit(rng) - 1.0); };

  s.truth = BinaryMask(o.width, o.height);
  s.truth.provenance = {MaskMethod::kExternal, std::nullopt, std::nullopt};
  for (BandId b : kAllBands) {
    const int f = m.band(b).native_resolution_m / 10;
    s.dn[static_cast<int>(b)] = Grid<uint16_t>(o.width / f, o.height / f);
  }
  for (BandId b : kAllBands) {
    const int f = m.band(b).native_resolution_m / 10;
    Grid<uint16_t>& g = s.dn[static_cast<int>(b)];
    for (int y = 0; y < g.height; ++y) {
      for (int x = 0; x < g.width; ++x) {
        // Pixel centre in 10 m grid coordinates.
        const auto [water, refl] = sample((x + 0.5) * f, (y + 0.5) * f);
        double v = 0.0;
        switch (b) {
          case BandId::kB02: v = refl.b02; break;
          case BandId::kB03: v = refl.b03; break;
          case BandId::kB04: v = refl.b04; break;
          case BandId::kB08: v = refl.b08; break;
          case BandId::kB11: v = refl.b11; break;
          case BandId::kB12: v = refl.b12; break;
        }
        g.at(x, y) = ToDn(std::max(0.0, jitter(v)), m.reflectance_scale);
        if (f == 1 && b == BandId::kB03) {
          s.truth.valid.at(x, y) = 1;
          s.truth.water.at(x, y) = water ? 1 : 0;
        }
      }
    }
  }
  if (o.nodata_corner) {
    for (BandId b : kAllBands) {
      const int f = m.band(b).native_resolution_m / 10;
      Grid<uint16_t>& g = s.dn[static_cast<int>(b)];
      for (int y = 0; y < std::min(g.height, 4 / f); ++y) {
        for (int x = 0; x < std::min(g.width, 4 / f); ++x) g.at(x, y) = 0;
      }
    }
    for (int y = 0; y < std::min(o.height, 4); ++y) {
      for (int x = 0; x < std::min(o.width, 4); ++x) {
        s.truth.valid.at(x, y) = 0;
        s.truth.water.at(x, y) = 0;
      }
    }
  }
  s.scene = AssembleScene(m, s.dn);
  return s;
}

std::string WriteSyntheticScene(const std::string& dir, const SynthScene& synth) {
  std::error_code ec;
  fs::create_directories(fs::path(dir) / "bands", ec);
  if (ec) Fail(ErrorCode::kIo, "cannot create '" + dir + "': " + ec.message());
  for (BandId b : kAllBands) {
    const fs::path p = fs::path(dir) / synth.manifest.band(b).path;
    WriteTiffU16(p.string(), synth.dn[static_cast<int>(b)]);
  }
  const std::string manifest_path = (fs::path(dir) / "manifest.json").string();
  WriteManifest(manifest_path, synth.manifest);
  WriteMask((fs::path(dir) / "truth.png").string(), synth.truth);
  return manifest_path;
}

}  // namespace aquaspec
