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

#ifndef AQUASPEC_SCENE_IO_H_
#define AQUASPEC_SCENE_IO_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aquaspec/common.h"
#include "aquaspec/mask.h"

namespace aquaspec {

// Reflectance grid for one band. Values are DN / reflectance_scale.
struct BandGrid : Grid<double> {
  int native_resolution_m = 10;

  BandGrid() = default;
  BandGrid(int w, int h, int res_m = 10, double fill = 0.0)
      : Grid<double>(w, h, fill), native_resolution_m(res_m) {}
};

struct BandSource {
  std::string path;  // relative paths resolve against SceneManifest::base_dir
  int native_resolution_m = 10;
};

struct SceneManifest {
  std::string scene_id;
  int width = 0;   // 10 m grid
  int height = 0;
  double reflectance_scale = 10000.0;
  std::optional<uint16_t> nodata_dn;
  std::array<BandSource, kBandCount> bands;
  std::string base_dir;  // not serialized

  const BandSource& band(BandId b) const { return bands[static_cast<int>(b)]; }
  BandSource& band(BandId b) { return bands[static_cast<int>(b)]; }
};

// Immutable after load; all bands share the manifest's 10 m grid.
struct Scene {
  SceneManifest manifest;
  std::array<BandGrid, kBandCount> bands;
  BoolGrid valid;

  int width() const { return valid.width; }
  int height() const { return valid.height; }
  const BandGrid& band(BandId b) const { return bands[static_cast<int>(b)]; }
};

struct PatchSpec {
  int x = 0;
  int y = 0;
  int size = 512;

  bool operator==(const PatchSpec&) const = default;
};

SceneManifest ParseManifest(const std::string& json_text,
                            const std::string& base_dir);
SceneManifest ReadManifest(const std::string& path);
std::string SerializeManifest(const SceneManifest& manifest);
void WriteManifest(const std::string& path, const SceneManifest& manifest);

Scene LoadScene(const std::string& manifest_path);

// Builds a scene from raw digital numbers at each band's native resolution:
// checks dimensions, upsamples 20 m bands, scales to reflectance and derives
// the validity grid from nodata_dn.
Scene AssembleScene(const SceneManifest& manifest,
                    std::array<Grid<uint16_t>, kBandCount> raw);

// Nearest-neighbour resampling. Target dimensions must be positive integer
// multiples of the source dimensions; anything else is kUnsupportedRatio.
BandGrid ResampleNearest(const BandGrid& grid, int target_width,
                         int target_height);

Scene ExtractPatch(const Scene& scene, const PatchSpec& spec);

struct PatchSampling {
  int count = 25;
  int size = 512;
  double min_water_fraction = 0.015;
  uint64_t seed = 0;
  std::optional<int64_t> max_attempts;  // default 1000 * count
};

struct PatchSample {
  std::vector<PatchSpec> patches;
  bool shortfall = false;
};

// Water fraction of a patch: water pixels over pixels valid in both the
// scene and the mask. A patch with no valid pixels never qualifies.
PatchSample SampleWaterBiasedPatches(const Scene& scene,
                                     const BinaryMask& water,
                                     const PatchSampling& options);

std::string PatchSampleToJson(const PatchSample& sample);

}  // namespace aquaspec

#endif  // AQUASPEC_SCENE_IO_H_
