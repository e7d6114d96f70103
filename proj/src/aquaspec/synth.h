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

#ifndef AQUASPEC_SYNTH_H_
#define AQUASPEC_SYNTH_H_

#include <array>
#include <cstdint>
#include <string>

#include "aquaspec/mask.h"
#include "aquaspec/scene_io.h"

namespace aquaspec {

// A bright land background with a dark circular lake: low NIR and SWIR
// inside the disk, NIR rising towards the shore so the depth proxy has
// structure. Deterministic for a given seed.
struct SynthOptions {
  int width = 256;
  int height = 256;
  double radius = 0.0;  // <= 0: 0.3 * min(width, height)
  double noise = 0.004; // uniform +- reflectance noise
  uint64_t seed = 7;
  bool swir_at_20m = true;     // B11/B12 generated at native 20 m
  bool nodata_corner = false;  // 4x4 nodata block at the top-left corner
};

struct SynthScene {
  SceneManifest manifest;
  std::array<Grid<uint16_t>, kBandCount> dn;  // at native resolution
  BinaryMask truth;                          // water = inside the disk
  Scene scene;
};

SynthScene MakeSyntheticScene(const SynthOptions& options);

// Writes bands/<band>.tif, manifest.json and truth.png into `dir`
// (created if needed). Returns the manifest path.
std::string WriteSyntheticScene(const std::string& dir, const SynthScene& synth);

}  // namespace aquaspec

#endif  // AQUASPEC_SYNTH_H_
