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

#ifndef AQUASPEC_SEGMENTATION_H_
#define AQUASPEC_SEGMENTATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "aquaspec/indices.h"
#include "aquaspec/mask.h"

namespace aquaspec {

// Water where defined AND value > t, land where defined AND value <= t.
BinaryMask ThresholdFixed(const MaskedGrid& map, double t,
                          std::optional<IndexKind> kind = std::nullopt);
inline BinaryMask ThresholdFixed(const IndexMap& map, double t) {
  return ThresholdFixed(map, t, map.kind);
}

// Uniform bins over [lo, hi]; a value equal to hi lands in the last bin.
struct Histogram {
  int bin_count = 0;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<uint64_t> counts;

  int BinOf(double v) const;
  // Lower edge of bin k (k == bin_count gives hi).
  double Edge(int k) const;
  uint64_t Total() const;
};

Histogram BuildHistogram(const MaskedGrid& map, int bin_count);

struct OtsuResult {
  double threshold = 0.0;
  int split = 0;  // bins [0, split) form the lower class
  BinaryMask mask;
};

// Otsu's method over a `bin_count`-bin histogram of the defined values.
// Ties resolve to the lowest threshold.
OtsuResult ThresholdOtsu(const MaskedGrid& map, int bin_count = 256,
                         std::optional<IndexKind> kind = std::nullopt);
inline OtsuResult ThresholdOtsu(const IndexMap& map, int bin_count = 256) {
  return ThresholdOtsu(map, bin_count, map.kind);
}

// 8-bit PNG with 0 = land, 255 = water. Every pixel is valid.
BinaryMask LoadExternalMask(const std::string& path, int width, int height);

double WaterFraction(const BinaryMask& mask);

// PNG (invalid pixels written as land) plus a sidecar at path + ".json"
// holding provenance and water fraction.
void WriteMask(const std::string& path, const BinaryMask& mask);
// Reads a mask PNG at its own dimensions; provenance comes from the sidecar
// when one exists.
BinaryMask ReadMask(const std::string& path);

}  // namespace aquaspec

#endif  // AQUASPEC_SEGMENTATION_H_
