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

#ifndef AQUASPEC_INDICES_H_
#define AQUASPEC_INDICES_H_

#include <optional>
#include <string>

#include "aquaspec/common.h"
#include "aquaspec/mask.h"
#include "aquaspec/scene_io.h"

namespace aquaspec {

// Real-valued grid with a per-pixel "defined" flag. Undefined pixels hold
// quiet NaN and never enter a statistic.
struct MaskedGrid {
  Grid<double> values;
  BoolGrid defined;

  int width() const { return values.width; }
  int height() const { return values.height; }
  size_t DefinedCount() const;
};

struct IndexMap : MaskedGrid {
  IndexKind kind = IndexKind::kNdwi;
  // Normalising maximum of B08, set for REL_BATHYMETRY only.
  std::optional<double> b08_max;
};

// (a - b) / (a + b), defined where valid and a + b != 0.
MaskedGrid NormalizedDifference(const Grid<double>& a, const Grid<double>& b,
                                const BoolGrid& valid);

// Applies one index formula to every valid pixel of the scene. For
// REL_BATHYMETRY, `water` (optional) restricts the pixels that contribute to
// B08_max; pixels brighter than that maximum are left undefined so that the
// output stays inside [0, 1].
IndexMap ComputeIndex(const Scene& scene, IndexKind kind,
                      const BinaryMask* water = nullptr);

// defined := defined AND water.
IndexMap ApplyMask(const IndexMap& map, const BinaryMask& mask);

struct SummaryStats {
  size_t count = 0;
  double min = 0.0, max = 0.0, mean = 0.0, sigma = 0.0;
};
// Over defined pixels; std::nullopt when there are none.
std::optional<SummaryStats> Summarize(const MaskedGrid& grid);

// Float32 TIFF (NaN for undefined) plus a JSON sidecar at `path + ".json"`.
void WriteIndexMap(const std::string& path, const IndexMap& map);
IndexMap ReadIndexMap(const std::string& path);

std::string SidecarPath(const std::string& path);

// Shared by the index and sigma map writers.
void WriteMaskedGridTiff(const std::string& path, const MaskedGrid& grid);
MaskedGrid ReadMaskedGridTiff(const std::string& path);

}  // namespace aquaspec

#endif  // AQUASPEC_INDICES_H_
