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

#ifndef AQUASPEC_MASK_H_
#define AQUASPEC_MASK_H_

#include <optional>

#include "aquaspec/common.h"

namespace aquaspec {

enum class MaskMethod { kFixed, kOtsu, kExternal };

struct Provenance {
  MaskMethod method = MaskMethod::kExternal;
  std::optional<IndexKind> source_kind;
  std::optional<double> threshold;
};

// Per-pixel water/land classification. `water` is meaningful only where
// `valid` is set; invalid pixels always store 0.
struct BinaryMask {
  Grid<uint8_t> water;
  BoolGrid valid;
  Provenance provenance;

  BinaryMask() = default;
  BinaryMask(int w, int h) : water(w, h, 0), valid(w, h, 0) {}

  int width() const { return water.width; }
  int height() const { return water.height; }
  bool IsWater(size_t i) const { return valid.data[i] && water.data[i]; }
  bool IsLand(size_t i) const { return valid.data[i] && !water.data[i]; }
};

std::string_view MaskMethodName(MaskMethod m);
std::optional<MaskMethod> ParseMaskMethod(std::string_view name);

}  // namespace aquaspec

#endif  // AQUASPEC_MASK_H_
