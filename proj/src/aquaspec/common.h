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

#ifndef AQUASPEC_COMMON_H_
#define AQUASPEC_COMMON_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aquaspec {

// Every failure raised by the core carries one of these codes. The C API
// forwards them unchanged as aq_status values.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kManifestParse,
  kBandFile,
  kDimensionMismatch,
  kUnsupportedRatio,
  kOutOfBounds,
  kMaskDimensionMismatch,
  kPatchLargerThanScene,
  kEmptyMaxDomain,
  kNoDefinedPixels,
  kDegenerateRange,
  kFormat,
  kNoValidPixels,
  kEvenWindow,
  kKindMismatch,
  kEmptyMatrix,
  kNonPositiveWeight,
  kUnknownPaletteKind,
  kIo,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& what);

// Row-major 2D grid. Pixel (x, y) lives at index y * width + x.
template <typename T>
struct Grid {
  int width = 0;
  int height = 0;
  std::vector<T> data;

  Grid() = default;
  Grid(int w, int h, T fill = T{})
      : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

  size_t size() const { return data.size(); }
  T& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
  const T& at(int x, int y) const {
    return data[static_cast<size_t>(y) * width + x];
  }
  bool SameShape(int w, int h) const { return width == w && height == h; }
  template <typename U>
  bool SameShape(const Grid<U>& o) const {
    return width == o.width && height == o.height;
  }
};

using BoolGrid = Grid<uint8_t>;

enum class BandId { kB02 = 0, kB03, kB04, kB08, kB11, kB12 };
inline constexpr int kBandCount = 6;
inline constexpr BandId kAllBands[kBandCount] = {
    BandId::kB02, BandId::kB03, BandId::kB04,
    BandId::kB08, BandId::kB11, BandId::kB12};

std::string_view BandName(BandId band);
std::optional<BandId> ParseBand(std::string_view name);

enum class IndexKind { kNdwi = 0, kMndwi, kTurbidity, kNdci, kNdosi, kRelBathymetry };
inline constexpr IndexKind kAllIndexKinds[] = {
    IndexKind::kNdwi, IndexKind::kMndwi, IndexKind::kTurbidity,
    IndexKind::kNdci, IndexKind::kNdosi, IndexKind::kRelBathymetry};

// Canonical upper-case name, e.g. "NDWI", "REL_BATHYMETRY".
std::string_view IndexKindName(IndexKind kind);
// Case-insensitive.
std::optional<IndexKind> ParseIndexKind(std::string_view name);

struct Domain {
  double lo;
  double hi;  // may be +infinity
  bool Contains(double v) const { return v >= lo && v <= hi; }
};

Domain NominalDomain(IndexKind kind);

void RequireSameShape(int w0, int h0, int w1, int h1, const char* what,
                      ErrorCode code = ErrorCode::kDimensionMismatch);

}  // namespace aquaspec

#endif  // AQUASPEC_COMMON_H_
