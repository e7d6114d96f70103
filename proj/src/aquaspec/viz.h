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

#ifndef AQUASPEC_VIZ_H_
#define AQUASPEC_VIZ_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aquaspec/analytics.h"
#include "aquaspec/indices.h"
#include "aquaspec/mask.h"
#include "aquaspec/raster_io.h"
#include "aquaspec/scene_io.h"

namespace aquaspec {

struct Rgb {
  uint8_t r = 0, g = 0, b = 0;
  bool operator==(const Rgb&) const = default;
};

// "#RRGGBB" <-> Rgb. Parsing is case-insensitive and raises kFormat.
Rgb ParseHexColor(std::string_view text);
std::string HexColor(Rgb c);

struct PaletteStop {
  double anchor = 0.0;
  Rgb color;
};

// Piecewise-linear colour ramp in RGB. Stops are strictly increasing and
// span exactly [domain_lo, domain_hi].
struct Palette {
  std::string name;
  double domain_lo = 0.0, domain_hi = 1.0;
  std::vector<PaletteStop> stops;
  Rgb under_color, over_color;
  Rgb undefined_color{0x80, 0x80, 0x80};

  // Raises `code` when the stop invariants do not hold.
  void Validate(ErrorCode code = ErrorCode::kInvalidArgument) const;
};

enum class PaletteKind {
  kNdwi, kMndwi, kTurbidity, kNdci, kNdosi, kRelBathymetry, kSigma, kMask
};

Palette BuiltinPalette(PaletteKind kind);
// Accepts index kind names plus "algae", "depth", "sigma", "variance" and
// "mask" (case-insensitive). Unknown names raise kUnknownPaletteKind.
Palette BuiltinPalette(std::string_view name);
PaletteKind PaletteKindFor(IndexKind kind);

// NaN means undefined.
Rgb MapValueToColor(const Palette& p, double v);

std::string PaletteToJson(const Palette& p);
Palette PaletteFromJson(const std::string& text);  // kFormat on bad input

// True when the palette domain covers exactly the nominal domain (or, for an
// unbounded domain, does not start below it).
bool PaletteFitsDomain(const Palette& p, const Domain& nominal);

struct RenderOptions {
  int scale = 1;
  bool colorbar = false;
  std::optional<std::string> title;
};

struct RenderResult {
  RgbaImage image;
  std::vector<std::string> warnings;
};

// Geometry of the strips around the map area, in output pixels.
inline constexpr int kColorbarHeight = 24;  // per unit of scale
inline constexpr int kTitleHeight = 9;      // per unit of scale

RenderResult RenderMap(const MaskedGrid& grid, const Domain& nominal,
                       const Palette& p, const RenderOptions& opts);
RenderResult RenderMap(const IndexMap& map, const Palette& p, const RenderOptions& opts);
RenderResult RenderMap(const SigmaMap& map, const Palette& p, const RenderOptions& opts);

// 0 for land, 1 for water, undefined where invalid.
MaskedGrid MaskAsGrid(const BinaryMask& mask);

// True-colour composite (R = B04, G = B03, B = B02) with a per-band 2nd-98th
// percentile stretch over valid pixels. Invalid pixels are mid-gray.
RgbaImage TrueColorComposite(const Scene& scene);

RgbaImage RenderMaskOverlay(const Scene& scene, const BinaryMask& mask,
                            Rgb water_color, double alpha);

// 3x5 bitmap text, drawn at `scale` pixels per font pixel, clipped.
void DrawText(RgbaImage& img, int x, int y, std::string_view text, int scale, Rgb color);
int TextWidth(std::string_view text, int scale);

}  // namespace aquaspec

#endif  // AQUASPEC_VIZ_H_
