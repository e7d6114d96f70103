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

#include "aquaspec/viz.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>

#include "json.hpp"

namespace aquaspec {

using nlohmann::json;

namespace {

constexpr Rgb kWhite{255, 255, 255};
constexpr Rgb kBlack{0, 0, 0};

Palette MakePalette(std::string name, std::vector<PaletteStop> stops) {
  Palette p;
  p.name = std::move(name);
  p.stops = std::move(stops);
  p.domain_lo = p.stops.front().anchor;
  p.domain_hi = p.stops.back().anchor;
  p.under_color = p.stops.front().color;
  p.over_color = p.stops.back().color;
  return p;
}

PaletteStop S(double anchor, const char* hex) { return {anchor, ParseHexColor(hex)}; }

int HexDigit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

uint8_t Lerp(uint8_t a, uint8_t b, double t) {
  return static_cast<uint8_t>(std::lround(a + t * (double(b) - double(a))));
}

// "-1", "0.15", "6": two decimals with trailing zeros dropped.
std::string TickLabel(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

void Fill(RgbaImage& img, int x0, int y0, int w, int h, Rgb c) {
  for (int y = std::max(0, y0); y < std::min(img.height, y0 + h); ++y) {
    for (int x = std::max(0, x0); x < std::min(img.width, x0 + w); ++x) {
      uint8_t* p = img.px(x, y);
      p[0] = c.r;
      p[1] = c.g;
      p[2] = c.b;
      p[3] = 255;
    }
  }
}

void DrawColorbar(RgbaImage& img, int top, const Palette& p, int scale) {
  const int w = img.width;
  Fill(img, 0, top, w, kColorbarHeight * scale, kWhite);
  const int bar_top = top + 2 * scale, bar_h = 12 * scale;
  const int tick_top = bar_top + bar_h, tick_h = 3 * scale;
  const int label_top = tick_top + tick_h + scale;
  const double span = p.domain_hi - p.domain_lo;

  for (int x = 0; x < w; ++x) {
    const double v = p.domain_lo + span * (x + 0.5) / w;
    Fill(img, x, bar_top, 1, bar_h, MapValueToColor(p, v));
  }

  int last_right = std::numeric_limits<int>::min();
  for (const PaletteStop& s : p.stops) {
    const int tx = w > 1 ? static_cast<int>(std::lround((s.anchor - p.domain_lo) / span * (w - 1))) : 0;
    Fill(img, tx, tick_top, std::max(1, scale / 2), tick_h, kBlack);
    const std::string label = TickLabel(s.anchor);
    const int tw = TextWidth(label, scale);
    const int lx = std::clamp(tx - tw / 2, 0, std::max(0, w - tw));
    if (lx <= last_right + scale) continue;
    DrawText(img, lx, label_top, label, scale, kBlack);
    last_right = lx + tw;
  }
}

}  // namespace

Rgb ParseHexColor(std::string_view text) {
  if (text.size() != 7 || text[0] != '#') {
    Fail(ErrorCode::kFormat, "colour '" + std::string(text) + "' is not #RRGGBB");
  }
  uint8_t ch[3];
  for (int i = 0; i < 3; ++i) {
    const int hi = HexDigit(text[1 + 2 * i]), lo = HexDigit(text[2 + 2 * i]);
    if (hi < 0 || lo < 0) {
      Fail(ErrorCode::kFormat, "colour '" + std::string(text) + "' is not #RRGGBB");
    }
    ch[i] = static_cast<uint8_t>(hi * 16 + lo);
  }
  return {ch[0], ch[1], ch[2]};
}

std::string HexColor(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02X%02X%02X", c.r, c.g, c.b);
  return buf;
}

void Palette::Validate(ErrorCode code) const {
  if (stops.size() < 2) Fail(code, "palette '" + name + "' needs at least two stops");
  for (size_t i = 0; i < stops.size(); ++i) {
    if (!std::isfinite(stops[i].anchor)) Fail(code, "palette '" + name + "' has a non-finite anchor");
    if (i > 0 && !(stops[i].anchor > stops[i - 1].anchor)) {
      Fail(code, "palette '" + name + "' anchors must be strictly increasing");
    }
  }
  if (stops.front().anchor != domain_lo || stops.back().anchor != domain_hi) {
    Fail(code, "palette '" + name + "' stops must span its domain exactly");
  }
}

Palette BuiltinPalette(PaletteKind kind) {
  switch (kind) {
    case PaletteKind::kNdwi:
    case PaletteKind::kMndwi:
      return MakePalette(kind == PaletteKind::kNdwi ? "ndwi" : "mndwi",
                         {S(-1.0, "#8C7355"), S(0.0, "#D9E8D0"), S(1.0, "#08306B")});
    case PaletteKind::kTurbidity:
      return MakePalette("turbidity",
                         {S(0.0, "#D4E6F4"), S(3.0, "#C49A6C"), S(6.0, "#5C3A1E")});
    case PaletteKind::kNdci:
      return MakePalette("algae", {S(-1.0, "#1A9850"), S(0.15, "#FEE08B"),
                                   S(0.30, "#FDAE61"), S(1.0, "#D73027")});
    case PaletteKind::kNdosi:
      return MakePalette("ndosi",
                         {S(-1.0, "#2166AC"), S(0.20, "#B2182B"), S(1.0, "#67001F")});
    case PaletteKind::kRelBathymetry:
      return MakePalette("depth", {S(0.0, "#C6DBEF"), S(1.0, "#08306B")});
    case PaletteKind::kSigma:
      return MakePalette("variance", {S(0.0, "#2166AC"), S(0.15, "#66BD63"),
                                      S(0.25, "#FEE08B"), S(0.35, "#F46D43"),
                                      S(0.5, "#A50026")});
    case PaletteKind::kMask:
      return MakePalette("mask", {S(0.0, "#8C7355"), S(1.0, "#08306B")});
  }
  Fail(ErrorCode::kUnknownPaletteKind, "unknown palette kind");
}

Palette BuiltinPalette(std::string_view name) {
  std::string key(name);
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (key == "algae") return BuiltinPalette(PaletteKind::kNdci);
  if (key == "depth") return BuiltinPalette(PaletteKind::kRelBathymetry);
  if (key == "sigma" || key == "variance") return BuiltinPalette(PaletteKind::kSigma);
  if (key == "mask") return BuiltinPalette(PaletteKind::kMask);
  if (const auto kind = ParseIndexKind(key)) return BuiltinPalette(PaletteKindFor(*kind));
  Fail(ErrorCode::kUnknownPaletteKind, "no built-in palette named '" + std::string(name) + "'");
}

PaletteKind PaletteKindFor(IndexKind kind) {
  switch (kind) {
    case IndexKind::kNdwi: return PaletteKind::kNdwi;
    case IndexKind::kMndwi: return PaletteKind::kMndwi;
    case IndexKind::kTurbidity: return PaletteKind::kTurbidity;
    case IndexKind::kNdci: return PaletteKind::kNdci;
    case IndexKind::kNdosi: return PaletteKind::kNdosi;
    case IndexKind::kRelBathymetry: return PaletteKind::kRelBathymetry;
  }
  return PaletteKind::kNdwi;
}

Rgb MapValueToColor(const Palette& p, double v) {
  if (std::isnan(v)) return p.undefined_color;
  if (v < p.domain_lo) return p.under_color;
  if (v > p.domain_hi) return p.over_color;
  // First stop with anchor > v; v sits in [hi-1, hi).
  auto hi = std::upper_bound(p.stops.begin(), p.stops.end(), v,
                             [](double x, const PaletteStop& s) { return x < s.anchor; });
  if (hi == p.stops.end()) return p.stops.back().color;
  if (hi == p.stops.begin()) return p.stops.front().color;
  const PaletteStop& a = *(hi - 1);
  const PaletteStop& b = *hi;
  const double t = (v - a.anchor) / (b.anchor - a.anchor);
  return {Lerp(a.color.r, b.color.r, t), Lerp(a.color.g, b.color.g, t),
          Lerp(a.color.b, b.color.b, t)};
}

std::string PaletteToJson(const Palette& p) {
  json stops = json::array();
  for (const PaletteStop& s : p.stops) {
    stops.push_back({{"value", s.anchor}, {"color", HexColor(s.color)}});
  }
  json doc = {{"name", p.name},
              {"domain", {p.domain_lo, p.domain_hi}},
              {"stops", std::move(stops)},
              {"under", HexColor(p.under_color)},
              {"over", HexColor(p.over_color)},
              {"undefined", HexColor(p.undefined_color)}};
  return doc.dump(2) + "\n";
}

Palette PaletteFromJson(const std::string& text) {
  Palette p;
  try {
    const json doc = json::parse(text);
    p.name = doc.value("name", std::string("custom"));
    for (const json& s : doc.at("stops")) {
      p.stops.push_back({s.at("value").get<double>(),
                         ParseHexColor(s.at("color").get<std::string>())});
    }
    if (p.stops.empty()) Fail(ErrorCode::kFormat, "palette has no stops");
    if (doc.contains("domain")) {
      const json& d = doc.at("domain");
      if (!d.is_array() || d.size() != 2) Fail(ErrorCode::kFormat, "domain must be [lo, hi]");
      p.domain_lo = d[0].get<double>();
      p.domain_hi = d[1].get<double>();
    } else {
      p.domain_lo = p.stops.front().anchor;
      p.domain_hi = p.stops.back().anchor;
    }
    p.under_color = ParseHexColor(doc.value("under", HexColor(p.stops.front().color)));
    p.over_color = ParseHexColor(doc.value("over", HexColor(p.stops.back().color)));
    p.undefined_color = ParseHexColor(doc.value("undefined", std::string("#808080")));
  } catch (const json::exception& e) {
    Fail(ErrorCode::kFormat, std::string("palette JSON: ") + e.what());
  }
  p.Validate(ErrorCode::kFormat);
  return p;
}

bool PaletteFitsDomain(const Palette& p, const Domain& nominal) {
  if (std::isinf(nominal.hi)) return p.domain_lo >= nominal.lo;
  return p.domain_lo == nominal.lo && p.domain_hi == nominal.hi;
}

RenderResult RenderMap(const MaskedGrid& grid, const Domain& nominal,
                       const Palette& p, const RenderOptions& opts) {
  p.Validate();
  if (opts.scale < 1) Fail(ErrorCode::kInvalidArgument, "scale must be >= 1");
  RenderResult out;
  if (!PaletteFitsDomain(p, nominal)) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "palette '%s' domain [%g, %g] does not match the map's nominal domain [%g, %g]",
                  p.name.c_str(), p.domain_lo, p.domain_hi, nominal.lo, nominal.hi);
    out.warnings.emplace_back(buf);
  }

  const int s = opts.scale;
  const int title_h = opts.title ? kTitleHeight * s : 0;
  const int map_w = grid.width() * s, map_h = grid.height() * s;
  const int bar_h = opts.colorbar ? kColorbarHeight * s : 0;
  out.image = RgbaImage(map_w, title_h + map_h + bar_h);

  if (opts.title) {
    Fill(out.image, 0, 0, map_w, title_h, kWhite);
    DrawText(out.image, 2 * s, 2 * s, *opts.title, s, kBlack);
  }
  for (int y = 0; y < grid.height(); ++y) {
    for (int x = 0; x < grid.width(); ++x) {
      const size_t i = size_t(y) * grid.width() + x;
      const double v = grid.defined.data[i] ? grid.values.data[i]
                                            : std::numeric_limits<double>::quiet_NaN();
      Fill(out.image, x * s, title_h + y * s, s, s, MapValueToColor(p, v));
    }
  }
  if (opts.colorbar) DrawColorbar(out.image, title_h + map_h, p, s);
  return out;
}

RenderResult RenderMap(const IndexMap& map, const Palette& p, const RenderOptions& opts) {
  return RenderMap(map, NominalDomain(map.kind), p, opts);
}

RenderResult RenderMap(const SigmaMap& map, const Palette& p, const RenderOptions& opts) {
  return RenderMap(map, Domain{0.0, std::numeric_limits<double>::infinity()}, p, opts);
}

MaskedGrid MaskAsGrid(const BinaryMask& mask) {
  MaskedGrid g{Grid<double>(mask.width(), mask.height(), std::numeric_limits<double>::quiet_NaN()),
               mask.valid};
  for (size_t i = 0; i < g.values.size(); ++i) {
    if (mask.valid.data[i]) g.values.data[i] = mask.water.data[i] ? 1.0 : 0.0;
  }
  return g;
}

RgbaImage TrueColorComposite(const Scene& scene) {
  const int w = scene.width(), h = scene.height();
  RgbaImage img(w, h);
  const BandId channels[3] = {BandId::kB04, BandId::kB03, BandId::kB02};
  for (int c = 0; c < 3; ++c) {
    const BandGrid& band = scene.band(channels[c]);
    std::vector<double> vals;
    for (size_t i = 0; i < band.size(); ++i) {
      if (scene.valid.data[i]) vals.push_back(band.data[i]);
    }
    std::sort(vals.begin(), vals.end());
    auto percentile = [&](double q) {
      if (vals.empty()) return 0.0;
      const double pos = q * (vals.size() - 1);
      const size_t k = static_cast<size_t>(pos);
      const double frac = pos - k;
      return k + 1 < vals.size() ? vals[k] + frac * (vals[k + 1] - vals[k]) : vals[k];
    };
    const double lo = percentile(0.02), hi = percentile(0.98);
    for (size_t i = 0; i < band.size(); ++i) {
      uint8_t* p = img.px(static_cast<int>(i % w), static_cast<int>(i / w));
      p[3] = 255;
      if (!scene.valid.data[i]) {
        p[c] = 0x80;
        continue;
      }
      const double v = band.data[i];
      double t = hi > lo ? (v - lo) / (hi - lo) : (v > lo ? 1.0 : 0.0);
      t = std::clamp(t, 0.0, 1.0);
      p[c] = static_cast<uint8_t>(std::lround(t * 255.0));
    }
  }
  return img;
}

RgbaImage RenderMaskOverlay(const Scene& scene, const BinaryMask& mask,
                            Rgb water_color, double alpha) {
  RequireSameShape(scene.width(), scene.height(), mask.width(), mask.height(),
                   "mask vs scene");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "alpha must lie in [0, 1]");
  }
  RgbaImage img = TrueColorComposite(scene);
  const uint8_t wc[3] = {water_color.r, water_color.g, water_color.b};
  for (size_t i = 0; i < mask.valid.size(); ++i) {
    if (!mask.IsWater(i)) continue;
    uint8_t* p = img.px(static_cast<int>(i % img.width), static_cast<int>(i / img.width));
    for (int c = 0; c < 3; ++c) {
      p[c] = static_cast<uint8_t>(std::lround((1.0 - alpha) * p[c] + alpha * wc[c]));
    }
  }
  return img;
}

}  // namespace aquaspec
