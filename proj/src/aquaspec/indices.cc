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

#include "aquaspec/indices.h"

#include <cmath>
#include <limits>

#include "aquaspec/numeric.h"
#include "aquaspec/raster_io.h"
#include "json.hpp"

namespace aquaspec {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

inline double Band(const Scene& s, BandId b, size_t i) {
  return s.band(b).data[i];
}

// Returns NaN when the formula has a zero denominator.
double EvaluatePixel(const Scene& s, IndexKind kind, size_t i) {
  auto nd = [](double a, double b) {
    const double den = a + b;
    return den != 0.0 ? (a - b) / den : kNaN;
  };
  const double b02 = Band(s, BandId::kB02, i);
  const double b03 = Band(s, BandId::kB03, i);
  const double b04 = Band(s, BandId::kB04, i);
  switch (kind) {
    case IndexKind::kNdwi: return nd(b03, Band(s, BandId::kB08, i));
    case IndexKind::kMndwi: return nd(b03, Band(s, BandId::kB11, i));
    case IndexKind::kNdci: return nd(b03, b04);
    case IndexKind::kNdosi: return nd(Band(s, BandId::kB11, i), b02 + b03 + b04);
    case IndexKind::kTurbidity: return b02 != 0.0 ? (b04 + b03) / b02 : kNaN;
    case IndexKind::kRelBathymetry: break;
  }
  return kNaN;
}

IndexMap MakeEmpty(IndexKind kind, int w, int h) {
  IndexMap map;
  map.kind = kind;
  map.values = Grid<double>(w, h, kNaN);
  map.defined = BoolGrid(w, h, 0);
  return map;
}

IndexMap RelativeBathymetry(const Scene& scene, const BinaryMask* water) {
  const int w = scene.width(), h = scene.height();
  const BandGrid& b08 = scene.band(BandId::kB08);
  bool any = false;
  double b08_max = 0.0;
  for (size_t i = 0; i < b08.size(); ++i) {
    if (!scene.valid.data[i]) continue;
    if (water && !water->IsWater(i)) continue;
    if (!any || b08.data[i] > b08_max) b08_max = b08.data[i];
    any = true;
  }
  if (!any) {
    Fail(ErrorCode::kEmptyMaxDomain,
         water ? "no valid water pixel to take B08_max over"
               : "no valid pixel to take B08_max over");
  }
  IndexMap map = MakeEmpty(IndexKind::kRelBathymetry, w, h);
  map.b08_max = b08_max;
  if (!(b08_max > 0.0)) return map;
  for (size_t i = 0; i < b08.size(); ++i) {
    if (!scene.valid.data[i] || b08.data[i] > b08_max) continue;
    map.values.data[i] = 1.0 - b08.data[i] / b08_max;
    map.defined.data[i] = 1;
  }
  return map;
}

}  // namespace

size_t MaskedGrid::DefinedCount() const {
  size_t n = 0;
  for (uint8_t d : defined.data) n += d ? 1 : 0;
  return n;
}

MaskedGrid NormalizedDifference(const Grid<double>& a, const Grid<double>& b,
                                const BoolGrid& valid) {
  RequireSameShape(a.width, a.height, b.width, b.height, "normalized difference operands");
  RequireSameShape(a.width, a.height, valid.width, valid.height, "validity grid");
  MaskedGrid out{Grid<double>(a.width, a.height, kNaN), BoolGrid(a.width, a.height, 0)};
  for (size_t i = 0; i < a.size(); ++i) {
    const double den = a.data[i] + b.data[i];
    if (!valid.data[i] || den == 0.0) continue;
    out.values.data[i] = (a.data[i] - b.data[i]) / den;
    out.defined.data[i] = 1;
  }
  return out;
}

IndexMap ComputeIndex(const Scene& scene, IndexKind kind, const BinaryMask* water) {
  const int w = scene.width(), h = scene.height();
  for (const BandGrid& g : scene.bands) {
    RequireSameShape(g.width, g.height, w, h, "band grid vs scene");
  }
  if (water) {
    RequireSameShape(water->width(), water->height(), w, h, "water mask vs scene");
  }
  if (kind == IndexKind::kRelBathymetry) return RelativeBathymetry(scene, water);

  IndexMap map = MakeEmpty(kind, w, h);
  ParallelRows(h, [&](int y) {
    for (int x = 0; x < w; ++x) {
      const size_t i = size_t(y) * w + x;
      if (!scene.valid.data[i]) continue;
      const double v = EvaluatePixel(scene, kind, i);
      if (std::isnan(v)) continue;
      map.values.data[i] = v;
      map.defined.data[i] = 1;
    }
  });
  return map;
}

IndexMap ApplyMask(const IndexMap& map, const BinaryMask& mask) {
  RequireSameShape(map.width(), map.height(), mask.width(), mask.height(),
                   "mask vs index map");
  IndexMap out = map;
  for (size_t i = 0; i < out.values.size(); ++i) {
    if (out.defined.data[i] && !mask.IsWater(i)) {
      out.defined.data[i] = 0;
      out.values.data[i] = kNaN;
    }
  }
  return out;
}

std::optional<SummaryStats> Summarize(const MaskedGrid& grid) {
  std::vector<double> vals;
  vals.reserve(grid.values.size());
  for (size_t i = 0; i < grid.values.size(); ++i) {
    if (grid.defined.data[i]) vals.push_back(grid.values.data[i]);
  }
  if (vals.empty()) return std::nullopt;
  SummaryStats s;
  s.count = vals.size();
  s.min = s.max = vals.front();
  for (double v : vals) {
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  const MeanSigma ms = PopulationMeanSigma(vals);
  s.mean = ms.mean;
  s.sigma = ms.sigma;
  return s;
}

std::string SidecarPath(const std::string& path) { return path + ".json"; }

void WriteMaskedGridTiff(const std::string& path, const MaskedGrid& grid) {
  Grid<float> out(grid.width(), grid.height());
  for (size_t i = 0; i < out.size(); ++i) {
    out.data[i] = grid.defined.data[i] ? static_cast<float>(grid.values.data[i])
                                       : std::numeric_limits<float>::quiet_NaN();
  }
  WriteTiffF32(path, out);
}

MaskedGrid ReadMaskedGridTiff(const std::string& path) {
  const Grid<float> raw = ReadTiffF32(path);
  MaskedGrid g{Grid<double>(raw.width, raw.height, kNaN), BoolGrid(raw.width, raw.height, 0)};
  for (size_t i = 0; i < raw.size(); ++i) {
    if (std::isnan(raw.data[i])) continue;
    g.values.data[i] = raw.data[i];
    g.defined.data[i] = 1;
  }
  return g;
}

static json StatsJson(const MaskedGrid& grid) {
  const auto s = Summarize(grid);
  if (!s) return nullptr;
  return {{"count", s->count}, {"min", s->min}, {"max", s->max},
          {"mean", s->mean}, {"sigma", s->sigma}};
}

void WriteIndexMap(const std::string& path, const IndexMap& map) {
  WriteMaskedGridTiff(path, map);
  json side = {{"type", "index"},
               {"kind", std::string(IndexKindName(map.kind))},
               {"width", map.width()},
               {"height", map.height()},
               {"nodata", "nan"},
               {"stats", StatsJson(map)}};
  if (map.b08_max) side["b08_max"] = *map.b08_max;
  WriteTextFile(SidecarPath(path), side.dump(2) + "\n");
}

IndexMap ReadIndexMap(const std::string& path) {
  const std::string side_text = ReadTextFile(SidecarPath(path));
  std::optional<IndexKind> kind;
  std::optional<double> b08_max;
  int width = -1, height = -1;
  try {
    const json side = json::parse(side_text);
    if (!side.is_object() || side.value("type", "") != "index") {
      Fail(ErrorCode::kFormat, "'" + path + "' is not an index map");
    }
    kind = ParseIndexKind(side.value("kind", ""));
    if (side.contains("b08_max") && side["b08_max"].is_number()) {
      b08_max = side["b08_max"].get<double>();
    }
    width = side.value("width", -1);
    height = side.value("height", -1);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kFormat, "sidecar of '" + path + "': " + e.what());
  }
  if (!kind) Fail(ErrorCode::kFormat, "unknown kind in sidecar of '" + path + "'");
  IndexMap map;
  static_cast<MaskedGrid&>(map) = ReadMaskedGridTiff(path);
  map.kind = *kind;
  map.b08_max = b08_max;
  if (width != map.width() || height != map.height()) {
    Fail(ErrorCode::kFormat, "sidecar dimensions disagree with '" + path + "'");
  }
  return map;
}

}  // namespace aquaspec
