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

#include "aquaspec/segmentation.h"

#include <cmath>
#include <filesystem>

#include "aquaspec/raster_io.h"
#include "json.hpp"

namespace aquaspec {

using nlohmann::json;

std::string_view MaskMethodName(MaskMethod m) {
  switch (m) {
    case MaskMethod::kFixed: return "fixed";
    case MaskMethod::kOtsu: return "otsu";
    case MaskMethod::kExternal: return "external";
  }
  return "?";
}

std::optional<MaskMethod> ParseMaskMethod(std::string_view name) {
  for (MaskMethod m : {MaskMethod::kFixed, MaskMethod::kOtsu, MaskMethod::kExternal}) {
    if (MaskMethodName(m) == name) return m;
  }
  return std::nullopt;
}

BinaryMask ThresholdFixed(const MaskedGrid& map, double t,
                          std::optional<IndexKind> kind) {
  BinaryMask mask(map.width(), map.height());
  for (size_t i = 0; i < map.values.size(); ++i) {
    if (!map.defined.data[i]) continue;
    mask.valid.data[i] = 1;
    mask.water.data[i] = map.values.data[i] > t ? 1 : 0;
  }
  mask.provenance = {MaskMethod::kFixed, kind, t};
  return mask;
}

int Histogram::BinOf(double v) const {
  if (v >= hi) return bin_count - 1;
  const int k = static_cast<int>((v - lo) / (hi - lo) * bin_count);
  return std::clamp(k, 0, bin_count - 1);
}

double Histogram::Edge(int k) const {
  if (k >= bin_count) return hi;
  return lo + (hi - lo) * k / bin_count;
}

uint64_t Histogram::Total() const {
  uint64_t n = 0;
  for (uint64_t c : counts) n += c;
  return n;
}

Histogram BuildHistogram(const MaskedGrid& map, int bin_count) {
  if (bin_count < 2) Fail(ErrorCode::kInvalidArgument, "bin_count must be >= 2");
  bool any = false;
  double lo = 0.0, hi = 0.0;
  for (size_t i = 0; i < map.values.size(); ++i) {
    if (!map.defined.data[i]) continue;
    const double v = map.values.data[i];
    if (!any) lo = hi = v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    any = true;
  }
  if (!any) Fail(ErrorCode::kNoDefinedPixels, "histogram of an empty map");
  if (!(lo < hi)) Fail(ErrorCode::kDegenerateRange, "all defined values equal");
  Histogram h{bin_count, lo, hi, std::vector<uint64_t>(bin_count, 0)};
  for (size_t i = 0; i < map.values.size(); ++i) {
    if (map.defined.data[i]) ++h.counts[h.BinOf(map.values.data[i])];
  }
  return h;
}

OtsuResult ThresholdOtsu(const MaskedGrid& map, int bin_count,
                         std::optional<IndexKind> kind) {
  const Histogram hist = BuildHistogram(map, bin_count);

  // Between-class variance in bin-index units. With integer class counts
  // n0, n1 and index sums s0, s1 it equals
  //   (n1*s0 - n0*s1)^2 / (n0 * n1 * N^2),
  // which has the same argmax as the value-unit form because bin centres
  // are an increasing affine function of the index.
  __int128 n_total = 0, s_total = 0;
  for (int k = 0; k < bin_count; ++k) {
    n_total += hist.counts[k];
    s_total += static_cast<__int128>(hist.counts[k]) * k;
  }
  __int128 n0 = 0, s0 = 0;
  long double best = -1.0L;
  int best_split = 1;
  for (int k = 1; k < bin_count; ++k) {
    n0 += hist.counts[k - 1];
    s0 += static_cast<__int128>(hist.counts[k - 1]) * (k - 1);
    const __int128 n1 = n_total - n0;
    const __int128 s1 = s_total - s0;
    if (n0 == 0 || n1 == 0) continue;
    const long double d = static_cast<long double>(n1 * s0 - n0 * s1);
    const long double score =
        d * d / (static_cast<long double>(n0) * static_cast<long double>(n1));
    if (score > best) {
      best = score;
      best_split = k;
    }
  }

  OtsuResult r;
  r.split = best_split;
  r.threshold = hist.Edge(best_split);
  r.mask = ThresholdFixed(map, r.threshold, kind);
  r.mask.provenance.method = MaskMethod::kOtsu;
  return r;
}

BinaryMask LoadExternalMask(const std::string& path, int width, int height) {
  const Grid<uint8_t> img = ReadPngGray8(path);
  RequireSameShape(img.width, img.height, width, height, "external mask vs expected");
  BinaryMask mask(width, height);
  for (size_t i = 0; i < img.size(); ++i) {
    const uint8_t v = img.data[i];
    if (v != 0 && v != 255) {
      Fail(ErrorCode::kFormat, "'" + path + "' holds value " + std::to_string(v) +
                                   " at pixel " + std::to_string(i) +
                                   "; masks must be 0 or 255");
    }
    mask.valid.data[i] = 1;
    mask.water.data[i] = v == 255 ? 1 : 0;
  }
  mask.provenance = {MaskMethod::kExternal, std::nullopt, std::nullopt};
  return mask;
}

double WaterFraction(const BinaryMask& mask) {
  size_t valid = 0, water = 0;
  for (size_t i = 0; i < mask.valid.size(); ++i) {
    if (!mask.valid.data[i]) continue;
    ++valid;
    water += mask.water.data[i] ? 1 : 0;
  }
  if (valid == 0) Fail(ErrorCode::kNoValidPixels, "mask has no valid pixel");
  return static_cast<double>(water) / static_cast<double>(valid);
}

void WriteMask(const std::string& path, const BinaryMask& mask) {
  Grid<uint8_t> img(mask.width(), mask.height(), 0);
  size_t valid = 0;
  for (size_t i = 0; i < img.size(); ++i) {
    img.data[i] = mask.IsWater(i) ? 255 : 0;
    valid += mask.valid.data[i] ? 1 : 0;
  }
  WritePngGray8(path, img);

  const Provenance& p = mask.provenance;
  json side = {
      {"width", mask.width()},
      {"height", mask.height()},
      {"valid_count", valid},
      {"provenance",
       {{"method", std::string(MaskMethodName(p.method))},
        {"source_kind",
         p.source_kind ? json(std::string(IndexKindName(*p.source_kind))) : json(nullptr)},
        {"threshold", p.threshold ? json(*p.threshold) : json(nullptr)}}},
      {"water_fraction", valid ? json(WaterFraction(mask)) : json(nullptr)}};
  WriteTextFile(SidecarPath(path), side.dump(2) + "\n");
}

BinaryMask ReadMask(const std::string& path) {
  const Grid<uint8_t> img = ReadPngGray8(path);
  BinaryMask mask = LoadExternalMask(path, img.width, img.height);
  const std::string side_path = SidecarPath(path);
  if (!std::filesystem::exists(side_path)) return mask;
  try {
    const json side = json::parse(ReadTextFile(side_path));
    const json& p = side.at("provenance");
    if (auto m = ParseMaskMethod(p.value("method", ""))) mask.provenance.method = *m;
    if (p.contains("source_kind") && p["source_kind"].is_string()) {
      mask.provenance.source_kind = ParseIndexKind(p["source_kind"].get<std::string>());
    }
    if (p.contains("threshold") && p["threshold"].is_number()) {
      mask.provenance.threshold = p["threshold"].get<double>();
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kFormat, "sidecar of '" + path + "': " + e.what());
  }
  return mask;
}

}  // namespace aquaspec
