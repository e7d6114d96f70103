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

#include "aquaspec/analytics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "aquaspec/numeric.h"
#include "aquaspec/raster_io.h"
#include "json.hpp"

namespace aquaspec {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json OptionalJson(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

SigmaMap LocalSigma(const IndexMap& map, const BinaryMask& water, int window) {
  RequireSameShape(map.width(), map.height(), water.width(), water.height(),
                   "water mask vs index map");
  if (window > 0 && window % 2 == 0) {
    Fail(ErrorCode::kEvenWindow, "window " + std::to_string(window) + " is even");
  }
  if (window < 3) Fail(ErrorCode::kInvalidArgument, "window must be odd and >= 3");

  const int w = map.width(), h = map.height(), r = window / 2;
  SigmaMap out;
  out.source_kind = map.kind;
  out.window = window;
  out.values = Grid<double>(w, h, kNaN);
  out.defined = BoolGrid(w, h, 0);

  auto usable = [&](size_t i) { return map.defined.data[i] && water.IsWater(i); };

  ParallelRows(h, [&](int y) {
    std::vector<double> win;
    win.reserve(size_t(window) * window);
    const int y0 = std::max(0, y - r), y1 = std::min(h - 1, y + r);
    for (int x = 0; x < w; ++x) {
      if (!usable(size_t(y) * w + x)) continue;
      const int x0 = std::max(0, x - r), x1 = std::min(w - 1, x + r);
      win.clear();
      for (int yy = y0; yy <= y1; ++yy) {
        for (int xx = x0; xx <= x1; ++xx) {
          const size_t j = size_t(yy) * w + xx;
          if (usable(j)) win.push_back(map.values.data[j]);
        }
      }
      if (win.size() < 2) continue;
      double mean = 0.0;
      for (double v : win) mean += v;
      mean /= static_cast<double>(win.size());
      double ss = 0.0;
      for (double v : win) ss += (v - mean) * (v - mean);
      const size_t i = size_t(y) * w + x;
      out.values.data[i] = std::sqrt(ss / static_cast<double>(win.size()));
      out.defined.data[i] = 1;
    }
  });
  return out;
}

Homogeneity ClassifySigma(double sigma) {
  if (std::isnan(sigma)) return Homogeneity::kUndefined;
  if (sigma < kStableSigma) return Homogeneity::kStable;
  if (sigma > kVariableSigma) return Homogeneity::kVariable;
  return Homogeneity::kTransitional;
}

Grid<Homogeneity> ClassifyHomogeneity(const SigmaMap& sig) {
  Grid<Homogeneity> out(sig.width(), sig.height(), Homogeneity::kUndefined);
  for (size_t i = 0; i < out.size(); ++i) {
    if (sig.defined.data[i]) out.data[i] = ClassifySigma(sig.values.data[i]);
  }
  return out;
}

HomogeneityCounts CountHomogeneity(const Grid<Homogeneity>& classes) {
  HomogeneityCounts c;
  for (Homogeneity h : classes.data) {
    switch (h) {
      case Homogeneity::kStable: ++c.stable; break;
      case Homogeneity::kTransitional: ++c.transitional; break;
      case Homogeneity::kVariable: ++c.variable; break;
      case Homogeneity::kUndefined: break;
    }
  }
  return c;
}

GlobalStats GlobalMaskedStats(const IndexMap& map, const BinaryMask& water) {
  RequireSameShape(map.width(), map.height(), water.width(), water.height(),
                   "water mask vs index map");
  std::vector<double> vals;
  for (size_t i = 0; i < map.values.size(); ++i) {
    if (map.defined.data[i] && water.IsWater(i)) vals.push_back(map.values.data[i]);
  }
  if (vals.empty()) Fail(ErrorCode::kNoDefinedPixels, "no defined water pixel");
  GlobalStats s;
  s.kind = map.kind;
  s.count = vals.size();
  const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
  s.min = *lo;
  s.max = *hi;
  const MeanSigma ms = PopulationMeanSigma(vals);
  s.mean = std::clamp(ms.mean, s.min, s.max);
  s.sigma = ms.sigma;
  return s;
}

std::string FormatMeanSigma(double mean, double sigma) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.2f \xC2\xB1 %.2f", mean, sigma);
  return buf;
}

DepthProfile ComputeDepthProfile(const IndexMap& index, const IndexMap& depth,
                                 const BinaryMask& water, int bin_count,
                                 std::optional<double> depth_scale) {
  RequireSameShape(index.width(), index.height(), depth.width(), depth.height(),
                   "depth map vs index map");
  RequireSameShape(index.width(), index.height(), water.width(), water.height(),
                   "water mask vs index map");
  if (depth.kind != IndexKind::kRelBathymetry) {
    Fail(ErrorCode::kKindMismatch, "depth map is " +
                                       std::string(IndexKindName(depth.kind)) +
                                       ", expected REL_BATHYMETRY");
  }
  if (bin_count < 1) Fail(ErrorCode::kInvalidArgument, "bin_count must be >= 1");
  if (depth_scale && !(std::isfinite(*depth_scale) && *depth_scale > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "depth_scale must be a positive finite number");
  }

  DepthProfile p;
  p.depth_scale = depth_scale;
  const double scale = depth_scale.value_or(1.0);
  for (size_t i = 0; i < index.values.size(); ++i) {
    if (index.defined.data[i] && depth.defined.data[i] && water.IsWater(i)) {
      p.pairs.push_back({depth.values.data[i] * scale, index.values.data[i]});
    }
  }
  if (p.pairs.empty()) Fail(ErrorCode::kNoDefinedPixels, "no pixel defined in both maps");

  double lo = p.pairs.front().depth, hi = lo;
  for (const DepthPair& q : p.pairs) {
    lo = std::min(lo, q.depth);
    hi = std::max(hi, q.depth);
  }
  auto bin_of = [&](double d) {
    if (!(hi > lo) || d >= hi) return hi > lo ? bin_count - 1 : 0;
    return std::clamp(static_cast<int>((d - lo) / (hi - lo) * bin_count), 0, bin_count - 1);
  };
  std::vector<std::vector<double>> members(bin_count);
  for (const DepthPair& q : p.pairs) members[bin_of(q.depth)].push_back(q.value);

  p.bins.resize(bin_count);
  for (int k = 0; k < bin_count; ++k) {
    DepthBin& b = p.bins[k];
    b.depth_lo = lo + (hi - lo) * k / bin_count;
    b.depth_hi = k + 1 == bin_count ? hi : lo + (hi - lo) * (k + 1) / bin_count;
    b.count = members[k].size();
    if (b.count == 0) continue;
    const MeanSigma ms = PopulationMeanSigma(members[k]);
    b.mean = ms.mean;
    b.sigma = ms.sigma;
  }
  return p;
}

std::string DepthPairsCsv(const DepthProfile& profile) {
  std::string out = "depth,value\n";
  char buf[64];
  for (const DepthPair& q : profile.pairs) {
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g\n", q.depth, q.value);
    out += buf;
  }
  return out;
}

std::string DepthBinsJson(const DepthProfile& profile) {
  json bins = json::array();
  for (const DepthBin& b : profile.bins) {
    bins.push_back({{"depth_lo", b.depth_lo},
                    {"depth_hi", b.depth_hi},
                    {"count", b.count},
                    {"mean", OptionalJson(b.mean)},
                    {"sigma", OptionalJson(b.sigma)}});
  }
  json doc = {{"pair_count", profile.pairs.size()},
              {"depth_scale", OptionalJson(profile.depth_scale)},
              {"bins", std::move(bins)}};
  return doc.dump(2) + "\n";
}

void WriteSigmaMap(const std::string& path, const SigmaMap& sig) {
  WriteMaskedGridTiff(path, sig);
  json stats = nullptr;
  if (const auto s = Summarize(sig)) {
    stats = {{"count", s->count}, {"min", s->min}, {"max", s->max},
             {"mean", s->mean}, {"sigma", s->sigma}};
  }
  const HomogeneityCounts c = CountHomogeneity(ClassifyHomogeneity(sig));
  json side = {{"type", "sigma"},
               {"kind", "SIGMA"},
               {"source_kind", std::string(IndexKindName(sig.source_kind))},
               {"window", sig.window},
               {"width", sig.width()},
               {"height", sig.height()},
               {"nodata", "nan"},
               {"stats", stats},
               {"homogeneity",
                {{"stable", c.stable},
                 {"transitional", c.transitional},
                 {"variable", c.variable}}}};
  WriteTextFile(SidecarPath(path), side.dump(2) + "\n");
}

SigmaMap ReadSigmaMap(const std::string& path) {
  const std::string side_text = ReadTextFile(SidecarPath(path));
  std::optional<IndexKind> kind;
  int window = 5;
  try {
    const json side = json::parse(side_text);
    if (!side.is_object() || side.value("type", "") != "sigma") {
      Fail(ErrorCode::kFormat, "'" + path + "' is not a sigma map");
    }
    kind = ParseIndexKind(side.value("source_kind", ""));
    window = side.value("window", 5);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kFormat, "sidecar of '" + path + "': " + e.what());
  }
  if (!kind) Fail(ErrorCode::kFormat, "unknown source_kind in '" + path + "'");
  SigmaMap sig;
  static_cast<MaskedGrid&>(sig) = ReadMaskedGridTiff(path);
  sig.source_kind = *kind;
  sig.window = window;
  return sig;
}

}  // namespace aquaspec
