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

#ifndef AQUASPEC_ANALYTICS_H_
#define AQUASPEC_ANALYTICS_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "aquaspec/indices.h"
#include "aquaspec/mask.h"

namespace aquaspec {

// Local population standard deviation of an index over water pixels.
struct SigmaMap : MaskedGrid {
  IndexKind source_kind = IndexKind::kNdwi;
  int window = 5;
};

// For each defined water pixel, the N defined water pixels inside the
// centred window (clipped at the borders) give
//   sigma = sqrt(1/N * sum (x_i - mean)^2).
// Pixels with N < 2 stay undefined.
SigmaMap LocalSigma(const IndexMap& map, const BinaryMask& water, int window = 5);

enum class Homogeneity : uint8_t { kUndefined = 0, kStable, kTransitional, kVariable };

inline constexpr double kStableSigma = 0.15;
inline constexpr double kVariableSigma = 0.35;

// stable: sigma < 0.15, variable: sigma > 0.35, transitional otherwise.
Homogeneity ClassifySigma(double sigma);
Grid<Homogeneity> ClassifyHomogeneity(const SigmaMap& sig);

struct HomogeneityCounts {
  size_t stable = 0, transitional = 0, variable = 0;
  size_t Total() const { return stable + transitional + variable; }
};
HomogeneityCounts CountHomogeneity(const Grid<Homogeneity>& classes);

struct GlobalStats {
  IndexKind kind = IndexKind::kNdwi;
  size_t count = 0;
  double mean = 0.0, sigma = 0.0, min = 0.0, max = 0.0;
};

// Population statistics over pixels that are defined AND water.
GlobalStats GlobalMaskedStats(const IndexMap& map, const BinaryMask& water);
// "mean ± sigma" at two decimals.
std::string FormatMeanSigma(double mean, double sigma);
inline std::string FormatReport(const GlobalStats& s) {
  return FormatMeanSigma(s.mean, s.sigma);
}

struct DepthPair {
  double depth = 0.0;
  double value = 0.0;
};

struct DepthBin {
  double depth_lo = 0.0, depth_hi = 0.0;
  size_t count = 0;
  std::optional<double> mean, sigma;  // absent for empty bins
};

struct DepthProfile {
  std::vector<DepthPair> pairs;
  std::vector<DepthBin> bins;
  std::optional<double> depth_scale;
};

DepthProfile ComputeDepthProfile(const IndexMap& index, const IndexMap& depth,
                                 const BinaryMask& water, int bin_count,
                                 std::optional<double> depth_scale = std::nullopt);

std::string DepthPairsCsv(const DepthProfile& profile);
std::string DepthBinsJson(const DepthProfile& profile);

void WriteSigmaMap(const std::string& path, const SigmaMap& sig);
SigmaMap ReadSigmaMap(const std::string& path);

}  // namespace aquaspec

#endif  // AQUASPEC_ANALYTICS_H_
