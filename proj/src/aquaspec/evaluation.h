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

#ifndef AQUASPEC_EVALUATION_H_
#define AQUASPEC_EVALUATION_H_

#include <cstdint>
#include <optional>
#include <string>

#include "aquaspec/common.h"
#include "aquaspec/mask.h"

namespace aquaspec {

// Water is the positive class.
struct ConfusionMatrix {
  uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
  uint64_t Total() const { return tp + fp + fn + tn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

// Each score is absent when its denominator is zero.
struct MetricsReport {
  std::optional<double> accuracy, iou, dice, recall, precision, specificity;
};

struct ProbabilityMap {
  Grid<double> p_water;
  BoolGrid valid;

  int width() const { return p_water.width; }
  int height() const { return p_water.height; }
};

// Counts over pixels valid in both masks.
ConfusionMatrix Confusion(const BinaryMask& pred, const BinaryMask& ref);
MetricsReport ComputeMetrics(const ConfusionMatrix& cm);

std::string MetricsJson(const ConfusionMatrix& cm, const MetricsReport& m);
// Plain-text table with percentages at two decimals ("n/a" when undefined).
std::string MetricsTable(const MetricsReport& m);

inline constexpr double kProbabilityEpsilon = 1e-7;

// Weighted mean of -log(p_c) over jointly valid pixels, c the reference
// class, weights w_land / w_water. Probabilities are clamped to
// [eps, 1 - eps].
double WeightedCrossEntropy(const ProbabilityMap& pred, const BinaryMask& ref,
                            double w_land = 1.0, double w_water = 20.0);

// Soft Dice loss: 1 - (2 sum(p*y) + smooth) / (sum(p) + sum(y) + smooth).
double DiceLoss(const ProbabilityMap& pred, const BinaryMask& ref,
                double smooth = 1.0);

struct CompositeLoss {
  double total = 0.0, ce = 0.0, dice = 0.0;
};
// total = 0.5 * ce + 0.5 * dice with the default weights and smoothing.
CompositeLoss ComputeCompositeLoss(const ProbabilityMap& pred, const BinaryMask& ref);

// Float32 TIFF with values in [0, 1]; NaN marks invalid pixels.
ProbabilityMap ReadProbabilityMap(const std::string& path);

}  // namespace aquaspec

#endif  // AQUASPEC_EVALUATION_H_
