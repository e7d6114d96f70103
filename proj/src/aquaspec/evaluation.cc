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

#include "aquaspec/evaluation.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "aquaspec/numeric.h"
#include "aquaspec/raster_io.h"
#include "json.hpp"

namespace aquaspec {

using nlohmann::json;

namespace {

std::optional<double> Ratio(uint64_t num, uint64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

void CheckShapes(const ProbabilityMap& pred, const BinaryMask& ref) {
  RequireSameShape(pred.width(), pred.height(), ref.width(), ref.height(),
                   "probability map vs reference mask");
}

}  // namespace

ConfusionMatrix Confusion(const BinaryMask& pred, const BinaryMask& ref) {
  RequireSameShape(pred.width(), pred.height(), ref.width(), ref.height(),
                   "prediction vs reference");
  ConfusionMatrix cm;
  for (size_t i = 0; i < pred.valid.size(); ++i) {
    if (!pred.valid.data[i] || !ref.valid.data[i]) continue;
    const bool p = pred.water.data[i], r = ref.water.data[i];
    if (p && r) ++cm.tp;
    else if (p) ++cm.fp;
    else if (r) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

MetricsReport ComputeMetrics(const ConfusionMatrix& cm) {
  if (cm.Total() == 0) Fail(ErrorCode::kEmptyMatrix, "confusion matrix is empty");
  MetricsReport m;
  m.accuracy = Ratio(cm.tp + cm.tn, cm.Total());
  m.iou = Ratio(cm.tp, cm.tp + cm.fp + cm.fn);
  m.dice = Ratio(2 * cm.tp, 2 * cm.tp + cm.fp + cm.fn);
  m.recall = Ratio(cm.tp, cm.tp + cm.fn);
  m.precision = Ratio(cm.tp, cm.tp + cm.fp);
  m.specificity = Ratio(cm.tn, cm.tn + cm.fp);
  return m;
}

std::string MetricsJson(const ConfusionMatrix& cm, const MetricsReport& m) {
  json metrics = json::object();
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) metrics[key] = *v;
  };
  put("accuracy", m.accuracy);
  put("iou", m.iou);
  put("dice", m.dice);
  put("recall", m.recall);
  put("precision", m.precision);
  put("specificity", m.specificity);
  json doc = {{"confusion", {{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}}},
              {"metrics", std::move(metrics)}};
  return doc.dump(2) + "\n";
}

std::string MetricsTable(const MetricsReport& m) {
  std::string out = "Metric           Value\n";
  char buf[64];
  auto row = [&](const char* name, const std::optional<double>& v) {
    if (v) std::snprintf(buf, sizeof(buf), "%-16s %6.2f%%\n", name, *v * 100.0);
    else std::snprintf(buf, sizeof(buf), "%-16s %7s\n", name, "n/a");
    out += buf;
  };
  row("Accuracy", m.accuracy);
  row("IoU", m.iou);
  row("F1-Score (Dice)", m.dice);
  row("Recall", m.recall);
  row("Precision", m.precision);
  row("Specificity", m.specificity);
  return out;
}

double WeightedCrossEntropy(const ProbabilityMap& pred, const BinaryMask& ref,
                            double w_land, double w_water) {
  CheckShapes(pred, ref);
  if (!(w_land > 0.0) || !(w_water > 0.0)) {
    Fail(ErrorCode::kNonPositiveWeight, "class weights must be > 0");
  }
  std::vector<double> terms, weights;
  for (size_t i = 0; i < pred.p_water.size(); ++i) {
    if (!pred.valid.data[i] || !ref.valid.data[i]) continue;
    const double p = std::clamp(pred.p_water.data[i], kProbabilityEpsilon,
                                1.0 - kProbabilityEpsilon);
    const bool water = ref.water.data[i];
    const double w = water ? w_water : w_land;
    terms.push_back(-w * std::log(water ? p : 1.0 - p));
    weights.push_back(w);
  }
  if (terms.empty()) Fail(ErrorCode::kNoValidPixels, "no jointly valid pixel");
  return PairwiseSum(terms) / PairwiseSum(weights);
}

double DiceLoss(const ProbabilityMap& pred, const BinaryMask& ref, double smooth) {
  CheckShapes(pred, ref);
  std::vector<double> inter, p_sum, y_sum;
  for (size_t i = 0; i < pred.p_water.size(); ++i) {
    if (!pred.valid.data[i] || !ref.valid.data[i]) continue;
    const double p = pred.p_water.data[i];
    const double y = ref.water.data[i] ? 1.0 : 0.0;
    inter.push_back(p * y);
    p_sum.push_back(p);
    y_sum.push_back(y);
  }
  const double num = 2.0 * PairwiseSum(inter) + smooth;
  const double den = PairwiseSum(p_sum) + PairwiseSum(y_sum) + smooth;
  if (den == 0.0) return 0.0;
  return 1.0 - num / den;
}

CompositeLoss ComputeCompositeLoss(const ProbabilityMap& pred, const BinaryMask& ref) {
  CompositeLoss l;
  l.ce = WeightedCrossEntropy(pred, ref);
  l.dice = DiceLoss(pred, ref);
  l.total = 0.5 * l.ce + 0.5 * l.dice;
  return l;
}

ProbabilityMap ReadProbabilityMap(const std::string& path) {
  const Grid<float> raw = ReadTiffF32(path);
  ProbabilityMap pm{Grid<double>(raw.width, raw.height, 0.0),
                    BoolGrid(raw.width, raw.height, 0)};
  for (size_t i = 0; i < raw.size(); ++i) {
    const float v = raw.data[i];
    if (std::isnan(v)) continue;
    if (!(v >= 0.0f && v <= 1.0f)) {
      Fail(ErrorCode::kFormat, "'" + path + "' holds probability " +
                                   std::to_string(v) + " outside [0, 1]");
    }
    pm.p_water.data[i] = v;
    pm.valid.data[i] = 1;
  }
  return pm;
}

}  // namespace aquaspec
