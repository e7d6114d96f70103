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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "aquaspec/raster_io.h"
#include "test_support.h"

namespace aquaspec {
namespace {

using testing::RandomMask;
using testing::TempDir;

template <typename F>
ErrorCode CodeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

ProbabilityMap Uniform(int w, int h, double p) {
  return {Grid<double>(w, h, p), BoolGrid(w, h, 1)};
}

ProbabilityMap Perfect(const BinaryMask& ref) {
  ProbabilityMap pm = Uniform(ref.width(), ref.height(), 0.0);
  for (size_t i = 0; i < ref.water.size(); ++i) pm.p_water.data[i] = ref.water.data[i];
  return pm;
}

TEST(ConfusionTest, CountsJointlyValidPixels) {
  BinaryMask pred(5, 1), ref(5, 1);
  pred.valid.data = {1, 1, 1, 1, 0};
  pred.water.data = {1, 1, 0, 0, 0};
  ref.valid.data = {1, 1, 1, 1, 1};
  ref.water.data = {1, 0, 1, 0, 1};
  EXPECT_EQ(Confusion(pred, ref), (ConfusionMatrix{1, 1, 1, 1}));
  EXPECT_EQ(CodeOf([&] { Confusion(pred, BinaryMask(4, 1)); }), ErrorCode::kDimensionMismatch);
}

TEST(MetricsTest, ConstructedCase) {
  const MetricsReport m = ComputeMetrics({50, 10, 10, 30});
  EXPECT_NEAR(*m.accuracy, 0.8000, 5e-5);
  EXPECT_NEAR(*m.precision, 0.8333, 5e-5);
  EXPECT_NEAR(*m.recall, 0.8333, 5e-5);
  EXPECT_NEAR(*m.iou, 0.7143, 5e-5);
  EXPECT_NEAR(*m.dice, 0.8333, 5e-5);
  EXPECT_NEAR(*m.specificity, 0.7500, 5e-5);
  EXPECT_DOUBLE_EQ(*m.accuracy, 80.0 / 100.0);
  EXPECT_DOUBLE_EQ(*m.iou, 50.0 / 70.0);
  EXPECT_DOUBLE_EQ(*m.dice, 100.0 / 120.0);
}

TEST(MetricsTest, IdentitiesOnRandomMatrices) {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<uint64_t> n(0, 100000);
  for (int trial = 0; trial < 1000; ++trial) {
    const ConfusionMatrix cm{n(rng) + 1, n(rng), n(rng), n(rng)};
    const MetricsReport m = ComputeMetrics(cm);
    ASSERT_TRUE(m.iou && m.dice && m.precision && m.recall);
    EXPECT_NEAR(*m.dice, 2 * *m.iou / (1 + *m.iou), 1e-12);
    EXPECT_NEAR(*m.dice, 2 * *m.precision * *m.recall / (*m.precision + *m.recall), 1e-12);
    for (const auto& v : {m.accuracy, m.iou, m.dice, m.recall, m.precision, m.specificity}) {
      if (v) {
        EXPECT_GE(*v, 0.0);
        EXPECT_LE(*v, 1.0);
      }
    }
    EXPECT_LE(*m.iou, *m.dice);
  }
}

TEST(MetricsTest, AbsentWhenDenominatorIsZero) {
  const MetricsReport all_land = ComputeMetrics({0, 0, 0, 10});
  EXPECT_EQ(*all_land.accuracy, 1.0);
  EXPECT_FALSE(all_land.iou.has_value());
  EXPECT_FALSE(all_land.dice.has_value());
  EXPECT_FALSE(all_land.recall.has_value());
  EXPECT_FALSE(all_land.precision.has_value());
  EXPECT_EQ(*all_land.specificity, 1.0);
  const MetricsReport all_water = ComputeMetrics({7, 0, 0, 0});
  EXPECT_FALSE(all_water.specificity.has_value());
  EXPECT_EQ(*all_water.iou, 1.0);
  EXPECT_EQ(CodeOf([] { ComputeMetrics({}); }), ErrorCode::kEmptyMatrix);
}

TEST(MetricsTest, IdenticalMasksScorePerfectly) {
  std::mt19937_64 rng(52);
  const BinaryMask m = RandomMask(30, 30, rng, 0.4, 0.1);
  const MetricsReport r = ComputeMetrics(Confusion(m, m));
  for (const auto& v : {r.accuracy, r.iou, r.dice, r.recall, r.precision, r.specificity}) {
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(*v, 1.0);
  }
  EXPECT_NE(MetricsTable(r).find("100.00%"), std::string::npos);
}

TEST(MetricsTest, JsonOmitsAbsentMetrics) {
  const ConfusionMatrix cm{0, 0, 0, 4};
  const std::string j = MetricsJson(cm, ComputeMetrics(cm));
  EXPECT_NE(j.find("\"accuracy\""), std::string::npos);
  EXPECT_EQ(j.find("\"iou\""), std::string::npos);
  EXPECT_NE(j.find("\"tn\": 4"), std::string::npos);
}

TEST(MetricsTest, TableUsesTwoDecimalPercentages) {
  const std::string t = MetricsTable(ComputeMetrics({50, 10, 10, 30}));
  EXPECT_NE(t.find("80.00%"), std::string::npos);
  EXPECT_NE(t.find("71.43%"), std::string::npos);
  EXPECT_NE(t.find("83.33%"), std::string::npos);
  EXPECT_NE(t.find("75.00%"), std::string::npos);
  EXPECT_NE(MetricsTable(ComputeMetrics({0, 0, 0, 1})).find("n/a"), std::string::npos);
}

TEST(LossTest, PerfectPredictionIsNearZero) {
  std::mt19937_64 rng(53);
  const BinaryMask ref = RandomMask(32, 32, rng, 0.3);
  const CompositeLoss l = ComputeCompositeLoss(Perfect(ref), ref);
  EXPECT_LE(l.total, 1e-6);
  EXPECT_GE(l.ce, 0.0);
  EXPECT_GE(l.dice, 0.0);
}

TEST(LossTest, HalfProbabilityGivesLogTwo) {
  std::mt19937_64 rng(54);
  for (double water_rate : {0.01, 0.3, 0.9}) {
    const BinaryMask ref = RandomMask(40, 40, rng, water_rate);
    const ProbabilityMap half = Uniform(40, 40, 0.5);
    EXPECT_NEAR(WeightedCrossEntropy(half, ref), std::log(2.0), 1e-12);
    EXPECT_NEAR(WeightedCrossEntropy(half, ref, 3.0, 0.5), std::log(2.0), 1e-12);
  }
}

TEST(LossTest, CrossEntropyAgainstDirectSum) {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> u(0, 1);
  const BinaryMask ref = RandomMask(16, 16, rng, 0.2, 0.1);
  ProbabilityMap pred = Uniform(16, 16, 0.0);
  for (double& p : pred.p_water.data) p = u(rng);
  pred.p_water.data[3] = 0.0;
  pred.p_water.data[4] = 1.0;
  long double num = 0, den = 0;
  for (size_t i = 0; i < ref.water.size(); ++i) {
    if (!ref.valid.data[i]) continue;
    const long double p = std::min(std::max(pred.p_water.data[i], 1e-7), 1 - 1e-7);
    const long double w = ref.water.data[i] ? 20.0L : 1.0L;
    num += -w * std::log(ref.water.data[i] ? p : 1 - p);
    den += w;
  }
  EXPECT_NEAR(WeightedCrossEntropy(pred, ref), double(num / den), 1e-12);
  EXPECT_TRUE(std::isfinite(WeightedCrossEntropy(pred, ref)));
}

TEST(LossTest, DiceLossBoundedOnRandomInputs) {
  std::mt19937_64 rng(56);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 1000; ++trial) {
    const int w = 1 + trial % 9, h = 1 + trial % 7;
    const BinaryMask ref = RandomMask(w, h, rng, u(rng), 0.1);
    ProbabilityMap pred = Uniform(w, h, 0.0);
    for (double& p : pred.p_water.data) p = u(rng);
    const double d = DiceLoss(pred, ref);
    ASSERT_GE(d, 0.0);
    ASSERT_LE(d, 1.0);
  }
}

TEST(LossTest, DiceAgainstFormula) {
  BinaryMask ref(4, 1);
  ref.valid.data = {1, 1, 1, 1};
  ref.water.data = {1, 1, 0, 0};
  ProbabilityMap pred = Uniform(4, 1, 0.0);
  pred.p_water.data = {0.9, 0.5, 0.2, 0.0};
  // 1 - (2 * 1.4 + 1) / (1.6 + 2 + 1)
  EXPECT_NEAR(DiceLoss(pred, ref), 1.0 - 3.8 / 4.6, 1e-15);
}

TEST(LossTest, CompositeIsEvenMix) {
  std::mt19937_64 rng(57);
  const BinaryMask ref = RandomMask(10, 10, rng);
  ProbabilityMap pred = Uniform(10, 10, 0.3);
  const CompositeLoss l = ComputeCompositeLoss(pred, ref);
  EXPECT_DOUBLE_EQ(l.total, 0.5 * WeightedCrossEntropy(pred, ref) + 0.5 * DiceLoss(pred, ref));
}

TEST(LossTest, Errors) {
  const BinaryMask ref = testing::AllWater(3, 3);
  const ProbabilityMap pred = Uniform(3, 3, 0.5);
  EXPECT_EQ(CodeOf([&] { WeightedCrossEntropy(pred, ref, 0.0, 1.0); }),
            ErrorCode::kNonPositiveWeight);
  EXPECT_EQ(CodeOf([&] { WeightedCrossEntropy(pred, ref, 1.0, -2.0); }),
            ErrorCode::kNonPositiveWeight);
  EXPECT_EQ(CodeOf([&] { WeightedCrossEntropy(pred, BinaryMask(3, 3)); }),
            ErrorCode::kNoValidPixels);
  EXPECT_EQ(CodeOf([&] { DiceLoss(Uniform(2, 3, 0.5), ref); }), ErrorCode::kDimensionMismatch);
}

TEST(ProbabilityMapTest, ReadValidatesRange) {
  TempDir dir;
  Grid<float> g(3, 1, 0.5f);
  g.data[1] = NAN;
  WriteTiffF32(dir.File("p.tif"), g);
  const ProbabilityMap pm = ReadProbabilityMap(dir.File("p.tif"));
  EXPECT_EQ(pm.valid.data, (std::vector<uint8_t>{1, 0, 1}));
  g.data[2] = 1.5f;
  WriteTiffF32(dir.File("q.tif"), g);
  EXPECT_EQ(CodeOf([&] { ReadProbabilityMap(dir.File("q.tif")); }), ErrorCode::kFormat);
}

}  // namespace
}  // namespace aquaspec
