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

// End-to-end tests that drive the aquaspec executable as a subprocess.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "aquaspec/indices.h"
#include "aquaspec/raster_io.h"
#include "aquaspec/segmentation.h"
#include "aquaspec/synth.h"
#include "json.hpp"

namespace aquaspec {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun Cli(const std::string& args) {
  const std::string cmd = std::string(AQUASPEC_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json Json(const CliRun& r) { return json::parse(r.out); }

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    root_ = new fs::path(fs::temp_directory_path() /
                         ("aq_cli_" + std::to_string(::getpid())));
    fs::create_directories(*root_);
    SynthOptions o;
    o.width = 96;
    o.height = 80;
    o.seed = 11;
    WriteSyntheticScene(root_->string() + "/scene", MakeSyntheticScene(o));
  }
  static void TearDownTestSuite() {
    fs::remove_all(*root_);
    delete root_;
  }
  static std::string P(const std::string& name) { return (*root_ / name).string(); }
  static std::string Manifest() { return P("scene/manifest.json"); }
  static std::string Truth() { return P("scene/truth.png"); }

  // Runs index + otsu once and returns the mask path.
  static std::string OtsuMask() {
    const std::string mask = P("otsu.png");
    if (!fs::exists(mask)) {
      Cli("index " + Manifest() + " --index ndwi --out " + P("ndwi.tif"));
      Cli("segment " + P("ndwi.tif") + " --method otsu --out " + mask);
    }
    return mask;
  }

  static fs::path* root_;
};

fs::path* CliTest::root_ = nullptr;

TEST_F(CliTest, HelpAndUsageErrors) {
  EXPECT_EQ(Cli("--help").code, 0);
  for (const char* sub : {"index", "segment", "stats", "eval", "sample", "render"}) {
    EXPECT_EQ(Cli(std::string(sub) + " --help").code, 0) << sub;
  }
  EXPECT_EQ(Cli("--version").code, 0);
  EXPECT_EQ(Cli("").code, 1);
  EXPECT_EQ(Cli("frobnicate").code, 1);
  EXPECT_EQ(Cli("index " + Manifest() + " --index ndwi --out x.tif --bogus").code, 1);
  EXPECT_EQ(Cli("index " + Manifest() + " --index ndvi --out " + P("x.tif")).code, 1);
  EXPECT_EQ(Cli("segment " + P("none.tif") + " --method fixed --out " + P("x.png")).code, 1);
}

TEST_F(CliTest, InputErrorsExitTwo) {
  EXPECT_EQ(Cli("index " + P("missing.json") + " --index ndwi --out " + P("x.tif")).code, 2);
  WriteTextFile(P("broken.json"), "{ not json");
  EXPECT_EQ(Cli("index " + P("broken.json") + " --index ndwi --out " + P("x.tif")).code, 2);
  EXPECT_EQ(Cli("eval " + Truth() + " " + P("missing.png")).code, 2);
}

TEST_F(CliTest, IndexThenOtsuRecoversLake) {
  const CliRun idx = Cli("index " + Manifest() + " --index ndwi --out " + P("n2.tif"));
  ASSERT_EQ(idx.code, 0);
  EXPECT_EQ(Json(idx)["kind"], "NDWI");
  EXPECT_EQ(Json(idx)["stats"]["count"], 96 * 80);
  const CliRun seg = Cli("segment " + P("n2.tif") + " --method otsu --out " + P("m2.png"));
  ASSERT_EQ(seg.code, 0);
  EXPECT_EQ(Json(seg)["method"], "otsu");
  const CliRun ev = Cli("eval " + P("m2.png") + " " + Truth());
  ASSERT_EQ(ev.code, 0);
  EXPECT_GE(Json(ev)["metrics"]["iou"].get<double>(), 0.99);
}

TEST_F(CliTest, PresetAndConfig) {
  const std::string map = P("ndwi.tif");
  OtsuMask();
  const CliRun preset = Cli("segment " + map + " --preset ndwi --out " + P("p.png"));
  ASSERT_EQ(preset.code, 0);
  EXPECT_EQ(Json(preset)["threshold"], 0.2);

  WriteTextFile(P("cfg.json"), R"({"segment": {"method": "fixed", "t": 0.3}})");
  const CliRun from_cfg = Cli("--config " + P("cfg.json") + " segment " + map + " --out " + P("c.png"));
  ASSERT_EQ(from_cfg.code, 0);
  EXPECT_EQ(Json(from_cfg)["threshold"], 0.3);
  const CliRun overridden =
      Cli("--config " + P("cfg.json") + " segment " + map + " --t 0.1 --out " + P("c.png"));
  ASSERT_EQ(overridden.code, 0);
  EXPECT_EQ(Json(overridden)["threshold"], 0.1);

  WriteTextFile(P("cfg_bad.json"), R"({"segment": {"colour": "red"}})");
  EXPECT_EQ(Cli("--config " + P("cfg_bad.json") + " segment " + map + " --out " + P("c.png")).code, 1);
  EXPECT_EQ(Cli("--config " + P("no_cfg.json") + " segment " + map + " --out " + P("c.png")).code, 2);
}

TEST_F(CliTest, ConstantMapOtsuIsComputeError) {
  IndexMap m;
  m.values = Grid<double>(8, 8, 0.25);
  m.defined = BoolGrid(8, 8, 1);
  WriteIndexMap(P("const.tif"), m);
  EXPECT_EQ(Cli("segment " + P("const.tif") + " --method otsu --out " + P("k.png")).code, 3);
  EXPECT_EQ(Cli("segment " + P("const.tif") + " --method fixed --t 0 --out " + P("k.png")).code, 0);
}

TEST_F(CliTest, EvalConstructedMatrix) {
  BinaryMask pred(10, 10), ref(10, 10);
  for (int i = 0; i < 100; ++i) {
    pred.valid.data[i] = ref.valid.data[i] = 1;
    // 50 TP, 10 FP, 10 FN, 30 TN.
    pred.water.data[i] = i < 60;
    ref.water.data[i] = i < 50 || (i >= 60 && i < 70);
  }
  WriteMask(P("pred.png"), pred);
  WriteMask(P("ref.png"), ref);
  const CliRun r = Cli("eval " + P("pred.png") + " " + P("ref.png"));
  ASSERT_EQ(r.code, 0);
  const json j = Json(r);
  EXPECT_EQ(j["confusion"]["tp"], 50);
  EXPECT_EQ(j["confusion"]["fp"], 10);
  EXPECT_EQ(j["confusion"]["fn"], 10);
  EXPECT_EQ(j["confusion"]["tn"], 30);
  EXPECT_NEAR(j["metrics"]["accuracy"].get<double>(), 0.80, 1e-12);
  EXPECT_NEAR(j["metrics"]["iou"].get<double>(), 50.0 / 70.0, 1e-12);
  const CliRun same = Cli("eval " + P("ref.png") + " " + P("ref.png") + " --pretty");
  ASSERT_EQ(same.code, 0);
  EXPECT_NE(same.out.find("IoU              100.00%"), std::string::npos) << same.out;
}

TEST_F(CliTest, LossOfPerfectPrediction) {
  BinaryMask ref(6, 6);
  Grid<float> prob(6, 6, 0.0f);
  for (int i = 0; i < 36; ++i) {
    ref.valid.data[i] = 1;
    ref.water.data[i] = i % 3 == 0;
    prob.data[i] = ref.water.data[i] ? 1.0f : 0.0f;
  }
  WriteMask(P("lref.png"), ref);
  WriteTiffF32(P("prob.tif"), prob);
  const CliRun r = Cli("eval " + P("prob.tif") + " " + P("lref.png") + " --loss");
  ASSERT_EQ(r.code, 0);
  EXPECT_LE(Json(r)["total"].get<double>(), 1e-6);
}

TEST_F(CliTest, StatsSigmaAndDepth) {
  const std::string mask = OtsuMask();
  EXPECT_EQ(Cli("stats " + P("ndwi.tif") + " " + mask + " --sigma --window 4 --out " + P("s.tif")).code, 1);
  const CliRun sig = Cli("stats " + P("ndwi.tif") + " " + mask + " --sigma --out " + P("s.tif"));
  ASSERT_EQ(sig.code, 0);
  const json j = Json(sig);
  const double fsum = j["homogeneity"]["stable"].get<double>() +
                      j["homogeneity"]["transitional"].get<double>() +
                      j["homogeneity"]["variable"].get<double>();
  EXPECT_NEAR(fsum, 1.0, 1e-12);
  EXPECT_NE(j["summary"].get<std::string>().find("\xC2\xB1"), std::string::npos);

  ASSERT_EQ(Cli("index " + Manifest() + " --index rel_bathymetry --mask " + mask + " --out " +
                P("depth.tif")).code, 0);
  const CliRun dp = Cli("stats " + P("ndwi.tif") + " " + mask + " --depth-profile " + P("depth.tif") +
                     " --bins 5 --out " + P("profile.csv"));
  ASSERT_EQ(dp.code, 0);
  EXPECT_TRUE(fs::exists(P("profile.csv")));
  EXPECT_TRUE(fs::exists(P("profile.csv.json")));

  IndexMap small;
  small.kind = IndexKind::kRelBathymetry;
  small.values = Grid<double>(4, 4, 0.5);
  small.defined = BoolGrid(4, 4, 1);
  small.b08_max = 1.0;
  WriteIndexMap(P("small_depth.tif"), small);
  EXPECT_EQ(Cli("stats " + P("ndwi.tif") + " " + mask + " --depth-profile " + P("small_depth.tif") +
                " --out " + P("bad.csv")).code, 2);
}

TEST_F(CliTest, MaskedBathymetryUsesWaterMaximum) {
  const std::string mask = OtsuMask();
  const CliRun all = Cli("index " + Manifest() + " --index rel_bathymetry --out " + P("d_all.tif"));
  const CliRun masked = Cli("index " + Manifest() + " --index rel_bathymetry --mask " + mask +
                         " --out " + P("d_water.tif"));
  ASSERT_EQ(all.code, 0);
  ASSERT_EQ(masked.code, 0);
  EXPECT_GT(Json(all)["b08_max"].get<double>(), Json(masked)["b08_max"].get<double>());
}

TEST_F(CliTest, SampleIsDeterministic) {
  const std::string mask = OtsuMask();
  const std::string base = "sample " + Manifest() + " " + mask + " --count 4 --size 16 --seed 42";
  ASSERT_EQ(Cli(base + " --out " + P("a.json")).code, 0);
  ASSERT_EQ(Cli(base + " --out " + P("b.json")).code, 0);
  EXPECT_EQ(ReadTextFile(P("a.json")), ReadTextFile(P("b.json")));
  EXPECT_EQ(json::parse(ReadTextFile(P("a.json")))["patches"].size(), 4u);
  const CliRun none = Cli("sample " + Manifest() + " " + mask + " --count 0 --size 16 --out " + P("z.json"));
  ASSERT_EQ(none.code, 0);
  EXPECT_TRUE(Json(none)["patches"].empty());
  EXPECT_EQ(Cli("sample " + Manifest() + " " + mask + " --size 512 --out " + P("z.json")).code, 2);
}

TEST_F(CliTest, RenderVariants) {
  OtsuMask();
  const std::string map = P("ndwi.tif");
  const CliRun plain = Cli("render " + map + " --out " + P("r1.png"));
  const CliRun bar = Cli("render " + map + " --colorbar --scale 2 --out " + P("r2.png"));
  ASSERT_EQ(plain.code, 0);
  ASSERT_EQ(bar.code, 0);
  EXPECT_EQ(Json(plain)["height"], 80);
  EXPECT_EQ(Json(bar)["height"], (80 + 24) * 2);
  EXPECT_TRUE(Json(plain)["warnings"].empty());

  ASSERT_EQ(Cli("render " + map + " --colorbar --scale 2 --out " + P("r3.png")).code, 0);
  EXPECT_EQ(ReadTextFile(P("r2.png")), ReadTextFile(P("r3.png")));

  const CliRun mismatched = Cli("render " + map + " --palette turbidity --out " + P("r4.png"));
  ASSERT_EQ(mismatched.code, 0);
  EXPECT_EQ(Json(mismatched)["warnings"].size(), 1u);

  WriteTextFile(P("pal.json"),
                R"({"name":"gray","stops":[{"value":-1,"color":"#000000"},{"value":1,"color":"#FFFFFF"}]})");
  ASSERT_EQ(Cli("render " + map + " --palette " + P("pal.json") + " --out " + P("r5.png")).code, 0);
  const RgbaImage custom = ReadPngRgba(P("r5.png"));
  const uint8_t* px = custom.px(0, 0);
  EXPECT_EQ(px[0], px[1]);
  EXPECT_EQ(px[1], px[2]);
  WriteTextFile(P("pal_bad.json"), R"({"stops": 3})");
  EXPECT_EQ(Cli("render " + map + " --palette " + P("pal_bad.json") + " --out " + P("r6.png")).code, 2);
  EXPECT_EQ(Cli("render " + map + " --palette sunset --out " + P("r6.png")).code, 2);

  const CliRun overlay = Cli("render " + OtsuMask() + " --overlay " + Manifest() + " --out " + P("o.png"));
  ASSERT_EQ(overlay.code, 0);
  EXPECT_EQ(Json(overlay)["width"], 96);
}

}  // namespace
}  // namespace aquaspec
