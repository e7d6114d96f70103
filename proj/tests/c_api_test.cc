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

// Exercises the shared library strictly through its public C header.

#include "aquaspec/aquaspec.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

class CApiTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(fs::temp_directory_path() /
                        ("aq_capi_" + std::to_string(::getpid())));
    fs::create_directories(*dir_);
    ASSERT_EQ(aq_synth_write(dir_->c_str(), 64, 48, 0, 5), AQ_OK) << aq_last_error();
  }
  static void TearDownTestSuite() {
    fs::remove_all(*dir_);
    delete dir_;
  }
  static std::string Path(const char* name) { return (*dir_ / name).string(); }

  static fs::path* dir_;
};

fs::path* CApiTest::dir_ = nullptr;

TEST(CApiBasics, StatusNamesAndVersion) {
  EXPECT_STREQ(aq_version(), "1.0.0");
  EXPECT_STREQ(aq_status_name(AQ_OK), "OK");
  EXPECT_STREQ(aq_status_name(AQ_ERR_EVEN_WINDOW), "EvenWindow");
  EXPECT_STREQ(aq_index_kind_name(AQ_REL_BATHYMETRY), "REL_BATHYMETRY");
  aq_index_kind k;
  ASSERT_EQ(aq_index_kind_parse("mndwi", &k), AQ_OK);
  EXPECT_EQ(k, AQ_MNDWI);
  EXPECT_EQ(aq_index_kind_parse("ndvi", &k), AQ_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(aq_last_error()).find("ndvi"), std::string::npos);
}

TEST(CApiBasics, NullArgumentsAreRejected) {
  aq_scene* scene = nullptr;
  EXPECT_EQ(aq_scene_load(nullptr, &scene), AQ_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(scene, nullptr);
  EXPECT_EQ(aq_index_compute(nullptr, AQ_NDWI, nullptr, nullptr), AQ_ERR_INVALID_ARGUMENT);
  aq_metrics m;
  EXPECT_EQ(aq_metrics_compute(nullptr, &m), AQ_ERR_INVALID_ARGUMENT);
  aq_scene_free(nullptr);
  aq_map_free(nullptr);
  aq_mask_free(nullptr);
  aq_image_free(nullptr);
  aq_palette_free(nullptr);
  aq_patch_list_free(nullptr);
  aq_prob_map_free(nullptr);
  aq_depth_profile_free(nullptr);
  aq_string_free(nullptr);
}

TEST(CApiBasics, MissingManifest) {
  aq_scene* scene = nullptr;
  EXPECT_NE(aq_scene_load("/nonexistent/manifest.json", &scene), AQ_OK);
  EXPECT_EQ(scene, nullptr);
  EXPECT_STRNE(aq_last_error(), "");
}

TEST(CApiBasics, ConfusionAndMetrics) {
  const aq_confusion_matrix cm{50, 10, 10, 30};
  aq_metrics m;
  ASSERT_EQ(aq_metrics_compute(&cm, &m), AQ_OK);
  EXPECT_DOUBLE_EQ(m.accuracy, 0.8);
  EXPECT_DOUBLE_EQ(m.iou, 50.0 / 70.0);
  EXPECT_DOUBLE_EQ(m.dice, 100.0 / 120.0);
  EXPECT_DOUBLE_EQ(m.specificity, 0.75);
  const aq_confusion_matrix no_water{0, 0, 0, 10};
  ASSERT_EQ(aq_metrics_compute(&no_water, &m), AQ_OK);
  EXPECT_FALSE(m.has_iou);
  EXPECT_FALSE(m.has_recall);
  EXPECT_TRUE(m.has_accuracy);
  const aq_confusion_matrix empty{0, 0, 0, 0};
  EXPECT_EQ(aq_metrics_compute(&empty, &m), AQ_ERR_EMPTY_MATRIX);
  char* json = nullptr;
  ASSERT_EQ(aq_metrics_to_json(&no_water, &json), AQ_OK);
  EXPECT_EQ(std::string(json).find("\"iou\""), std::string::npos);
  aq_string_free(json);
}

TEST(CApiBasics, FormatMeanSigma) {
  char* s = nullptr;
  ASSERT_EQ(aq_format_mean_sigma(3.391, 0.368, &s), AQ_OK);
  EXPECT_STREQ(s, "3.39 \xC2\xB1 0.37");
  aq_string_free(s);
}

TEST(CApiBasics, PaletteColors) {
  aq_palette* p = nullptr;
  ASSERT_EQ(aq_palette_builtin("variance", &p), AQ_OK);
  uint8_t rgb[3];
  ASSERT_EQ(aq_palette_color(p, 0.15, 1, rgb), AQ_OK);
  EXPECT_EQ(rgb[0], 0x66);
  EXPECT_EQ(rgb[1], 0xBD);
  EXPECT_EQ(rgb[2], 0x63);
  ASSERT_EQ(aq_palette_color(p, 0.15, 0, rgb), AQ_OK);
  EXPECT_EQ(rgb[0], 0x80);
  aq_palette_free(p);
  EXPECT_EQ(aq_palette_builtin("viridis", &p), AQ_ERR_UNKNOWN_PALETTE_KIND);
}

TEST(CApiBasics, ProbMapValidation) {
  const int w = 4, h = 2;
  std::vector<double> probs(w * h);
  for (int i = 0; i < w * h; ++i) probs[i] = i < 4 ? 1.0 : 0.0;
  probs[7] = NAN;
  aq_prob_map* pm = nullptr;
  ASSERT_EQ(aq_prob_map_create(w, h, probs.data(), &pm), AQ_OK);
  std::vector<double> bad(probs);
  bad[0] = 1.5;
  aq_prob_map* bad_pm = nullptr;
  EXPECT_NE(aq_prob_map_create(w, h, bad.data(), &bad_pm), AQ_OK);
  EXPECT_EQ(bad_pm, nullptr);
  aq_prob_map_free(pm);
}

TEST_F(CApiTest, PipelineThroughHandles) {
  aq_scene* scene = nullptr;
  ASSERT_EQ(aq_scene_load(Path("manifest.json").c_str(), &scene), AQ_OK) << aq_last_error();
  int w = 0, h = 0;
  ASSERT_EQ(aq_scene_size(scene, &w, &h), AQ_OK);
  EXPECT_EQ(w, 64);
  EXPECT_EQ(h, 48);
  const size_t n = size_t(w) * h;

  std::vector<double> b03(n), b08(n);
  ASSERT_EQ(aq_scene_band(scene, 1, b03.data(), n), AQ_OK);
  ASSERT_EQ(aq_scene_band(scene, 3, b08.data(), n), AQ_OK);
  EXPECT_EQ(aq_scene_band(scene, 1, b03.data(), n - 1), AQ_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(aq_scene_band(scene, 6, b03.data(), n), AQ_ERR_INVALID_ARGUMENT);

  aq_map* ndwi = nullptr;
  ASSERT_EQ(aq_index_compute(scene, AQ_NDWI, nullptr, &ndwi), AQ_OK);
  EXPECT_EQ(aq_map_get_type(ndwi), AQ_MAP_INDEX);
  std::vector<double> vals(n);
  ASSERT_EQ(aq_map_values(ndwi, vals.data(), n), AQ_OK);
  for (size_t i = 0; i < n; ++i) {
    const double den = b03[i] + b08[i];
    if (den == 0.0) {
      EXPECT_TRUE(std::isnan(vals[i]));
    } else {
      EXPECT_NEAR(vals[i], (b03[i] - b08[i]) / den, 1e-12);
    }
  }

  double t = 0;
  aq_mask* pred = nullptr;
  ASSERT_EQ(aq_threshold_otsu(ndwi, 256, &t, &pred), AQ_OK);
  EXPECT_EQ(aq_mask_get_method(pred), AQ_MASK_OTSU);
  double recorded = 0;
  EXPECT_EQ(aq_mask_threshold(pred, &recorded), 1);
  EXPECT_EQ(recorded, t);

  aq_mask* truth = nullptr;
  ASSERT_EQ(aq_mask_load_external(Path("truth.png").c_str(), w, h, &truth), AQ_OK)
      << aq_last_error();
  aq_confusion_matrix cm;
  ASSERT_EQ(aq_confusion(pred, truth, &cm), AQ_OK);
  aq_metrics m;
  ASSERT_EQ(aq_metrics_compute(&cm, &m), AQ_OK);
  EXPECT_GE(m.iou, 0.99);

  aq_map* sigma = nullptr;
  EXPECT_EQ(aq_local_sigma(ndwi, pred, 4, &sigma), AQ_ERR_EVEN_WINDOW);
  ASSERT_EQ(aq_local_sigma(ndwi, pred, 5, &sigma), AQ_OK);
  EXPECT_EQ(aq_map_get_type(sigma), AQ_MAP_SIGMA);
  aq_homogeneity_counts hc;
  ASSERT_EQ(aq_homogeneity_counts_of(sigma, &hc), AQ_OK);
  EXPECT_GT(hc.stable + hc.transitional + hc.variable, 0u);

  aq_global_stats gs;
  ASSERT_EQ(aq_map_global_stats(ndwi, pred, &gs), AQ_OK);
  EXPECT_GT(gs.count, 0u);
  EXPECT_GT(gs.mean, t);

  aq_map* depth = nullptr;
  ASSERT_EQ(aq_index_compute(scene, AQ_REL_BATHYMETRY, pred, &depth), AQ_OK);
  double bmax_masked = 0, bmax_all = 0;
  EXPECT_EQ(aq_map_b08_max(depth, &bmax_masked), 1);
  aq_map* depth_all = nullptr;
  ASSERT_EQ(aq_index_compute(scene, AQ_REL_BATHYMETRY, nullptr, &depth_all), AQ_OK);
  EXPECT_EQ(aq_map_b08_max(depth_all, &bmax_all), 1);
  EXPECT_LT(bmax_masked, bmax_all);
  EXPECT_EQ(aq_map_b08_max(ndwi, &bmax_all), 0);

  aq_depth_profile* prof = nullptr;
  ASSERT_EQ(aq_depth_profile_compute(ndwi, depth, pred, 10, 0, &prof), AQ_OK);
  EXPECT_GT(aq_depth_profile_pair_count(prof), 0u);
  ASSERT_EQ(aq_depth_profile_write_csv(prof, Path("profile.csv").c_str()), AQ_OK);
  EXPECT_TRUE(fs::exists(Path("profile.csv")));
  aq_depth_profile_free(prof);

  aq_patch_list* patches = nullptr;
  ASSERT_EQ(aq_sample_patches(scene, pred, 5, 16, 0.015, 9, 0, &patches), AQ_OK);
  EXPECT_EQ(aq_patch_list_size(patches), 5u);
  EXPECT_EQ(aq_patch_list_shortfall(patches), 0);
  aq_patch p;
  ASSERT_EQ(aq_patch_list_get(patches, 0, &p), AQ_OK);
  EXPECT_EQ(p.size, 16);
  EXPECT_EQ(aq_patch_list_get(patches, 5, &p), AQ_ERR_INVALID_ARGUMENT);
  aq_patch_list_free(patches);

  aq_palette* pal = nullptr;
  ASSERT_EQ(aq_palette_for_map(ndwi, &pal), AQ_OK);
  const aq_render_options opts{2, 1, "NDWI"};
  aq_image* img = nullptr;
  ASSERT_EQ(aq_render_map(ndwi, pal, &opts, &img), AQ_OK);
  int iw = 0, ih = 0;
  ASSERT_EQ(aq_image_size(img, &iw, &ih), AQ_OK);
  EXPECT_EQ(iw, 128);
  EXPECT_EQ(ih, (48 + 24 + 9) * 2);
  EXPECT_EQ(aq_image_warning_count(img), 0u);
  ASSERT_EQ(aq_image_write_png(img, Path("ndwi.png").c_str()), AQ_OK);
  aq_image_free(img);

  aq_palette* turb = nullptr;
  ASSERT_EQ(aq_palette_builtin("turbidity", &turb), AQ_OK);
  ASSERT_EQ(aq_render_map(ndwi, turb, nullptr, &img), AQ_OK);
  EXPECT_EQ(aq_image_warning_count(img), 1u);
  EXPECT_NE(aq_image_warning(img, 0), nullptr);
  aq_image_free(img);
  aq_palette_free(turb);
  aq_palette_free(pal);

  const uint8_t blue[3] = {8, 48, 107};
  EXPECT_EQ(aq_render_mask_overlay(scene, pred, blue, 2.0, &img), AQ_ERR_INVALID_ARGUMENT);
  ASSERT_EQ(aq_render_mask_overlay(scene, pred, blue, 0.5, &img), AQ_OK);
  aq_image_free(img);

  ASSERT_EQ(aq_map_write(ndwi, Path("ndwi.tif").c_str()), AQ_OK);
  aq_map* back = nullptr;
  ASSERT_EQ(aq_map_read(Path("ndwi.tif").c_str(), &back), AQ_OK) << aq_last_error();
  std::vector<double> back_vals(n);
  ASSERT_EQ(aq_map_values(back, back_vals.data(), n), AQ_OK);
  for (size_t i = 0; i < n; ++i) {
    if (std::isnan(vals[i])) {
      EXPECT_TRUE(std::isnan(back_vals[i]));
    } else {
      EXPECT_FLOAT_EQ(float(back_vals[i]), float(vals[i]));
    }
  }
  aq_map_free(back);

  aq_map_free(depth_all);
  aq_map_free(depth);
  aq_map_free(sigma);
  aq_mask_free(truth);
  aq_mask_free(pred);
  aq_map_free(ndwi);
  aq_scene_free(scene);
}

TEST_F(CApiTest, OtsuRejectsDegenerateInputs) {
  aq_scene* scene = nullptr;
  ASSERT_EQ(aq_scene_load(Path("manifest.json").c_str(), &scene), AQ_OK);
  aq_mask* pred = nullptr;
  aq_map* ndwi = nullptr;
  ASSERT_EQ(aq_index_compute(scene, AQ_NDWI, nullptr, &ndwi), AQ_OK);
  ASSERT_EQ(aq_threshold_fixed(ndwi, 0.2, &pred), AQ_OK);
  aq_map* as_map = nullptr;
  ASSERT_EQ(aq_map_from_mask(pred, &as_map), AQ_OK);
  EXPECT_EQ(aq_map_get_type(as_map), AQ_MAP_MASK);
  aq_map* only_water = nullptr;
  ASSERT_EQ(aq_map_apply_mask(ndwi, pred, &only_water), AQ_OK);
  aq_map* sigma = nullptr;
  ASSERT_EQ(aq_local_sigma(only_water, pred, 3, &sigma), AQ_OK);
  double t;
  aq_mask* m2 = nullptr;
  aq_mask* all = nullptr;
  ASSERT_EQ(aq_threshold_fixed(ndwi, -5.0, &all), AQ_OK);
  aq_map* ones = nullptr;
  ASSERT_EQ(aq_map_from_mask(all, &ones), AQ_OK);
  EXPECT_EQ(aq_threshold_otsu(ones, 256, &t, &m2), AQ_ERR_KIND_MISMATCH);
  aq_map_free(ones);
  aq_mask_free(all);
  aq_mask* none = nullptr;
  ASSERT_EQ(aq_threshold_fixed(ndwi, 5.0, &none), AQ_OK);
  aq_map* empty = nullptr;
  ASSERT_EQ(aq_map_apply_mask(ndwi, none, &empty), AQ_OK);
  EXPECT_EQ(aq_threshold_otsu(empty, 256, &t, &m2), AQ_ERR_NO_DEFINED_PIXELS);
  EXPECT_EQ(m2, nullptr);
  aq_map_free(empty);
  aq_mask_free(none);

  int w = 0, h = 0;
  ASSERT_EQ(aq_mask_size(pred, &w, &h), AQ_OK);
  std::vector<uint8_t> classes(size_t(w) * h);
  ASSERT_EQ(aq_mask_classes(pred, classes.data(), classes.size()), AQ_OK);
  std::vector<double> probs(classes.size());
  for (size_t i = 0; i < classes.size(); ++i) {
    probs[i] = classes[i] == 255 ? NAN : classes[i];
  }
  aq_prob_map* pm = nullptr;
  ASSERT_EQ(aq_prob_map_create(w, h, probs.data(), &pm), AQ_OK);
  aq_loss loss;
  ASSERT_EQ(aq_loss_composite(pm, pred, &loss), AQ_OK);
  EXPECT_LE(loss.total, 1e-6);
  double ce = 0;
  EXPECT_EQ(aq_loss_weighted_ce(pm, pred, 0.0, 20.0, &ce), AQ_ERR_NON_POSITIVE_WEIGHT);
  for (double& p : probs) p = std::isnan(p) ? p : 1.0 - p;
  aq_prob_map* inverted = nullptr;
  ASSERT_EQ(aq_prob_map_create(w, h, probs.data(), &inverted), AQ_OK);
  ASSERT_EQ(aq_loss_composite(inverted, pred, &loss), AQ_OK);
  EXPECT_GT(loss.total, 1.0);
  aq_prob_map_free(inverted);
  aq_prob_map_free(pm);
  aq_map_free(sigma);
  aq_map_free(only_water);
  aq_map_free(as_map);
  aq_mask_free(pred);
  aq_map_free(ndwi);
  aq_scene_free(scene);
}

}  // namespace
