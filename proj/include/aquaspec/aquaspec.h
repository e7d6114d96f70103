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

/* C interface to the aquaspec water-analysis library.
 *
 * All objects are opaque handles created by an aq_*_create/load/compute call
 * and released with the matching aq_*_free. Every fallible function returns
 * an aq_status; on failure aq_last_error() describes the problem for the
 * calling thread. Output handles are written only on success.
 */
#ifndef AQUASPEC_AQUASPEC_H_
#define AQUASPEC_AQUASPEC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(AQUASPEC_BUILDING)
#    define AQ_API __declspec(dllexport)
#  else
#    define AQ_API __declspec(dllimport)
#  endif
#else
#  define AQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aq_status {
  AQ_OK = 0,
  AQ_ERR_INVALID_ARGUMENT = 1,
  AQ_ERR_MANIFEST_PARSE = 2,
  AQ_ERR_BAND_FILE = 3,
  AQ_ERR_DIMENSION_MISMATCH = 4,
  AQ_ERR_UNSUPPORTED_RATIO = 5,
  AQ_ERR_OUT_OF_BOUNDS = 6,
  AQ_ERR_MASK_DIMENSION_MISMATCH = 7,
  AQ_ERR_PATCH_LARGER_THAN_SCENE = 8,
  AQ_ERR_EMPTY_MAX_DOMAIN = 9,
  AQ_ERR_NO_DEFINED_PIXELS = 10,
  AQ_ERR_DEGENERATE_RANGE = 11,
  AQ_ERR_FORMAT = 12,
  AQ_ERR_NO_VALID_PIXELS = 13,
  AQ_ERR_EVEN_WINDOW = 14,
  AQ_ERR_KIND_MISMATCH = 15,
  AQ_ERR_EMPTY_MATRIX = 16,
  AQ_ERR_NON_POSITIVE_WEIGHT = 17,
  AQ_ERR_UNKNOWN_PALETTE_KIND = 18,
  AQ_ERR_IO = 19,
  AQ_ERR_INTERNAL = 100
} aq_status;

typedef enum aq_index_kind {
  AQ_NDWI = 0,
  AQ_MNDWI = 1,
  AQ_TURBIDITY = 2,
  AQ_NDCI = 3,
  AQ_NDOSI = 4,
  AQ_REL_BATHYMETRY = 5
} aq_index_kind;

/* What an aq_map holds. */
typedef enum aq_map_type {
  AQ_MAP_INDEX = 0,
  AQ_MAP_SIGMA = 1,
  AQ_MAP_MASK = 2
} aq_map_type;

typedef enum aq_mask_method {
  AQ_MASK_FIXED = 0,
  AQ_MASK_OTSU = 1,
  AQ_MASK_EXTERNAL = 2
} aq_mask_method;

typedef struct aq_scene aq_scene;
typedef struct aq_map aq_map;
typedef struct aq_mask aq_mask;
typedef struct aq_prob_map aq_prob_map;
typedef struct aq_depth_profile aq_depth_profile;
typedef struct aq_patch_list aq_patch_list;
typedef struct aq_palette aq_palette;
typedef struct aq_image aq_image;

/* ---- Errors and misc ---------------------------------------------------- */

AQ_API const char* aq_version(void);
AQ_API const char* aq_status_name(aq_status status);
/* Message of the most recent failure on this thread ("" if none). */
AQ_API const char* aq_last_error(void);
/* Worker threads for row-parallel kernels; n <= 0 restores the default
 * (AQUASPEC_THREADS, else hardware concurrency). */
AQ_API void aq_set_threads(int n);
/* Frees strings returned through char** out-parameters. */
AQ_API void aq_string_free(char* s);

AQ_API const char* aq_index_kind_name(aq_index_kind kind);
/* Case-insensitive ("ndwi", "REL_BATHYMETRY", ...). */
AQ_API aq_status aq_index_kind_parse(const char* name, aq_index_kind* out);

/* ---- Scenes ------------------------------------------------------------- */

AQ_API aq_status aq_scene_load(const char* manifest_path, aq_scene** out);
AQ_API void aq_scene_free(aq_scene* scene);
AQ_API aq_status aq_scene_size(const aq_scene* scene, int* width, int* height);
/* Copies one band (0 = B02, 1 = B03, 2 = B04, 3 = B08, 4 = B11, 5 = B12) as
 * reflectance into `out`, which must hold width * height doubles. */
AQ_API aq_status aq_scene_band(const aq_scene* scene, int band, double* out,
                               size_t count);
/* Copies the validity grid (1 valid, 0 nodata). */
AQ_API aq_status aq_scene_valid(const aq_scene* scene, uint8_t* out, size_t count);
AQ_API aq_status aq_scene_extract_patch(const aq_scene* scene, int x, int y,
                                        int size, aq_scene** out);

/* Writes a synthetic lake scene (manifest.json, bands/, truth.png) into
 * `dir`. `radius` <= 0 picks 0.3 * min(width, height). */
AQ_API aq_status aq_synth_write(const char* dir, int width, int height,
                                double radius, uint64_t seed);

/* ---- Raster maps (index, sigma, mask-as-map) --------------------------- */

/* water_or_null restricts the B08 maximum for AQ_REL_BATHYMETRY. */
AQ_API aq_status aq_index_compute(const aq_scene* scene, aq_index_kind kind,
                                  const aq_mask* water_or_null, aq_map** out);
/* Reads an index or sigma map (float TIFF + sidecar). */
AQ_API aq_status aq_map_read(const char* path, aq_map** out);
AQ_API aq_status aq_map_write(const aq_map* map, const char* path);
AQ_API aq_status aq_map_from_mask(const aq_mask* mask, aq_map** out);
AQ_API void aq_map_free(aq_map* map);
AQ_API aq_status aq_map_size(const aq_map* map, int* width, int* height);
AQ_API aq_map_type aq_map_get_type(const aq_map* map);
/* Index kind for index maps, source kind for sigma maps. */
AQ_API aq_status aq_map_kind(const aq_map* map, aq_index_kind* out);
/* Copies values; undefined pixels are NaN. */
AQ_API aq_status aq_map_values(const aq_map* map, double* out, size_t count);
/* Reports 0 and leaves *out untouched when the map has no B08 maximum. */
AQ_API int aq_map_b08_max(const aq_map* map, double* out);
AQ_API aq_status aq_map_apply_mask(const aq_map* map, const aq_mask* mask,
                                   aq_map** out);

typedef struct aq_global_stats {
  uint64_t count;
  double mean;
  double sigma;
  double min;
  double max;
} aq_global_stats;

/* Population statistics over defined water pixels. */
AQ_API aq_status aq_map_global_stats(const aq_map* map, const aq_mask* water,
                                     aq_global_stats* out);
/* "mean ± sigma" with two decimals; free with aq_string_free. */
AQ_API aq_status aq_format_mean_sigma(double mean, double sigma, char** out);

/* ---- Segmentation ------------------------------------------------------- */

AQ_API aq_status aq_threshold_fixed(const aq_map* map, double t, aq_mask** out);
AQ_API aq_status aq_threshold_otsu(const aq_map* map, int bins,
                                   double* threshold, aq_mask** out);
AQ_API aq_status aq_mask_load_external(const char* path, int width, int height,
                                       aq_mask** out);
/* PNG plus sidecar; provenance restored from the sidecar when present. */
AQ_API aq_status aq_mask_read(const char* path, aq_mask** out);
AQ_API aq_status aq_mask_write(const aq_mask* mask, const char* path);
AQ_API void aq_mask_free(aq_mask* mask);
AQ_API aq_status aq_mask_size(const aq_mask* mask, int* width, int* height);
AQ_API aq_status aq_mask_water_fraction(const aq_mask* mask, double* out);
AQ_API aq_mask_method aq_mask_get_method(const aq_mask* mask);
/* Returns 1 and writes *out when the mask records a threshold. */
AQ_API int aq_mask_threshold(const aq_mask* mask, double* out);
/* Copies per-pixel classes: 1 water, 0 land, 255 invalid. */
AQ_API aq_status aq_mask_classes(const aq_mask* mask, uint8_t* out, size_t count);

/* ---- Local variability and depth profiles ------------------------------ */

AQ_API aq_status aq_local_sigma(const aq_map* index, const aq_mask* water,
                                int window, aq_map** out);

typedef struct aq_homogeneity_counts {
  uint64_t stable;
  uint64_t transitional;
  uint64_t variable;
} aq_homogeneity_counts;

/* Class counts of a sigma map (stable < 0.15 <= transitional <= 0.35 < variable). */
AQ_API aq_status aq_homogeneity_counts_of(const aq_map* sigma,
                                          aq_homogeneity_counts* out);

/* depth_scale <= 0 means "no scaling". */
AQ_API aq_status aq_depth_profile_compute(const aq_map* index, const aq_map* depth,
                                          const aq_mask* water, int bins,
                                          double depth_scale,
                                          aq_depth_profile** out);
AQ_API void aq_depth_profile_free(aq_depth_profile* profile);
AQ_API size_t aq_depth_profile_pair_count(const aq_depth_profile* profile);
AQ_API aq_status aq_depth_profile_write_csv(const aq_depth_profile* profile,
                                            const char* path);
AQ_API aq_status aq_depth_profile_write_json(const aq_depth_profile* profile,
                                             const char* path);

/* ---- Evaluation --------------------------------------------------------- */

typedef struct aq_confusion_matrix {
  uint64_t tp;
  uint64_t fp;
  uint64_t fn;
  uint64_t tn;
} aq_confusion_matrix;

/* has_* is 0 when the metric's denominator is zero. */
typedef struct aq_metrics {
  double accuracy, iou, dice, recall, precision, specificity;
  int has_accuracy, has_iou, has_dice, has_recall, has_precision, has_specificity;
} aq_metrics;

typedef struct aq_loss {
  double total;
  double ce;
  double dice;
} aq_loss;

AQ_API aq_status aq_confusion(const aq_mask* pred, const aq_mask* ref,
                              aq_confusion_matrix* out);
AQ_API aq_status aq_metrics_compute(const aq_confusion_matrix* cm, aq_metrics* out);
/* JSON report {confusion, metrics}; undefined metrics are omitted. */
AQ_API aq_status aq_metrics_to_json(const aq_confusion_matrix* cm, char** out);
AQ_API aq_status aq_metrics_to_table(const aq_confusion_matrix* cm, char** out);

AQ_API aq_status aq_prob_map_read(const char* path, aq_prob_map** out);
/* values: width * height probabilities; NaN marks invalid pixels. */
AQ_API aq_status aq_prob_map_create(int width, int height, const double* values,
                                    aq_prob_map** out);
AQ_API void aq_prob_map_free(aq_prob_map* map);
AQ_API aq_status aq_loss_weighted_ce(const aq_prob_map* pred, const aq_mask* ref,
                                     double w_land, double w_water, double* out);
AQ_API aq_status aq_loss_dice(const aq_prob_map* pred, const aq_mask* ref,
                              double smooth, double* out);
AQ_API aq_status aq_loss_composite(const aq_prob_map* pred, const aq_mask* ref,
                                   aq_loss* out);

/* ---- Patch sampling ----------------------------------------------------- */

typedef struct aq_patch {
  int x;
  int y;
  int size;
} aq_patch;

/* max_attempts <= 0 uses 1000 * count. */
AQ_API aq_status aq_sample_patches(const aq_scene* scene, const aq_mask* water,
                                   int count, int size, double min_water_fraction,
                                   uint64_t seed, int64_t max_attempts,
                                   aq_patch_list** out);
AQ_API void aq_patch_list_free(aq_patch_list* list);
AQ_API size_t aq_patch_list_size(const aq_patch_list* list);
AQ_API aq_status aq_patch_list_get(const aq_patch_list* list, size_t i, aq_patch* out);
AQ_API int aq_patch_list_shortfall(const aq_patch_list* list);
AQ_API aq_status aq_patch_list_to_json(const aq_patch_list* list, char** out);

/* ---- Palettes and rendering -------------------------------------------- */

typedef struct aq_render_options {
  int scale;          /* >= 1 */
  int colorbar;       /* nonzero draws the colour bar below the map */
  const char* title;  /* optional */
} aq_render_options;

/* "ndwi", "mndwi", "turbidity", "ndci"/"algae", "ndosi",
 * "rel_bathymetry"/"depth", "sigma"/"variance", "mask". */
AQ_API aq_status aq_palette_builtin(const char* name, aq_palette** out);
AQ_API aq_status aq_palette_for_map(const aq_map* map, aq_palette** out);
AQ_API aq_status aq_palette_load_json(const char* path, aq_palette** out);
AQ_API aq_status aq_palette_to_json(const aq_palette* palette, char** out);
AQ_API void aq_palette_free(aq_palette* palette);
/* defined == 0 yields the undefined colour. */
AQ_API aq_status aq_palette_color(const aq_palette* palette, double value,
                                  int defined, uint8_t rgb[3]);

AQ_API aq_status aq_render_map(const aq_map* map, const aq_palette* palette,
                               const aq_render_options* options, aq_image** out);
AQ_API aq_status aq_render_mask_overlay(const aq_scene* scene, const aq_mask* mask,
                                        const uint8_t water_rgb[3], double alpha,
                                        aq_image** out);
AQ_API void aq_image_free(aq_image* image);
AQ_API aq_status aq_image_size(const aq_image* image, int* width, int* height);
/* RGBA bytes, row-major, valid until the image is freed. */
AQ_API const uint8_t* aq_image_pixels(const aq_image* image);
AQ_API size_t aq_image_warning_count(const aq_image* image);
AQ_API const char* aq_image_warning(const aq_image* image, size_t i);
AQ_API aq_status aq_image_write_png(const aq_image* image, const char* path);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* AQUASPEC_AQUASPEC_H_ */
