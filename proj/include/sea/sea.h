/* Copyright 2026 The SEA Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the sketch abstraction-efficiency score and its tooling.
 *
 * Conventions:
 *   - Every fallible call returns sea_status. On failure the message is
 *     available from sea_last_error() on the same thread until the next call.
 *   - Output text is returned as sea_text handles owned by the caller and
 *     released with sea_text_free. Out-pointers are left untouched on error.
 *   - Paths are UTF-8. JSON arguments may be NULL to mean "defaults".
 */
#ifndef SEA_SEA_H_
#define SEA_SEA_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SEA_API __declspec(dllexport)
#else
#define SEA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sea_status {
  SEA_OK = 0,
  SEA_ERR_INVALID_ARGUMENT = 1,
  SEA_ERR_INVALID_CAPACITY = 2,
  SEA_ERR_BOUNDARY = 3,
  SEA_ERR_PARSE = 4,
  SEA_ERR_VALIDATION = 5,
  SEA_ERR_IO = 6,
  SEA_ERR_NETWORK = 7,
  SEA_ERR_EXTRACTION = 8,
  SEA_ERR_ALIGNMENT = 9,
  SEA_ERR_INTERNAL = 10
} sea_status;

SEA_API const char* sea_version(void);
SEA_API const char* sea_status_name(sea_status status);
SEA_API const char* sea_last_error(void);

/* ------------------------------------------------------------ owned text */

typedef struct sea_text sea_text;

SEA_API const char* sea_text_data(const sea_text* text);
SEA_API size_t sea_text_size(const sea_text* text);
SEA_API void sea_text_free(sea_text* text);

/* ----------------------------------------------------------------- score */

typedef struct sea_hyperparams {
  double alpha, beta, lambda, eta, k, tau, r, gamma, delta, epsilon_clip;
} sea_hyperparams;

SEA_API void sea_hyperparams_default(sea_hyperparams* hp);
/* Applies a JSON object of field overrides, e.g. {"delta": 1e-7}. */
SEA_API sea_status sea_hyperparams_override(sea_hyperparams* hp, const char* json_object);
SEA_API sea_status sea_hyperparams_to_json(const sea_hyperparams* hp, sea_text** out);

typedef struct sea_signals {
  int64_t element_count; /* E */
  double visible_count;  /* V */
  double probability;    /* P */
} sea_signals;

typedef struct sea_breakdown {
  double v, u, g, reward, penalty, z, sea;
} sea_breakdown;

/* Clips V into [0, E] and P into [eps, 1 - eps] first. */
SEA_API sea_status sea_score(const sea_signals* signals, const sea_hyperparams* hp,
                             sea_breakdown* out);
/* Unclipped evaluation at a normalized (P, v) point. */
SEA_API sea_status sea_score_point(double p, double v, const sea_hyperparams* hp,
                                   sea_breakdown* out);

typedef struct sea_derivatives {
  double dz_dp, dz_dv, ds_dp, ds_dv;
  int one_sided_p, one_sided_v;
} sea_derivatives;

SEA_API sea_status sea_analytic_derivatives(double p, double v, const sea_hyperparams* hp,
                                            sea_derivatives* out);
SEA_API sea_status sea_fd_derivatives(double p, double v, double h, const sea_hyperparams* hp,
                                      sea_derivatives* out);

typedef enum sea_location {
  SEA_INTERIOR = 0,
  SEA_LEFT_BOUNDARY = 1,
  SEA_RIGHT_BOUNDARY = 2
} sea_location;

typedef struct sea_optimum {
  double v_star, sea_star;
  sea_location location;
} sea_optimum;

SEA_API sea_status sea_find_v_star(int64_t element_count, double p, const sea_hyperparams* hp,
                                   sea_optimum* out);

/* -------------------------------------------------------------- analysis */

/* Runs the full invariant suite. `passed` receives 1 when every check holds.
 * report_json and contour_csv may be NULL. */
SEA_API sea_status sea_verify(const char* grid_json, const sea_hyperparams* hp, uint64_t seed,
                              int* passed, sea_text** report_json, sea_text** contour_csv);

/* ---------------------------------------------------------------- sweeps */

SEA_API sea_status sea_sweep(const char* spec_json, const sea_hyperparams* hp, sea_text** csv,
                             sea_text** svg);
/* threads = 0 uses all cores; output does not depend on it. */
SEA_API sea_status sea_heatmap(const char* config_json, const sea_hyperparams* hp,
                               size_t threads, sea_text** json, sea_text** svg);

/* --------------------------------------------------------------- dataset */

typedef struct sea_db sea_db;

SEA_API sea_status sea_db_load(const char* db_path, const char* categories_path, sea_db** out);
/* Builds a DB from a JSON array of class entries. */
SEA_API sea_status sea_db_parse(const char* json_array, sea_db** out);
SEA_API void sea_db_free(sea_db* db);
SEA_API size_t sea_db_class_count(const sea_db* db);
SEA_API sea_status sea_db_element_count(const sea_db* db, const char* class_name, int64_t* out);
SEA_API sea_status sea_db_to_json(const sea_db* db, sea_text** out);

SEA_API sea_status sea_lift(const sea_db* db, int64_t min_support, sea_text** lift_csv,
                            sea_text** frequency_csv);

/* 1 when the caption names the class at a word boundary, else 0. */
SEA_API int sea_validate_caption(const char* caption, const char* class_name);

/* ------------------------------------------------------------ evaluation */

/* Scores annotated sketches. V comes from predictions_path when given
 * (VQA output JSONL), otherwise from the annotations; P from probs_path. */
SEA_API sea_status sea_score_bundle(const sea_db* db, const char* annotations_path,
                                    const char* predictions_path, const char* probs_path,
                                    const sea_hyperparams* hp, sea_text** scores_jsonl,
                                    sea_text** summary_json);

SEA_API sea_status sea_bench_vqa(const sea_db* db, const char* truth_path,
                                 const char* const* prediction_paths, size_t count,
                                 sea_text** csv, sea_text** json);

SEA_API sea_status sea_compare(const char* scores_a_path, const char* scores_b_path,
                               sea_text** report_json);

/* Undefined coefficients (zero variance) have *_defined = 0 and value 0. */
typedef struct sea_agreement {
  size_t n;
  double spearman, pearson, kendall, ccc;
  int spearman_defined, pearson_defined, kendall_defined, ccc_defined;
} sea_agreement;

SEA_API sea_status sea_agreement_compute(const double* x, const double* y, size_t n,
                                         sea_agreement* out);

typedef struct sea_summary {
  size_t n;
  double mean, std, mode;
  double quartile_bins[4];
} sea_summary;

SEA_API sea_status sea_summarize(const double* scores, size_t n, double lo, double hi,
                                 sea_summary* out);

/* ------------------------------------------------------------- providers */

typedef struct sea_provider sea_provider;

/* config_json holds the provider fields; cache_dir may be NULL (no cache). */
SEA_API sea_status sea_provider_create(const char* config_json, const char* cache_dir,
                                       sea_provider** out);
SEA_API void sea_provider_free(sea_provider* provider);

/* Returns one class entry: {"class", "total_elements", "elements"}. */
SEA_API sea_status sea_provider_extract(sea_provider* provider, const char* class_name,
                                        sea_text** class_entry_json);

/* Queries every element of the class in `db`; returns one prediction row. */
SEA_API sea_status sea_provider_annotate(sea_provider* provider, const sea_db* db,
                                         const char* sketch_id, const char* class_name,
                                         const void* image, size_t image_size,
                                         sea_text** prediction_json);

/* Softmax over the candidate labels; *ground_truth_prob may be NULL. */
SEA_API sea_status sea_provider_classify(sea_provider* provider, const char* sketch_id,
                                         const void* image, size_t image_size,
                                         const char* const* labels, size_t label_count,
                                         const char* ground_truth, double* ground_truth_prob,
                                         sea_text** result_json);

/* ------------------------------------------------------------- utilities */

SEA_API sea_status sea_sha256_file(const char* path, sea_text** hex);
SEA_API sea_status sea_sha256(const void* data, size_t size, sea_text** hex);
/* Temp-file-and-rename write; creates parent directories. */
SEA_API sea_status sea_write_file(const char* path, const void* data, size_t size);
SEA_API sea_status sea_read_file(const char* path, sea_text** out);

#ifdef __cplusplus
}
#endif

#endif /* SEA_SEA_H_ */
