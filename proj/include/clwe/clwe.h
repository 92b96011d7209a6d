/*
 * Copyright 2026 The clwe Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the clwe cross-lingual embedding toolkit.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a clwe_status; on
 * failure clwe_last_error() describes the problem (per thread). Strings
 * returned through char** out-parameters are released with clwe_string_free.
 */
#ifndef CLWE_CLWE_H_
#define CLWE_CLWE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(CLWE_BUILDING_LIBRARY)
#define CLWE_API __attribute__((visibility("default")))
#else
#define CLWE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum clwe_status {
  CLWE_OK = 0,
  CLWE_ERROR_IO = 1,
  CLWE_ERROR_FORMAT = 2,
  CLWE_ERROR_INVALID_ARGUMENT = 3,
  CLWE_ERROR_DEGENERATE_SEED = 4,
  CLWE_ERROR_COLLAPSED = 5,
  CLWE_ERROR_INTERNAL = 6
} clwe_status;

typedef enum clwe_step_kind {
  CLWE_STEP_ORTHOGONAL = 0,
  CLWE_STEP_FULL = 1
} clwe_step_kind;

typedef enum clwe_retrieval {
  CLWE_RETRIEVAL_NN = 0,
  CLWE_RETRIEVAL_CSLS = 1
} clwe_retrieval;

typedef enum clwe_side {
  CLWE_SIDE_SOURCE = 0,
  CLWE_SIDE_TARGET = 1
} clwe_side;

typedef struct clwe_space clwe_space;
typedef struct clwe_dictionary clwe_dictionary;
typedef struct clwe_model clwe_model;

typedef void (*clwe_warning_fn)(const char* message, void* user_data);

CLWE_API const char* clwe_version(void);
CLWE_API const char* clwe_status_name(clwe_status status);
CLWE_API const char* clwe_last_error(void);
CLWE_API void clwe_string_free(char* str);
/* NULL restores the default stderr handler. */
CLWE_API void clwe_set_warning_handler(clwe_warning_fn fn, void* user_data);

/* ---- embedding spaces (word2vec text format) ---- */

/* Keeps the first max_vocab valid rows; 0 keeps every row. */
CLWE_API clwe_status clwe_space_load(const char* path, size_t max_vocab, clwe_space** out);
CLWE_API clwe_status clwe_space_save(const clwe_space* space, const char* path);
CLWE_API void clwe_space_free(clwe_space* space);
CLWE_API size_t clwe_space_size(const clwe_space* space);
CLWE_API size_t clwe_space_dim(const clwe_space* space);
/* NULL when i is out of range. Valid until the space is freed. */
CLWE_API const char* clwe_space_word(const clwe_space* space, size_t i);
/* Index of word, or -1. */
CLWE_API ptrdiff_t clwe_space_find(const clwe_space* space, const char* word);
CLWE_API clwe_status clwe_space_vector(const clwe_space* space, size_t i, double* out, size_t len);
CLWE_API clwe_status clwe_space_frequency_cut(const clwe_space* space, size_t n, clwe_space** out);
/* full != 0: unit length, centering, unit length; otherwise unit length only. */
CLWE_API clwe_status clwe_space_normalize(const clwe_space* space, int full, clwe_space** out);

/* ---- dictionaries ---- */

CLWE_API clwe_status clwe_dictionary_load(const char* path, const clwe_space* source,
                                          const clwe_space* target, clwe_dictionary** out);
CLWE_API clwe_status clwe_dictionary_identical(const clwe_space* source, const clwe_space* target,
                                               clwe_dictionary** out);
/* Spaces must already be normalized (clwe_space_normalize with full != 0). */
CLWE_API clwe_status clwe_dictionary_unsupervised(const clwe_space* source,
                                                  const clwe_space* target, size_t profile_size,
                                                  clwe_dictionary** out);
CLWE_API size_t clwe_dictionary_size(const clwe_dictionary* dict);
CLWE_API clwe_status clwe_dictionary_pair(const clwe_dictionary* dict, size_t i, size_t* source,
                                          size_t* target);
CLWE_API void clwe_dictionary_free(clwe_dictionary* dict);

/* ---- projection models ---- */

typedef struct clwe_self_learn_options {
  int mutual_nn;           /* 0: all nearest neighbours, 1: mutual only */
  double keep_probability; /* dropout keep probability in (0, 1] */
  size_t vocab_cut;
  size_t max_iters;
  double convergence_tol;
  uint64_t rng_seed;
  clwe_step_kind step;
  clwe_retrieval scoring;
  size_t csls_k;
} clwe_self_learn_options;

CLWE_API void clwe_self_learn_options_init(clwe_self_learn_options* opts);

CLWE_API clwe_status clwe_model_fit(const clwe_space* source, const clwe_space* target,
                                    const clwe_dictionary* dict, clwe_step_kind step,
                                    clwe_model** out);
/* out_dict and collapsed may be NULL. */
CLWE_API clwe_status clwe_model_self_learn(const clwe_space* source, const clwe_space* target,
                                           const clwe_dictionary* seed,
                                           const clwe_self_learn_options* opts, clwe_model** out,
                                           clwe_dictionary** out_dict, int* collapsed);
CLWE_API size_t clwe_model_dim(const clwe_model* model);
/* Row-major d x d composed map of one side. */
CLWE_API clwe_status clwe_model_matrix(const clwe_model* model, clwe_side side, double* out,
                                       size_t len);
CLWE_API clwe_status clwe_model_map(const clwe_model* model, const clwe_space* space,
                                    clwe_side side, clwe_space** out);
CLWE_API void clwe_model_free(clwe_model* model);

/* ---- evaluation ---- */

/* BLI report as JSON: mrr, p_at_1, coverage, n_queries, success_class. */
CLWE_API clwe_status clwe_evaluate(const clwe_model* model, const clwe_space* source,
                                   const clwe_space* target, const char* test_dict_path,
                                   clwe_retrieval method, size_t csls_k, char** report_json);
/* "ok", "weak_fail" or "hard_fail". */
CLWE_API const char* clwe_classify_success(double mrr);

/* ---- experiment harness ---- */

typedef struct clwe_experiment_options {
  const char* config; /* one of the seven configuration names */
  const char* source_path;
  const char* target_path;
  const char* train_dict_path; /* may be NULL for unsupervised / identical seeds */
  const char* test_dict_path;
  const char* out_dir;         /* may be NULL: nothing written */
  const char* source_language; /* labels for aggregation; may be NULL */
  const char* target_language;
  size_t dict_size;            /* 0: whole training dictionary */
  int identical_seed;
  size_t restarts;             /* 0: configuration default */
  int select_best;
  uint64_t seed;
  clwe_retrieval retrieval;
  size_t csls_k;
  size_t max_vocab;
  size_t seed_vocab;
  size_t vocab_cut;
  double keep_probability;
  size_t max_iters;
  int save_aligned;
  int include_timing;
} clwe_experiment_options;

CLWE_API void clwe_experiment_options_init(clwe_experiment_options* opts);

/* On CLWE_OK, *report_json holds the report and *unsuccessful is set when
 * every restart failed or the seed was degenerate. */
CLWE_API clwe_status clwe_experiment_run(const clwe_experiment_options* opts, char** report_json,
                                         int* unsuccessful);

CLWE_API clwe_status clwe_synthetic_generate(size_t n, size_t dim, double noise_sigma,
                                             double overlap, uint64_t seed, const char* out_dir);

/* group_by: "source_language" or "config". Either output may be NULL. */
CLWE_API clwe_status clwe_aggregate(const char* const* report_paths, size_t count,
                                    const char* group_by, char** tsv, char** json);

/* {"c1": ..., "c2": ..., "c3": ...} for a configuration name. */
CLWE_API clwe_status clwe_config_wiring(const char* config, char** wiring_json);

#ifdef __cplusplus
}
#endif

#endif /* CLWE_CLWE_H_ */
