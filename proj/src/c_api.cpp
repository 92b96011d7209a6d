// Copyright 2026 The clwe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "clwe/clwe.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <limits>
#include <string>

#include "clwe/config.hpp"
#include "clwe/error.hpp"
#include "clwe/harness.hpp"
#include "clwe/retrieval.hpp"
#include "clwe/seed.hpp"
#include "clwe/self_learning.hpp"
#include "clwe/transforms.hpp"

struct clwe_space {
  clwe::EmbeddingSpace space;
};

struct clwe_dictionary {
  clwe::Dictionary dict;
};

struct clwe_model {
  clwe::ProjectionModel model;
};

namespace {

thread_local std::string g_last_error;

clwe_status to_status(clwe::ErrorCode code) {
  switch (code) {
    case clwe::ErrorCode::kIo: return CLWE_ERROR_IO;
    case clwe::ErrorCode::kFormat: return CLWE_ERROR_FORMAT;
    case clwe::ErrorCode::kInvalidArgument: return CLWE_ERROR_INVALID_ARGUMENT;
    case clwe::ErrorCode::kDegenerateSeed: return CLWE_ERROR_DEGENERATE_SEED;
    case clwe::ErrorCode::kCollapsed: return CLWE_ERROR_COLLAPSED;
    case clwe::ErrorCode::kInternal: return CLWE_ERROR_INTERNAL;
  }
  return CLWE_ERROR_INTERNAL;
}

template <typename F>
clwe_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return CLWE_OK;
  } catch (const clwe::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CLWE_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CLWE_ERROR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw clwe::Error(clwe::ErrorCode::kInvalidArgument, what);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

clwe::StepKind to_step(clwe_step_kind k) {
  return k == CLWE_STEP_ORTHOGONAL ? clwe::StepKind::kOrthogonalOnly : clwe::StepKind::kFullS2S4;
}

clwe::RetrievalMethod to_method(clwe_retrieval r) {
  return r == CLWE_RETRIEVAL_NN ? clwe::RetrievalMethod::kNn : clwe::RetrievalMethod::kCsls;
}

}  // namespace

extern "C" {

const char* clwe_version(void) { return "0.1.0"; }

const char* clwe_status_name(clwe_status status) {
  switch (status) {
    case CLWE_OK: return "ok";
    case CLWE_ERROR_IO: return "io";
    case CLWE_ERROR_FORMAT: return "format";
    case CLWE_ERROR_INVALID_ARGUMENT: return "invalid_argument";
    case CLWE_ERROR_DEGENERATE_SEED: return "degenerate_seed";
    case CLWE_ERROR_COLLAPSED: return "collapsed";
    case CLWE_ERROR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* clwe_last_error(void) { return g_last_error.c_str(); }

void clwe_string_free(char* str) { std::free(str); }

void clwe_set_warning_handler(clwe_warning_fn fn, void* user_data) {
  if (!fn) {
    clwe::set_warning_handler([](std::string_view msg) {
      std::fprintf(stderr, "clwe: warning: %.*s\n", static_cast<int>(msg.size()), msg.data());
    });
    return;
  }
  clwe::set_warning_handler([fn, user_data](std::string_view msg) {
    const std::string copy(msg);
    fn(copy.c_str(), user_data);
  });
}

clwe_status clwe_space_load(const char* path, size_t max_vocab, clwe_space** out) {
  return guarded([&] {
    require(path && out, "clwe_space_load: null argument");
    const std::size_t cap = max_vocab == 0 ? std::numeric_limits<std::size_t>::max() : max_vocab;
    *out = new clwe_space{clwe::load_embeddings_file(path, cap).space};
  });
}

clwe_status clwe_space_save(const clwe_space* space, const char* path) {
  return guarded([&] {
    require(space && path, "clwe_space_save: null argument");
    clwe::save_embeddings_file(space->space, path);
  });
}

void clwe_space_free(clwe_space* space) { delete space; }

size_t clwe_space_size(const clwe_space* space) { return space ? space->space.size() : 0; }

size_t clwe_space_dim(const clwe_space* space) { return space ? space->space.dim() : 0; }

const char* clwe_space_word(const clwe_space* space, size_t i) {
  if (!space || i >= space->space.size()) return nullptr;
  return space->space.words()[i].c_str();
}

ptrdiff_t clwe_space_find(const clwe_space* space, const char* word) {
  if (!space || !word) return -1;
  return space->space.index_of(word);
}

clwe_status clwe_space_vector(const clwe_space* space, size_t i, double* out, size_t len) {
  return guarded([&] {
    require(space && out, "clwe_space_vector: null argument");
    require(i < space->space.size(), "clwe_space_vector: row out of range");
    require(len >= space->space.dim(), "clwe_space_vector: buffer too small");
    const auto row = space->space.vectors().row(static_cast<Eigen::Index>(i));
    for (Eigen::Index j = 0; j < row.size(); ++j) out[j] = row(j);
  });
}

clwe_status clwe_space_frequency_cut(const clwe_space* space, size_t n, clwe_space** out) {
  return guarded([&] {
    require(space && out, "clwe_space_frequency_cut: null argument");
    require(n > 0, "clwe_space_frequency_cut: n must be positive");
    *out = new clwe_space{clwe::frequency_cut(space->space, n)};
  });
}

clwe_status clwe_space_normalize(const clwe_space* space, int full, clwe_space** out) {
  return guarded([&] {
    require(space && out, "clwe_space_normalize: null argument");
    *out = new clwe_space{full ? clwe::s1_normalize(space->space)
                               : clwe::length_normalize(space->space)};
  });
}

clwe_status clwe_dictionary_load(const char* path, const clwe_space* source,
                                 const clwe_space* target, clwe_dictionary** out) {
  return guarded([&] {
    require(path && source && target && out, "clwe_dictionary_load: null argument");
    const auto pairs = clwe::read_word_pairs_file(path);
    *out = new clwe_dictionary{clwe::load_dictionary(pairs, source->space, target->space).dictionary};
  });
}

clwe_status clwe_dictionary_identical(const clwe_space* source, const clwe_space* target,
                                      clwe_dictionary** out) {
  return guarded([&] {
    require(source && target && out, "clwe_dictionary_identical: null argument");
    *out = new clwe_dictionary{clwe::identical_strings_seed(source->space, target->space)};
  });
}

clwe_status clwe_dictionary_unsupervised(const clwe_space* source, const clwe_space* target,
                                         size_t profile_size, clwe_dictionary** out) {
  return guarded([&] {
    require(source && target && out, "clwe_dictionary_unsupervised: null argument");
    *out = new clwe_dictionary{
        clwe::induce_unsupervised_seed(source->space, target->space, profile_size)};
  });
}

size_t clwe_dictionary_size(const clwe_dictionary* dict) { return dict ? dict->dict.size() : 0; }

clwe_status clwe_dictionary_pair(const clwe_dictionary* dict, size_t i, size_t* source,
                                 size_t* target) {
  return guarded([&] {
    require(dict && source && target, "clwe_dictionary_pair: null argument");
    require(i < dict->dict.size(), "clwe_dictionary_pair: index out of range");
    *source = dict->dict.pairs()[i].src;
    *target = dict->dict.pairs()[i].tgt;
  });
}

void clwe_dictionary_free(clwe_dictionary* dict) { delete dict; }

void clwe_self_learn_options_init(clwe_self_learn_options* opts) {
  if (!opts) return;
  const clwe::SelfLearnConfig defaults;
  opts->mutual_nn = defaults.induction_mode == clwe::InductionMode::kMutualNn;
  opts->keep_probability = defaults.dropout_keep;
  opts->vocab_cut = defaults.vocab_cut;
  opts->max_iters = defaults.max_iters;
  opts->convergence_tol = defaults.convergence_tol;
  opts->rng_seed = defaults.rng_seed;
  opts->step = CLWE_STEP_FULL;
  opts->scoring = CLWE_RETRIEVAL_CSLS;
  opts->csls_k = defaults.csls_k;
}

clwe_status clwe_model_fit(const clwe_space* source, const clwe_space* target,
                           const clwe_dictionary* dict, clwe_step_kind step, clwe_model** out) {
  return guarded([&] {
    require(source && target && dict && out, "clwe_model_fit: null argument");
    *out = new clwe_model{clwe::projection_step(source->space.vectors(), target->space.vectors(),
                                                dict->dict, to_step(step))};
  });
}

clwe_status clwe_model_self_learn(const clwe_space* source, const clwe_space* target,
                                  const clwe_dictionary* seed,
                                  const clwe_self_learn_options* opts, clwe_model** out,
                                  clwe_dictionary** out_dict, int* collapsed) {
  return guarded([&] {
    require(source && target && seed && opts && out, "clwe_model_self_learn: null argument");
    clwe::SelfLearnConfig cfg;
    cfg.induction_mode =
        opts->mutual_nn ? clwe::InductionMode::kMutualNn : clwe::InductionMode::kAllNn;
    cfg.dropout_keep = opts->keep_probability;
    cfg.vocab_cut = opts->vocab_cut;
    cfg.max_iters = opts->max_iters;
    cfg.convergence_tol = opts->convergence_tol;
    cfg.rng_seed = opts->rng_seed;
    cfg.step_kind = to_step(opts->step);
    cfg.scoring = to_method(opts->scoring);
    cfg.csls_k = opts->csls_k;
    clwe::SelfLearnResult res = clwe::self_learn(source->space, target->space, seed->dict, cfg);
    auto model = std::make_unique<clwe_model>(clwe_model{std::move(res.model)});
    if (out_dict) *out_dict = new clwe_dictionary{std::move(res.dictionary)};
    if (collapsed) *collapsed = res.collapsed ? 1 : 0;
    *out = model.release();
  });
}

size_t clwe_model_dim(const clwe_model* model) {
  return model ? static_cast<size_t>(model->model.source_map.rows()) : 0;
}

clwe_status clwe_model_matrix(const clwe_model* model, clwe_side side, double* out, size_t len) {
  return guarded([&] {
    require(model && out, "clwe_model_matrix: null argument");
    const clwe::Matrix& m =
        side == CLWE_SIDE_SOURCE ? model->model.source_map : model->model.target_map;
    require(len >= static_cast<size_t>(m.size()), "clwe_model_matrix: buffer too small");
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j);
    }
  });
}

clwe_status clwe_model_map(const clwe_model* model, const clwe_space* space, clwe_side side,
                           clwe_space** out) {
  return guarded([&] {
    require(model && space && out, "clwe_model_map: null argument");
    require(space->space.dim() == clwe_model_dim(model), "clwe_model_map: dimension mismatch");
    clwe::Matrix mapped = side == CLWE_SIDE_SOURCE ? model->model.map_source(space->space.vectors())
                                                   : model->model.map_target(space->space.vectors());
    clwe::normalize_rows(mapped);
    *out = new clwe_space{space->space.with_vectors(std::move(mapped))};
  });
}

void clwe_model_free(clwe_model* model) { delete model; }

clwe_status clwe_evaluate(const clwe_model* model, const clwe_space* source,
                          const clwe_space* target, const char* test_dict_path,
                          clwe_retrieval method, size_t csls_k, char** report_json) {
  return guarded([&] {
    require(model && source && target && test_dict_path && report_json,
            "clwe_evaluate: null argument");
    const auto test = clwe::read_word_pairs_file(test_dict_path);
    const clwe::BliReport report = clwe::evaluate_bli(model->model, source->space, target->space,
                                                      test, to_method(method), csls_k);
    *report_json = copy_string(clwe::to_json(report).dump());
  });
}

const char* clwe_classify_success(double mrr) {
  return clwe::success_class_name(clwe::classify_success(mrr));
}

void clwe_experiment_options_init(clwe_experiment_options* opts) {
  if (!opts) return;
  const clwe::Hyperparameters hp;
  *opts = clwe_experiment_options{};
  opts->config = "full+sl+sym";
  opts->retrieval = CLWE_RETRIEVAL_CSLS;
  opts->csls_k = hp.csls_k;
  opts->max_vocab = hp.max_vocab;
  opts->seed_vocab = hp.seed_vocab;
  opts->vocab_cut = hp.vocab_cut;
  opts->keep_probability = hp.keep_probability;
  opts->max_iters = hp.max_iters;
  opts->include_timing = 1;
}

clwe_status clwe_experiment_run(const clwe_experiment_options* opts, char** report_json,
                                int* unsuccessful) {
  return guarded([&] {
    require(opts && opts->config && opts->source_path && opts->target_path &&
                opts->test_dict_path,
            "clwe_experiment_run: missing required option");
    clwe::ModelConfig cfg = clwe::make_config(clwe::parse_config_name(opts->config),
                                              opts->train_dict_path ? opts->train_dict_path : "",
                                              opts->identical_seed != 0);
    cfg.dict_size = opts->dict_size;
    if (opts->restarts > 0) cfg.restarts = opts->restarts;
    cfg.select_best = opts->select_best != 0;
    cfg.seed = opts->seed;
    cfg.hp.retrieval = to_method(opts->retrieval);
    cfg.hp.csls_k = opts->csls_k;
    cfg.hp.max_vocab = opts->max_vocab;
    cfg.hp.seed_vocab = opts->seed_vocab;
    cfg.hp.vocab_cut = opts->vocab_cut;
    cfg.hp.keep_probability = opts->keep_probability;
    cfg.hp.max_iters = opts->max_iters;

    clwe::ExperimentPaths paths;
    paths.source = opts->source_path;
    paths.target = opts->target_path;
    paths.test_dict = opts->test_dict_path;
    paths.out_dir = opts->out_dir ? opts->out_dir : "";
    paths.save_aligned = opts->save_aligned != 0;
    paths.source_language = opts->source_language ? opts->source_language : "";
    paths.target_language = opts->target_language ? opts->target_language : "";

    const clwe::ExperimentReport report = clwe::run_experiment(cfg, paths);
    if (report_json) {
      *report_json = copy_string(clwe::to_json(report, opts->include_timing != 0).dump(2));
    }
    if (unsuccessful) *unsuccessful = (report.unsuccessful || report.degenerate_seed) ? 1 : 0;
  });
}

clwe_status clwe_synthetic_generate(size_t n, size_t dim, double noise_sigma, double overlap,
                                    uint64_t seed, const char* out_dir) {
  return guarded([&] {
    require(out_dir != nullptr, "clwe_synthetic_generate: null output directory");
    clwe::SyntheticOptions opts{n, dim, noise_sigma, overlap, seed};
    clwe::write_synthetic_pair(clwe::generate_synthetic_pair(opts), out_dir);
  });
}

clwe_status clwe_aggregate(const char* const* report_paths, size_t count, const char* group_by,
                           char** tsv, char** json) {
  return guarded([&] {
    require(report_paths && group_by, "clwe_aggregate: null argument");
    std::vector<nlohmann::json> reports;
    for (size_t i = 0; i < count; ++i) {
      require(report_paths[i] != nullptr, "clwe_aggregate: null report path");
      reports.push_back(clwe::read_json_file(report_paths[i]));
    }
    const auto rows = clwe::aggregate_reports(reports, clwe::parse_group_by(group_by));
    if (tsv) *tsv = copy_string(clwe::aggregate_tsv(rows));
    if (json) *json = copy_string(clwe::aggregate_json(rows).dump(2));
  });
}

clwe_status clwe_config_wiring(const char* config, char** wiring_json) {
  return guarded([&] {
    require(config && wiring_json, "clwe_config_wiring: null argument");
    const clwe::Wiring w = clwe::wiring_for(clwe::parse_config_name(config));
    const nlohmann::json j = {{"c1", clwe::seed_kind_name(w.c1)},
                              {"c2", clwe::variant_name(w.c2)},
                              {"c3", clwe::processing_name(w.c3)}};
    *wiring_json = copy_string(j.dump());
  });
}

}  // extern "C"
