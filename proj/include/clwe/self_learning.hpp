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

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "clwe/dictionary.hpp"
#include "clwe/embedding_io.hpp"
#include "clwe/retrieval.hpp"
#include "clwe/transforms.hpp"

namespace clwe {

inline constexpr std::size_t kDefaultVocabCut = 20000;
inline constexpr double kDefaultKeepProbability = 0.1;
inline constexpr std::size_t kDefaultMaxIterations = 500;
inline constexpr double kDefaultConvergenceTol = 1e-6;
inline constexpr std::size_t kDropoutPatience = 50;

enum class InductionMode { kAllNn, kMutualNn };
enum class StepKind { kOrthogonalOnly, kFullS2S4 };

const char* induction_mode_name(InductionMode m);
const char* step_kind_name(StepKind s);

struct SelfLearnConfig {
  InductionMode induction_mode = InductionMode::kMutualNn;
  double dropout_keep = 1.0;
  std::size_t vocab_cut = kDefaultVocabCut;
  std::size_t max_iters = kDefaultMaxIterations;
  double convergence_tol = kDefaultConvergenceTol;
  std::uint64_t rng_seed = 0;
  StepKind step_kind = StepKind::kFullS2S4;
  RetrievalMethod scoring = RetrievalMethod::kCsls;
  std::size_t csls_k = kDefaultCslsK;
  // Iterations without improvement tolerated before keep is doubled.
  std::size_t patience = kDropoutPatience;

  void validate() const;
};

struct TraceRecord {
  double objective = 0.0;       // mean cosine of the induced pairs
  double best_objective = 0.0;  // running maximum over non-warm-up iterates
  std::size_t dictionary_size = 0;
  double dropout_keep = 1.0;
  // True for warm-up iterates: the full step was requested but the dictionary
  // did not span every dimension, so the orthogonal step was used. Their
  // objective is excluded from best_objective and from convergence checks.
  bool warm_up = false;
};

struct LearningTrace {
  std::vector<TraceRecord> records;
};

struct InducedDictionary {
  Dictionary dictionary;
  double objective = 0.0;
};

/// One dictionary induction step over mapped, row-normalized matrices.
///
/// Scores are CSLS (or plain cosine) similarities; with keep < 1 each score
/// is zeroed with probability 1 - keep. kAllNn pairs every source row with its
/// best target, kMutualNn keeps only pairs that are maximal in both their row
/// and column. Ties go to the lower index. With keep == 1 the generator is not
/// touched.
InducedDictionary induce_dictionary(const Matrix& x_mapped, const Matrix& z_mapped,
                                    InductionMode mode, double keep, std::mt19937_64& rng,
                                    RetrievalMethod scoring = RetrievalMethod::kCsls,
                                    std::size_t csls_k = kDefaultCslsK);

struct SelfLearnResult {
  ProjectionModel model;  // best-objective iterate
  Dictionary dictionary;  // dictionary induced by that iterate
  LearningTrace trace;
  std::size_t best_iteration = 0;  // 1-based
  bool collapsed = false;
  double final_keep = 1.0;
};

/// Fits one projection step for `dict` using the configured step kind.
ProjectionModel projection_step(const Matrix& x, const Matrix& z, const Dictionary& dict,
                                StepKind kind);

/// Alternates projection fitting and dictionary induction starting from
/// `seed`. `x` and `z` must already be preprocessed; induction only looks at
/// the first cfg.vocab_cut rows of each.
SelfLearnResult self_learn(const EmbeddingSpace& x, const EmbeddingSpace& z,
                           const Dictionary& seed, const SelfLearnConfig& cfg);

}  // namespace clwe
