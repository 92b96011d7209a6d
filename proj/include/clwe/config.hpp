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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "clwe/retrieval.hpp"
#include "clwe/seed.hpp"
#include "clwe/self_learning.hpp"

namespace clwe {

/// The seven named configurations.
enum class ConfigName {
  kUnsupervised,
  kOrthgSuper,
  kOrthgSlSym,
  kFullSuper,
  kFullSl,
  kFullSlNod,
  kFullSlSym,
};

inline constexpr std::array<ConfigName, 7> kAllConfigs = {
    ConfigName::kUnsupervised, ConfigName::kOrthgSuper, ConfigName::kOrthgSlSym,
    ConfigName::kFullSuper,    ConfigName::kFullSl,     ConfigName::kFullSlNod,
    ConfigName::kFullSlSym,
};

std::string_view config_name(ConfigName name);
ConfigName parse_config_name(std::string_view name);

// C1: where the initial dictionary comes from.
enum class SeedKind { kUnsupervised, kProvided };
// C2: self-learning variant. kBestOfAll runs sl, sl+nod and sl+sym and keeps
// the best.
enum class SelfLearningVariant { kNone, kSl, kSlNod, kSlSym, kBestOfAll };
// C3: pre/post-processing.
enum class Processing { kLengthNormOnly, kFullS1S4 };

std::string_view seed_kind_name(SeedKind k);
std::string_view variant_name(SelfLearningVariant v);
std::string_view processing_name(Processing p);

struct Wiring {
  SeedKind c1;
  SelfLearningVariant c2;
  Processing c3;

  friend bool operator==(const Wiring&, const Wiring&) = default;
};

/// Fixed (C1, C2, C3) combination of each named configuration.
Wiring wiring_for(ConfigName name);

/// Where a provided seed dictionary is read from.
enum class SeedSource { kUnsupervised, kFile, kIdenticalStrings };

std::string_view seed_source_name(SeedSource s);

struct Hyperparameters {
  std::size_t max_vocab = 200000;
  std::size_t seed_vocab = kDefaultSeedVocab;
  std::size_t vocab_cut = kDefaultVocabCut;
  double keep_probability = kDefaultKeepProbability;
  std::size_t max_iters = kDefaultMaxIterations;
  double convergence_tol = kDefaultConvergenceTol;
  std::size_t patience = kDropoutPatience;
  RetrievalMethod retrieval = RetrievalMethod::kCsls;
  std::size_t csls_k = kDefaultCslsK;
};

inline constexpr std::size_t kUnsupervisedRestarts = 5;

struct ModelConfig {
  ConfigName name = ConfigName::kFullSlSym;
  SeedSource seed_source = SeedSource::kFile;
  std::string train_dict_path;
  std::size_t dict_size = 0;  // 0 keeps every pair
  Processing c3 = Processing::kFullS1S4;
  SelfLearningVariant c2 = SelfLearningVariant::kNone;
  std::size_t restarts = 1;
  bool select_best = false;
  std::uint64_t seed = 0;
  Hyperparameters hp;

  /// Variants actually executed: one, or three for select-best.
  std::vector<SelfLearningVariant> variants_to_run() const;

  void validate() const;
};

/// Builds a config with the wiring of `name`. Unsupervised configurations get
/// five restarts; provided-seed configurations read the training dictionary
/// from `train_dict_path` unless `identical_strings` is set.
ModelConfig make_config(ConfigName name, std::string train_dict_path = {},
                        bool identical_strings = false);

/// Self-learning settings for a variant under the given processing.
SelfLearnConfig self_learn_config(SelfLearningVariant variant, Processing c3,
                                  const Hyperparameters& hp, std::uint64_t rng_seed);

nlohmann::json to_json(const ModelConfig& cfg);

}  // namespace clwe
