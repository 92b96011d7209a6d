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

#include "clwe/config.hpp"

#include "clwe/error.hpp"

namespace clwe {

std::string_view config_name(ConfigName name) {
  switch (name) {
    case ConfigName::kUnsupervised: return "unsupervised";
    case ConfigName::kOrthgSuper: return "orthg-super";
    case ConfigName::kOrthgSlSym: return "orthg+sl+sym";
    case ConfigName::kFullSuper: return "full-super";
    case ConfigName::kFullSl: return "full+sl";
    case ConfigName::kFullSlNod: return "full+sl+nod";
    case ConfigName::kFullSlSym: return "full+sl+sym";
  }
  return "unknown";
}

ConfigName parse_config_name(std::string_view name) {
  for (ConfigName c : kAllConfigs) {
    if (config_name(c) == name) return c;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown configuration '" + std::string(name) + "'");
}

std::string_view seed_kind_name(SeedKind k) {
  return k == SeedKind::kUnsupervised ? "unsupervised" : "provided";
}

std::string_view variant_name(SelfLearningVariant v) {
  switch (v) {
    case SelfLearningVariant::kNone: return "none";
    case SelfLearningVariant::kSl: return "sl";
    case SelfLearningVariant::kSlNod: return "sl+nod";
    case SelfLearningVariant::kSlSym: return "sl+sym";
    case SelfLearningVariant::kBestOfAll: return "best_of_all";
  }
  return "unknown";
}

std::string_view processing_name(Processing p) {
  return p == Processing::kLengthNormOnly ? "length_norm_only" : "full_s1_s4";
}

std::string_view seed_source_name(SeedSource s) {
  switch (s) {
    case SeedSource::kUnsupervised: return "unsupervised";
    case SeedSource::kFile: return "file";
    case SeedSource::kIdenticalStrings: return "identical_strings";
  }
  return "unknown";
}

Wiring wiring_for(ConfigName name) {
  using V = SelfLearningVariant;
  switch (name) {
    case ConfigName::kUnsupervised:
      return {SeedKind::kUnsupervised, V::kBestOfAll, Processing::kFullS1S4};
    case ConfigName::kOrthgSuper:
      return {SeedKind::kProvided, V::kNone, Processing::kLengthNormOnly};
    case ConfigName::kOrthgSlSym:
      return {SeedKind::kProvided, V::kSlSym, Processing::kLengthNormOnly};
    case ConfigName::kFullSuper:
      return {SeedKind::kProvided, V::kNone, Processing::kFullS1S4};
    case ConfigName::kFullSl:
      return {SeedKind::kProvided, V::kSl, Processing::kFullS1S4};
    case ConfigName::kFullSlNod:
      return {SeedKind::kProvided, V::kSlNod, Processing::kFullS1S4};
    case ConfigName::kFullSlSym:
      return {SeedKind::kProvided, V::kSlSym, Processing::kFullS1S4};
  }
  throw Error(ErrorCode::kInternal, "unhandled configuration");
}

ModelConfig make_config(ConfigName name, std::string train_dict_path, bool identical_strings) {
  const Wiring w = wiring_for(name);
  ModelConfig cfg;
  cfg.name = name;
  cfg.c2 = w.c2;
  cfg.c3 = w.c3;
  if (w.c1 == SeedKind::kUnsupervised) {
    cfg.seed_source = SeedSource::kUnsupervised;
    cfg.restarts = kUnsupervisedRestarts;
  } else {
    cfg.seed_source = identical_strings ? SeedSource::kIdenticalStrings : SeedSource::kFile;
    cfg.train_dict_path = std::move(train_dict_path);
  }
  return cfg;
}

std::vector<SelfLearningVariant> ModelConfig::variants_to_run() const {
  using V = SelfLearningVariant;
  if (c2 != V::kBestOfAll) return {c2};
  if (select_best) return {V::kSl, V::kSlNod, V::kSlSym};
  // Without --select-best the unsupervised row uses stochastic self-learning.
  return {V::kSl};
}

void ModelConfig::validate() const {
  if (restarts == 0) throw Error(ErrorCode::kInvalidArgument, "restarts must be positive");
  if (hp.max_vocab == 0 || hp.seed_vocab == 0 || hp.csls_k == 0) {
    throw Error(ErrorCode::kInvalidArgument, "vocabulary sizes and csls_k must be positive");
  }
  self_learn_config(SelfLearningVariant::kSl, c3, hp, seed).validate();
}

SelfLearnConfig self_learn_config(SelfLearningVariant variant, Processing c3,
                                  const Hyperparameters& hp, std::uint64_t rng_seed) {
  SelfLearnConfig sl;
  sl.vocab_cut = hp.vocab_cut;
  sl.max_iters = hp.max_iters;
  sl.convergence_tol = hp.convergence_tol;
  sl.patience = hp.patience;
  sl.rng_seed = rng_seed;
  sl.scoring = hp.retrieval;
  sl.csls_k = hp.csls_k;
  sl.step_kind = c3 == Processing::kFullS1S4 ? StepKind::kFullS2S4 : StepKind::kOrthogonalOnly;
  switch (variant) {
    case SelfLearningVariant::kSl:
      sl.induction_mode = InductionMode::kAllNn;
      sl.dropout_keep = hp.keep_probability;
      break;
    case SelfLearningVariant::kSlNod:
      sl.induction_mode = InductionMode::kAllNn;
      sl.dropout_keep = 1.0;
      break;
    case SelfLearningVariant::kSlSym:
      sl.induction_mode = InductionMode::kMutualNn;
      sl.dropout_keep = 1.0;
      break;
    case SelfLearningVariant::kNone:
    case SelfLearningVariant::kBestOfAll:
      throw Error(ErrorCode::kInvalidArgument, "variant has no single self-learning setting");
  }
  return sl;
}

nlohmann::json to_json(const ModelConfig& cfg) {
  const Wiring w = wiring_for(cfg.name);
  nlohmann::json variants = nlohmann::json::array();
  for (auto v : cfg.variants_to_run()) variants.push_back(variant_name(v));
  return {
      {"name", config_name(cfg.name)},
      {"c1", seed_kind_name(w.c1)},
      {"c2", variant_name(cfg.c2)},
      {"c3", processing_name(cfg.c3)},
      {"seed_source", seed_source_name(cfg.seed_source)},
      {"train_dict", cfg.train_dict_path},
      {"dict_size", cfg.dict_size},
      {"restarts", cfg.restarts},
      {"select_best", cfg.select_best},
      {"variants", variants},
      {"seed", cfg.seed},
      {"max_vocab", cfg.hp.max_vocab},
      {"seed_vocab", cfg.hp.seed_vocab},
      {"vocab_cut", cfg.hp.vocab_cut},
      {"keep_probability", cfg.hp.keep_probability},
      {"max_iters", cfg.hp.max_iters},
      {"convergence_tol", cfg.hp.convergence_tol},
      {"patience", cfg.hp.patience},
      {"retrieval", retrieval_method_name(cfg.hp.retrieval)},
      {"csls_k", cfg.hp.csls_k},
  };
}

}  // namespace clwe
