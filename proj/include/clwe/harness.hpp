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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "clwe/config.hpp"
#include "clwe/embedding_io.hpp"
#include "clwe/retrieval.hpp"

namespace clwe {

struct ExperimentPaths {
  std::string source;
  std::string target;
  std::string test_dict;
  std::string out_dir;  // empty: nothing is written
  bool save_aligned = false;
  std::string source_language;
  std::string target_language;
};

struct RunRecord {
  std::size_t restart = 0;
  std::uint64_t rng_seed = 0;
  std::string variant;
  BliReport bli;
  std::size_t seed_pairs = 0;
  std::size_t iterations = 0;
  std::size_t best_iteration = 0;
  std::size_t final_dictionary_size = 0;
  bool collapsed = false;
  bool degenerate_seed = false;
  double wall_clock_s = 0.0;
};

struct ExperimentReport {
  ModelConfig config;
  std::string source_language;
  std::string target_language;
  std::vector<RunRecord> runs;
  double mean_mrr = 0.0;
  bool unsuccessful = false;       // every run at or below the hard threshold
  bool weak_unsuccessful = false;  // every run at or below the weak threshold
  bool degenerate_seed = false;
  std::string selected_variant;
  nlohmann::json variant_mean_mrr = nlohmann::json::object();
  double wall_clock_s = 0.0;
};

/// Load, preprocess, seed, (self-)learn and evaluate. Restarts run in
/// parallel with rng seed cfg.seed + restart. When out_dir is set, writes
/// report.json (and the mapped spaces of the first run of the selected
/// variant when save_aligned is set).
ExperimentReport run_experiment(const ModelConfig& cfg, const ExperimentPaths& paths);

/// In-memory variant used by the file-based overload.
ExperimentReport run_experiment(const ModelConfig& cfg, const EmbeddingSpace& source,
                                const EmbeddingSpace& target,
                                const std::vector<WordPair>& train_pairs,
                                const std::vector<WordPair>& test_pairs);

nlohmann::json to_json(const ExperimentReport& report, bool with_timing = true);

/// Timing keys that vary between otherwise identical runs.
nlohmann::json strip_timing(nlohmann::json report);

struct SyntheticOptions {
  std::size_t n = 1000;
  std::size_t dim = 50;
  double noise_sigma = 0.0;
  double overlap = 1.0;
  std::uint64_t seed = 0;
};

struct SyntheticPair {
  EmbeddingSpace source;
  EmbeddingSpace target;
  std::vector<WordPair> gold;   // every retained correspondence, source order
  std::vector<WordPair> train;  // first half of gold
  std::vector<WordPair> test;   // second half of gold
};

/// Gaussian source rows with a decaying spectrum; target = source * R + noise
/// for a random orthogonal R, with renamed words, a fraction (1 - overlap) of
/// rows removed and a local shuffle of row order.
SyntheticPair generate_synthetic_pair(const SyntheticOptions& opts);

/// Writes src.vec, tgt.vec, gold.dict, train.dict and test.dict.
void write_synthetic_pair(const SyntheticPair& pair, const std::string& out_dir);

enum class GroupBy { kSourceLanguage, kConfig };

GroupBy parse_group_by(const std::string& name);

struct AggregateRow {
  std::string group;
  std::size_t n_reports = 0;
  double mean_mrr = 0.0;
  std::size_t unsuccessful_hard = 0;  // MRR <= 0.01 in every run
  std::size_t unsuccessful_weak = 0;  // MRR <= 0.05 in every run
};

/// Mean MRR and unsuccessful counts per group, sorted by group key.
std::vector<AggregateRow> aggregate_reports(const std::vector<nlohmann::json>& reports,
                                            GroupBy group_by);

std::string aggregate_tsv(const std::vector<AggregateRow>& rows);
nlohmann::json aggregate_json(const std::vector<AggregateRow>& rows);

void write_text_file(const std::string& path, const std::string& contents);
nlohmann::json read_json_file(const std::string& path);

}  // namespace clwe
