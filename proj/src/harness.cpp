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

#include "clwe/harness.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <thread>

#include "clwe/error.hpp"
#include "clwe/seed.hpp"
#include "clwe/self_learning.hpp"
#include "clwe/transforms.hpp"

namespace clwe {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct RunOutput {
  RunRecord record;
  ProjectionModel model;
};

struct Outcome {
  ExperimentReport report;
  std::optional<ProjectionModel> model;
  EmbeddingSpace x;
  EmbeddingSpace z;
};

RunOutput run_once(const ModelConfig& cfg, SelfLearningVariant variant, std::size_t restart,
                   const EmbeddingSpace& x, const EmbeddingSpace& z, const Dictionary& seed,
                   const std::vector<WordPair>& test) {
  const auto start = Clock::now();
  RunOutput out;
  RunRecord& rec = out.record;
  rec.restart = restart;
  rec.rng_seed = cfg.seed + restart;
  rec.variant = std::string(variant_name(variant));
  rec.seed_pairs = seed.size();

  if (variant == SelfLearningVariant::kNone) {
    const StepKind kind =
        cfg.c3 == Processing::kFullS1S4 ? StepKind::kFullS2S4 : StepKind::kOrthogonalOnly;
    out.model = projection_step(x.vectors(), z.vectors(), seed, kind);
    rec.iterations = 0;
    rec.final_dictionary_size = seed.size();
  } else {
    const SelfLearnConfig sl = self_learn_config(variant, cfg.c3, cfg.hp, rec.rng_seed);
    SelfLearnResult res = self_learn(x, z, seed, sl);
    rec.iterations = res.trace.records.size();
    rec.best_iteration = res.best_iteration;
    rec.final_dictionary_size = res.dictionary.size();
    rec.collapsed = res.collapsed;
    out.model = std::move(res.model);
  }
  rec.bli = evaluate_bli(out.model, x, z, test, cfg.hp.retrieval, cfg.hp.csls_k);
  rec.wall_clock_s = seconds_since(start);
  return out;
}

Dictionary build_seed(const ModelConfig& cfg, const EmbeddingSpace& x, const EmbeddingSpace& z,
                      const std::vector<WordPair>& train_pairs) {
  switch (cfg.seed_source) {
    case SeedSource::kUnsupervised:
      return induce_unsupervised_seed(x, z, cfg.hp.seed_vocab);
    case SeedSource::kIdenticalStrings:
      return identical_strings_seed(x, z);
    case SeedSource::kFile: {
      Dictionary d = load_dictionary(train_pairs, x, z).dictionary;
      return cfg.dict_size > 0 ? d.head(cfg.dict_size) : d;
    }
  }
  throw Error(ErrorCode::kInternal, "unhandled seed source");
}

double mean_mrr(const std::vector<RunRecord>& runs) {
  double sum = 0.0;
  for (const auto& r : runs) sum += r.bli.mrr;
  return runs.empty() ? 0.0 : sum / static_cast<double>(runs.size());
}

Outcome run_in_memory(const ModelConfig& cfg, const EmbeddingSpace& source,
                      const EmbeddingSpace& target, const std::vector<WordPair>& train_pairs,
                      const std::vector<WordPair>& test_pairs) {
  cfg.validate();
  if (test_pairs.empty()) throw Error(ErrorCode::kInvalidArgument, "test dictionary is empty");
  const auto start = Clock::now();

  Outcome outcome;
  ExperimentReport& report = outcome.report;
  report.config = cfg;

  if (cfg.c3 == Processing::kFullS1S4) {
    outcome.x = s1_normalize(source);
    outcome.z = s1_normalize(target);
  } else {
    outcome.x = length_normalize(source);
    outcome.z = length_normalize(target);
  }
  const EmbeddingSpace& x = outcome.x;
  const EmbeddingSpace& z = outcome.z;

  Dictionary seed;
  try {
    seed = build_seed(cfg, x, z, train_pairs);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerateSeed) throw;
    warn(e.what());
    report.degenerate_seed = true;
    report.unsuccessful = true;
    report.weak_unsuccessful = true;
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
      RunRecord rec;
      rec.restart = r;
      rec.rng_seed = cfg.seed + r;
      rec.degenerate_seed = true;
      report.runs.push_back(rec);
    }
    report.wall_clock_s = seconds_since(start);
    return outcome;
  }

  const auto variants = cfg.variants_to_run();
  struct Task {
    SelfLearningVariant variant;
    std::size_t restart;
  };
  std::vector<Task> tasks;
  for (auto v : variants) {
    for (std::size_t r = 0; r < cfg.restarts; ++r) tasks.push_back({v, r});
  }

  std::vector<RunOutput> outputs;
  outputs.reserve(tasks.size());
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  for (std::size_t begin = 0; begin < tasks.size(); begin += workers) {
    const std::size_t end = std::min(tasks.size(), begin + workers);
    std::vector<std::future<RunOutput>> pending;
    for (std::size_t t = begin; t < end; ++t) {
      pending.push_back(std::async(std::launch::async, run_once, std::cref(cfg),
                                   tasks[t].variant, tasks[t].restart, std::cref(x),
                                   std::cref(z), std::cref(seed), std::cref(test_pairs)));
    }
    for (auto& f : pending) outputs.push_back(f.get());
  }

  // Group by variant, keep the best mean (first variant wins ties).
  double best_mean = -1.0;
  std::size_t best_variant = 0;
  for (std::size_t v = 0; v < variants.size(); ++v) {
    std::vector<RunRecord> runs;
    for (std::size_t r = 0; r < cfg.restarts; ++r) runs.push_back(outputs[v * cfg.restarts + r].record);
    const double m = mean_mrr(runs);
    report.variant_mean_mrr[std::string(variant_name(variants[v]))] = m;
    if (m > best_mean) {
      best_mean = m;
      best_variant = v;
    }
  }
  report.selected_variant = std::string(variant_name(variants[best_variant]));
  report.unsuccessful = true;
  report.weak_unsuccessful = true;
  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    RunOutput& out = outputs[best_variant * cfg.restarts + r];
    report.unsuccessful = report.unsuccessful && out.record.bli.mrr <= kHardFailMrr;
    report.weak_unsuccessful = report.weak_unsuccessful && out.record.bli.mrr <= kWeakFailMrr;
    if (r == 0) outcome.model = out.model;
    report.runs.push_back(std::move(out.record));
  }
  report.mean_mrr = best_mean;
  report.wall_clock_s = seconds_since(start);
  return outcome;
}

}  // namespace

ExperimentReport run_experiment(const ModelConfig& cfg, const EmbeddingSpace& source,
                                const EmbeddingSpace& target,
                                const std::vector<WordPair>& train_pairs,
                                const std::vector<WordPair>& test_pairs) {
  return run_in_memory(cfg, source, target, train_pairs, test_pairs).report;
}

ExperimentReport run_experiment(const ModelConfig& cfg, const ExperimentPaths& paths) {
  cfg.validate();
  if (cfg.seed_source == SeedSource::kFile && cfg.train_dict_path.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(config_name(cfg.name)) + " needs a training dictionary");
  }
  const EmbeddingSpace source = load_embeddings_file(paths.source, cfg.hp.max_vocab).space;
  const EmbeddingSpace target = load_embeddings_file(paths.target, cfg.hp.max_vocab).space;
  std::vector<WordPair> train;
  if (cfg.seed_source == SeedSource::kFile) train = read_word_pairs_file(cfg.train_dict_path);
  const std::vector<WordPair> test = read_word_pairs_file(paths.test_dict);

  Outcome outcome = run_in_memory(cfg, source, target, train, test);
  outcome.report.source_language = paths.source_language;
  outcome.report.target_language = paths.target_language;

  if (!paths.out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(paths.out_dir, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot create output directory " + paths.out_dir);
    const std::filesystem::path dir(paths.out_dir);
    write_text_file((dir / "report.json").string(), to_json(outcome.report).dump(2) + "\n");
    if (paths.save_aligned && outcome.model) {
      Matrix xm = outcome.model->map_source(outcome.x.vectors());
      Matrix zm = outcome.model->map_target(outcome.z.vectors());
      normalize_rows(xm);
      normalize_rows(zm);
      save_embeddings_file(outcome.x.with_vectors(std::move(xm)), (dir / "src.aligned.vec").string());
      save_embeddings_file(outcome.z.with_vectors(std::move(zm)), (dir / "tgt.aligned.vec").string());
    }
  }
  return outcome.report;
}

nlohmann::json to_json(const ExperimentReport& report, bool with_timing) {
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& r : report.runs) {
    nlohmann::json j = {
        {"restart", r.restart},
        {"rng_seed", r.rng_seed},
        {"variant", r.variant},
        {"bli", to_json(r.bli)},
        {"seed_pairs", r.seed_pairs},
        {"iterations", r.iterations},
        {"best_iteration", r.best_iteration},
        {"final_dictionary_size", r.final_dictionary_size},
        {"collapsed", r.collapsed},
        {"degenerate_seed", r.degenerate_seed},
    };
    if (with_timing) j["wall_clock_s"] = r.wall_clock_s;
    runs.push_back(std::move(j));
  }
  nlohmann::json out = {
      {"config", to_json(report.config)},
      {"source_language", report.source_language},
      {"target_language", report.target_language},
      {"runs", std::move(runs)},
      {"mean_mrr", report.mean_mrr},
      {"success_class", success_class_name(classify_success(report.mean_mrr))},
      {"unsuccessful", report.unsuccessful},
      {"weak_unsuccessful", report.weak_unsuccessful},
      {"degenerate_seed", report.degenerate_seed},
      {"selected_variant", report.selected_variant},
      {"variant_mean_mrr", report.variant_mean_mrr},
  };
  if (with_timing) out["wall_clock_s"] = report.wall_clock_s;
  return out;
}

nlohmann::json strip_timing(nlohmann::json report) {
  report.erase("wall_clock_s");
  if (report.contains("runs")) {
    for (auto& r : report["runs"]) r.erase("wall_clock_s");
  }
  return report;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open output file: " + path);
  out << contents;
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write error on " + path);
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open report: " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kFormat, path + ": " + e.what());
  }
}

}  // namespace clwe
