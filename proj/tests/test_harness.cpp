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

#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"

#include "clwe/error.hpp"
#include "clwe/harness.hpp"
#include "oracles.hpp"

using clwe::ConfigName;
using clwe::Processing;
using clwe::SeedKind;
using clwe::SelfLearningVariant;
using clwe::Wiring;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("clwe_test_harness_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

nlohmann::json fake_report(const std::string& config, const std::string& lang, double mrr,
                           bool hard, bool weak) {
  return {{"config", {{"name", config}}},
          {"source_language", lang},
          {"mean_mrr", mrr},
          {"unsuccessful", hard},
          {"weak_unsuccessful", weak}};
}

}  // namespace

TEST_CASE("configuration wiring table") {
  using V = SelfLearningVariant;
  const std::vector<std::pair<ConfigName, Wiring>> expected = {
      {ConfigName::kUnsupervised, {SeedKind::kUnsupervised, V::kBestOfAll, Processing::kFullS1S4}},
      {ConfigName::kOrthgSuper, {SeedKind::kProvided, V::kNone, Processing::kLengthNormOnly}},
      {ConfigName::kOrthgSlSym, {SeedKind::kProvided, V::kSlSym, Processing::kLengthNormOnly}},
      {ConfigName::kFullSuper, {SeedKind::kProvided, V::kNone, Processing::kFullS1S4}},
      {ConfigName::kFullSl, {SeedKind::kProvided, V::kSl, Processing::kFullS1S4}},
      {ConfigName::kFullSlNod, {SeedKind::kProvided, V::kSlNod, Processing::kFullS1S4}},
      {ConfigName::kFullSlSym, {SeedKind::kProvided, V::kSlSym, Processing::kFullS1S4}},
  };
  for (const auto& [name, wiring] : expected) {
    CAPTURE(clwe::config_name(name));
    CHECK(clwe::wiring_for(name) == wiring);
    CHECK(clwe::parse_config_name(clwe::config_name(name)) == name);
  }
  CHECK_THROWS_AS(clwe::parse_config_name("full"), clwe::Error);
}

TEST_CASE("self-learning settings per variant") {
  const clwe::Hyperparameters hp;
  const auto sl = clwe::self_learn_config(SelfLearningVariant::kSl, Processing::kFullS1S4, hp, 4);
  CHECK(sl.induction_mode == clwe::InductionMode::kAllNn);
  CHECK(sl.dropout_keep == 0.1);
  CHECK(sl.rng_seed == 4);
  CHECK(sl.step_kind == clwe::StepKind::kFullS2S4);
  const auto nod =
      clwe::self_learn_config(SelfLearningVariant::kSlNod, Processing::kFullS1S4, hp, 0);
  CHECK(nod.induction_mode == clwe::InductionMode::kAllNn);
  CHECK(nod.dropout_keep == 1.0);
  const auto sym =
      clwe::self_learn_config(SelfLearningVariant::kSlSym, Processing::kLengthNormOnly, hp, 0);
  CHECK(sym.induction_mode == clwe::InductionMode::kMutualNn);
  CHECK(sym.dropout_keep == 1.0);
  CHECK(sym.step_kind == clwe::StepKind::kOrthogonalOnly);
}

TEST_CASE("unsupervised configuration defaults") {
  auto cfg = clwe::make_config(ConfigName::kUnsupervised);
  CHECK(cfg.restarts == 5);
  CHECK(cfg.seed_source == clwe::SeedSource::kUnsupervised);
  CHECK(cfg.variants_to_run() == std::vector<SelfLearningVariant>{SelfLearningVariant::kSl});
  cfg.select_best = true;
  CHECK(cfg.variants_to_run().size() == 3);
  const auto supervised = clwe::make_config(ConfigName::kFullSlSym, "train.dict");
  CHECK(supervised.restarts == 1);
  CHECK(supervised.seed_source == clwe::SeedSource::kFile);
  CHECK(clwe::make_config(ConfigName::kFullSlSym, "", true).seed_source ==
        clwe::SeedSource::kIdenticalStrings);
}

TEST_CASE("synthetic pair structure") {
  clwe::SyntheticOptions opts;
  opts.n = 200;
  opts.dim = 10;
  opts.overlap = 0.8;
  opts.seed = 5;
  const auto pair = clwe::generate_synthetic_pair(opts);
  CHECK(pair.source.size() == 200);
  CHECK(pair.target.size() == 160);
  CHECK(pair.gold.size() == 160);
  CHECK(pair.train.size() == 80);
  CHECK(pair.test.size() == 80);
  CHECK(pair.source.word(0) == "s000000");

  // Without noise the target is an isometric copy of the kept source rows.
  for (std::size_t a = 0; a < pair.gold.size(); a += 17) {
    for (std::size_t b = 0; b < pair.gold.size(); b += 23) {
      const auto xa = pair.source.index_of(pair.gold[a].first);
      const auto xb = pair.source.index_of(pair.gold[b].first);
      const auto za = pair.target.index_of(pair.gold[a].second);
      const auto zb = pair.target.index_of(pair.gold[b].second);
      REQUIRE(xa >= 0);
      REQUIRE(za >= 0);
      CHECK(pair.source.vectors().row(xa).dot(pair.source.vectors().row(xb)) ==
            doctest::Approx(pair.target.vectors().row(za).dot(pair.target.vectors().row(zb)))
                .epsilon(1e-10));
    }
  }

  const auto again = clwe::generate_synthetic_pair(opts);
  CHECK(again.target.vectors() == pair.target.vectors());
  CHECK(again.target.words() == pair.target.words());
}

TEST_CASE("synthetic pair files round trip") {
  clwe::SyntheticOptions opts;
  opts.n = 30;
  opts.dim = 4;
  const auto pair = clwe::generate_synthetic_pair(opts);
  const auto dir = scratch_dir("synth");
  clwe::write_synthetic_pair(pair, dir.string());
  for (const char* f : {"src.vec", "tgt.vec", "gold.dict", "train.dict", "test.dict"}) {
    CHECK(std::filesystem::exists(dir / f));
  }
  CHECK(clwe::read_word_pairs_file((dir / "test.dict").string()) == pair.test);
  const auto loaded = clwe::load_embeddings_file((dir / "src.vec").string(), 1000000);
  CHECK(loaded.space.words() == pair.source.words());
  CHECK((loaded.space.vectors() - pair.source.vectors()).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("full-super is exact on a noiseless rotated copy") {
  clwe::SyntheticOptions opts;
  opts.n = 300;
  opts.dim = 12;
  opts.seed = 9;
  const auto pair = clwe::generate_synthetic_pair(opts);
  const auto cfg = clwe::make_config(ConfigName::kFullSuper, "in-memory");
  const auto report = clwe::run_experiment(cfg, pair.source, pair.target, pair.train, pair.test);
  REQUIRE(report.runs.size() == 1);
  CHECK(report.runs[0].bli.mrr == 1.0);
  CHECK(report.mean_mrr == 1.0);
  CHECK_FALSE(report.unsuccessful);
  CHECK(report.selected_variant == "none");
}

TEST_CASE("a degenerate unsupervised seed is reported, not thrown") {
  const clwe::EmbeddingSpace x({"a"}, clwe::Matrix::Ones(1, 3));
  const clwe::EmbeddingSpace z({"b"}, clwe::Matrix::Ones(1, 3));
  auto cfg = clwe::make_config(ConfigName::kUnsupervised);
  const auto report = clwe::run_experiment(cfg, x, z, {}, {{"a", "b"}});
  CHECK(report.degenerate_seed);
  CHECK(report.unsuccessful);
  CHECK(report.weak_unsuccessful);
  CHECK(report.runs.size() == 5);
  CHECK(report.mean_mrr == 0.0);
}

TEST_CASE("supervised runs need training pairs in the vocabulary") {
  clwe::SyntheticOptions opts;
  opts.n = 20;
  opts.dim = 4;
  const auto pair = clwe::generate_synthetic_pair(opts);
  const auto cfg = clwe::make_config(ConfigName::kFullSuper, "in-memory");
  CHECK_THROWS_AS(clwe::run_experiment(cfg, pair.source, pair.target, {{"x", "y"}}, pair.test),
                  clwe::Error);
  CHECK_THROWS_AS(clwe::run_experiment(cfg, pair.source, pair.target, pair.train, {}),
                  clwe::Error);
}

TEST_CASE("file-based runs write a deterministic report") {
  clwe::SyntheticOptions opts;
  opts.n = 120;
  opts.dim = 8;
  opts.noise_sigma = 0.01;
  opts.seed = 2;
  const auto pair = clwe::generate_synthetic_pair(opts);
  const auto dir = scratch_dir("run");
  clwe::write_synthetic_pair(pair, (dir / "data").string());

  auto cfg = clwe::make_config(ConfigName::kFullSl, (dir / "data" / "train.dict").string());
  cfg.hp.max_iters = 30;
  cfg.hp.patience = 3;
  cfg.seed = 11;
  clwe::ExperimentPaths paths;
  paths.source = (dir / "data" / "src.vec").string();
  paths.target = (dir / "data" / "tgt.vec").string();
  paths.test_dict = (dir / "data" / "test.dict").string();
  paths.out_dir = (dir / "out").string();
  paths.save_aligned = true;
  paths.source_language = "xx";

  const auto a = clwe::run_experiment(cfg, paths);
  const auto a_json = clwe::read_json_file((dir / "out" / "report.json").string());
  CHECK(std::filesystem::exists(dir / "out" / "src.aligned.vec"));
  CHECK(std::filesystem::exists(dir / "out" / "tgt.aligned.vec"));
  CHECK(a_json.contains("wall_clock_s"));
  CHECK(a_json["source_language"] == "xx");
  CHECK(a_json["runs"][0]["rng_seed"] == 11);

  const auto b = clwe::run_experiment(cfg, paths);
  CHECK(clwe::strip_timing(clwe::to_json(a)) == clwe::strip_timing(clwe::to_json(b)));
  CHECK(clwe::to_json(a, false) == clwe::strip_timing(clwe::to_json(a)));
  CHECK_FALSE(clwe::strip_timing(a_json).contains("wall_clock_s"));
  CHECK_FALSE(clwe::strip_timing(a_json)["runs"][0].contains("wall_clock_s"));

  paths.test_dict = (dir / "missing.dict").string();
  try {
    clwe::run_experiment(cfg, paths);
    FAIL("expected an I/O error");
  } catch (const clwe::Error& e) {
    CHECK(e.code() == clwe::ErrorCode::kIo);
  }
}

TEST_CASE("aggregating a single report is the identity") {
  const auto rows = clwe::aggregate_reports({fake_report("full+sl+sym", "de", 0.42, false, false)},
                                            clwe::GroupBy::kSourceLanguage);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].group == "de");
  CHECK(rows[0].n_reports == 1);
  CHECK(rows[0].mean_mrr == 0.42);
  CHECK(rows[0].unsuccessful_hard == 0);
  CHECK(rows[0].unsuccessful_weak == 0);
}

TEST_CASE("aggregation groups and counts both thresholds") {
  std::vector<nlohmann::json> reports;
  for (int i = 0; i < 14; ++i) {
    const bool hard = i < 3;
    const bool weak = i < 5;
    reports.push_back(fake_report("unsupervised", "lang" + std::to_string(i), hard ? 0.0 : 0.3,
                                  hard, weak));
  }
  const auto by_config = clwe::aggregate_reports(reports, clwe::GroupBy::kConfig);
  REQUIRE(by_config.size() == 1);
  CHECK(by_config[0].n_reports == 14);
  CHECK(by_config[0].unsuccessful_hard == 3);
  CHECK(by_config[0].unsuccessful_weak == 5);
  CHECK(by_config[0].mean_mrr == doctest::Approx(0.3 * 11 / 14));

  const auto by_lang = clwe::aggregate_reports(reports, clwe::GroupBy::kSourceLanguage);
  CHECK(by_lang.size() == 14);

  const auto tsv = clwe::aggregate_tsv(by_config);
  CHECK(tsv.rfind("group\tn_reports\tmean_mrr\tunsuccessful_mrr_le_0.01\tunsuccessful_mrr_le_0.05\n",
                  0) == 0);
  CHECK(tsv.find("unsupervised\t14\t") != std::string::npos);
  CHECK(clwe::aggregate_json(by_config).size() == 1);
}

TEST_CASE("aggregation errors") {
  CHECK_THROWS_AS(clwe::aggregate_reports({}, clwe::GroupBy::kConfig), clwe::Error);
  CHECK_THROWS_AS(clwe::aggregate_reports({nlohmann::json{{"mean_mrr", 1}}}, clwe::GroupBy::kConfig),
                  clwe::Error);
  CHECK(clwe::parse_group_by("language") == clwe::GroupBy::kSourceLanguage);
  CHECK_THROWS_AS(clwe::parse_group_by("size"), clwe::Error);
  nlohmann::json unlabeled = fake_report("full-super", "", 0.5, false, false);
  CHECK(clwe::aggregate_reports({unlabeled}, clwe::GroupBy::kSourceLanguage)[0].group == "unknown");
}
