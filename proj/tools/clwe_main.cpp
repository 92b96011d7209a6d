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

// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "clwe/clwe.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUnsuccessful = 2;

int exit_code_for(clwe_status status) {
  if (status == CLWE_OK) return kExitOk;
  if (status == CLWE_ERROR_DEGENERATE_SEED || status == CLWE_ERROR_COLLAPSED) {
    return kExitUnsuccessful;
  }
  return kExitIo;
}

int fail(clwe_status status) {
  std::cerr << "clwe: " << clwe_status_name(status) << ": " << clwe_last_error() << '\n';
  return exit_code_for(status);
}

struct RunArgs {
  std::string config = "full+sl+sym";
  std::string src, tgt, train_dict, test_dict, out;
  std::string src_lang, tgt_lang;
  std::string retrieval = "csls";
  std::size_t dict_size = 0;
  std::size_t restarts = 0;
  std::uint64_t seed = 0;
  bool select_best = false;
  bool identical_seed = false;
  bool save_aligned = false;
  bool no_timing = false;
  clwe_experiment_options opts{};
};

int run_command(RunArgs& a) {
  clwe_experiment_options& o = a.opts;
  o.config = a.config.c_str();
  o.source_path = a.src.c_str();
  o.target_path = a.tgt.c_str();
  o.train_dict_path = a.train_dict.empty() ? nullptr : a.train_dict.c_str();
  o.test_dict_path = a.test_dict.c_str();
  o.out_dir = a.out.empty() ? nullptr : a.out.c_str();
  o.source_language = a.src_lang.c_str();
  o.target_language = a.tgt_lang.c_str();
  o.dict_size = a.dict_size;
  o.identical_seed = a.identical_seed;
  o.restarts = a.restarts;
  o.select_best = a.select_best;
  o.seed = a.seed;
  o.retrieval = a.retrieval == "nn" ? CLWE_RETRIEVAL_NN : CLWE_RETRIEVAL_CSLS;
  o.save_aligned = a.save_aligned;
  o.include_timing = !a.no_timing;

  char* report = nullptr;
  int unsuccessful = 0;
  const clwe_status status = clwe_experiment_run(&o, &report, &unsuccessful);
  if (status != CLWE_OK) return fail(status);
  if (a.out.empty()) std::cout << report << '\n';
  clwe_string_free(report);
  if (unsuccessful) {
    std::cerr << "clwe: run unsuccessful (MRR <= 0.01 in every restart)\n";
    return kExitUnsuccessful;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-lingual word embedding alignment and BLI evaluation"};
  app.require_subcommand(1);

  RunArgs run;
  clwe_experiment_options_init(&run.opts);
  auto* cmd_run = app.add_subcommand("run", "Align two spaces with a named configuration and evaluate");
  cmd_run->add_option("--config", run.config, "Configuration name")
      ->check(CLI::IsMember({"unsupervised", "orthg-super", "orthg+sl+sym", "full-super",
                             "full+sl", "full+sl+nod", "full+sl+sym"}))
      ->envname("CLWE_CONFIG");
  cmd_run->add_option("--src", run.src, "Source embeddings (word2vec text)")->required();
  cmd_run->add_option("--tgt", run.tgt, "Target embeddings (word2vec text)")->required();
  cmd_run->add_option("--train-dict", run.train_dict, "Training dictionary");
  cmd_run->add_option("--test-dict", run.test_dict, "Test dictionary")->required();
  cmd_run->add_option("--dict-size", run.dict_size, "Use the first N training pairs (0: all)")
      ->envname("CLWE_DICT_SIZE");
  cmd_run->add_flag("--identical-seed", run.identical_seed, "Seed with identically spelled words");
  cmd_run->add_option("--seed", run.seed, "Random seed")->envname("CLWE_SEED");
  cmd_run->add_option("--restarts", run.restarts, "Restarts (0: configuration default)")
      ->envname("CLWE_RESTARTS");
  cmd_run->add_flag("--select-best", run.select_best,
                    "Unsupervised: run sl, sl+nod and sl+sym and keep the best");
  cmd_run->add_option("--retrieval", run.retrieval, "Retrieval method")
      ->check(CLI::IsMember({"nn", "csls"}))
      ->envname("CLWE_RETRIEVAL");
  cmd_run->add_option("--csls-k", run.opts.csls_k, "CSLS neighbourhood size")
      ->envname("CLWE_CSLS_K");
  cmd_run->add_option("--max-vocab", run.opts.max_vocab, "Rows kept when loading")
      ->envname("CLWE_MAX_VOCAB");
  cmd_run->add_option("--seed-vocab", run.opts.seed_vocab, "Words used for unsupervised seeding")
      ->envname("CLWE_SEED_VOCAB");
  cmd_run->add_option("--vocab-cut", run.opts.vocab_cut, "Words used for dictionary induction")
      ->envname("CLWE_VOCAB_CUT");
  cmd_run->add_option("--keep-prob", run.opts.keep_probability, "Initial dropout keep probability")
      ->envname("CLWE_KEEP_PROB");
  cmd_run->add_option("--max-iters", run.opts.max_iters, "Self-learning iteration limit")
      ->envname("CLWE_MAX_ITERS");
  cmd_run->add_option("--src-lang", run.src_lang, "Source language label");
  cmd_run->add_option("--tgt-lang", run.tgt_lang, "Target language label");
  cmd_run->add_option("--out", run.out, "Output directory for report.json");
  cmd_run->add_flag("--save-aligned", run.save_aligned, "Also write the mapped spaces");
  cmd_run->add_flag("--no-timing", run.no_timing, "Omit wall-clock fields from the report");

  std::size_t n = 1000, dim = 50;
  double noise = 0.0, overlap = 1.0;
  std::uint64_t synth_seed = 0;
  std::string synth_out;
  auto* cmd_synth = app.add_subcommand("synth", "Generate a synthetic source/target pair");
  cmd_synth->add_option("--n", n, "Source vocabulary size")->check(CLI::Range(10, 100000000));
  cmd_synth->add_option("--dim", dim, "Dimensionality")->check(CLI::Range(2, 100000));
  cmd_synth->add_option("--noise", noise, "Gaussian noise sigma on the target side");
  cmd_synth->add_option("--overlap", overlap, "Fraction of source rows kept on the target side");
  cmd_synth->add_option("--seed", synth_seed, "Random seed");
  cmd_synth->add_option("--out", synth_out, "Output directory")->required();

  std::vector<std::string> reports;
  std::string group_by = "source_language";
  std::string tsv_out, json_out;
  auto* cmd_agg = app.add_subcommand("aggregate", "Average report.json files per group");
  cmd_agg->add_option("reports", reports, "report.json files")->required();
  cmd_agg->add_option("--group-by", group_by, "Grouping key")
      ->check(CLI::IsMember({"source_language", "config"}));
  cmd_agg->add_option("--tsv", tsv_out, "Write the TSV table here instead of stdout");
  cmd_agg->add_option("--json", json_out, "Also write the table as JSON");

  std::string wiring_name;
  auto* cmd_wiring = app.add_subcommand("wiring", "Print the component wiring of a configuration");
  cmd_wiring->add_option("config", wiring_name, "Configuration name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitIo;
  }

  if (*cmd_run) return run_command(run);

  if (*cmd_synth) {
    const clwe_status s = clwe_synthetic_generate(n, dim, noise, overlap, synth_seed, synth_out.c_str());
    return s == CLWE_OK ? kExitOk : fail(s);
  }

  if (*cmd_agg) {
    std::vector<const char*> paths;
    for (const auto& r : reports) paths.push_back(r.c_str());
    char* tsv = nullptr;
    char* json = nullptr;
    const clwe_status s = clwe_aggregate(paths.data(), paths.size(), group_by.c_str(), &tsv,
                                         json_out.empty() ? nullptr : &json);
    if (s != CLWE_OK) return fail(s);
    int code = kExitOk;
    const auto write = [&](const std::string& path, const char* text) {
      if (std::FILE* f = std::fopen(path.c_str(), "w")) {
        std::fputs(text, f);
        if (std::fclose(f) != 0) code = kExitIo;
      } else {
        std::cerr << "clwe: cannot write " << path << '\n';
        code = kExitIo;
      }
    };
    if (tsv_out.empty()) {
      std::cout << tsv;
    } else {
      write(tsv_out, tsv);
    }
    if (json) write(json_out, json);
    clwe_string_free(tsv);
    clwe_string_free(json);
    return code;
  }

  if (*cmd_wiring) {
    char* json = nullptr;
    const clwe_status s = clwe_config_wiring(wiring_name.c_str(), &json);
    if (s != CLWE_OK) return fail(s);
    std::cout << json << '\n';
    clwe_string_free(json);
  }
  return kExitOk;
}
