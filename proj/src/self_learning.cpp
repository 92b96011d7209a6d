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

#include "clwe/self_learning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "clwe/error.hpp"
#include "clwe/linalg.hpp"

namespace clwe {

const char* induction_mode_name(InductionMode m) {
  return m == InductionMode::kAllNn ? "all_nn" : "mutual_nn";
}

const char* step_kind_name(StepKind s) {
  return s == StepKind::kOrthogonalOnly ? "orthogonal_only" : "full_s2_s4";
}

void SelfLearnConfig::validate() const {
  if (!(dropout_keep > 0.0 && dropout_keep <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dropout keep probability must be in (0, 1]");
  }
  if (vocab_cut < 2) throw Error(ErrorCode::kInvalidArgument, "vocab_cut must be at least 2");
  if (max_iters == 0) throw Error(ErrorCode::kInvalidArgument, "max_iters must be positive");
  if (!(convergence_tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "convergence tolerance must be positive");
  }
  if (csls_k == 0) throw Error(ErrorCode::kInvalidArgument, "csls_k must be positive");
  if (patience == 0) throw Error(ErrorCode::kInvalidArgument, "patience must be positive");
}

InducedDictionary induce_dictionary(const Matrix& x_mapped, const Matrix& z_mapped,
                                    InductionMode mode, double keep, std::mt19937_64& rng,
                                    RetrievalMethod scoring, std::size_t csls_k) {
  if (!(keep > 0.0 && keep <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dropout keep probability must be in (0, 1]");
  }
  const Eigen::Index ns = x_mapped.rows();
  const Eigen::Index nt = z_mapped.rows();
  if (ns == 0 || nt == 0) throw Error(ErrorCode::kInvalidArgument, "induction: empty space");

  Vector r_s, r_t;
  if (scoring == RetrievalMethod::kCsls) {
    r_s = knn_mean_similarity(z_mapped, x_mapped, csls_k);
    r_t = knn_mean_similarity(x_mapped, z_mapped, csls_k);
  }

  // One draw per call; the mask of entry (i, t) is a hash of (salt, i, t) so
  // blocks can be processed in any order.
  const bool dropout = keep < 1.0;
  const std::uint64_t salt = dropout ? rng() : 0;
  const auto kept = [&](Eigen::Index i, Eigen::Index t) {
    const std::uint64_t cell =
        static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(nt) + static_cast<std::uint64_t>(t);
    return unit_interval(mix64(salt ^ mix64(cell))) < keep;
  };

  std::vector<Eigen::Index> row_best(static_cast<std::size_t>(ns), -1);
  std::vector<Eigen::Index> col_best(static_cast<std::size_t>(nt), -1);
  std::vector<double> col_max(static_cast<std::size_t>(nt), -std::numeric_limits<double>::infinity());

  constexpr Eigen::Index kBlock = 512;
  Matrix block;
  for (Eigen::Index start = 0; start < ns; start += kBlock) {
    const Eigen::Index len = std::min(kBlock, ns - start);
    block.noalias() = z_mapped * x_mapped.middleRows(start, len).transpose();
    if (scoring == RetrievalMethod::kCsls) {
      block *= 2.0;
      block.colwise() -= r_s;
      block.rowwise() -= r_t.segment(start, len).transpose();
    }
    for (Eigen::Index j = 0; j < len; ++j) {
      const Eigen::Index i = start + j;
      double* col = block.col(j).data();
      double best_score = -std::numeric_limits<double>::infinity();
      Eigen::Index best = -1;
      for (Eigen::Index t = 0; t < nt; ++t) {
        double s = col[t];
        if (dropout && !kept(i, t)) s = 0.0;
        if (s > best_score) {
          best_score = s;
          best = t;
        }
        auto& cm = col_max[static_cast<std::size_t>(t)];
        if (s > cm) {
          cm = s;
          col_best[static_cast<std::size_t>(t)] = i;
        }
      }
      row_best[static_cast<std::size_t>(i)] = best;
    }
  }

  std::vector<IndexPair> pairs;
  double cosine_sum = 0.0;
  for (Eigen::Index i = 0; i < ns; ++i) {
    const Eigen::Index t = row_best[static_cast<std::size_t>(i)];
    if (t < 0) continue;
    if (mode == InductionMode::kMutualNn && col_best[static_cast<std::size_t>(t)] != i) continue;
    pairs.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(t)});
    cosine_sum += x_mapped.row(i).dot(z_mapped.row(t));
  }
  InducedDictionary out;
  out.objective = pairs.empty() ? 0.0 : cosine_sum / static_cast<double>(pairs.size());
  out.dictionary = Dictionary(static_cast<std::size_t>(ns), static_cast<std::size_t>(nt),
                              std::move(pairs));
  return out;
}

ProjectionModel projection_step(const Matrix& x, const Matrix& z, const Dictionary& dict,
                                StepKind kind) {
  return kind == StepKind::kOrthogonalOnly ? solve_orthogonal(x, z, dict)
                                           : full_projection_step(x, z, dict);
}

SelfLearnResult self_learn(const EmbeddingSpace& x, const EmbeddingSpace& z,
                           const Dictionary& seed, const SelfLearnConfig& cfg) {
  cfg.validate();
  if (seed.empty()) throw Error(ErrorCode::kInvalidArgument, "self-learning: empty seed dictionary");

  const auto cut_x = static_cast<Eigen::Index>(std::min(cfg.vocab_cut, x.size()));
  const auto cut_z = static_cast<Eigen::Index>(std::min(cfg.vocab_cut, z.size()));
  const Matrix& xs = x.vectors();
  const Matrix& zs = z.vectors();

  std::mt19937_64 rng(cfg.rng_seed);
  SelfLearnResult result;
  double keep = cfg.dropout_keep;
  double best = -std::numeric_limits<double>::infinity();
  std::size_t last_improvement = 0;
  bool have_best = false;
  bool have_fallback = false;  // a warm-up iterate is stored in result

  // Induced dictionaries index the cut vocabularies, which are prefixes of
  // the full ones, so they stay valid for the full-space solve.
  Dictionary dict = seed;
  for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
    ProjectionModel model = projection_step(xs, zs, dict, cfg.step_kind);
    // Whitening is ill-posed while the dictionary does not span every
    // dimension: the whitened cross-covariance then fits any pairing exactly.
    // Such iterations fall back to the orthogonal step to grow the dictionary
    // and are treated as warm-up.
    const bool warm_up = !model.full_rank();
    if (warm_up) model = projection_step(xs, zs, dict, StepKind::kOrthogonalOnly);

    Matrix xm = xs.topRows(cut_x) * model.source_map;
    Matrix zm = zs.topRows(cut_z) * model.target_map;
    normalize_rows(xm);
    normalize_rows(zm);
    InducedDictionary induced =
        induce_dictionary(xm, zm, cfg.induction_mode, keep, rng, cfg.scoring, cfg.csls_k);

    if (induced.dictionary.empty()) {
      result.collapsed = true;
      if (!have_best && !have_fallback) {
        result.model = std::move(model);
        result.dictionary = dict;
        result.best_iteration = it;
      }
      result.trace.records.push_back({0.0, have_best ? best : 0.0, 0, keep, warm_up});
      break;
    }

    // Warm-up objectives come from a different kind of map and are not
    // comparable with later ones; such iterates only grow the dictionary and
    // are kept as a fallback result.
    if (warm_up) {
      if (!have_best) {
        result.model = std::move(model);
        result.dictionary = Dictionary(x.size(), z.size(), induced.dictionary.pairs());
        result.best_iteration = it;
        have_fallback = true;
      }
      result.trace.records.push_back(
          {induced.objective, have_best ? best : 0.0, induced.dictionary.size(), keep, true});
      last_improvement = it;
      dict = Dictionary(x.size(), z.size(), induced.dictionary.pairs());
      continue;
    }

    if (!have_best || induced.objective - best >= cfg.convergence_tol) {
      best = induced.objective;
      result.model = std::move(model);
      result.dictionary = Dictionary(x.size(), z.size(), induced.dictionary.pairs());
      result.best_iteration = it;
      last_improvement = it;
      have_best = true;
    }
    result.trace.records.push_back({induced.objective, best, induced.dictionary.size(), keep, false});

    const std::size_t window = keep < 1.0 ? cfg.patience : 1;
    if (it - last_improvement >= window) {
      if (keep >= 1.0) break;
      keep = std::min(1.0, 2.0 * keep);
      last_improvement = it;
    }
    dict = Dictionary(x.size(), z.size(), induced.dictionary.pairs());
  }
  result.final_keep = keep;
  if (result.collapsed) warn("self-learning collapsed: empty induced dictionary");
  return result;
}

}  // namespace clwe
