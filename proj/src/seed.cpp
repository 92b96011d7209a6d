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

#include "clwe/seed.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "clwe/error.hpp"

namespace clwe {

SimilarityProfile similarity_profiles(const EmbeddingSpace& space, std::size_t m) {
  if (m == 0) throw Error(ErrorCode::kInvalidArgument, "similarity profile size must be positive");
  if (m > space.size()) {
    warn("profile size " + std::to_string(m) + " exceeds vocabulary " +
         std::to_string(space.size()) + "; clamped");
    m = space.size();
  }
  const auto rows = static_cast<Eigen::Index>(m);
  const auto top = space.vectors().topRows(rows);
  SimilarityProfile profile;
  // Symmetric, so column j is also row j; sorting columns keeps access contiguous.
  profile.values = (top * top.transpose()).cwiseMax(0.0).cwiseSqrt();
  for (Eigen::Index j = 0; j < rows; ++j) {
    double* col = profile.values.col(j).data();
    std::sort(col, col + rows, std::greater<>());
  }
  profile.values.transposeInPlace();
  return profile;
}

Dictionary induce_unsupervised_seed(const EmbeddingSpace& x, const EmbeddingSpace& z,
                                    std::size_t m) {
  if (x.dim() != z.dim()) {
    throw Error(ErrorCode::kInvalidArgument, "seed induction: embedding dimensions differ");
  }
  const std::size_t size = std::min({m, x.size(), z.size()});
  if (size < m) {
    warn("seed vocabulary " + std::to_string(m) + " clamped to " + std::to_string(size));
  }
  Matrix px = similarity_profiles(x, size).values;
  Matrix pz = similarity_profiles(z, size).values;
  normalize_rows(px);
  normalize_rows(pz);

  const auto n = static_cast<Eigen::Index>(size);
  std::vector<Eigen::Index> row_best(size, 0);
  std::vector<Eigen::Index> col_best(size, 0);
  std::vector<double> col_max(size, -std::numeric_limits<double>::infinity());
  constexpr Eigen::Index kBlock = 512;
  Matrix block;
  for (Eigen::Index start = 0; start < n; start += kBlock) {
    const Eigen::Index len = std::min(kBlock, n - start);
    // Column i: cosine of source profile (start + i) against every target profile.
    block.noalias() = pz * px.middleRows(start, len).transpose();
    for (Eigen::Index i = 0; i < len; ++i) {
      const auto col = block.col(i);
      Eigen::Index best = 0;
      for (Eigen::Index t = 0; t < n; ++t) {
        const double s = col(t);
        if (s > col(best)) best = t;
        if (s > col_max[static_cast<std::size_t>(t)]) {
          col_max[static_cast<std::size_t>(t)] = s;
          col_best[static_cast<std::size_t>(t)] = start + i;
        }
      }
      row_best[static_cast<std::size_t>(start + i)] = best;
    }
  }

  std::vector<IndexPair> pairs;
  for (std::size_t i = 0; i < size; ++i) {
    const auto t = static_cast<std::size_t>(row_best[i]);
    if (static_cast<std::size_t>(col_best[t]) == i) pairs.push_back({i, t});
  }
  if (pairs.size() < 2) {
    throw Error(ErrorCode::kDegenerateSeed,
                "seed induction degenerate: " + std::to_string(pairs.size()) + " mutual pair(s)");
  }
  return Dictionary(x.size(), z.size(), std::move(pairs));
}

DictionaryLoad load_dictionary(const std::vector<WordPair>& word_pairs, const EmbeddingSpace& x,
                               const EmbeddingSpace& z) {
  DictionaryLoad out;
  std::vector<IndexPair> pairs;
  pairs.reserve(word_pairs.size());
  for (const auto& [src, tgt] : word_pairs) {
    const auto i = x.index_of(src);
    const auto j = z.index_of(tgt);
    if (i < 0 || j < 0) {
      ++out.oov_pairs;
      continue;
    }
    pairs.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
  }
  if (pairs.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "dictionary has no in-vocabulary pair");
  }
  if (out.oov_pairs > 0) {
    warn(std::to_string(out.oov_pairs) + " dictionary pair(s) out of vocabulary; skipped");
  }
  out.dictionary = Dictionary(x.size(), z.size(), std::move(pairs));
  return out;
}

DictionaryLoad load_dictionary(std::istream& in, const EmbeddingSpace& x, const EmbeddingSpace& z) {
  return load_dictionary(read_word_pairs(in), x, z);
}

Dictionary identical_strings_seed(const EmbeddingSpace& x, const EmbeddingSpace& z) {
  std::vector<IndexPair> pairs;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto j = z.index_of(x.word(i));
    if (j >= 0) pairs.push_back({i, static_cast<std::size_t>(j)});
  }
  if (pairs.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "identical-strings seed: vocabularies are disjoint");
  }
  return Dictionary(x.size(), z.size(), std::move(pairs));
}

}  // namespace clwe
