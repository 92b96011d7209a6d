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
#include <istream>
#include <string>
#include <vector>

#include "clwe/dictionary.hpp"
#include "clwe/embedding_io.hpp"
#include "clwe/retrieval.hpp"

namespace clwe {

/// Number of most frequent words used to build similarity profiles.
inline constexpr std::size_t kDefaultSeedVocab = 4000;

/// Row-sorted sqrt similarity distributions of the top-m words.
struct SimilarityProfile {
  Matrix values;  // m x m, each row non-increasing
};

/// Builds the profile of the first m rows of an S1-normalized space:
/// M = X X^T, entries clamped at 0, element-wise square root, each row sorted
/// in descending order. m larger than the vocabulary is clamped with a warning.
SimilarityProfile similarity_profiles(const EmbeddingSpace& space, std::size_t m);

/// Unsupervised seed: mutual nearest neighbours (cosine) between the profile
/// rows of both spaces. Throws kDegenerateSeed when fewer than two mutual
/// pairs exist.
Dictionary induce_unsupervised_seed(const EmbeddingSpace& x, const EmbeddingSpace& z,
                                    std::size_t m = kDefaultSeedVocab);

struct DictionaryLoad {
  Dictionary dictionary;
  std::size_t oov_pairs = 0;  // lines with a word outside either vocabulary
};

/// Maps word pairs onto vocabulary indices, keeping file order. Throws when no
/// pair is in vocabulary.
DictionaryLoad load_dictionary(const std::vector<WordPair>& pairs, const EmbeddingSpace& x,
                               const EmbeddingSpace& z);
DictionaryLoad load_dictionary(std::istream& in, const EmbeddingSpace& x, const EmbeddingSpace& z);

/// All (i, j) whose words are byte-identical.
Dictionary identical_strings_seed(const EmbeddingSpace& x, const EmbeddingSpace& z);

}  // namespace clwe
