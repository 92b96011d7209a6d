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
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "clwe/linalg.hpp"

namespace clwe {

/// A monolingual embedding space: a vocabulary in descending frequency order
/// and one row vector per word.
///
/// Rows are immutable after construction. The constructor enforces that words
/// are unique, that there is one row per word and that every entry is finite.
class EmbeddingSpace {
 public:
  EmbeddingSpace() = default;
  EmbeddingSpace(std::vector<std::string> words, Matrix vectors);

  std::size_t size() const noexcept { return words_.size(); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(vectors_.cols()); }
  bool empty() const noexcept { return words_.empty(); }

  const std::vector<std::string>& words() const noexcept { return words_; }
  const Matrix& vectors() const noexcept { return vectors_; }
  const std::string& word(std::size_t i) const { return words_.at(i); }

  /// Row index of `word`, or -1 when absent. Comparison is byte-exact.
  std::ptrdiff_t index_of(const std::string& word) const;
  bool contains(const std::string& word) const { return index_of(word) >= 0; }

  /// Same vocabulary, different vectors (e.g. after a transform).
  EmbeddingSpace with_vectors(Matrix vectors) const;

 private:
  std::vector<std::string> words_;
  Matrix vectors_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct LoadResult {
  EmbeddingSpace space;
  std::size_t skipped_rows = 0;    // wrong arity, non-numeric or non-finite
  std::size_t duplicate_rows = 0;  // repeated word; first occurrence kept
};

/// Reads the word2vec text format. Keeps the first `max_vocab` valid rows in
/// file order. Values are parsed at 32-bit precision.
LoadResult load_embeddings(std::istream& in, std::size_t max_vocab);
LoadResult load_embeddings_file(const std::string& path, std::size_t max_vocab);

/// First min(n, size) rows.
EmbeddingSpace frequency_cut(const EmbeddingSpace& space, std::size_t n);

/// Writes the word2vec text format with 6 significant digits per value.
void save_embeddings(const EmbeddingSpace& space, std::ostream& out);
void save_embeddings_file(const EmbeddingSpace& space, const std::string& path);

}  // namespace clwe
