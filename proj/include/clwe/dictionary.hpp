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

#include <compare>
#include <cstddef>
#include <vector>

namespace clwe {

struct IndexPair {
  std::size_t src = 0;
  std::size_t tgt = 0;

  friend auto operator<=>(const IndexPair&, const IndexPair&) = default;
};

/// Translation pairs expressed as row indices into a source and a target
/// vocabulary. Pairs keep their insertion order; repeated pairs are dropped.
class Dictionary {
 public:
  Dictionary() = default;
  Dictionary(std::size_t src_size, std::size_t tgt_size, std::vector<IndexPair> pairs);

  std::size_t src_size() const noexcept { return src_size_; }
  std::size_t tgt_size() const noexcept { return tgt_size_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }
  const std::vector<IndexPair>& pairs() const noexcept { return pairs_; }

  std::vector<std::size_t> src_indices() const;
  std::vector<std::size_t> tgt_indices() const;

  /// True when no source and no target index occurs twice.
  bool is_partial_bijection() const;

  /// First min(n, size) pairs.
  Dictionary head(std::size_t n) const;

  /// Source and target roles swapped.
  Dictionary transposed() const;

  /// Pairs sorted by (src, tgt), for order-insensitive comparison.
  std::vector<IndexPair> sorted_pairs() const;

 private:
  std::size_t src_size_ = 0;
  std::size_t tgt_size_ = 0;
  std::vector<IndexPair> pairs_;
};

}  // namespace clwe
