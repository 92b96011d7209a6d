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

#include "clwe/dictionary.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <unordered_set>

#include "clwe/error.hpp"

namespace clwe {

Dictionary::Dictionary(std::size_t src_size, std::size_t tgt_size, std::vector<IndexPair> pairs)
    : src_size_(src_size), tgt_size_(tgt_size) {
  std::set<IndexPair> seen;
  pairs_.reserve(pairs.size());
  for (const auto& p : pairs) {
    if (p.src >= src_size || p.tgt >= tgt_size) {
      throw Error(ErrorCode::kInvalidArgument,
                  "dictionary pair (" + std::to_string(p.src) + ", " + std::to_string(p.tgt) +
                      ") out of range");
    }
    if (seen.insert(p).second) pairs_.push_back(p);
  }
}

std::vector<std::size_t> Dictionary::src_indices() const {
  std::vector<std::size_t> out;
  out.reserve(pairs_.size());
  for (const auto& p : pairs_) out.push_back(p.src);
  return out;
}

std::vector<std::size_t> Dictionary::tgt_indices() const {
  std::vector<std::size_t> out;
  out.reserve(pairs_.size());
  for (const auto& p : pairs_) out.push_back(p.tgt);
  return out;
}

bool Dictionary::is_partial_bijection() const {
  std::unordered_set<std::size_t> src, tgt;
  for (const auto& p : pairs_) {
    if (!src.insert(p.src).second || !tgt.insert(p.tgt).second) return false;
  }
  return true;
}

Dictionary Dictionary::head(std::size_t n) const {
  Dictionary out;
  out.src_size_ = src_size_;
  out.tgt_size_ = tgt_size_;
  out.pairs_.assign(pairs_.begin(), pairs_.begin() + static_cast<std::ptrdiff_t>(std::min(n, pairs_.size())));
  return out;
}

Dictionary Dictionary::transposed() const {
  Dictionary out;
  out.src_size_ = tgt_size_;
  out.tgt_size_ = src_size_;
  out.pairs_.reserve(pairs_.size());
  for (const auto& p : pairs_) out.pairs_.push_back({p.tgt, p.src});
  return out;
}

std::vector<IndexPair> Dictionary::sorted_pairs() const {
  auto out = pairs_;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace clwe
