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

#include "clwe/embedding_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string_view>

#include "clwe/error.hpp"

namespace clwe {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

EmbeddingSpace::EmbeddingSpace(std::vector<std::string> words, Matrix vectors)
    : words_(std::move(words)), vectors_(std::move(vectors)) {
  if (static_cast<Eigen::Index>(words_.size()) != vectors_.rows()) {
    throw Error(ErrorCode::kInvalidArgument,
                "embedding space: word count does not match row count");
  }
  if (!vectors_.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "embedding space: non-finite vector entry");
  }
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (!index_.emplace(words_[i], i).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "embedding space: duplicate word '" + words_[i] + "'");
    }
  }
}

std::ptrdiff_t EmbeddingSpace::index_of(const std::string& word) const {
  auto it = index_.find(word);
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

EmbeddingSpace EmbeddingSpace::with_vectors(Matrix vectors) const {
  return EmbeddingSpace(words_, std::move(vectors));
}

LoadResult load_embeddings(std::istream& in, std::size_t max_vocab) {
  if (max_vocab == 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_vocab must be positive");
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kFormat, "embedding file is empty");
  }
  const auto header = split_fields(line);
  std::size_t declared_rows = 0;
  std::size_t dim = 0;
  if (header.size() != 2 || !parse_number(header[0], declared_rows) ||
      !parse_number(header[1], dim) || dim == 0) {
    throw Error(ErrorCode::kFormat, "malformed embedding header: '" + line + "'");
  }

  const std::size_t capacity = std::min(declared_rows, max_vocab);
  std::vector<std::string> words;
  words.reserve(capacity);
  std::vector<float> values;
  values.reserve(capacity * dim);
  std::unordered_map<std::string, std::size_t> seen;
  seen.reserve(capacity);

  LoadResult result;
  std::vector<float> row(dim);
  while (words.size() < max_vocab && std::getline(in, line)) {
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    bool ok = fields.size() == dim + 1;
    for (std::size_t j = 0; ok && j < dim; ++j) {
      ok = parse_number(fields[j + 1], row[j]) && std::isfinite(row[j]);
    }
    if (!ok) {
      ++result.skipped_rows;
      continue;
    }
    std::string word(fields[0]);
    if (!seen.emplace(word, words.size()).second) {
      ++result.duplicate_rows;
      continue;
    }
    words.push_back(std::move(word));
    values.insert(values.end(), row.begin(), row.end());
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read error while loading embeddings");
  if (words.empty()) throw Error(ErrorCode::kFormat, "embedding file has no valid rows");

  using RowMajorF = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajorF> raw(values.data(), static_cast<Eigen::Index>(words.size()),
                                        static_cast<Eigen::Index>(dim));
  result.space = EmbeddingSpace(std::move(words), raw.cast<double>());
  if (result.skipped_rows > 0) {
    warn("skipped " + std::to_string(result.skipped_rows) + " malformed embedding row(s)");
  }
  if (result.duplicate_rows > 0) {
    warn("ignored " + std::to_string(result.duplicate_rows) + " duplicate embedding word(s)");
  }
  return result;
}

LoadResult load_embeddings_file(const std::string& path, std::size_t max_vocab) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open embedding file: " + path);
  return load_embeddings(in, max_vocab);
}

EmbeddingSpace frequency_cut(const EmbeddingSpace& space, std::size_t n) {
  if (n >= space.size()) return space;
  std::vector<std::string> words(space.words().begin(),
                                 space.words().begin() + static_cast<std::ptrdiff_t>(n));
  return EmbeddingSpace(std::move(words), space.vectors().topRows(static_cast<Eigen::Index>(n)));
}

void save_embeddings(const EmbeddingSpace& space, std::ostream& out) {
  for (const auto& w : space.words()) {
    if (w.empty() || std::any_of(w.begin(), w.end(), is_space)) {
      throw Error(ErrorCode::kFormat,
                  "word '" + w + "' cannot be written: empty or contains whitespace");
    }
  }
  out << space.size() << ' ' << space.dim() << '\n';
  char buf[32];
  const Matrix& v = space.vectors();
  for (std::size_t i = 0; i < space.size(); ++i) {
    out << space.words()[i];
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
      const int len = std::snprintf(buf, sizeof buf, " %.6g", v(static_cast<Eigen::Index>(i), j));
      out.write(buf, len);
    }
    out << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, "write error while saving embeddings");
}

void save_embeddings_file(const EmbeddingSpace& space, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot open output file: " + path);
  save_embeddings(space, out);
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write error on " + path);
}

}  // namespace clwe
