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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <random>
#include <sstream>

#include "clwe/error.hpp"
#include "clwe/harness.hpp"

namespace clwe {
namespace {

std::string make_word(char prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%06zu", prefix, i);
  return buf;
}

Matrix random_orthogonal(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) g(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

std::string pairs_text(const std::vector<WordPair>& pairs) {
  std::string out;
  for (const auto& [s, t] : pairs) {
    out += s;
    out += '\t';
    out += t;
    out += '\n';
  }
  return out;
}

}  // namespace

SyntheticPair generate_synthetic_pair(const SyntheticOptions& opts) {
  if (opts.n < 10) throw Error(ErrorCode::kInvalidArgument, "synthetic pair needs n >= 10");
  if (opts.dim < 2) throw Error(ErrorCode::kInvalidArgument, "synthetic pair needs dim >= 2");
  if (!(opts.noise_sigma >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "noise sigma must be non-negative");
  }
  if (!(opts.overlap > 0.0 && opts.overlap <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "overlap must be in (0, 1]");
  }
  const auto n = static_cast<Eigen::Index>(opts.n);
  const auto d = static_cast<Eigen::Index>(opts.dim);
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  // Per-dimension scale 1/sqrt(j+1), normalized to unit expected row norm.
  Vector scale(d);
  for (Eigen::Index j = 0; j < d; ++j) scale(j) = 1.0 / std::sqrt(static_cast<double>(j + 1));
  scale /= scale.norm();

  Matrix x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = normal(rng) * scale(j);
  }
  const Matrix rotation = random_orthogonal(d, rng);

  // Keep a random subset of source rows on the target side.
  const auto kept_count = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::llround(opts.overlap * static_cast<double>(opts.n))));
  std::vector<std::size_t> kept(opts.n);
  std::iota(kept.begin(), kept.end(), 0);
  if (kept_count < opts.n) {
    std::shuffle(kept.begin(), kept.end(), rng);
    kept.resize(kept_count);
    std::sort(kept.begin(), kept.end());
  }

  // Local shuffle: frequency ranks stay correlated without being identical.
  std::vector<std::pair<double, std::size_t>> keyed;
  keyed.reserve(kept.size());
  for (std::size_t pos = 0; pos < kept.size(); ++pos) {
    keyed.emplace_back(static_cast<double>(pos) + 8.0 * uniform(rng), kept[pos]);
  }
  std::sort(keyed.begin(), keyed.end());

  Matrix z(static_cast<Eigen::Index>(keyed.size()), d);
  std::vector<std::string> tgt_words;
  tgt_words.reserve(keyed.size());
  for (std::size_t r = 0; r < keyed.size(); ++r) {
    const auto src = static_cast<Eigen::Index>(keyed[r].second);
    z.row(static_cast<Eigen::Index>(r)) = x.row(src) * rotation;
    tgt_words.push_back(make_word('t', keyed[r].second));
  }
  if (opts.noise_sigma > 0.0) {
    for (Eigen::Index i = 0; i < z.rows(); ++i) {
      for (Eigen::Index j = 0; j < d; ++j) z(i, j) += opts.noise_sigma * normal(rng);
    }
  }

  std::vector<std::string> src_words;
  src_words.reserve(opts.n);
  for (std::size_t i = 0; i < opts.n; ++i) src_words.push_back(make_word('s', i));

  SyntheticPair out{EmbeddingSpace(std::move(src_words), std::move(x)),
                    EmbeddingSpace(std::move(tgt_words), std::move(z)),
                    {},
                    {},
                    {}};
  for (std::size_t i : kept) out.gold.emplace_back(make_word('s', i), make_word('t', i));
  const std::size_t half = (out.gold.size() + 1) / 2;
  out.train.assign(out.gold.begin(), out.gold.begin() + static_cast<std::ptrdiff_t>(half));
  out.test.assign(out.gold.begin() + static_cast<std::ptrdiff_t>(half), out.gold.end());
  return out;
}

void write_synthetic_pair(const SyntheticPair& pair, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create output directory " + out_dir);
  const std::filesystem::path dir(out_dir);
  save_embeddings_file(pair.source, (dir / "src.vec").string());
  save_embeddings_file(pair.target, (dir / "tgt.vec").string());
  write_text_file((dir / "gold.dict").string(), pairs_text(pair.gold));
  write_text_file((dir / "train.dict").string(), pairs_text(pair.train));
  write_text_file((dir / "test.dict").string(), pairs_text(pair.test));
}

}  // namespace clwe
