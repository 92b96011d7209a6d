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
#include <utility>
#include <vector>

#include "json.hpp"

#include "clwe/embedding_io.hpp"
#include "clwe/linalg.hpp"
#include "clwe/transforms.hpp"

namespace clwe {

inline constexpr std::size_t kDefaultCslsK = 10;

enum class RetrievalMethod { kNn, kCsls };

const char* retrieval_method_name(RetrievalMethod m);
RetrievalMethod parse_retrieval_method(const std::string& name);

/// For each row of `a`, the mean of its k largest dot products with the rows
/// of `b`. Computed in row blocks so the full score matrix never exists.
/// k is clamped to b.rows().
Vector knn_mean_similarity(const Matrix& a, const Matrix& b, std::size_t k);

/// Dense CSLS matrix for unit-normalized rows:
///   score(q, t) = 2 cos(q, t) - r_T(q) - r_S(t)
/// where r_T(q) averages q's k nearest targets and r_S(t) averages t's k
/// nearest queries. k larger than either side is clamped with a warning.
Matrix csls_scores(const Matrix& queries, const Matrix& targets, std::size_t k);

enum class SuccessClass { kOk, kWeakFail, kHardFail };

inline constexpr double kHardFailMrr = 0.01;
inline constexpr double kWeakFailMrr = 0.05;

const char* success_class_name(SuccessClass c);
SuccessClass classify_success(double mrr);

struct QueryRank {
  std::string source;
  std::size_t rank = 0;  // 0: none of the gold targets is in the target vocabulary
};

struct BliReport {
  double mrr = 0.0;
  double p_at_1 = 0.0;
  std::size_t n_queries = 0;
  double coverage = 0.0;
  std::vector<QueryRank> per_query_ranks;
  SuccessClass success_class = SuccessClass::kHardFail;
};

using WordPair = std::pair<std::string, std::string>;

/// Reads "source<whitespace>target" lines; '#' lines and blank lines are
/// ignored, lines without exactly two fields are skipped with a warning.
std::vector<WordPair> read_word_pairs(std::istream& in);
std::vector<WordPair> read_word_pairs_file(const std::string& path);

/// Bilingual lexicon induction over the whole target vocabulary. `x` and `z`
/// are the preprocessed spaces the model was fitted on. Test pairs are grouped
/// by source word; a query's rank is the best rank among its gold targets.
/// For CSLS, r_S is taken over the full mapped source vocabulary.
BliReport evaluate_bli(const ProjectionModel& model, const EmbeddingSpace& x,
                       const EmbeddingSpace& z, const std::vector<WordPair>& test,
                       RetrievalMethod method = RetrievalMethod::kCsls,
                       std::size_t k = kDefaultCslsK);

/// Same, for already mapped and row-normalized matrices.
BliReport evaluate_mapped(const Matrix& x_mapped, const Matrix& z_mapped, const EmbeddingSpace& x,
                          const EmbeddingSpace& z, const std::vector<WordPair>& test,
                          RetrievalMethod method, std::size_t k);

nlohmann::json to_json(const BliReport& report, bool with_ranks = false);
std::string tsv_header();
std::string to_tsv_line(const BliReport& report);

}  // namespace clwe
