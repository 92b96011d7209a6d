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

#include "clwe/retrieval.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "clwe/error.hpp"

namespace clwe {
namespace {

constexpr Eigen::Index kBlockRows = 512;

std::size_t clamp_k(std::size_t k, Eigen::Index available, const char* what) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "CSLS neighbourhood k must be positive");
  const auto n = static_cast<std::size_t>(available);
  if (k > n) {
    warn(std::string("CSLS k=") + std::to_string(k) + " exceeds " + what + " count " +
         std::to_string(n) + "; clamped");
    return n;
  }
  return k;
}

double topk_mean(double* begin, double* end, std::size_t k) {
  double* kth = begin + k;
  std::nth_element(begin, kth - 1, end, std::greater<>());
  double sum = 0.0;
  for (double* p = begin; p != kth; ++p) sum += *p;
  return sum / static_cast<double>(k);
}

}  // namespace

const char* retrieval_method_name(RetrievalMethod m) {
  return m == RetrievalMethod::kNn ? "nn" : "csls";
}

RetrievalMethod parse_retrieval_method(const std::string& name) {
  if (name == "nn") return RetrievalMethod::kNn;
  if (name == "csls") return RetrievalMethod::kCsls;
  throw Error(ErrorCode::kInvalidArgument, "unknown retrieval method '" + name + "'");
}

Vector knn_mean_similarity(const Matrix& a, const Matrix& b, std::size_t k) {
  if (b.rows() == 0) throw Error(ErrorCode::kInvalidArgument, "knn: empty neighbour set");
  k = std::min<std::size_t>(k, static_cast<std::size_t>(b.rows()));
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "knn: k must be positive");
  Vector out(a.rows());
  Matrix block;
  for (Eigen::Index start = 0; start < a.rows(); start += kBlockRows) {
    const Eigen::Index len = std::min(kBlockRows, a.rows() - start);
    // Column j holds the similarities of a.row(start + j) to all of b.
    block.noalias() = b * a.middleRows(start, len).transpose();
    for (Eigen::Index j = 0; j < len; ++j) {
      double* col = block.col(j).data();
      out(start + j) = topk_mean(col, col + block.rows(), k);
    }
  }
  return out;
}

Matrix csls_scores(const Matrix& queries, const Matrix& targets, std::size_t k) {
  const std::size_t k_t = clamp_k(k, targets.rows(), "target");
  const std::size_t k_s = clamp_k(k, queries.rows(), "query");
  const Vector r_t = knn_mean_similarity(queries, targets, k_t);
  const Vector r_s = knn_mean_similarity(targets, queries, k_s);
  Matrix scores = 2.0 * queries * targets.transpose();
  scores.colwise() -= r_t;
  scores.rowwise() -= r_s.transpose();
  return scores;
}

const char* success_class_name(SuccessClass c) {
  switch (c) {
    case SuccessClass::kOk: return "ok";
    case SuccessClass::kWeakFail: return "weak_fail";
    case SuccessClass::kHardFail: return "hard_fail";
  }
  return "unknown";
}

SuccessClass classify_success(double mrr) {
  if (mrr <= kHardFailMrr) return SuccessClass::kHardFail;
  if (mrr <= kWeakFailMrr) return SuccessClass::kWeakFail;
  return SuccessClass::kOk;
}

std::vector<WordPair> read_word_pairs(std::istream& in) {
  std::vector<WordPair> pairs;
  std::size_t malformed = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string src, tgt, extra;
    if (!(fields >> src >> tgt) || (fields >> extra)) {
      ++malformed;
      continue;
    }
    pairs.emplace_back(std::move(src), std::move(tgt));
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read error while loading dictionary");
  if (malformed > 0) warn("skipped " + std::to_string(malformed) + " malformed dictionary line(s)");
  return pairs;
}

std::vector<WordPair> read_word_pairs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open dictionary file: " + path);
  return read_word_pairs(in);
}

BliReport evaluate_mapped(const Matrix& x_mapped, const Matrix& z_mapped, const EmbeddingSpace& x,
                          const EmbeddingSpace& z, const std::vector<WordPair>& test,
                          RetrievalMethod method, std::size_t k) {
  if (test.empty()) throw Error(ErrorCode::kInvalidArgument, "evaluation: empty test dictionary");

  std::map<std::string, std::set<std::string>> grouped;
  for (const auto& [src, tgt] : test) grouped[src].insert(tgt);

  struct Query {
    std::string source;
    Eigen::Index row;
    std::vector<Eigen::Index> gold;
  };
  std::vector<Query> queries;
  for (const auto& [src, golds] : grouped) {
    const auto row = x.index_of(src);
    if (row < 0) continue;
    Query q{src, static_cast<Eigen::Index>(row), {}};
    for (const auto& g : golds) {
      const auto col = z.index_of(g);
      if (col >= 0) q.gold.push_back(static_cast<Eigen::Index>(col));
    }
    queries.push_back(std::move(q));
  }
  if (queries.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "evaluation: no test source word is in the source vocabulary");
  }

  Matrix q_mapped(static_cast<Eigen::Index>(queries.size()), x_mapped.cols());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    q_mapped.row(static_cast<Eigen::Index>(i)) = x_mapped.row(queries[i].row);
  }

  Vector r_t, r_s;
  if (method == RetrievalMethod::kCsls) {
    const std::size_t k_t = clamp_k(k, z_mapped.rows(), "target");
    const std::size_t k_s = clamp_k(k, x_mapped.rows(), "source");
    r_t = knn_mean_similarity(q_mapped, z_mapped, k_t);
    r_s = knn_mean_similarity(z_mapped, x_mapped, k_s);
  }

  BliReport report;
  report.n_queries = queries.size();
  report.coverage = static_cast<double>(queries.size()) / static_cast<double>(grouped.size());
  report.per_query_ranks.reserve(queries.size());

  double reciprocal_sum = 0.0;
  std::size_t hits = 0;
  Matrix block;
  const auto nq = static_cast<Eigen::Index>(queries.size());
  for (Eigen::Index start = 0; start < nq; start += kBlockRows) {
    const Eigen::Index len = std::min(kBlockRows, nq - start);
    block.noalias() = z_mapped * q_mapped.middleRows(start, len).transpose();
    if (method == RetrievalMethod::kCsls) {
      block *= 2.0;
      block.colwise() -= r_s;
      block.rowwise() -= r_t.segment(start, len).transpose();
    }
    for (Eigen::Index j = 0; j < len; ++j) {
      const Query& q = queries[static_cast<std::size_t>(start + j)];
      const auto scores = block.col(j);
      std::size_t best = 0;
      for (const Eigen::Index g : q.gold) {
        const double s = scores(g);
        std::size_t rank = 1;
        for (Eigen::Index t = 0; t < scores.size(); ++t) {
          if (scores(t) > s || (scores(t) == s && t < g)) ++rank;
        }
        if (best == 0 || rank < best) best = rank;
      }
      if (best > 0) reciprocal_sum += 1.0 / static_cast<double>(best);
      if (best == 1) ++hits;
      report.per_query_ranks.push_back({q.source, best});
    }
  }
  report.mrr = reciprocal_sum / static_cast<double>(queries.size());
  report.p_at_1 = static_cast<double>(hits) / static_cast<double>(queries.size());
  report.success_class = classify_success(report.mrr);
  return report;
}

BliReport evaluate_bli(const ProjectionModel& model, const EmbeddingSpace& x,
                       const EmbeddingSpace& z, const std::vector<WordPair>& test,
                       RetrievalMethod method, std::size_t k) {
  Matrix xm = model.map_source(x.vectors());
  Matrix zm = model.map_target(z.vectors());
  normalize_rows(xm);
  normalize_rows(zm);
  return evaluate_mapped(xm, zm, x, z, test, method, k);
}

nlohmann::json to_json(const BliReport& report, bool with_ranks) {
  nlohmann::json j = {
      {"mrr", report.mrr},
      {"p_at_1", report.p_at_1},
      {"coverage", report.coverage},
      {"n_queries", report.n_queries},
      {"success_class", success_class_name(report.success_class)},
  };
  if (with_ranks) {
    auto ranks = nlohmann::json::array();
    for (const auto& r : report.per_query_ranks) ranks.push_back({r.source, r.rank});
    j["per_query_ranks"] = std::move(ranks);
  }
  return j;
}

std::string tsv_header() { return "mrr\tp_at_1\tcoverage\tn_queries\tsuccess_class"; }

std::string to_tsv_line(const BliReport& report) {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed << report.mrr << '\t' << report.p_at_1 << '\t' << report.coverage << '\t'
      << report.n_queries << '\t' << success_class_name(report.success_class);
  return out.str();
}

}  // namespace clwe
