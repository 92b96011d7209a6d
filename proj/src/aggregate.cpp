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

#include <map>
#include <sstream>

#include "clwe/error.hpp"
#include "clwe/harness.hpp"

namespace clwe {

GroupBy parse_group_by(const std::string& name) {
  if (name == "source_language" || name == "language") return GroupBy::kSourceLanguage;
  if (name == "config") return GroupBy::kConfig;
  throw Error(ErrorCode::kInvalidArgument, "unknown grouping '" + name + "'");
}

std::vector<AggregateRow> aggregate_reports(const std::vector<nlohmann::json>& reports,
                                            GroupBy group_by) {
  if (reports.empty()) throw Error(ErrorCode::kInvalidArgument, "no reports to aggregate");
  struct Acc {
    std::size_t n = 0;
    double sum = 0.0;
    std::size_t hard = 0;
    std::size_t weak = 0;
  };
  std::map<std::string, Acc> groups;
  for (const auto& r : reports) {
    try {
      std::string key = group_by == GroupBy::kConfig ? r.at("config").at("name").get<std::string>()
                                                     : r.value("source_language", std::string());
      if (key.empty()) key = "unknown";
      Acc& acc = groups[key];
      ++acc.n;
      acc.sum += r.at("mean_mrr").get<double>();
      if (r.at("unsuccessful").get<bool>()) ++acc.hard;
      if (r.at("weak_unsuccessful").get<bool>()) ++acc.weak;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kFormat, std::string("report does not match schema: ") + e.what());
    }
  }
  std::vector<AggregateRow> rows;
  for (const auto& [key, acc] : groups) {
    rows.push_back({key, acc.n, acc.sum / static_cast<double>(acc.n), acc.hard, acc.weak});
  }
  return rows;
}

std::string aggregate_tsv(const std::vector<AggregateRow>& rows) {
  std::ostringstream out;
  out << "group\tn_reports\tmean_mrr\tunsuccessful_mrr_le_0.01\tunsuccessful_mrr_le_0.05\n";
  out.precision(6);
  out << std::fixed;
  for (const auto& r : rows) {
    out << r.group << '\t' << r.n_reports << '\t' << r.mean_mrr << '\t' << r.unsuccessful_hard
        << '\t' << r.unsuccessful_weak << '\n';
  }
  return out.str();
}

nlohmann::json aggregate_json(const std::vector<AggregateRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    out.push_back({{"group", r.group},
                   {"n_reports", r.n_reports},
                   {"mean_mrr", r.mean_mrr},
                   {"unsuccessful_hard", r.unsuccessful_hard},
                   {"unsuccessful_weak", r.unsuccessful_weak}});
  }
  return out;
}

}  // namespace clwe
