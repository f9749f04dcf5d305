//
// Copyright 2026 The dpkmedian Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dpkm/report.h"

#include <cmath>
#include <vector>

#include "dpkm/errors.h"

namespace dpkm {

using nlohmann::json;

json PointToJson(const Point& p) {
  return json(std::vector<double>(p.coords().begin(), p.coords().end()));
}

json CentersToJson(const CenterSet& centers) {
  json out = json::array();
  for (const Point& c : centers.centers()) out.push_back(PointToJson(c));
  return out;
}

CenterSet CentersFromJson(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidArgumentError("centers: expected a non-empty array");
  std::vector<Point> centers;
  for (const json& row : j) centers.emplace_back(row.get<std::vector<double>>());
  return CenterSet(std::move(centers));
}

json BudgetToJson(const PrivacyBudget& budget) {
  return {{"eps_p", budget.eps_p}, {"delta_p", budget.delta_p}};
}

json LedgerToJson(const BudgetLedger& ledger, const PrivacyBudget& declared) {
  json entries = json::array();
  for (const LedgerEntry& e : ledger.entries()) {
    entries.push_back({{"stage", e.stage},
                       {"eps_p", e.spent.eps_p},
                       {"delta_p", e.spent.delta_p}});
  }
  return {{"declared", BudgetToJson(declared)},
          {"entries", std::move(entries)},
          {"total", BudgetToJson(ledger.Total())},
          {"within_declared", ledger.Fits(declared)}};
}

json CoverReportToJson(const CoverReport& r) {
  return {{"cover_cost", r.cover_cost},
          {"bound_3enR", r.bound_3enR},
          {"passed", r.passed},
          {"size_S", r.size_S},
          {"size_T", r.size_T},
          {"per_point_passed", r.per_point_passed},
          {"per_point_violations", r.per_point_violations},
          {"max_per_point_ratio", r.max_per_point_ratio}};
}

json PipelineReportToJson(const PipelineReport& r) {
  json timings = json::object();
  for (const StageTiming& t : r.timings) timings[t.stage] = t.seconds;
  return {
      {"seed", r.seed},
      {"n", r.n},
      {"dim", r.dim},
      {"d_prime", r.d_prime},
      {"k", r.k},
      {"k_prime", r.k_prime},
      {"k_prime_formula_log10", std::log10(r.k_prime_formula)},
      {"clamp_radius", r.clamp_radius},
      {"clamped_points", r.clamped_points},
      {"candidate_source", CandidateSourceName(r.candidate_source)},
      {"num_candidates", r.num_candidates},
      {"noisy_counts", r.noisy_counts},
      {"snapped_points", r.snapped_points},
      {"cluster_sizes", r.cluster_sizes},
      {"empty_clusters", r.empty_clusters},
      {"costs",
       {{"bicriteria_projected", r.bicriteria_cost},
        {"snapped", r.snapped_cost},
        {"final_normalized", r.final_cost}}},
      {"budget", LedgerToJson(r.ledger, r.declared)},
      {kWallClockKey, std::move(timings)},
  };
}

json StripWallClock(const json& j) {
  if (j.is_object()) {
    json out = json::object();
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == kWallClockKey) continue;
      out[it.key()] = StripWallClock(it.value());
    }
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const json& v : j) out.push_back(StripWallClock(v));
    return out;
  }
  return j;
}

}  // namespace dpkm
