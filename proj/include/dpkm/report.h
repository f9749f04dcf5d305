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

#ifndef DPKM_REPORT_H_
#define DPKM_REPORT_H_

#include "dpkm/cover.h"
#include "dpkm/geometry.h"
#include "dpkm/pipeline.h"
#include "dpkm/privacy.h"
#include "json.hpp"

namespace dpkm {

// Key under which every wall-clock measurement is stored. Everything else in
// a report is a deterministic function of the inputs and the seed.
inline constexpr const char* kWallClockKey = "wall_clock_seconds";

nlohmann::json PointToJson(const Point& p);
nlohmann::json CentersToJson(const CenterSet& centers);
CenterSet CentersFromJson(const nlohmann::json& j);

nlohmann::json BudgetToJson(const PrivacyBudget& budget);
nlohmann::json LedgerToJson(const BudgetLedger& ledger, const PrivacyBudget& declared);
nlohmann::json CoverReportToJson(const CoverReport& report);
nlohmann::json PipelineReportToJson(const PipelineReport& report);

// Copy of `j` with every kWallClockKey member removed, at any depth.
nlohmann::json StripWallClock(const nlohmann::json& j);

}  // namespace dpkm

#endif  // DPKM_REPORT_H_
