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

#include "dpkm/privacy.h"

#include <cmath>
#include <utility>

#include "dpkm/errors.h"

namespace dpkm {

void PrivacyBudget::Validate() const {
  if (!std::isfinite(eps_p) || !(eps_p > 0.0)) {
    throw InvalidArgumentError("privacy budget: eps_p must be positive and finite");
  }
  if (!(delta_p >= 0.0 && delta_p < 1.0)) {
    throw InvalidArgumentError("privacy budget: delta_p must lie in [0, 1)");
  }
}

void BudgetLedger::Record(std::string stage, PrivacyBudget spent) {
  entries_.push_back({std::move(stage), spent});
}

PrivacyBudget BudgetLedger::Total() const {
  PrivacyBudget total;
  for (const LedgerEntry& e : entries_) {
    total.eps_p += e.spent.eps_p;
    total.delta_p += e.spent.delta_p;
  }
  return total;
}

bool BudgetLedger::Fits(const PrivacyBudget& declared) const {
  constexpr double kRelativeSlack = 1e-12;
  const PrivacyBudget total = Total();
  return total.eps_p <= declared.eps_p * (1.0 + kRelativeSlack) &&
         total.delta_p <= declared.delta_p * (1.0 + kRelativeSlack);
}

}  // namespace dpkm
