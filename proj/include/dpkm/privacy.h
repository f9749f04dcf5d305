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

#ifndef DPKM_PRIVACY_H_
#define DPKM_PRIVACY_H_

#include <string>
#include <vector>

namespace dpkm {

// An (eps_p, delta_p) differential-privacy budget.
struct PrivacyBudget {
  double eps_p = 0.0;
  double delta_p = 0.0;

  // Throws InvalidArgumentError unless eps_p > 0 and 0 <= delta_p < 1.
  void Validate() const;
  PrivacyBudget Scaled(double fraction) const {
    return {eps_p * fraction, delta_p * fraction};
  }
};

struct LedgerEntry {
  std::string stage;
  PrivacyBudget spent;
};

// Records what each stage spent. Totals use basic (additive) composition.
class BudgetLedger {
 public:
  void Record(std::string stage, PrivacyBudget spent);

  const std::vector<LedgerEntry>& entries() const { return entries_; }
  PrivacyBudget Total() const;

  // Component-wise Total() <= declared, allowing relative round-off of 1e-12
  // from summing fractional shares.
  bool Fits(const PrivacyBudget& declared) const;

 private:
  std::vector<LedgerEntry> entries_;
};

}  // namespace dpkm

#endif  // DPKM_PRIVACY_H_
