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

#ifndef DPKM_COVER_H_
#define DPKM_COVER_H_

#include <cstddef>
#include <vector>

#include "dpkm/geometry.h"

namespace dpkm {

// Geometric radius schedule {eps*R, eps*R*(1+eps), ...} truncated at the
// first element >= n*R. Empty when R == 0.
struct ThresholdSet {
  double eps = 0.0;
  double base_cost_R = 0.0;  // per-point cost of the reference solution
  std::size_t n = 0;
  std::vector<double> thresholds;

  std::size_t size() const { return thresholds.size(); }
};

struct CoverReport {
  double cover_cost = 0.0;
  double bound_3enR = 0.0;
  bool passed = false;  // cover_cost <= bound_3enR
  std::size_t size_S = 0;
  std::size_t size_T = 0;
  // Per-point guarantee: a point at distance r > eps*R from the reference
  // solution is within (1+eps)*eps*r of S, and no point is farther from S
  // than from the reference solution.
  bool per_point_passed = false;
  std::size_t per_point_violations = 0;
  double max_per_point_ratio = 0.0;  // max d(p,S) / ((1+eps)*eps*r) over far points
};

// Throws InvalidArgumentError unless eps is in (0, 1/2], R >= 0 and n >= 1.
ThresholdSet BuildThresholds(double R, double eps, std::size_t n);

// ceil(log_{1+eps}(n/eps)) + 1, the schedule length for R > 0.
std::size_t ThresholdCount(double eps, std::size_t n);

// Reference centers followed by, for each center c and threshold t, the
// lattice cover of B(c, t) at radius eps*t. Points within 1e-12 of an earlier
// one are dropped, so the reference centers always survive in order.
CenterSet ThresholdCover(const CenterSet& ref_centers, double R, double eps,
                         std::size_t n);

// Closed-form upper bound on |ThresholdCover(...)|:
// k + k * |T| * (2 * ceil(sqrt(d) / (2 * eps)) + 1)^d.
double ThresholdCoverSizeBound(std::size_t k, std::size_t num_thresholds,
                               std::size_t dim, double eps);

// Evaluates the cover against the 3*n*eps*R bound, with R derived from the
// reference solution's cost on `data` and n = data.size().
CoverReport VerifyCoverBound(const Dataset& data, const CenterSet& ref_centers,
                             const CenterSet& cover, double eps);

}  // namespace dpkm

#endif  // DPKM_COVER_H_
