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

#ifndef DPKM_KMEDIAN_H_
#define DPKM_KMEDIAN_H_

#include <cstddef>
#include <span>
#include <vector>

#include "dpkm/geometry.h"

namespace dpkm {

struct SolverResult {
  CenterSet centers;
  double cost = 0.0;  // Cost(data, centers)
  std::size_t iterations = 0;
  bool converged = false;
};

// Weighted sum of distances from `center` to `points`.
double WeightedDistanceSum(std::span<const Point> points,
                           std::span<const double> weights, const Point& center);

struct WeiszfeldTrace {
  Point median;
  std::vector<double> objective;  // objective[0] at the start point
  std::size_t iterations = 0;
  bool converged = false;
};

// Weiszfeld iteration from the weighted centroid. Stops once an iteration
// improves the objective by less than `tol`. When an iterate lands on a data
// point the subgradient condition decides between returning that point and
// stepping 1e-6 along the descent direction. The recorded objective never
// increases. Empty `weights` means unit weights.
WeiszfeldTrace GeometricMedianTrace(std::span<const Point> points,
                                    std::span<const double> weights,
                                    double tol = 1e-10,
                                    std::size_t max_iter = 10000);

Point GeometricMedian(std::span<const Point> points, std::span<const double> weights,
                      double tol = 1e-10, std::size_t max_iter = 10000);

// Single-swap local search over a discrete candidate set. Starts from the
// greedy k-subset and applies the best swap while it improves the cost by a
// factor of at least (1 - 1e-6/k), for at most `max_swaps` swaps.
SolverResult LocalSearchKMedian(const Dataset& data, std::size_t k,
                                const CenterSet& candidates,
                                std::size_t max_swaps = 1000);

// Optimal continuous k-median by enumerating every partition into at most k
// groups and solving each group's 1-median. Limited to n <= 12 and k <= 3
// (any k >= n is answered directly with cost 0).
SolverResult ExactKMedianOracle(const Dataset& data, std::size_t k);

// Best k-subset of `candidates`, by exhaustive enumeration.
// Requires C(|candidates|, k) <= 1e6.
SolverResult ExactDiscreteKMedian(const Dataset& data, const CenterSet& candidates,
                                  std::size_t k);

}  // namespace dpkm

#endif  // DPKM_KMEDIAN_H_
