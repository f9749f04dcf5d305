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

#include "dpkm/kmedian.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "dpkm/errors.h"
#include "dpkm/swap_table.h"

namespace dpkm {
namespace {

constexpr double kSnapDistance = 1e-12;
constexpr double kPerturbation = 1e-6;
constexpr std::size_t kMaxOraclePoints = 12;
constexpr std::size_t kMaxOracleK = 3;
constexpr double kMaxDiscreteSubsets = 1e6;

std::vector<double> UnitWeightsIfEmpty(std::span<const Point> points,
                                       std::span<const double> weights) {
  if (weights.empty()) return std::vector<double>(points.size(), 1.0);
  if (weights.size() != points.size()) {
    throw InvalidArgumentError("GeometricMedian: weights length differs from points");
  }
  return {weights.begin(), weights.end()};
}

Point WeightedCentroid(std::span<const Point> points, std::span<const double> weights) {
  const std::size_t dim = points.front().dim();
  std::vector<double> sum(dim, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < dim; ++j) sum[j] += weights[i] * points[i][j];
    total += weights[i];
  }
  for (double& v : sum) v /= total;
  return Point(std::move(sum));
}

double Binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double out = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return out;
}

}  // namespace

double WeightedDistanceSum(std::span<const Point> points,
                           std::span<const double> weights, const Point& center) {
  double total = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    total += w * Distance(points[i], center);
  }
  return total;
}

WeiszfeldTrace GeometricMedianTrace(std::span<const Point> points,
                                    std::span<const double> weights_in, double tol,
                                    std::size_t max_iter) {
  if (points.empty()) throw InvalidArgumentError("GeometricMedian: no points");
  if (!(tol > 0.0)) throw InvalidArgumentError("GeometricMedian: tol must be positive");
  const std::vector<double> weights = UnitWeightsIfEmpty(points, weights_in);
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) {
    throw InvalidArgumentError("GeometricMedian: total weight must be positive");
  }

  const std::size_t dim = points.front().dim();
  WeiszfeldTrace trace{WeightedCentroid(points, weights), {}, 0, false};
  double objective = WeightedDistanceSum(points, weights, trace.median);
  trace.objective.push_back(objective);

  std::vector<double> numer(dim);
  std::vector<double> pull(dim);
  while (trace.iterations < max_iter) {
    ++trace.iterations;
    const Point& y = trace.median;

    // Find a data point the iterate coincides with, if any.
    std::size_t anchor = points.size();
    double anchor_dist = kSnapDistance;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (weights[i] <= 0.0) continue;
      const double d = Distance(points[i], y);
      if (d <= anchor_dist) {
        anchor_dist = d;
        anchor = i;
      }
    }

    std::vector<double> next(dim);
    if (anchor < points.size()) {
      // Subgradient test at the data point: optimal iff the pull of the other
      // points does not exceed the weight sitting there.
      const Point& p = points[anchor];
      double held = 0.0;
      std::fill(pull.begin(), pull.end(), 0.0);
      for (std::size_t i = 0; i < points.size(); ++i) {
        const double d = Distance(points[i], p);
        if (d <= kSnapDistance) {
          held += weights[i];
          continue;
        }
        for (std::size_t j = 0; j < dim; ++j) {
          pull[j] += weights[i] * (points[i][j] - p[j]) / d;
        }
      }
      double pull_norm = 0.0;
      for (double v : pull) pull_norm += v * v;
      pull_norm = std::sqrt(pull_norm);
      if (pull_norm <= held) {
        const double at_point = WeightedDistanceSum(points, weights, p);
        if (at_point <= objective) {
          trace.median = p;
          objective = at_point;
        }
        trace.objective.push_back(objective);
        trace.converged = true;
        return trace;
      }
      for (std::size_t j = 0; j < dim; ++j) {
        next[j] = p[j] + kPerturbation * pull[j] / pull_norm;
      }
    } else {
      std::fill(numer.begin(), numer.end(), 0.0);
      double denom = 0.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        const double inv = weights[i] / Distance(points[i], y);
        for (std::size_t j = 0; j < dim; ++j) numer[j] += inv * points[i][j];
        denom += inv;
      }
      for (std::size_t j = 0; j < dim; ++j) next[j] = numer[j] / denom;
    }

    Point candidate(std::move(next));
    const double next_objective = WeightedDistanceSum(points, weights, candidate);
    if (next_objective > objective) {
      // Round-off only; Weiszfeld steps never increase the objective.
      trace.objective.push_back(objective);
      trace.converged = true;
      return trace;
    }
    const double improvement = objective - next_objective;
    trace.median = std::move(candidate);
    objective = next_objective;
    trace.objective.push_back(objective);
    if (improvement < tol) {
      trace.converged = true;
      return trace;
    }
  }
  return trace;
}

Point GeometricMedian(std::span<const Point> points, std::span<const double> weights,
                      double tol, std::size_t max_iter) {
  return GeometricMedianTrace(points, weights, tol, max_iter).median;
}

SolverResult LocalSearchKMedian(const Dataset& data, std::size_t k,
                                const CenterSet& candidates, std::size_t max_swaps) {
  if (data.empty()) throw InvalidArgumentError("LocalSearchKMedian: empty dataset");
  if (k == 0) throw InvalidArgumentError("LocalSearchKMedian: k must be >= 1");
  if (candidates.size() < k) {
    throw InvalidArgumentError("LocalSearchKMedian: fewer candidates (" +
                               std::to_string(candidates.size()) + ") than k (" +
                               std::to_string(k) + ")");
  }
  SwapTable table(data, candidates);
  const std::size_t m = candidates.size();

  for (std::size_t step = 0; step < k; ++step) {
    std::size_t best = m;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < m; ++c) {
      if (table.IsChosen(c)) continue;
      const double cost = table.CostWithAdded(c);
      if (cost < best_cost) {
        best_cost = cost;
        best = c;
      }
    }
    table.Add(best);
  }

  const double factor = 1.0 - 1e-6 / static_cast<double>(k);
  std::vector<double> swap_costs(k);
  std::size_t swaps = 0;
  bool converged = false;
  while (swaps < max_swaps) {
    const double current = table.cost();
    double best_cost = std::numeric_limits<double>::infinity();
    std::size_t best_pos = 0;
    std::size_t best_in = m;
    for (std::size_t c = 0; c < m; ++c) {
      if (table.IsChosen(c)) continue;
      table.SwapCosts(c, swap_costs);
      for (std::size_t pos = 0; pos < k; ++pos) {
        if (swap_costs[pos] < best_cost) {
          best_cost = swap_costs[pos];
          best_pos = pos;
          best_in = c;
        }
      }
    }
    if (best_in == m || !(best_cost < factor * current)) {
      converged = true;
      break;
    }
    table.Swap(best_pos, best_in);
    ++swaps;
  }

  CenterSet centers(data.dim());
  for (std::size_t c : table.chosen()) centers.Add(candidates[c]);
  const double cost = Cost(data, centers);
  return {std::move(centers), cost, swaps, converged};
}

SolverResult ExactKMedianOracle(const Dataset& data, std::size_t k) {
  if (data.empty()) throw InvalidArgumentError("ExactKMedianOracle: empty dataset");
  if (k == 0) throw InvalidArgumentError("ExactKMedianOracle: k must be >= 1");
  const std::size_t n = data.size();
  if (k >= n) {
    CenterSet centers(data.points());
    return {std::move(centers), 0.0, 0, true};
  }
  if (n > kMaxOraclePoints || k > kMaxOracleK) {
    throw InvalidArgumentError("ExactKMedianOracle: instance too large (n=" +
                               std::to_string(n) + ", k=" + std::to_string(k) +
                               "); limits are n <= 12, k <= 3");
  }

  // 1-median of every non-empty subset, indexed by bitmask.
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<double> group_cost(subsets, 0.0);
  std::vector<std::size_t> group_median(subsets, 0);  // index into medians
  std::vector<Point> medians;
  medians.reserve(subsets);
  std::vector<Point> members;
  std::vector<double> member_weights;
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    members.clear();
    member_weights.clear();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) {
        members.push_back(data.point(i));
        member_weights.push_back(data.weight(i));
        total += data.weight(i);
      }
    }
    if (total > 0.0) {
      Point median = GeometricMedian(members, member_weights, 1e-10, 100000);
      double cost = WeightedDistanceSum(members, member_weights, median);
      for (const Point& p : members) {
        const double at_member = WeightedDistanceSum(members, member_weights, p);
        if (at_member < cost) {
          cost = at_member;
          median = p;
        }
      }
      group_cost[mask] = cost;
      medians.push_back(std::move(median));
    } else {
      medians.push_back(members.front());
    }
    group_median[mask] = medians.size() - 1;
  }

  // Restricted growth strings in lexicographic order enumerate each
  // partition into at most k groups exactly once.
  std::vector<std::size_t> label(n, 0);
  std::vector<std::size_t> best_masks;
  double best_cost = std::numeric_limits<double>::infinity();
  std::size_t evaluated = 0;
  std::vector<std::size_t> masks(k);
  while (true) {
    std::fill(masks.begin(), masks.end(), 0);
    std::size_t groups = 0;
    for (std::size_t i = 0; i < n; ++i) {
      masks[label[i]] |= std::size_t{1} << i;
      groups = std::max(groups, label[i] + 1);
    }
    double cost = 0.0;
    for (std::size_t g = 0; g < groups; ++g) cost += group_cost[masks[g]];
    ++evaluated;
    if (cost < best_cost) {
      best_cost = cost;
      best_masks.assign(masks.begin(), masks.begin() + static_cast<long>(groups));
    }

    // Advance: bump the rightmost label that may still grow.
    bool advanced = false;
    for (std::size_t pos = n; pos-- > 1;) {
      const std::size_t prefix_max =
          *std::max_element(label.begin(), label.begin() + static_cast<long>(pos));
      if (label[pos] <= prefix_max && label[pos] + 1 < k) {
        ++label[pos];
        std::fill(label.begin() + static_cast<long>(pos) + 1, label.end(), 0);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }

  CenterSet centers(data.dim());
  for (std::size_t mask : best_masks) centers.Add(medians[group_median[mask]]);
  const double cost = Cost(data, centers);
  return {std::move(centers), cost, evaluated, true};
}

SolverResult ExactDiscreteKMedian(const Dataset& data, const CenterSet& candidates,
                                  std::size_t k) {
  if (data.empty()) throw InvalidArgumentError("ExactDiscreteKMedian: empty dataset");
  if (k == 0 || k > candidates.size()) {
    throw InvalidArgumentError("ExactDiscreteKMedian: need 1 <= k <= |candidates|");
  }
  if (Binomial(candidates.size(), k) > kMaxDiscreteSubsets) {
    throw InvalidArgumentError("ExactDiscreteKMedian: C(" +
                               std::to_string(candidates.size()) + ", " +
                               std::to_string(k) + ") exceeds 1e6 subsets");
  }
  const SwapTable table(data, candidates);
  const std::size_t m = candidates.size();
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  std::vector<std::size_t> best = pick;
  double best_cost = std::numeric_limits<double>::infinity();
  std::size_t evaluated = 0;
  while (true) {
    double cost = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t c : pick) nearest = std::min(nearest, table.distance(i, c));
      cost += data.weight(i) * nearest;
    }
    ++evaluated;
    if (cost < best_cost) {
      best_cost = cost;
      best = pick;
    }
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  CenterSet centers(data.dim());
  for (std::size_t c : best) centers.Add(candidates[c]);
  const double cost = Cost(data, centers);
  return {std::move(centers), cost, evaluated, true};
}

}  // namespace dpkm
