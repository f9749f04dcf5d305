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

#include "dpkm/cover.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpkm/errors.h"

namespace dpkm {
namespace {

constexpr double kDuplicateTolerance = 1e-12;
constexpr double kPerPointSlack = 1e-9;

void CheckEps(double eps) {
  if (!(eps > 0.0 && eps <= 0.5)) {
    throw InvalidArgumentError("eps must lie in (0, 1/2], got " + std::to_string(eps));
  }
}

}  // namespace

ThresholdSet BuildThresholds(double R, double eps, std::size_t n) {
  CheckEps(eps);
  if (n == 0) throw InvalidArgumentError("BuildThresholds: n must be >= 1");
  if (!(R >= 0.0) || !std::isfinite(R)) {
    throw InvalidArgumentError("BuildThresholds: R must be finite and >= 0");
  }
  ThresholdSet set{eps, R, n, {}};
  if (R == 0.0) return set;

  const double top = static_cast<double>(n) * R;
  double t = eps * R;
  set.thresholds.push_back(t);
  while (t < top) {
    t *= 1.0 + eps;
    set.thresholds.push_back(t);
  }
  return set;
}

std::size_t ThresholdCount(double eps, std::size_t n) {
  CheckEps(eps);
  const double steps = std::log(static_cast<double>(n) / eps) / std::log1p(eps);
  return static_cast<std::size_t>(std::ceil(steps)) + 1;
}

CenterSet ThresholdCover(const CenterSet& ref_centers, double R, double eps,
                         std::size_t n) {
  const ThresholdSet schedule = BuildThresholds(R, eps, n);
  std::vector<Point> points = ref_centers.centers();
  for (const Point& c : ref_centers.centers()) {
    for (double t : schedule.thresholds) {
      std::vector<Point> ball = CoverBall(c, t, eps * t);
      points.insert(points.end(), std::make_move_iterator(ball.begin()),
                    std::make_move_iterator(ball.end()));
    }
  }
  CenterSet out(ref_centers.dim());
  for (Point& p : DeduplicatePoints(std::move(points), kDuplicateTolerance)) {
    out.Add(std::move(p));
  }
  return out;
}

double ThresholdCoverSizeBound(std::size_t k, std::size_t num_thresholds,
                               std::size_t dim, double eps) {
  CheckEps(eps);
  const double half = std::ceil(std::sqrt(static_cast<double>(dim)) / (2.0 * eps));
  const double per_ball = std::pow(2.0 * half + 1.0, static_cast<double>(dim));
  const double kk = static_cast<double>(k);
  return kk + kk * static_cast<double>(num_thresholds) * per_ball;
}

CoverReport VerifyCoverBound(const Dataset& data, const CenterSet& ref_centers,
                             const CenterSet& cover, double eps) {
  CheckEps(eps);
  CoverReport report;
  report.size_S = cover.size();
  if (data.empty()) {
    report.passed = true;
    report.per_point_passed = true;
    return report;
  }
  // With unit weights n*R is the reference cost.
  const double n = data.TotalWeight();
  const double R = Cost(data, ref_centers) / n;
  report.size_T = BuildThresholds(R, eps, data.size()).size();
  report.cover_cost = Cost(data, cover);
  report.bound_3enR = 3.0 * n * eps * R;
  report.passed = report.cover_cost <= report.bound_3enR;

  for (std::size_t i = 0; i < data.size(); ++i) {
    const double r = DistanceToSet(data.point(i), ref_centers);
    const double to_cover = DistanceToSet(data.point(i), cover);
    bool ok = to_cover <= r + kPerPointSlack;
    if (r > eps * R) {
      const double allowed = (1.0 + eps) * eps * r;
      report.max_per_point_ratio = std::max(report.max_per_point_ratio, to_cover / allowed);
      ok = ok && to_cover <= allowed + kPerPointSlack;
    }
    if (!ok) ++report.per_point_violations;
  }
  report.per_point_passed = report.per_point_violations == 0;
  return report;
}

}  // namespace dpkm
