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
#include <vector>

#include <gtest/gtest.h>

#include "dpkm/errors.h"
#include "dpkm/geometry.h"
#include "dpkm/kmedian.h"
#include "dpkm/random.h"
#include "test_util.h"

namespace dpkm {
namespace {

TEST(ThresholdsTest, FrozenExample) {
  // eps*R = 0.5 growing by 1.5 until reaching n*R = 4.
  const ThresholdSet T = BuildThresholds(1.0, 0.5, 4);
  const std::vector<double> expected = {0.5, 0.75, 1.125, 1.6875, 2.53125, 3.796875,
                                        5.6953125};
  ASSERT_EQ(T.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_DOUBLE_EQ(T.thresholds[i], expected[i]);
  }
  EXPECT_EQ(ThresholdCount(0.5, 4), 7u);
}

TEST(ThresholdsTest, ZeroCostGivesEmptySchedule) {
  EXPECT_EQ(BuildThresholds(0.0, 0.25, 10).size(), 0u);
}

TEST(ThresholdsTest, RejectsBadArguments) {
  EXPECT_THROW(BuildThresholds(1.0, 0.0, 4), InvalidArgumentError);
  EXPECT_THROW(BuildThresholds(1.0, 0.6, 4), InvalidArgumentError);
  EXPECT_THROW(BuildThresholds(-1.0, 0.5, 4), InvalidArgumentError);
  EXPECT_THROW(BuildThresholds(1.0, 0.5, 0), InvalidArgumentError);
}

TEST(ThresholdsTest, GeometricScheduleBracketsNR) {
  for (double R : {0.01, 0.7, 3.0, 125.0}) {
    for (double eps : {0.1, 0.25, 0.3, 0.5}) {
      for (std::size_t n : {1, 2, 7, 40, 1000}) {
        const ThresholdSet T = BuildThresholds(R, eps, n);
        ASSERT_GE(T.size(), 1u);
        EXPECT_DOUBLE_EQ(T.thresholds.front(), eps * R);
        for (std::size_t i = 1; i < T.size(); ++i) {
          EXPECT_NEAR(T.thresholds[i] / T.thresholds[i - 1], 1.0 + eps, 1e-12);
        }
        const double nR = static_cast<double>(n) * R;
        EXPECT_GE(T.thresholds.back(), nR * (1 - 1e-12));
        if (T.size() >= 2) {
          EXPECT_LT(T.thresholds[T.size() - 2], nR);
        }
        EXPECT_EQ(T.size(), ThresholdCount(eps, n));
        // |T| = ceil(log_{1+eps}(n/eps)) + 1, away from exact powers
        const double exponent = std::log(n / eps) / std::log1p(eps);
        if (std::abs(exponent - std::round(exponent)) > 1e-9) {
          EXPECT_EQ(T.size(), static_cast<std::size_t>(std::ceil(exponent)) + 1);
        }
      }
    }
  }
}

TEST(ThresholdCoverTest, ZeroCostReturnsReference) {
  const CenterSet ref(std::vector<Point>{Point{0.0, 1.0}, Point{2.0, 2.0}});
  EXPECT_EQ(ThresholdCover(ref, 0.0, 0.5, 10), ref);
}

TEST(ThresholdCoverTest, OneDimensionalExplicitSet) {
  // d=1, eps=1/2: lattice spacing equals t, so each threshold adds {-t, +t}.
  const CenterSet ref(std::vector<Point>{Point{0.0}});
  const CenterSet S = ThresholdCover(ref, 1.0, 0.5, 4);
  std::vector<double> got;
  for (const Point& p : S.centers()) got.push_back(p[0]);
  std::vector<double> expected = {0.0};
  for (double t : BuildThresholds(1.0, 0.5, 4).thresholds) {
    expected.push_back(-t);
    expected.push_back(t);
  }
  std::sort(got.begin(), got.end());
  std::sort(expected.begin(), expected.end());
  ASSERT_EQ(got.size(), 15u);
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], expected[i], 1e-12);
}

TEST(ThresholdCoverTest, ContainsReferenceFirstAndRespectsBound) {
  SeededRng rng(21);
  for (int t = 0; t < 20; ++t) {
    const std::size_t dim = 1 + rng.UniformIndex(3);
    const std::size_t k = 1 + rng.UniformIndex(3);
    const CenterSet ref(testing::RandomDataset(k, dim, rng, -10.0, 10.0).points());
    const double eps = t % 2 ? 0.25 : 0.5;
    const std::size_t n = 10 + rng.UniformIndex(20);
    const CenterSet S = ThresholdCover(ref, 0.4, eps, n);
    for (std::size_t j = 0; j < k; ++j) EXPECT_EQ(S[j], ref[j]);
    EXPECT_LE(static_cast<double>(S.size()),
              ThresholdCoverSizeBound(k, ThresholdCount(eps, n), dim, eps));
  }
}

TEST(VerifyCoverBoundTest, ZeroCostInstancePasses) {
  const Dataset data(std::vector<Point>{Point{1.0}, Point{1.0}, Point{5.0}});
  const CenterSet ref(std::vector<Point>{Point{1.0}, Point{5.0}});
  const CoverReport r = VerifyCoverBound(data, ref, ThresholdCover(ref, 0.0, 0.5, 3), 0.5);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.cover_cost, 0.0);
  EXPECT_EQ(r.bound_3enR, 0.0);
  EXPECT_EQ(r.size_T, 0u);
}

TEST(VerifyCoverBoundTest, SquareCornersExample) {
  const Dataset square(
      std::vector<Point>{Point{0.0, 0.0}, Point{1.0, 0.0}, Point{0.0, 1.0}, Point{1.0, 1.0}});
  const SolverResult ref = ExactKMedianOracle(square, 1);
  EXPECT_NEAR(ref.cost, 2.0 * std::sqrt(2.0), 1e-9);
  const double R = ref.cost / 4.0;
  const CenterSet S = ThresholdCover(ref.centers, R, 0.5, 4);
  const CoverReport r = VerifyCoverBound(square, ref.centers, S, 0.5);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.per_point_passed);
  EXPECT_NEAR(r.bound_3enR, 3.0 * 0.5 * ref.cost, 1e-9);
}

// Points just beyond each threshold force the next threshold, the worst
// case for the per-point bound. A balancing point and copies of the center
// keep the mean cost at exactly R = 1.
TEST(VerifyCoverBoundTest, RingsJustPastThresholds) {
  SeededRng rng(22);
  auto direction = [&](std::size_t dim, double radius) {
    std::vector<double> v(dim);
    double sq = 0.0;
    for (double& x : v) {
      x = rng.Normal();
      sq += x * x;
    }
    for (double& x : v) x *= radius / std::sqrt(sq);
    return Point(std::move(v));
  };
  for (double eps : {0.25, 0.5}) {
    for (std::size_t dim = 1; dim <= 3; ++dim) {
      const std::size_t n = 30;
      const ThresholdSet T = BuildThresholds(1.0, eps, n);
      Dataset data(dim);
      double total = 0.0;
      for (double t : T.thresholds) {
        const double r = t * (1 + 1e-6);
        if (total + r > n / 2.0) break;
        data.Add(direction(dim, r));
        total += r;
      }
      const std::size_t rings = data.size();
      ASSERT_GE(rings, 3u);
      data.Add(direction(dim, static_cast<double>(n) - total));
      while (data.size() < n) data.Add(Point::Zero(dim));
      const CenterSet ref(std::vector<Point>{Point::Zero(dim)});
      ASSERT_NEAR(Cost(data, ref), static_cast<double>(n), 1e-9);
      const CoverReport r = VerifyCoverBound(data, ref, ThresholdCover(ref, 1.0, eps, n), eps);
      EXPECT_TRUE(r.per_point_passed) << "eps=" << eps << " d=" << dim;
      EXPECT_LE(r.max_per_point_ratio, 1.0);
      EXPECT_TRUE(r.passed);
      EXPECT_LE(r.cover_cost, 3.0 * eps * n);
    }
  }
}

TEST(VerifyCoverBoundTest, RandomInstancesWithLocalSearchReference) {
  SeededRng rng(23);
  for (int t = 0; t < 30; ++t) {
    const std::size_t dim = 1 + rng.UniformIndex(3);
    const std::size_t n = 15 + rng.UniformIndex(30);
    const std::size_t k = 1 + rng.UniformIndex(3);
    const Dataset data = testing::RandomDataset(n, dim, rng, -3.0, 3.0);
    const SolverResult ref = LocalSearchKMedian(data, k, CenterSet(data.points()));
    const double R = ref.cost / n;
    const double eps = t % 2 ? 0.25 : 0.5;
    const CoverReport r =
        VerifyCoverBound(data, ref.centers, ThresholdCover(ref.centers, R, eps, n), eps);
    EXPECT_TRUE(r.passed);
    EXPECT_TRUE(r.per_point_passed);
    EXPECT_EQ(r.per_point_violations, 0u);
    EXPECT_EQ(r.size_T, ThresholdCount(eps, n));
  }
}

}  // namespace
}  // namespace dpkm
