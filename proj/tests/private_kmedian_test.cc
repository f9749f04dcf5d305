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

#include "dpkm/private_kmedian.h"

#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "dpkm/errors.h"
#include "dpkm/geometry.h"
#include "dpkm/kmedian.h"
#include "dpkm/privacy.h"
#include "dpkm/random.h"
#include "test_util.h"

namespace dpkm {
namespace {

using testing::UniformInBall;

Dataset BallData(std::size_t n, std::size_t dim, double radius, SeededRng& rng) {
  Dataset data(dim);
  for (std::size_t i = 0; i < n; ++i) data.Add(UniformInBall(Point::Zero(dim), radius, rng));
  return data;
}

bool Contains(const std::vector<Point>& pool, const Point& p) {
  for (const Point& q : pool) {
    if (q == p) return true;
  }
  return false;
}

TEST(LatticeCandidatesTest, OneDimensionalUnitBall) {
  // fine spacing 1/4 over [-1.125, 1.125]; the coarse cover adds nothing new
  const std::vector<Point> c = BicriteriaLatticeCandidates(1, 1.0, 0.5);
  EXPECT_EQ(c.size(), 9u);
}

TEST(BicriteriaTest, WeakPrivacyWithinFiveOfExactDiscrete) {
  SeededRng rng(51);
  for (int t = 0; t < 20; ++t) {
    const std::size_t dim = 1 + t % 2;
    const Dataset data = BallData(8, dim, 1.0, rng);
    const std::size_t k_prime = 2;
    BudgetLedger ledger;
    const BicriteriaResult r =
        PrivateBicriteriaKMedian(data, k_prime, {1e4, 0.0}, 1.0, 0.5, rng, ledger);
    EXPECT_EQ(r.source, CandidateSource::kLattice);
    const CenterSet cands(BicriteriaLatticeCandidates(dim, 1.0, 0.5));
    EXPECT_EQ(r.num_candidates, cands.size());
    const double exact = ExactDiscreteKMedian(data, cands, k_prime).cost;
    EXPECT_LE(Cost(data, r.centers), 5.0 * exact + 1e-12) << "instance " << t;
  }
}

TEST(BicriteriaTest, SizeMembershipAndLedger) {
  SeededRng rng(52);
  const Dataset data = BallData(30, 2, 1.0, rng);
  const std::vector<Point> pool = BicriteriaLatticeCandidates(2, 1.0, 0.5);
  for (std::size_t k_prime : {1, 3, 7}) {
    BudgetLedger ledger;
    const BicriteriaResult r =
        PrivateBicriteriaKMedian(data, k_prime, {0.9, 0.0}, 1.0, 0.5, rng, ledger, "s2");
    EXPECT_EQ(r.centers.size(), k_prime);
    for (const Point& c : r.centers.centers()) EXPECT_TRUE(Contains(pool, c));
    EXPECT_NEAR(ledger.Total().eps_p, 0.9, 1e-12);
    EXPECT_TRUE(ledger.Fits({0.9, 0.0}));
    EXPECT_EQ(r.swap_steps, 10 * k_prime);
    for (const LedgerEntry& e : ledger.entries()) EXPECT_EQ(e.stage.rfind("s2/", 0), 0u);
  }
}

TEST(BicriteriaTest, SameSeedSameOutput) {
  SeededRng data_rng(53);
  const Dataset data = BallData(25, 2, 1.0, data_rng);
  SeededRng a(7), b(7);
  BudgetLedger la, lb;
  EXPECT_EQ(PrivateBicriteriaKMedian(data, 4, {1.0, 0.0}, 1.0, 0.5, a, la).centers,
            PrivateBicriteriaKMedian(data, 4, {1.0, 0.0}, 1.0, 0.5, b, lb).centers);
}

TEST(BicriteriaTest, NoisyLloydRouteInHighDimension) {
  SeededRng rng(54);
  const Dataset data = testing::GaussianMixture(300, 10, 3, 0.6, 0.03, rng);
  BudgetLedger ledger;
  BicriteriaOptions options;
  options.min_candidates = 3;
  const BicriteriaResult r = PrivateBicriteriaKMedian(data, 6, {50.0, 1e-6}, 1.0, 0.5,
                                                      rng, ledger, "b", options);
  EXPECT_EQ(r.source, CandidateSource::kNoisyLloyd);
  EXPECT_EQ(r.centers.size(), std::min<std::size_t>(6, r.num_candidates));
  EXPECT_GE(r.num_candidates, 3u);
  EXPECT_TRUE(ledger.Fits({50.0, 1e-6}));
  EXPECT_LE(ledger.Total().eps_p, 50.0 * (1 + 1e-12));
  for (const Point& c : r.centers.centers()) EXPECT_LE(Norm(c), 1.0 + 1e-12);
  // Well-separated tight clusters: private centers beat the origin by far.
  EXPECT_LT(Cost(data, r.centers), 0.5 * Cost(data, CenterSet(std::vector<Point>{Point::Zero(10)})));
}

TEST(BicriteriaTest, NoisyLloydNeedsDelta) {
  SeededRng rng(55);
  const Dataset data = BallData(20, 12, 1.0, rng);
  BudgetLedger ledger;
  EXPECT_THROW(PrivateBicriteriaKMedian(data, 3, {1.0, 0.0}, 1.0, 0.5, rng, ledger),
               InvalidArgumentError);
}

TEST(BicriteriaTest, Errors) {
  SeededRng rng(56);
  const Dataset data = BallData(10, 2, 1.0, rng);
  BudgetLedger ledger;
  EXPECT_THROW(PrivateBicriteriaKMedian(data, 2, {0.0, 0.0}, 1.0, 0.5, rng, ledger),
               InvalidArgumentError);
  EXPECT_THROW(PrivateBicriteriaKMedian(data, 0, {1.0, 0.0}, 1.0, 0.5, rng, ledger),
               InvalidArgumentError);
  const Dataset outside(std::vector<Point>{Point{2.0, 0.0}});
  EXPECT_THROW(PrivateBicriteriaKMedian(outside, 1, {1.0, 0.0}, 1.0, 0.5, rng, ledger),
               InvalidArgumentError);
}

TEST(PrivateMedianTest, WeakPrivacyNearWeiszfeld) {
  SeededRng rng(57);
  for (int t = 0; t < 10; ++t) {
    const std::size_t dim = 2 + t % 4;
    const Point center = UniformInBall(Point::Zero(dim), 0.6, rng);
    std::vector<Point> pts;
    for (int i = 0; i < 60; ++i) pts.push_back(UniformInBall(center, 0.2, rng));
    const Point exact = GeometricMedian(pts, {});
    const Point priv = PrivateGeometricMedian(pts, {}, {1e4, 1e-6}, 1.0, rng);
    EXPECT_LE(Distance(priv, exact), 0.05) << "set " << t;
  }
}

TEST(PrivateMedianTest, RepeatedPointHugeBudget) {
  SeededRng rng(58);
  const std::vector<Point> pts(40, Point{0.3, -0.4, 0.1});
  const Point priv = PrivateGeometricMedian(pts, {}, {1e6, 1e-6}, 1.0, rng);
  EXPECT_LE(Distance(priv, pts[0]), 0.05);
}

TEST(PrivateMedianTest, ObjectiveWithinTwiceWeiszfeldAtModeratePrivacy) {
  SeededRng rng(59);
  for (int t = 0; t < 20; ++t) {
    const std::size_t dim = 2 + t % 3;
    std::vector<Point> pts;
    const Point center = UniformInBall(Point::Zero(dim), 0.5, rng);
    for (int i = 0; i < 100; ++i) pts.push_back(UniformInBall(center, 0.4, rng));
    const double exact = WeightedDistanceSum(pts, {}, GeometricMedian(pts, {}));
    const Point priv = PrivateGeometricMedian(pts, {}, {100.0, 1e-6}, 1.0, rng);
    EXPECT_LE(WeightedDistanceSum(pts, {}, priv), 2.0 * exact) << "set " << t;
  }
}

TEST(PrivateMedianTest, OutputInsideBallAtStrongPrivacy) {
  SeededRng rng(60);
  for (int t = 0; t < 50; ++t) {
    std::vector<Point> pts;
    for (int i = 0; i < 5; ++i) pts.push_back(UniformInBall(Point::Zero(3), 1.5, rng));
    EXPECT_LE(Norm(PrivateGeometricMedian(pts, {}, {0.01, 1e-6}, 1.5, rng)), 1.5 + 1e-12);
  }
}

TEST(PrivateMedianTest, Errors) {
  SeededRng rng(61);
  const std::vector<Point> pts = {Point{0.1, 0.1}};
  EXPECT_THROW(PrivateGeometricMedian(pts, {}, {1.0, 0.0}, 1.0, rng), InvalidArgumentError);
  EXPECT_THROW(PrivateGeometricMedian(std::vector<Point>{}, {}, {1.0, 1e-6}, 1.0, rng),
               InvalidArgumentError);
  const std::vector<Point> far = {Point{3.0, 0.0}};
  EXPECT_THROW(PrivateGeometricMedian(far, {}, {1.0, 1e-6}, 1.0, rng), InvalidArgumentError);
}

TEST(PrivateMedianTest, SameSeedSameOutput) {
  SeededRng data_rng(62);
  std::vector<Point> pts;
  for (int i = 0; i < 20; ++i) pts.push_back(UniformInBall(Point::Zero(4), 1.0, data_rng));
  SeededRng a(3), b(3);
  EXPECT_EQ(PrivateGeometricMedian(pts, {}, {1.0, 1e-6}, 1.0, a),
            PrivateGeometricMedian(pts, {}, {1.0, 1e-6}, 1.0, b));
}

}  // namespace
}  // namespace dpkm
