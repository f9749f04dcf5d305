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

#ifndef DPKM_PRIVATE_KMEDIAN_H_
#define DPKM_PRIVATE_KMEDIAN_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dpkm/geometry.h"
#include "dpkm/privacy.h"
#include "dpkm/random.h"

namespace dpkm {

enum class CandidateSource {
  // Lattice covers of B(0, ball_radius); data independent, used while the
  // lattice stays small (low dimension).
  kLattice,
  // Noisy Lloyd rounds from data-independent seeds; used when the lattice
  // would be too large to enumerate.
  kNoisyLloyd,
};

const char* CandidateSourceName(CandidateSource source);

struct BicriteriaOptions {
  std::size_t swap_steps_per_center = 10;
  std::size_t max_lattice_candidates = 4096;
  // Noisy Lloyd route.
  std::size_t seeds_per_center = 4;
  std::size_t lloyd_rounds = 3;
  double clip_radius = 0.0;  // per-point clip for the noisy sums; 0 means ball_radius
  std::size_t min_candidates = 1;
};

struct BicriteriaResult {
  CenterSet centers;
  CandidateSource source = CandidateSource::kLattice;
  std::size_t num_candidates = 0;
  std::size_t swap_steps = 0;
};

// Lattice covers of B(0, ball_radius) at radii eps*ball_radius/4 and
// eps*ball_radius, merged without duplicates.
std::vector<Point> BicriteriaLatticeCandidates(std::size_t dim, double ball_radius,
                                               double eps);

// Private bi-criteria k-median on data inside B(0, ball_radius).
//
// Candidates come from CandidateSource. The first k_prime centers are the
// candidates with the largest Laplace-noised nearest-candidate counts; then
// swap_steps_per_center * k_prime exponential-mechanism steps pick among all
// (out, in) swaps and the no-op, scoring each by -cost with sensitivity
// 2 * ball_radius. Lattice route: half of eps_p for the initial counts, half
// for the swaps. Noisy Lloyd route: half for candidate generation (which also
// spends delta_p), a quarter each for the counts and the swaps. Every charge
// is recorded in `ledger` under `stage`. Returns min(k_prime, #candidates)
// centers.
BicriteriaResult PrivateBicriteriaKMedian(const Dataset& data, std::size_t k_prime,
                                          const PrivacyBudget& budget,
                                          double ball_radius, double eps,
                                          SeededRng& rng, BudgetLedger& ledger,
                                          const std::string& stage = "bicriteria",
                                          const BicriteriaOptions& options = {});

// Noisy projected subgradient descent on F(c) = (1/W) sum_i w_i |c - p_i|
// over B(0, ball_radius): `steps` iterations with step size
// ball_radius / sqrt(t), Gaussian noise calibrated per step to
// (eps_p / steps, delta_p / steps) at L2 sensitivity 2 * max_w / W. Returns the
// average iterate. Empty `weights` means unit weights.
Point PrivateGeometricMedian(std::span<const Point> points,
                             std::span<const double> weights,
                             const PrivacyBudget& budget, double ball_radius,
                             SeededRng& rng, std::size_t steps = 200);

}  // namespace dpkm

#endif  // DPKM_PRIVATE_KMEDIAN_H_
