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

#ifndef DPKM_PIPELINE_H_
#define DPKM_PIPELINE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dpkm/geometry.h"
#include "dpkm/privacy.h"
#include "dpkm/private_kmedian.h"
#include "dpkm/random.h"

namespace dpkm {

struct PipelineConfig {
  std::size_t k = 1;
  double eps = 0.5;  // approximation parameter, in (0, 1/2]
  std::optional<std::size_t> d_prime_override;
  double jl_constant = 8.0;
  // eps_p shares of the bi-criteria solve, the noisy counts and the center
  // recovery. delta_p is split between the first and last of these in
  // proportion to their shares; the counts are pure eps-DP.
  std::array<double, 3> budget_split = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  // Caps k' when the lattice-based count is impractically large.
  std::size_t max_bicriteria_centers = 64;
  std::string alpha_note = "single-swap local search over snapped centers";

  void Validate() const;
};

// ceil(jl_constant * ln(max(k, 2)) / eps^2) capped at `dim`, unless
// overridden.
std::size_t ProjectedDimension(const PipelineConfig& config, std::size_t dim);

// ln(n) + 1.
double ProjectionClampRadius(std::size_t n);

// k * |T| * (2 * ceil(sqrt(d') / (2 * eps)) + 1)^d' with |T| the length of
// the threshold schedule for n points, as a double.
double BicriteriaCenterCount(std::size_t k, std::size_t d_prime, double eps,
                             std::size_t n);

struct Projection {
  Dataset data;
  double clamp_radius = 0.0;
  std::size_t clamped = 0;  // points moved by the clamp
};

// Multiplies every point by a d' x d matrix of N(0, 1) entries scaled by
// 1/sqrt(d') (drawn row by row from `rng`), then clamps to
// B(0, ln(n) + 1). Weights are carried over.
Projection JlProject(const Dataset& data, std::size_t d_prime, SeededRng& rng);

// Weighted dataset of the centers with weight = count, dropping zero counts.
// Throws DegenerateInstanceError when every count is zero.
Dataset SnapAndWeight(const Dataset& projected, const CenterSet& centers,
                      std::span<const std::int64_t> counts);

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct PipelineReport {
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t dim = 0;
  std::size_t d_prime = 0;
  std::size_t k = 0;
  std::size_t k_prime = 0;
  double k_prime_formula = 0.0;
  double clamp_radius = 0.0;
  std::size_t clamped_points = 0;
  CandidateSource candidate_source = CandidateSource::kLattice;
  std::size_t num_candidates = 0;
  double bicriteria_cost = 0.0;   // projected space
  std::vector<std::int64_t> noisy_counts;
  std::size_t snapped_points = 0;
  double snapped_cost = 0.0;      // step-4 solution on the snapped instance
  std::vector<std::size_t> cluster_sizes;
  std::size_t empty_clusters = 0;
  double final_cost = 0.0;        // original space
  PrivacyBudget declared;
  BudgetLedger ledger;
  std::vector<StageTiming> timings;
};

struct PipelineResult {
  CenterSet centers;
  PipelineReport report;
};

// The five-step private k-median pipeline on data inside B(0, 1):
//   1. JL projection to d' dimensions and clamping;
//   2. private bi-criteria solution with k' centers;
//   3. Laplace-noised counts of the points nearest each bi-criteria center;
//   4. non-private local search for k centers on the snapped, weighted
//      instance;
//   5. per-cluster private geometric median in the original dimension, the
//      clusters being inherited from the projected-space assignment to the
//      step-4 centers.
PipelineResult RunPipeline(const Dataset& data, const PipelineConfig& config,
                           const PrivacyBudget& budget, SeededRng& rng);

}  // namespace dpkm

#endif  // DPKM_PIPELINE_H_
