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

#include "dpkm/pipeline.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>

#include "dpkm/cover.h"
#include "dpkm/errors.h"
#include "dpkm/kmedian.h"
#include "dpkm/mechanisms.h"

namespace dpkm {
namespace {

constexpr double kUnitBallSlack = 1e-9;
constexpr std::size_t kStep5Iterations = 200;

class StageClock {
 public:
  explicit StageClock(std::vector<StageTiming>& sink) : sink_(sink) {}

  void Lap(std::string stage) {
    const auto now = std::chrono::steady_clock::now();
    sink_.push_back({std::move(stage), std::chrono::duration<double>(now - last_).count()});
    last_ = now;
  }

 private:
  std::vector<StageTiming>& sink_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace

void PipelineConfig::Validate() const {
  if (k == 0) throw InvalidArgumentError("pipeline: k must be >= 1");
  if (!(eps > 0.0 && eps <= 0.5)) throw InvalidArgumentError("pipeline: eps must lie in (0, 1/2]");
  if (d_prime_override && *d_prime_override == 0) {
    throw InvalidArgumentError("pipeline: d' must be >= 1");
  }
  if (!(jl_constant > 0.0)) throw InvalidArgumentError("pipeline: jl_constant must be positive");
  double sum = 0.0;
  for (double f : budget_split) {
    if (!(f > 0.0)) throw InvalidArgumentError("pipeline: budget fractions must be positive");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw InvalidArgumentError("pipeline: budget fractions must sum to 1");
  }
  if (max_bicriteria_centers < k) {
    throw InvalidArgumentError("pipeline: max_bicriteria_centers must be >= k");
  }
}

std::size_t ProjectedDimension(const PipelineConfig& config, std::size_t dim) {
  if (config.d_prime_override) return *config.d_prime_override;
  const double k = static_cast<double>(std::max<std::size_t>(config.k, 2));
  const double target = std::ceil(config.jl_constant * std::log(k) / (config.eps * config.eps));
  return std::clamp<std::size_t>(static_cast<std::size_t>(target), 1, dim);
}

double ProjectionClampRadius(std::size_t n) {
  return std::log(static_cast<double>(std::max<std::size_t>(n, 1))) + 1.0;
}

double BicriteriaCenterCount(std::size_t k, std::size_t d_prime, double eps, std::size_t n) {
  const double thresholds = static_cast<double>(ThresholdCount(eps, std::max<std::size_t>(n, 1)));
  const double half = std::ceil(std::sqrt(static_cast<double>(d_prime)) / (2.0 * eps));
  const double lattice = std::pow(2.0 * half + 1.0, static_cast<double>(d_prime));
  return static_cast<double>(k) * thresholds * lattice;
}

Projection JlProject(const Dataset& data, std::size_t d_prime, SeededRng& rng) {
  if (d_prime == 0) throw InvalidArgumentError("JlProject: d' must be >= 1");
  const std::size_t d = data.dim();
  const double scale = 1.0 / std::sqrt(static_cast<double>(d_prime));
  std::vector<double> matrix(d_prime * d);
  for (double& a : matrix) a = rng.Normal() * scale;

  Projection out{Dataset(d_prime), ProjectionClampRadius(data.size()), 0};
  std::vector<double> coords(d_prime);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Point& p = data.point(i);
    for (std::size_t r = 0; r < d_prime; ++r) {
      double sum = 0.0;
      for (std::size_t c = 0; c < d; ++c) sum += matrix[r * d + c] * p[c];
      coords[r] = sum;
    }
    Point projected(coords);
    if (Norm(projected) > out.clamp_radius) {
      ++out.clamped;
      projected = ClampToBall(projected, out.clamp_radius);
    }
    out.data.Add(std::move(projected), data.weight(i));
  }
  return out;
}

Dataset SnapAndWeight(const Dataset& projected, const CenterSet& centers,
                      std::span<const std::int64_t> counts) {
  if (counts.size() != centers.size()) {
    throw InvalidArgumentError("SnapAndWeight: counts length differs from centers");
  }
  if (projected.dim() != centers.dim()) {
    throw InvalidArgumentError("SnapAndWeight: dimension mismatch");
  }
  Dataset snapped(centers.dim());
  for (std::size_t j = 0; j < centers.size(); ++j) {
    if (counts[j] < 0) throw InvalidArgumentError("SnapAndWeight: negative count");
    if (counts[j] > 0) snapped.Add(centers[j], static_cast<double>(counts[j]));
  }
  if (snapped.empty()) {
    throw DegenerateInstanceError("SnapAndWeight: every noisy count is zero");
  }
  return snapped;
}

PipelineResult RunPipeline(const Dataset& data, const PipelineConfig& config,
                           const PrivacyBudget& budget, SeededRng& rng) {
  config.Validate();
  budget.Validate();
  if (data.empty()) throw InvalidArgumentError("pipeline: empty dataset");
  if (!(budget.delta_p > 0.0)) {
    throw InvalidArgumentError("pipeline: delta_p must be positive for center recovery");
  }
  for (const Point& p : data.points()) {
    if (Norm(p) > 1.0 + kUnitBallSlack) {
      throw InvalidArgumentError("pipeline: data must lie inside B(0, 1); use normalization");
    }
  }

  PipelineReport report;
  report.seed = rng.seed();
  report.n = data.size();
  report.dim = data.dim();
  report.k = config.k;
  report.declared = budget;
  StageClock clock(report.timings);

  const auto [s_bicriteria, s_counts, s_recover] = config.budget_split;
  const double delta_bicriteria = budget.delta_p * s_bicriteria / (s_bicriteria + s_recover);
  const double delta_recover = budget.delta_p * s_recover / (s_bicriteria + s_recover);

  // Step 1.
  report.d_prime = ProjectedDimension(config, data.dim());
  Projection projection = JlProject(data, report.d_prime, rng);
  const Dataset& projected = projection.data;
  report.clamp_radius = projection.clamp_radius;
  report.clamped_points = projection.clamped;
  clock.Lap("project");

  // Step 2.
  report.k_prime_formula = BicriteriaCenterCount(config.k, report.d_prime, config.eps, data.size());
  const std::size_t k_prime = static_cast<std::size_t>(std::max(
      static_cast<double>(config.k),
      std::min(report.k_prime_formula, static_cast<double>(config.max_bicriteria_centers))));
  BicriteriaOptions options;
  options.min_candidates = config.k;
  options.clip_radius = std::min(report.clamp_radius, 1.0 + config.eps);
  const BicriteriaResult bicriteria = PrivateBicriteriaKMedian(
      projected, k_prime, {budget.eps_p * s_bicriteria, delta_bicriteria},
      report.clamp_radius, config.eps, rng, report.ledger, "step2_bicriteria", options);
  const CenterSet& wide = bicriteria.centers;
  report.k_prime = wide.size();
  report.candidate_source = bicriteria.source;
  report.num_candidates = bicriteria.num_candidates;
  report.bicriteria_cost = Cost(projected, wide);
  clock.Lap("bicriteria");

  // Step 3.
  const Assignment assignment = Assign(projected, wide);
  const double eps_counts = budget.eps_p * s_counts;
  report.noisy_counts = NoisyCounts(assignment.per_center_count, eps_counts, rng);
  report.ledger.Record("step3_noisy_counts", {eps_counts, 0.0});
  clock.Lap("counts");

  // Step 4. Zero-count centers only re-enter as (weightless) candidates when
  // fewer than k centers survived.
  const Dataset snapped = SnapAndWeight(projected, wide, report.noisy_counts);
  report.snapped_points = snapped.size();
  CenterSet candidates(snapped.points());
  for (std::size_t j = 0; j < wide.size() && candidates.size() < config.k; ++j) {
    if (report.noisy_counts[j] == 0) candidates.Add(wide[j]);
  }
  const SolverResult solved = LocalSearchKMedian(snapped, config.k, candidates);
  report.snapped_cost = solved.cost;
  clock.Lap("snap_and_solve");

  // Step 5.
  const Assignment clusters = Assign(projected, solved.centers);
  const PrivacyBudget per_cluster = {budget.eps_p * s_recover / static_cast<double>(config.k),
                                     delta_recover / static_cast<double>(config.k)};
  CenterSet final_centers(data.dim());
  std::vector<Point> members;
  std::vector<double> member_weights;
  for (std::size_t j = 0; j < config.k; ++j) {
    members.clear();
    member_weights.clear();
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (clusters.owner[i] == j && data.weight(i) > 0.0) {
        members.push_back(data.point(i));
        member_weights.push_back(data.weight(i));
      }
    }
    report.cluster_sizes.push_back(members.size());
    report.ledger.Record("step5_recover_cluster_" + std::to_string(j), per_cluster);
    if (members.empty()) {
      ++report.empty_clusters;
      final_centers.Add(Point::Zero(data.dim()));
      continue;
    }
    final_centers.Add(PrivateGeometricMedian(members, member_weights, per_cluster, 1.0, rng,
                                             kStep5Iterations));
  }
  report.final_cost = Cost(data, final_centers);
  clock.Lap("recover");

  return {std::move(final_centers), std::move(report)};
}

}  // namespace dpkm
