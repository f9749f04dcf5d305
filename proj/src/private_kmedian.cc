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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "dpkm/errors.h"
#include "dpkm/mechanisms.h"
#include "dpkm/swap_table.h"

namespace dpkm {
namespace {

constexpr double kBallSlack = 1e-9;

void CheckInsideBall(std::span<const Point> points, double radius, const char* who) {
  for (const Point& p : points) {
    if (Norm(p) > radius * (1.0 + kBallSlack) + kBallSlack) {
      throw InvalidArgumentError(std::string(who) + ": data must lie inside B(0, " +
                                 std::to_string(radius) + ")");
    }
  }
}

Point UniformInBall(std::size_t dim, double radius, SeededRng& rng) {
  std::vector<double> v(dim);
  double norm_sq = 0.0;
  for (double& x : v) {
    x = rng.Normal();
    norm_sq += x * x;
  }
  const double r = radius * std::pow(rng.Uniform(), 1.0 / static_cast<double>(dim));
  const double scale = norm_sq > 0.0 ? r / std::sqrt(norm_sq) : 0.0;
  for (double& x : v) x *= scale;
  return Point(std::move(v));
}

std::size_t NearestIndex(const Point& p, const std::vector<Point>& centers) {
  std::size_t best = 0;
  double best_dist = SquaredDistance(p, centers[0]);
  for (std::size_t j = 1; j < centers.size(); ++j) {
    const double d = SquaredDistance(p, centers[j]);
    if (d < best_dist) {
      best_dist = d;
      best = j;
    }
  }
  return best;
}

// Lloyd iterations where each round releases Laplace-noised cell counts and
// Gaussian-noised cell sums of clipped points. Seeds are data independent.
std::vector<Point> NoisyLloydCandidates(const Dataset& data, std::size_t num_seeds,
                                        double ball_radius, double clip_radius,
                                        const PrivacyBudget& budget,
                                        const BicriteriaOptions& options,
                                        SeededRng& rng) {
  const std::size_t dim = data.dim();
  std::vector<Point> seeds;
  seeds.reserve(num_seeds);
  for (std::size_t s = 0; s < num_seeds; ++s) {
    seeds.push_back(UniformInBall(dim, clip_radius, rng));
  }

  const double rounds = static_cast<double>(options.lloyd_rounds);
  const double eps_count = budget.eps_p / (2.0 * rounds);
  const double eps_sum = budget.eps_p / (2.0 * rounds);
  const double sigma = GaussianSigma(clip_radius, eps_sum, budget.delta_p / rounds);
  const double survive =
      std::max(1.0, std::log(static_cast<double>(num_seeds)) / eps_count);

  std::vector<Point> clipped;
  clipped.reserve(data.size());
  for (const Point& p : data.points()) clipped.push_back(ClampToBall(p, clip_radius));

  std::vector<char> alive(num_seeds, 0);
  for (std::size_t round = 0; round < options.lloyd_rounds; ++round) {
    std::vector<double> counts(num_seeds, 0.0);
    std::vector<std::vector<double>> sums(num_seeds, std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < data.size(); ++i) {
      const std::size_t owner = NearestIndex(data.point(i), seeds);
      counts[owner] += data.weight(i);
      for (std::size_t j = 0; j < dim; ++j) {
        sums[owner][j] += data.weight(i) * clipped[i][j];
      }
    }
    for (std::size_t s = 0; s < num_seeds; ++s) {
      const double noisy_count = counts[s] + LaplaceSample(1.0 / eps_count, rng);
      for (double& v : sums[s]) v += sigma * rng.Normal();
      alive[s] = noisy_count >= survive ? 1 : 0;
      if (alive[s]) {
        for (double& v : sums[s]) v /= noisy_count;
        seeds[s] = ClampToBall(Point(std::move(sums[s])), ball_radius);
      }
    }
  }

  std::vector<Point> out;
  for (std::size_t s = 0; s < num_seeds; ++s) {
    if (alive[s]) out.push_back(seeds[s]);
  }
  for (std::size_t s = 0; s < num_seeds && out.size() < options.min_candidates; ++s) {
    if (!alive[s]) out.push_back(seeds[s]);
  }
  return out;
}

}  // namespace

std::vector<Point> BicriteriaLatticeCandidates(std::size_t dim, double ball_radius,
                                               double eps) {
  const Point origin = Point::Zero(dim);
  std::vector<Point> fine = CoverBall(origin, ball_radius, eps * ball_radius / 4.0);
  std::vector<Point> coarse = CoverBall(origin, ball_radius, eps * ball_radius);
  fine.insert(fine.end(), std::make_move_iterator(coarse.begin()),
              std::make_move_iterator(coarse.end()));
  return DeduplicatePoints(std::move(fine));
}

const char* CandidateSourceName(CandidateSource source) {
  switch (source) {
    case CandidateSource::kLattice:
      return "lattice";
    case CandidateSource::kNoisyLloyd:
      return "noisy_lloyd";
  }
  return "unknown";
}

BicriteriaResult PrivateBicriteriaKMedian(const Dataset& data, std::size_t k_prime,
                                          const PrivacyBudget& budget,
                                          double ball_radius, double eps,
                                          SeededRng& rng, BudgetLedger& ledger,
                                          const std::string& stage,
                                          const BicriteriaOptions& options) {
  budget.Validate();
  if (k_prime == 0) throw InvalidArgumentError("PrivateBicriteriaKMedian: k_prime must be >= 1");
  if (data.empty()) throw InvalidArgumentError("PrivateBicriteriaKMedian: empty dataset");
  if (!(ball_radius > 0.0)) {
    throw InvalidArgumentError("PrivateBicriteriaKMedian: ball_radius must be positive");
  }
  if (!(eps > 0.0 && eps <= 0.5)) {
    throw InvalidArgumentError("PrivateBicriteriaKMedian: eps must lie in (0, 1/2]");
  }
  CheckInsideBall(data.points(), ball_radius, "PrivateBicriteriaKMedian");

  BicriteriaResult result{CenterSet(data.dim()), CandidateSource::kLattice, 0, 0};
  std::vector<Point> candidates;
  double init_share = 0.5;
  double swap_share = 0.5;
  if (CoverSizeBound(data.dim(), ball_radius, eps * ball_radius / 4.0) <=
      static_cast<double>(options.max_lattice_candidates)) {
    candidates = BicriteriaLatticeCandidates(data.dim(), ball_radius, eps);
  } else {
    result.source = CandidateSource::kNoisyLloyd;
    if (!(budget.delta_p > 0.0)) {
      throw InvalidArgumentError(
          "PrivateBicriteriaKMedian: delta_p must be positive in high dimension");
    }
    const double clip = options.clip_radius > 0.0
                            ? std::min(options.clip_radius, ball_radius)
                            : ball_radius;
    const PrivacyBudget gen = {budget.eps_p * 0.5, budget.delta_p};
    candidates = NoisyLloydCandidates(data, options.seeds_per_center * k_prime,
                                      ball_radius, clip, gen, options, rng);
    ledger.Record(stage + "/candidates", gen);
    init_share = 0.25;
    swap_share = 0.25;
  }
  result.num_candidates = candidates.size();
  const std::size_t k = std::min(k_prime, candidates.size());
  const CenterSet candidate_set(std::move(candidates));
  if (candidate_set.size() <= k) {
    init_share += swap_share;
    swap_share = 0.0;
  }

  // Initial centers: largest noisy nearest-candidate counts.
  const double eps_init = budget.eps_p * init_share;
  std::vector<double> scores(candidate_set.size(), 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    scores[NearestIndex(data.point(i), candidate_set.centers())] += data.weight(i);
  }
  for (double& s : scores) s += LaplaceSample(1.0 / eps_init, rng);
  ledger.Record(stage + "/init", {eps_init, 0.0});
  std::vector<std::size_t> order(candidate_set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  SwapTable table(data, candidate_set);
  for (std::size_t i = 0; i < k; ++i) table.Add(order[i]);

  if (candidate_set.size() > k) {
    const std::size_t steps = options.swap_steps_per_center * k;
    const double eps_swap = budget.eps_p * swap_share;
    const double eps_step = eps_swap / static_cast<double>(steps);
    const double sensitivity = 2.0 * ball_radius;
    std::vector<double> swap_costs(k);
    std::vector<double> option_scores;
    std::vector<std::pair<std::size_t, std::size_t>> moves;  // (pos, candidate)
    for (std::size_t step = 0; step < steps; ++step) {
      option_scores.clear();
      moves.clear();
      option_scores.push_back(-table.cost());
      moves.emplace_back(k, 0);
      for (std::size_t c = 0; c < candidate_set.size(); ++c) {
        if (table.IsChosen(c)) continue;
        table.SwapCosts(c, swap_costs);
        for (std::size_t pos = 0; pos < k; ++pos) {
          option_scores.push_back(-swap_costs[pos]);
          moves.emplace_back(pos, c);
        }
      }
      const auto [pos, c] =
          moves[ExponentialMechanism(option_scores, sensitivity, eps_step, rng)];
      if (pos < k) table.Swap(pos, c);
    }
    result.swap_steps = steps;
    ledger.Record(stage + "/swaps", {eps_swap, 0.0});
  }

  for (std::size_t c : table.chosen()) result.centers.Add(candidate_set[c]);
  return result;
}

Point PrivateGeometricMedian(std::span<const Point> points,
                             std::span<const double> weights,
                             const PrivacyBudget& budget, double ball_radius,
                             SeededRng& rng, std::size_t steps) {
  budget.Validate();
  if (points.empty()) throw InvalidArgumentError("PrivateGeometricMedian: no points");
  if (!(budget.delta_p > 0.0)) {
    throw InvalidArgumentError("PrivateGeometricMedian: delta_p must be positive");
  }
  if (!(ball_radius > 0.0)) {
    throw InvalidArgumentError("PrivateGeometricMedian: ball_radius must be positive");
  }
  if (steps == 0) throw InvalidArgumentError("PrivateGeometricMedian: steps must be >= 1");
  if (!weights.empty() && weights.size() != points.size()) {
    throw InvalidArgumentError("PrivateGeometricMedian: weights length differs from points");
  }
  CheckInsideBall(points, ball_radius, "PrivateGeometricMedian");

  const std::size_t dim = points.front().dim();
  double total = 0.0;
  double max_weight = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    total += w;
    max_weight = std::max(max_weight, w);
  }
  if (!(total > 0.0)) {
    throw InvalidArgumentError("PrivateGeometricMedian: total weight must be positive");
  }

  const double T = static_cast<double>(steps);
  const double sigma =
      GaussianSigma(2.0 * max_weight / total, budget.eps_p / T, budget.delta_p / T);

  std::vector<double> c(dim, 0.0);
  std::vector<double> grad(dim);
  std::vector<double> average(dim, 0.0);
  for (std::size_t t = 1; t <= steps; ++t) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double w = weights.empty() ? 1.0 : weights[i];
      double dist_sq = 0.0;
      for (std::size_t j = 0; j < dim; ++j) {
        const double diff = c[j] - points[i][j];
        dist_sq += diff * diff;
      }
      if (dist_sq == 0.0) continue;
      const double scale = w / (total * std::sqrt(dist_sq));
      for (std::size_t j = 0; j < dim; ++j) grad[j] += scale * (c[j] - points[i][j]);
    }
    const double step = ball_radius / std::sqrt(static_cast<double>(t));
    double norm_sq = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      c[j] -= step * (grad[j] + sigma * rng.Normal());
      norm_sq += c[j] * c[j];
    }
    const double norm = std::sqrt(norm_sq);
    if (norm > ball_radius) {
      for (double& v : c) v *= ball_radius / norm;
    }
    for (std::size_t j = 0; j < dim; ++j) average[j] += c[j];
  }
  for (double& v : average) v /= T;
  return ClampToBall(Point(std::move(average)), ball_radius);
}

}  // namespace dpkm
