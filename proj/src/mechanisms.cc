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

#include "dpkm/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dpkm/errors.h"

namespace dpkm {
namespace {

// log(Phi(x)) for the standard normal CDF, accurate in the far left tail.
double LogNormalCdf(double x) {
  if (x > -30.0) return std::log(0.5 * std::erfc(-x / std::numbers::sqrt2));
  // Mills-ratio expansion.
  const double x2 = x * x;
  return -0.5 * x2 - std::log(-x) - 0.5 * std::log(2.0 * std::numbers::pi) +
         std::log1p(-1.0 / x2 + 3.0 / (x2 * x2));
}

// delta(sigma) for the Gaussian mechanism: the smallest delta for which
// N(0, sigma^2) noise on an L2-sensitivity-`sens` query is (eps, delta)-DP.
double GaussianDelta(double sens, double eps, double sigma) {
  const double a = sens / (2.0 * sigma);
  const double b = eps * sigma / sens;
  const double first = std::exp(LogNormalCdf(a - b));
  const double second = std::exp(eps + LogNormalCdf(-a - b));
  return first - second;
}

}  // namespace

double LaplaceSample(double scale, SeededRng& rng) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidArgumentError("LaplaceSample: scale must be positive and finite");
  }
  const double u = rng.UniformOpen() - 0.5;
  const double magnitude = -scale * std::log1p(-2.0 * std::abs(u));
  return u < 0.0 ? -magnitude : magnitude;
}

std::vector<std::int64_t> NoisyCounts(std::span<const double> counts, double eps,
                                      SeededRng& rng) {
  if (!(eps > 0.0)) throw InvalidArgumentError("NoisyCounts: eps must be positive");
  std::vector<std::int64_t> out;
  out.reserve(counts.size());
  for (double c : counts) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw InvalidArgumentError("NoisyCounts: counts must be finite and non-negative");
    }
    const double noisy = std::nearbyint(c + LaplaceSample(1.0 / eps, rng));
    out.push_back(noisy <= 0.0 ? 0 : static_cast<std::int64_t>(noisy));
  }
  return out;
}

std::size_t ExponentialMechanism(std::span<const double> scores, double sensitivity,
                                 double eps, SeededRng& rng) {
  if (scores.empty()) throw InvalidArgumentError("ExponentialMechanism: no candidates");
  if (!(sensitivity > 0.0)) {
    throw InvalidArgumentError("ExponentialMechanism: sensitivity must be positive");
  }
  if (!(eps >= 0.0)) throw InvalidArgumentError("ExponentialMechanism: eps must be >= 0");
  double top = scores.front();
  for (double s : scores) {
    if (!std::isfinite(s)) throw InvalidArgumentError("ExponentialMechanism: non-finite score");
    top = std::max(top, s);
  }
  std::vector<double> cumulative(scores.size());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    total += std::exp(eps * (scores[i] - top) / (2.0 * sensitivity));
    cumulative[i] = total;
  }
  const double target = rng.Uniform() * total;
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()),
                               scores.size() - 1);
}

double GaussianSigma(double l2_sensitivity, double eps, double delta) {
  if (!(l2_sensitivity > 0.0)) {
    throw InvalidArgumentError("GaussianSigma: sensitivity must be positive");
  }
  if (!(eps > 0.0)) throw InvalidArgumentError("GaussianSigma: eps must be positive");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidArgumentError("GaussianSigma: delta must lie in (0, 1)");
  }
  // delta(sigma) is decreasing; bisect on log(sigma) for the smallest
  // sigma meeting the target.
  double lo = l2_sensitivity * 1e-8;
  double hi = l2_sensitivity;
  while (GaussianDelta(l2_sensitivity, eps, hi) > delta) hi *= 2.0;
  for (int i = 0; i < 200 && hi / lo > 1.0 + 1e-12; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (GaussianDelta(l2_sensitivity, eps, mid) > delta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace dpkm
