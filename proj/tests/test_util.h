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

#ifndef DPKM_TESTS_TEST_UTIL_H_
#define DPKM_TESTS_TEST_UTIL_H_

#include <cmath>
#include <cstddef>
#include <sstream>
#include <vector>

#include "dpkm/dataset_io.h"
#include "dpkm/geometry.h"
#include "dpkm/random.h"

namespace dpkm::testing {

inline Point RandomPoint(std::size_t dim, SeededRng& rng, double lo = -1.0, double hi = 1.0) {
  std::vector<double> v(dim);
  for (double& x : v) x = lo + (hi - lo) * rng.Uniform();
  return Point(std::move(v));
}

// Uniform in the closed ball: Gaussian direction, radius scaled by U^(1/d).
inline Point UniformInBall(const Point& center, double radius, SeededRng& rng) {
  const std::size_t dim = center.dim();
  std::vector<double> v(dim);
  double sq = 0.0;
  while (sq == 0.0) {
    for (double& x : v) {
      x = rng.Normal();
      sq += x * x;
    }
  }
  const double r = radius * std::pow(rng.Uniform(), 1.0 / static_cast<double>(dim)) /
                   std::sqrt(sq);
  for (std::size_t i = 0; i < dim; ++i) v[i] = center[i] + r * v[i];
  return Point(std::move(v));
}

inline Dataset RandomDataset(std::size_t n, std::size_t dim, SeededRng& rng,
                             double lo = -1.0, double hi = 1.0) {
  Dataset data(dim);
  for (std::size_t i = 0; i < n; ++i) data.Add(RandomPoint(dim, rng, lo, hi));
  return data;
}

// k spherical Gaussian clusters whose means sit at distance `mean_radius`
// from the origin in random directions.
inline Dataset GaussianMixture(std::size_t n, std::size_t dim, std::size_t k,
                               double mean_radius, double spread, SeededRng& rng) {
  std::vector<std::vector<double>> means(k, std::vector<double>(dim));
  for (auto& m : means) {
    double sq = 0.0;
    for (double& x : m) {
      x = rng.Normal();
      sq += x * x;
    }
    for (double& x : m) x *= mean_radius / std::sqrt(sq);
  }
  Dataset data(dim);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& m = means[i % k];
    std::vector<double> v(dim);
    for (std::size_t j = 0; j < dim; ++j) v[j] = m[j] + spread * rng.Normal();
    data.Add(Point(std::move(v)));
  }
  return data;
}

// Normalizes through the CSV loader, exactly as `--normalize` does.
inline Dataset NormalizeLikeCli(const Dataset& data) {
  std::ostringstream csv;
  csv.precision(17);
  for (const Point& p : data.points()) {
    for (std::size_t j = 0; j < p.dim(); ++j) csv << (j ? "," : "") << p[j];
    csv << "\n";
  }
  std::istringstream in(csv.str());
  return ParseDataset(in, /*normalize=*/true).data;
}

}  // namespace dpkm::testing

#endif  // DPKM_TESTS_TEST_UTIL_H_
