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

#ifndef DPKM_MECHANISMS_H_
#define DPKM_MECHANISMS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dpkm/random.h"

namespace dpkm {

// One draw from Laplace(0, scale) by inverting the CDF at a single uniform.
double LaplaceSample(double scale, SeededRng& rng);

// Adds Laplace(1/eps) to every count (each individual moves one count by at
// most 1), rounds to the nearest integer and clamps negatives to 0.
std::vector<std::int64_t> NoisyCounts(std::span<const double> counts, double eps,
                                      SeededRng& rng);

// Samples i with probability proportional to
// exp(eps * scores[i] / (2 * sensitivity)). eps == 0 gives the uniform
// distribution.
std::size_t ExponentialMechanism(std::span<const double> scores, double sensitivity,
                                 double eps, SeededRng& rng);

// Smallest noise standard deviation for which the Gaussian mechanism with the
// given L2 sensitivity is (eps, delta)-DP, using the exact privacy profile of
// the Gaussian mechanism (valid for every eps > 0, not only eps < 1).
double GaussianSigma(double l2_sensitivity, double eps, double delta);

}  // namespace dpkm

#endif  // DPKM_MECHANISMS_H_
