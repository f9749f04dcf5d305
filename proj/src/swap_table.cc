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

#include "dpkm/swap_table.h"

#include <algorithm>
#include <limits>

#include "dpkm/errors.h"

namespace dpkm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

SwapTable::SwapTable(const Dataset& data, const CenterSet& candidates)
    : num_candidates_(candidates.size()),
      distances_(data.size() * candidates.size()),
      weights_(data.weights()),
      in_set_(candidates.size(), 0),
      nearest_(data.size(), 0),
      first_(data.size(), kInf),
      second_(data.size(), kInf) {
  if (data.dim() != candidates.dim()) {
    throw InvalidArgumentError("SwapTable: dimension mismatch");
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t c = 0; c < num_candidates_; ++c) {
      distances_[i * num_candidates_ + c] = Distance(data.point(i), candidates[c]);
    }
  }
}

double SwapTable::cost() const {
  double total = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) total += weights_[i] * first_[i];
  return total;
}

double SwapTable::CostWithAdded(std::size_t candidate) const {
  double total = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    total += weights_[i] * std::min(first_[i], distance(i, candidate));
  }
  return total;
}

void SwapTable::Add(std::size_t candidate) {
  chosen_.push_back(candidate);
  in_set_[candidate] = 1;
  Refresh();
}

void SwapTable::SwapCosts(std::size_t candidate, std::span<double> out) const {
  // Replacing center o by c: points whose nearest center is not o keep
  // min(first, d_c); points owned by o move to min(second, d_c).
  double base = 0.0;
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    const double dc = distance(i, candidate);
    if (dc < first_[i]) {
      base += weights_[i] * dc;
    } else {
      base += weights_[i] * first_[i];
      out[nearest_[i]] += weights_[i] * (std::min(dc, second_[i]) - first_[i]);
    }
  }
  for (double& v : out) v += base;
}

void SwapTable::Swap(std::size_t pos, std::size_t candidate) {
  in_set_[chosen_[pos]] = 0;
  chosen_[pos] = candidate;
  in_set_[candidate] = 1;
  Refresh();
}

void SwapTable::Refresh() {
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    double best = kInf;
    double next = kInf;
    std::size_t best_pos = 0;
    for (std::size_t pos = 0; pos < chosen_.size(); ++pos) {
      const double d = distance(i, chosen_[pos]);
      if (d < best) {
        next = best;
        best = d;
        best_pos = pos;
      } else if (d < next) {
        next = d;
      }
    }
    nearest_[i] = best_pos;
    first_[i] = best;
    second_[i] = next;
  }
}

}  // namespace dpkm
