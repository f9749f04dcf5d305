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

#ifndef DPKM_SWAP_TABLE_H_
#define DPKM_SWAP_TABLE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "dpkm/geometry.h"

namespace dpkm {

// Precomputed data-to-candidate distances plus the nearest and second-nearest
// chosen center for every data point. Lets a local search price all
// (out, in) swaps for one incoming candidate in O(n + k).
class SwapTable {
 public:
  SwapTable(const Dataset& data, const CenterSet& candidates);

  std::size_t num_points() const { return weights_.size(); }
  std::size_t num_candidates() const { return num_candidates_; }
  double distance(std::size_t point, std::size_t candidate) const {
    return distances_[point * num_candidates_ + candidate];
  }

  const std::vector<std::size_t>& chosen() const { return chosen_; }
  bool IsChosen(std::size_t candidate) const { return in_set_[candidate] != 0; }
  double cost() const;

  // Cost of chosen() plus `candidate`.
  double CostWithAdded(std::size_t candidate) const;
  void Add(std::size_t candidate);

  // out[pos] = cost after replacing chosen()[pos] with `candidate`.
  void SwapCosts(std::size_t candidate, std::span<double> out) const;
  void Swap(std::size_t pos, std::size_t candidate);

 private:
  void Refresh();

  std::size_t num_candidates_;
  std::vector<double> distances_;
  std::vector<double> weights_;
  std::vector<std::size_t> chosen_;
  std::vector<char> in_set_;
  std::vector<std::size_t> nearest_;  // position in chosen_
  std::vector<double> first_;
  std::vector<double> second_;
};

}  // namespace dpkm

#endif  // DPKM_SWAP_TABLE_H_
