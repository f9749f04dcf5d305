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

#include "dpkm/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "dpkm/errors.h"

namespace dpkm {
namespace {

void CheckSameDim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw InvalidArgumentError(std::string(what) + ": dimension mismatch (" +
                               std::to_string(a) + " vs " + std::to_string(b) +
                               ")");
  }
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InvalidArgumentError("Point: dimension must be >= 1");
  for (double x : coords_) {
    if (!std::isfinite(x)) throw InvalidArgumentError("Point: non-finite coordinate");
  }
}

Point::Point(std::initializer_list<double> coords)
    : Point(std::vector<double>(coords)) {}

Point Point::Zero(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

Dataset::Dataset(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InvalidArgumentError("Dataset: dimension must be >= 1");
}

Dataset::Dataset(std::vector<Point> points)
    : Dataset(std::move(points), std::vector<double>()) {}

Dataset::Dataset(std::vector<Point> points, std::vector<double> weights) {
  if (points.empty()) {
    throw InvalidArgumentError("Dataset: cannot infer dimension from no points");
  }
  if (weights.empty()) weights.assign(points.size(), 1.0);
  if (weights.size() != points.size()) {
    throw InvalidArgumentError("Dataset: weights length differs from points length");
  }
  dim_ = points.front().dim();
  points_.reserve(points.size());
  weights_.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    Add(std::move(points[i]), weights[i]);
  }
  if (!(TotalWeight() > 0.0)) {
    throw InvalidArgumentError("Dataset: total weight must be positive");
  }
}

void Dataset::Add(Point p, double weight) {
  CheckSameDim(dim_, p.dim(), "Dataset::Add");
  if (!std::isfinite(weight) || weight < 0.0) {
    throw InvalidArgumentError("Dataset: weights must be finite and non-negative");
  }
  points_.push_back(std::move(p));
  weights_.push_back(weight);
}

double Dataset::TotalWeight() const {
  double total = 0.0;
  for (double w : weights_) total += w;
  return total;
}

CenterSet::CenterSet(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InvalidArgumentError("CenterSet: dimension must be >= 1");
}

CenterSet::CenterSet(std::vector<Point> centers) {
  if (centers.empty()) {
    throw InvalidArgumentError("CenterSet: cannot infer dimension from no centers");
  }
  dim_ = centers.front().dim();
  centers_.reserve(centers.size());
  for (Point& c : centers) Add(std::move(c));
}

void CenterSet::Add(Point c) {
  CheckSameDim(dim_, c.dim(), "CenterSet::Add");
  centers_.push_back(std::move(c));
}

double SquaredDistance(const Point& p, const Point& q) {
  CheckSameDim(p.dim(), q.dim(), "Distance");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const double diff = p[i] - q[i];
    sum += diff * diff;
  }
  return sum;
}

double Distance(const Point& p, const Point& q) {
  return std::sqrt(SquaredDistance(p, q));
}

double Norm(const Point& p) {
  double sum = 0.0;
  for (double x : p.coords()) sum += x * x;
  return std::sqrt(sum);
}

double DistanceToSet(const Point& p, const CenterSet& centers) {
  if (centers.empty()) throw InvalidArgumentError("DistanceToSet: empty center set");
  double best = std::numeric_limits<double>::infinity();
  for (const Point& c : centers.centers()) {
    const double d = Distance(p, c);
    if (d < best) best = d;
  }
  return best;
}

double Cost(const Dataset& data, const CenterSet& centers) {
  if (centers.empty()) throw InvalidArgumentError("Cost: empty center set");
  CheckSameDim(data.dim(), centers.dim(), "Cost");
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    total += data.weight(i) * DistanceToSet(data.point(i), centers);
  }
  return total;
}

Assignment Assign(const Dataset& data, const CenterSet& centers) {
  if (centers.empty()) throw InvalidArgumentError("Assign: empty center set");
  CheckSameDim(data.dim(), centers.dim(), "Assign");
  Assignment out;
  out.owner.resize(data.size());
  out.per_center_count.assign(centers.size(), 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < centers.size(); ++j) {
      const double d = Distance(data.point(i), centers[j]);
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    out.owner[i] = best;
    out.per_center_count[best] += data.weight(i);
  }
  return out;
}

std::size_t CoverHalfWidth(std::size_t dim, double radius, double cover_radius) {
  if (!(cover_radius > 0.0)) {
    throw InvalidArgumentError("CoverBall: cover_radius must be positive");
  }
  if (!(radius >= 0.0)) throw InvalidArgumentError("CoverBall: radius must be >= 0");
  const double spacing = 2.0 * cover_radius / std::sqrt(static_cast<double>(dim));
  return static_cast<std::size_t>(std::ceil(radius / spacing));
}

double CoverSizeBound(std::size_t dim, double radius, double cover_radius) {
  const double side = 2.0 * static_cast<double>(CoverHalfWidth(dim, radius, cover_radius)) + 1.0;
  return std::pow(side, static_cast<double>(dim));
}

std::vector<Point> CoverBall(const Point& center, double radius, double cover_radius) {
  const std::size_t dim = center.dim();
  const long half = static_cast<long>(CoverHalfWidth(dim, radius, cover_radius));
  const double spacing = 2.0 * cover_radius / std::sqrt(static_cast<double>(dim));
  // Keep lattice offsets z with spacing * |z| <= radius + cover_radius; the
  // comparison is done on the integer |z|^2 with a relative slack.
  const double reach = (radius + cover_radius) / spacing;
  const double limit = reach * reach * (1.0 + 1e-12);

  std::vector<Point> out;
  std::vector<long> z(dim, -half);
  std::vector<double> coords(dim);
  while (true) {
    double norm_sq = 0.0;
    for (long v : z) norm_sq += static_cast<double>(v) * static_cast<double>(v);
    if (norm_sq <= limit) {
      for (std::size_t i = 0; i < dim; ++i) {
        coords[i] = center[i] + spacing * static_cast<double>(z[i]);
      }
      out.emplace_back(coords);
    }
    std::size_t axis = 0;
    while (axis < dim && z[axis] == half) {
      z[axis] = -half;
      ++axis;
    }
    if (axis == dim) break;
    ++z[axis];
  }
  return out;
}

std::vector<Point> DeduplicatePoints(std::vector<Point> points, double tol) {
  // Points are bucketed on a grid whose cells are much wider than `tol`, so a
  // near-duplicate can only sit in a neighbouring cell along axes where the
  // point is within `tol` of a cell wall.
  const double cell = std::max(1e6 * tol, 1e-9);
  std::map<std::vector<long long>, std::vector<std::size_t>> buckets;
  std::vector<Point> kept;
  kept.reserve(points.size());

  for (Point& p : points) {
    const std::size_t dim = p.dim();
    std::vector<long long> key(dim);
    std::vector<std::size_t> edge_axes;
    std::vector<int> edge_dirs;
    for (std::size_t i = 0; i < dim; ++i) {
      // Cells are centred on multiples of `cell` so exact zeros never sit on
      // a wall.
      const double scaled = p[i] / cell;
      const double nearest = std::floor(scaled + 0.5);
      key[i] = static_cast<long long>(nearest);
      const double offset = scaled - nearest;
      if ((0.5 - std::abs(offset)) * cell <= tol) {
        edge_axes.push_back(i);
        edge_dirs.push_back(offset < 0.0 ? -1 : +1);
      }
    }

    bool duplicate = false;
    const std::size_t variants = std::size_t{1} << edge_axes.size();
    for (std::size_t mask = 0; mask < variants && !duplicate; ++mask) {
      std::vector<long long> probe = key;
      for (std::size_t b = 0; b < edge_axes.size(); ++b) {
        if (mask & (std::size_t{1} << b)) probe[edge_axes[b]] += edge_dirs[b];
      }
      auto it = buckets.find(probe);
      if (it == buckets.end()) continue;
      for (std::size_t idx : it->second) {
        if (Distance(kept[idx], p) <= tol) {
          duplicate = true;
          break;
        }
      }
    }
    if (duplicate) continue;
    buckets[key].push_back(kept.size());
    kept.push_back(std::move(p));
  }
  return kept;
}

Point ClampToBall(const Point& p, double radius) {
  if (!(radius > 0.0)) throw InvalidArgumentError("ClampToBall: radius must be positive");
  const double norm = Norm(p);
  if (norm <= radius) return p;
  std::vector<double> coords(p.coords().begin(), p.coords().end());
  const double scale = radius / norm;
  for (double& x : coords) x *= scale;
  return Point(std::move(coords));
}

}  // namespace dpkm
