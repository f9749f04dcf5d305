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

#ifndef DPKM_GEOMETRY_H_
#define DPKM_GEOMETRY_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dpkm {

// A point in R^d. Coordinates are finite and d >= 1.
class Point {
 public:
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  static Point Zero(std::size_t dim);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

  bool operator==(const Point& other) const = default;

 private:
  std::vector<double> coords_;
};

// Points with non-negative multiplicities. All points share dim().
class Dataset {
 public:
  explicit Dataset(std::size_t dim);
  // Unit weights. `points` must be non-empty so the dimension is known.
  explicit Dataset(std::vector<Point> points);
  Dataset(std::vector<Point> points, std::vector<double> weights);

  void Add(Point p, double weight = 1.0);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& point(std::size_t i) const { return points_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  double TotalWeight() const;

 private:
  std::size_t dim_;
  std::vector<Point> points_;
  std::vector<double> weights_;
};

// An ordered list of centers sharing one dimension.
class CenterSet {
 public:
  explicit CenterSet(std::size_t dim);
  explicit CenterSet(std::vector<Point> centers);

  void Add(Point c);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return centers_.size(); }
  bool empty() const { return centers_.empty(); }
  const Point& operator[](std::size_t i) const { return centers_[i]; }
  const std::vector<Point>& centers() const { return centers_; }

  bool operator==(const CenterSet& other) const = default;

 private:
  std::size_t dim_;
  std::vector<Point> centers_;
};

struct Assignment {
  std::vector<std::size_t> owner;         // one center index per data point
  std::vector<double> per_center_count;   // summed weight per center
};

double Distance(const Point& p, const Point& q);
double SquaredDistance(const Point& p, const Point& q);
double Norm(const Point& p);

// Distance from p to its nearest center; ties resolved toward lower indices.
double DistanceToSet(const Point& p, const CenterSet& centers);

// Weighted k-median objective: sum_i w_i * min_c |p_i - c|.
double Cost(const Dataset& data, const CenterSet& centers);

// Nearest-center assignment with ties going to the lowest center index.
Assignment Assign(const Dataset& data, const CenterSet& centers);

// Axis-aligned lattice anchored at `center` with spacing
// 2 * cover_radius / sqrt(d), keeping only lattice points within
// radius + cover_radius of `center`. Every point of the closed ball
// B(center, radius) lies within cover_radius of the result.
std::vector<Point> CoverBall(const Point& center, double radius,
                             double cover_radius);

// Half-width (in lattice steps) of the CoverBall lattice along each axis.
std::size_t CoverHalfWidth(std::size_t dim, double radius, double cover_radius);

// (2 * CoverHalfWidth + 1)^d as a double, so callers can test feasibility
// before enumerating.
double CoverSizeBound(std::size_t dim, double radius, double cover_radius);

// Drops every point lying within `tol` (Euclidean) of an earlier kept point.
// Order of first occurrences is preserved.
std::vector<Point> DeduplicatePoints(std::vector<Point> points, double tol = 1e-12);

// Radial projection onto the closed ball B(0, radius).
Point ClampToBall(const Point& p, double radius);

}  // namespace dpkm

#endif  // DPKM_GEOMETRY_H_
