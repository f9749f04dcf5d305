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

#ifndef DPKM_DATASET_IO_H_
#define DPKM_DATASET_IO_H_

#include <istream>
#include <string>
#include <vector>

#include "dpkm/geometry.h"

namespace dpkm {

// normalized = (original - shift) * scale.
struct AffineMap {
  std::vector<double> shift;
  double scale = 1.0;

  static AffineMap Identity(std::size_t dim);
  Point ToNormalized(const Point& p) const;
  Point ToOriginal(const Point& p) const;
};

struct LoadedDataset {
  Dataset data;              // normalized when requested
  Dataset original;          // as read
  AffineMap map;
  bool normalized = false;
  bool weighted = false;     // a `weight` column was present
  std::vector<std::string> header;
};

// Reads one point per row. The first row is a header when any of its fields
// is non-numeric; a header column named `weight` holds multiplicities. When
// `normalize` is set the points are translated to their weighted centroid and
// scaled so the largest norm is 1. Throws ParseError (with the line number)
// on ragged rows, non-numeric fields or a file without data rows.
LoadedDataset ParseDataset(std::istream& in, bool normalize);
LoadedDataset LoadDataset(const std::string& path, bool normalize);

}  // namespace dpkm

#endif  // DPKM_DATASET_IO_H_
