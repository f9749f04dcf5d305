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

#include "dpkm/dataset_io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <utility>

#include "dpkm/errors.h"

namespace dpkm {
namespace {

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(Trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::optional<double> ParseNumber(const std::string& field) {
  if (field.empty()) return std::nullopt;
  const char* begin = field.data();
  const char* end = begin + field.size();
  if (*begin == '+') ++begin;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace

AffineMap AffineMap::Identity(std::size_t dim) { return {std::vector<double>(dim, 0.0), 1.0}; }

Point AffineMap::ToNormalized(const Point& p) const {
  std::vector<double> out(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) out[i] = (p[i] - shift[i]) * scale;
  return Point(std::move(out));
}

Point AffineMap::ToOriginal(const Point& p) const {
  std::vector<double> out(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) out[i] = p[i] / scale + shift[i];
  return Point(std::move(out));
}

LoadedDataset ParseDataset(std::istream& in, bool normalize) {
  std::vector<std::string> header;
  std::optional<std::size_t> weight_column;
  std::vector<Point> points;
  std::vector<double> weights;
  std::size_t width = 0;
  std::size_t line_number = 0;
  bool first_row = true;

  std::string line;
  while (std::getline(in, line)) {
    ++line_number;
    if (Trim(line).empty()) continue;
    std::vector<std::string> fields = SplitFields(line);

    if (first_row) {
      first_row = false;
      const bool is_header = std::any_of(fields.begin(), fields.end(), [](const auto& f) {
        return !ParseNumber(f).has_value();
      });
      width = fields.size();
      if (is_header) {
        header = fields;
        for (std::size_t c = 0; c < fields.size(); ++c) {
          if (fields[c] == "weight") weight_column = c;
        }
        continue;
      }
    }

    if (fields.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " fields, found " +
                           std::to_string(fields.size()),
                       line_number);
    }
    std::vector<double> coords;
    double weight = 1.0;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const std::optional<double> value = ParseNumber(fields[c]);
      if (!value) {
        throw ParseError("non-numeric field '" + fields[c] + "' in column " + std::to_string(c + 1),
                         line_number);
      }
      if (weight_column && c == *weight_column) {
        if (*value < 0.0) throw ParseError("negative weight", line_number);
        weight = *value;
      } else {
        coords.push_back(*value);
      }
    }
    if (coords.empty()) throw ParseError("row has no coordinates", line_number);
    points.emplace_back(std::move(coords));
    weights.push_back(weight);
  }
  if (points.empty()) throw ParseError("no data rows", std::max<std::size_t>(line_number, 1));

  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) throw ParseError("total weight must be positive", line_number);

  Dataset original(points, weights);
  const std::size_t dim = original.dim();
  AffineMap map = AffineMap::Identity(dim);
  if (normalize) {
    for (std::size_t i = 0; i < original.size(); ++i) {
      for (std::size_t j = 0; j < dim; ++j) map.shift[j] += original.weight(i) * original.point(i)[j];
    }
    for (double& s : map.shift) s /= total;
    double max_norm = 0.0;
    for (const Point& p : original.points()) {
      double sq = 0.0;
      for (std::size_t j = 0; j < dim; ++j) sq += (p[j] - map.shift[j]) * (p[j] - map.shift[j]);
      max_norm = std::max(max_norm, std::sqrt(sq));
    }
    map.scale = max_norm > 0.0 ? 1.0 / max_norm : 1.0;
  }

  Dataset data(dim);
  for (std::size_t i = 0; i < original.size(); ++i) {
    data.Add(normalize ? map.ToNormalized(original.point(i)) : original.point(i),
             original.weight(i));
  }
  return {std::move(data), std::move(original), std::move(map), normalize,
          weight_column.has_value(), std::move(header)};
}

LoadedDataset LoadDataset(const std::string& path, bool normalize) {
  std::ifstream in(path);
  if (!in) throw InvalidArgumentError("cannot open input file '" + path + "'");
  return ParseDataset(in, normalize);
}

}  // namespace dpkm
