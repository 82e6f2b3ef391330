/*
 * Copyright 2026 The laneletml Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "laneletml/geometry.h"

#include <algorithm>

#include "laneletml/errors.h"

namespace laneletml {

void Box2d::extend(double x, double y) {
  min_x = std::min(min_x, x);
  min_y = std::min(min_y, y);
  max_x = std::max(max_x, x);
  max_y = std::max(max_y, y);
}

void Box2d::extend(const Box2d& other) {
  if (other.empty()) return;
  extend(other.min_x, other.min_y);
  extend(other.max_x, other.max_y);
}

Box2d Box2d::inflated(double margin) const {
  if (empty()) return *this;
  return Box2d{min_x - margin, min_y - margin, max_x + margin, max_y + margin};
}

bool Box2d::intersects(const Box2d& other) const {
  if (empty() || other.empty()) return false;
  return min_x <= other.max_x && other.min_x <= max_x &&
         min_y <= other.max_y && other.min_y <= max_y;
}

bool Box2d::contains(double x, double y) const {
  return x >= min_x && x <= max_x && y >= min_y && y <= max_y;
}

Box2d boundingBox(std::span<const Vec3> polyline) {
  Box2d box;
  for (const Vec3& p : polyline) box.extend(p);
  return box;
}

double polylineLength(std::span<const Vec3> polyline) {
  double length = 0.0;
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    length += (polyline[i] - polyline[i - 1]).norm();
  }
  return length;
}

std::vector<double> cumulativeArcLengths(std::span<const Vec3> polyline) {
  std::vector<double> cumulative(polyline.size(), 0.0);
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    cumulative[i] = cumulative[i - 1] + (polyline[i] - polyline[i - 1]).norm();
  }
  return cumulative;
}

Vec3 pointAtArcLength(std::span<const Vec3> polyline,
                      std::span<const double> cumulative, double s) {
  if (polyline.empty()) return Vec3::Zero();
  if (s <= 0.0) return polyline.front();
  if (s >= cumulative.back()) return polyline.back();
  // Last vertex whose arc length is <= s; zero-length segments are skipped.
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), s);
  const auto i = static_cast<std::size_t>(it - cumulative.begin()) - 1;
  const double segment = cumulative[i + 1] - cumulative[i];
  const double t = (s - cumulative[i]) / segment;
  if (t <= 0.0) return polyline[i];
  if (t >= 1.0) return polyline[i + 1];
  return polyline[i] + t * (polyline[i + 1] - polyline[i]);
}

Polyline3d slicePolyline(std::span<const Vec3> polyline, double from,
                         double to) {
  Polyline3d out;
  if (polyline.empty()) return out;
  const std::vector<double> cumulative = cumulativeArcLengths(polyline);
  from = std::clamp(from, 0.0, cumulative.back());
  to = std::clamp(to, from, cumulative.back());
  out.push_back(pointAtArcLength(polyline, cumulative, from));
  for (std::size_t i = 0; i < polyline.size(); ++i) {
    if (cumulative[i] > from && cumulative[i] < to) out.push_back(polyline[i]);
  }
  out.push_back(pointAtArcLength(polyline, cumulative, to));
  return out;
}

Polyline3d resamplePolyline(std::span<const Vec3> polyline, std::size_t n) {
  if (n < 2) throw DegenerateInputError("resampling needs at least 2 points");
  if (polyline.size() < 2) {
    throw DegenerateInputError("cannot resample a polyline with < 2 points");
  }
  const std::vector<double> cumulative = cumulativeArcLengths(polyline);
  const double total = cumulative.back();
  if (!(total > 0.0)) {
    throw DegenerateInputError("cannot resample a zero-length polyline");
  }
  Polyline3d out;
  out.reserve(n);
  out.push_back(polyline.front());
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double s = total * static_cast<double>(k) / static_cast<double>(n - 1);
    out.push_back(pointAtArcLength(polyline, cumulative, s));
  }
  out.push_back(polyline.back());
  return out;
}

void appendDeduplicated(Polyline3d& chain, std::span<const Vec3> tail,
                        double tolerance) {
  if (tail.empty()) return;
  std::size_t start = 0;
  if (!chain.empty() && (chain.back() - tail.front()).norm() <= tolerance) {
    start = 1;
  }
  chain.insert(chain.end(), tail.begin() + static_cast<std::ptrdiff_t>(start),
               tail.end());
}

}  // namespace laneletml
