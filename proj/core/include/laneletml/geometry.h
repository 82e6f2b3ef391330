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

#ifndef LANELETML_GEOMETRY_H_
#define LANELETML_GEOMETRY_H_

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace laneletml {

using Vec3 = Eigen::Vector3d;
using Polyline3d = std::vector<Vec3>;

// Axis-aligned box in the xy plane. Default constructed boxes are empty.
struct Box2d {
  double min_x = std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();

  bool empty() const { return min_x > max_x || min_y > max_y; }
  void extend(double x, double y);
  void extend(const Vec3& p) { extend(p.x(), p.y()); }
  void extend(const Box2d& other);
  Box2d inflated(double margin) const;
  // Closed-interval intersection test; empty boxes never intersect.
  bool intersects(const Box2d& other) const;
  bool contains(double x, double y) const;
};

Box2d boundingBox(std::span<const Vec3> polyline);

double polylineLength(std::span<const Vec3> polyline);

// cumulative[i] is the 3D arc length from the first vertex to vertex i.
std::vector<double> cumulativeArcLengths(std::span<const Vec3> polyline);

// Point at arc length `s`, clamped to [0, length]. Returns vertices exactly
// when `s` equals their cumulative arc length.
Vec3 pointAtArcLength(std::span<const Vec3> polyline,
                      std::span<const double> cumulative, double s);

// Sub-polyline between arc lengths [from, to]; interior vertices are kept
// verbatim and the end points are interpolated.
Polyline3d slicePolyline(std::span<const Vec3> polyline, double from,
                         double to);

// n points at equal arc-length spacing; first and last are copied exactly.
// Throws DegenerateInputError for n < 2 or a zero-length polyline.
Polyline3d resamplePolyline(std::span<const Vec3> polyline, std::size_t n);

// Appends `tail` to `chain`, skipping tail's first point when it coincides
// with chain's last point within `tolerance`.
void appendDeduplicated(Polyline3d& chain, std::span<const Vec3> tail,
                        double tolerance = 1e-6);

}  // namespace laneletml

#endif  // LANELETML_GEOMETRY_H_
