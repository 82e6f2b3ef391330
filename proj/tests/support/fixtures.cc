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

#include "fixtures.h"

#include <random>

#include "laneletml/synthetic.h"

namespace laneletml::testutil {

MapBuilder& MapBuilder::point(std::int64_t id, double x, double y, double z) {
  points.push_back({ElementId(id), x, y, z});
  return *this;
}

MapBuilder& MapBuilder::linestring(std::int64_t id,
                                   std::initializer_list<std::int64_t> ids,
                                   AttributeMap attributes) {
  LineString3d ls;
  ls.id = ElementId(id);
  for (std::int64_t p : ids) ls.points.push_back(ElementId(p));
  ls.attributes = std::move(attributes);
  linestrings.push_back(std::move(ls));
  return *this;
}

MapBuilder& MapBuilder::lanelet(std::int64_t id, std::int64_t left,
                                std::int64_t right, bool left_inverted,
                                bool right_inverted, AttributeMap attributes) {
  lanelets.push_back({ElementId(id),
                      {ElementId(left), left_inverted},
                      {ElementId(right), right_inverted},
                      std::move(attributes)});
  return *this;
}

LaneletMap MapBuilder::build() const {
  return LaneletMap(points, linestrings, lanelets);
}

AttributeMap roadBorder() { return {{"type", "road_border"}}; }
AttributeMap dashed() { return {{"type", "line_thin"}, {"subtype", "dashed"}}; }
AttributeMap solid() { return {{"type", "line_thin"}, {"subtype", "solid"}}; }
AttributeMap virtualLine() { return {{"type", "virtual"}}; }

namespace {

MapBuilder s2Builder(double slope) {
  MapBuilder b;
  b.point(1, 0, 0, 0).point(2, 10, 0, 10 * slope).point(3, 20, 0, 20 * slope);
  b.point(4, 0, 3, 0).point(5, 10, 3, 10 * slope).point(6, 20, 3, 20 * slope);
  b.linestring(101, {4, 5}, roadBorder()).linestring(102, {1, 2}, roadBorder());
  b.linestring(103, {5, 6}, roadBorder()).linestring(104, {2, 3}, roadBorder());
  b.lanelet(1001, 101, 102).lanelet(1002, 103, 104);
  return b;
}

}  // namespace

LaneletMap makeMapS2() { return s2Builder(0.0).build(); }

LaneletMap makeMapS2Ramp(double slope) { return s2Builder(slope).build(); }

LaneletMap makeMapB3() {
  MapBuilder b;
  b.point(1, 0, 0).point(2, 10, 0).point(3, 20, 0);
  b.point(4, 0, 3).point(5, 10, 3).point(6, 20, 3);
  b.point(7, 15, 1).point(8, 20, -1).point(9, 20, -4);
  b.linestring(101, {4, 5}, roadBorder()).linestring(102, {1, 2}, roadBorder());
  b.linestring(103, {5, 6}, roadBorder()).linestring(104, {2, 3}, roadBorder());
  b.linestring(105, {5, 7, 8}, roadBorder());
  b.linestring(106, {2, 9}, roadBorder());
  b.lanelet(1001, 101, 102).lanelet(1002, 103, 104).lanelet(1003, 105, 106);
  return b.build();
}

LaneletMap makeMapP4() {
  MapBuilder b;
  b.point(1, 0, 0).point(2, 10, 0).point(3, 20, 0);
  b.point(4, 0, 3).point(5, 10, 3).point(6, 20, 3);
  b.point(7, 0, 6).point(8, 10, 6).point(9, 20, 6);
  b.linestring(101, {1, 2}, roadBorder()).linestring(102, {2, 3}, roadBorder());
  b.linestring(103, {4, 5}, dashed()).linestring(104, {5, 6}, dashed());
  b.linestring(105, {7, 8}, roadBorder()).linestring(106, {8, 9}, roadBorder());
  b.lanelet(1001, 105, 103).lanelet(1002, 106, 104);
  b.lanelet(1003, 103, 101).lanelet(1004, 104, 102);
  return b.build();
}

LaneletMap makeMapT() {
  MapBuilder b;
  b.point(1, 0, 0).point(2, 10, 0).point(3, 20, 0);
  b.point(4, 0, 3).point(5, 10, 3).point(6, 20, 3);
  b.linestring(101, {4, 5}, roadBorder()).linestring(102, {1, 2}, roadBorder());
  b.linestring(103, {5, 6}, roadBorder()).linestring(104, {2, 3}, dashed());
  b.lanelet(1001, 101, 102).lanelet(1002, 103, 104);
  return b.build();
}

LaneletMap makeMapR() {
  MapBuilder b;
  // Inner (left) corners 1..4 and outer (right) corners 5..8, counter-
  // clockwise from the lower left.
  b.point(1, -10, -10).point(2, 10, -10).point(3, 10, 10).point(4, -10, 10);
  b.point(5, -13, -13).point(6, 13, -13).point(7, 13, 13).point(8, -13, 13);
  b.linestring(101, {1, 2}, roadBorder()).linestring(102, {5, 6}, roadBorder());
  b.linestring(103, {2, 3}, roadBorder()).linestring(104, {6, 7}, roadBorder());
  b.linestring(105, {3, 4}, roadBorder()).linestring(106, {7, 8}, roadBorder());
  b.linestring(107, {4, 1}, roadBorder()).linestring(108, {8, 5}, roadBorder());
  b.lanelet(1001, 101, 102).lanelet(1002, 103, 104);
  b.lanelet(1003, 105, 106).lanelet(1004, 107, 108);
  return b.build();
}

LaneletMap makeMapFork() {
  MapBuilder b;
  b.point(1, 0, 0).point(2, 10, 0).point(3, 0, 3).point(4, 10, 3);
  b.point(5, 30, 13).point(6, 30, 10).point(7, 30, -7).point(8, 30, -10);
  b.linestring(101, {3, 4}, roadBorder()).linestring(102, {1, 2}, roadBorder());
  b.linestring(103, {4, 5}, roadBorder()).linestring(104, {2, 6}, dashed());
  b.linestring(105, {4, 7}, virtualLine());
  b.linestring(106, {2, 8}, roadBorder());
  b.lanelet(1001, 101, 102).lanelet(1002, 103, 104).lanelet(1003, 105, 106);
  return b.build();
}

LaneletMap makeDanglingReferenceMap() {
  MapBuilder b;
  b.point(1, 0, 0).point(2, 10, 0).point(4, 0, 3).point(5, 10, 3);
  b.linestring(101, {4, 5}, roadBorder());
  b.lanelet(1001, 101, 102);
  return b.build();
}

LaneletMap makeBidirectionalMap() {
  MapBuilder b = s2Builder(0.0);
  b.lanelets[0].attributes["one_way"] = "no";
  return b.build();
}

RoiSpec squareRoi(double half_extent) {
  RoiSpec roi;
  roi.forward = roi.backward = roi.left = roi.right = half_extent;
  return roi;
}

std::vector<CanonicalCase> canonicalCases() {
  const RoiSpec roi = squareRoi(50.0);
  std::vector<CanonicalCase> cases;
  cases.push_back({"MAP-S2", makeMapS2(), {10, 1.5, 0}, roi});
  cases.push_back({"MAP-B3", makeMapB3(), {10, 1.5, 0}, roi});
  cases.push_back({"MAP-P4", makeMapP4(), {10, 3, 0}, roi});
  cases.push_back({"MAP-T", makeMapT(), {10, 1.5, 0}, roi});
  cases.push_back({"MAP-R", makeMapR(), {0, 0, 0}, roi});
  cases.push_back({"MAP-FORK", makeMapFork(), {10, 1.5, 0}, roi});
  return cases;
}

CanonicalCase randomGridCase(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GridMapOptions options;
  options.lanes = 1 + rng() % 3;
  options.segments = 1 + rng() % (12 / options.lanes);
  options.segment_length = 8.0 + static_cast<double>(rng() % 9);
  options.lane_width = 3.0 + 0.25 * static_cast<double>(rng() % 4);
  options.interior_points = rng() % 3;
  options.seed = seed;
  CanonicalCase c;
  c.name = "grid-" + std::to_string(seed);
  c.map = makeGridMap(options);
  // Poses anywhere over the grid with a ROI small enough to cut it.
  const double length =
      options.segment_length * static_cast<double>(options.segments);
  const double width = options.lane_width * static_cast<double>(options.lanes);
  const auto unit = [&rng] {
    return static_cast<double>(rng() % 10001) / 10000.0;
  };
  c.pose.x = unit() * length;
  c.pose.y = unit() * width;
  c.pose.yaw = (unit() * 2.0 - 1.0) * 3.14159;
  c.roi.forward = 5.0 + unit() * 20.0;
  c.roi.backward = 5.0 + unit() * 20.0;
  c.roi.left = 2.0 + unit() * 10.0;
  c.roi.right = 2.0 + unit() * 10.0;
  return c;
}

}  // namespace laneletml::testutil
