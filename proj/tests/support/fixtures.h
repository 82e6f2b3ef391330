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

#ifndef LANELETML_TESTS_SUPPORT_FIXTURES_H_
#define LANELETML_TESTS_SUPPORT_FIXTURES_H_

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "laneletml/map_model.h"
#include "laneletml/pose.h"
#include "laneletml/routing.h"

namespace laneletml::testutil {

// Small helper for hand-built maps with explicit IDs.
class MapBuilder {
 public:
  MapBuilder& point(std::int64_t id, double x, double y, double z = 0.0);
  MapBuilder& linestring(std::int64_t id, std::initializer_list<std::int64_t> points,
                         AttributeMap attributes);
  MapBuilder& lanelet(std::int64_t id, std::int64_t left, std::int64_t right,
                      bool left_inverted = false, bool right_inverted = false,
                      AttributeMap attributes = {{"type", "lanelet"},
                                                 {"subtype", "road"}});
  LaneletMap build() const;

  std::vector<Point3d> points;
  std::vector<LineString3d> linestrings;
  std::vector<Lanelet> lanelets;
};

AttributeMap roadBorder();
AttributeMap dashed();
AttributeMap solid();
AttributeMap virtualLine();

// Two chained straight lanelets A=1001, B=1002, 3 m wide, x in [0, 20].
LaneletMap makeMapS2();
// MAP-S2 with z = slope * x on every point.
LaneletMap makeMapS2Ramp(double slope = 0.05);
// A=1001 with successors B=1002 (straight) and C=1003 (diverging right).
LaneletMap makeMapB3();
// Left lane A1=1001, A2=1002 and right lane B1=1003, B2=1004 sharing the
// dashed dividers D1=103, D2=104.
LaneletMap makeMapP4();
// T1=1001, T2=1002; the right boundary changes road_border -> dashed at x=10.
LaneletMap makeMapT();
// Counter-clockwise ring R1..R4 = 1001..1004 around a 20 m inner square.
LaneletMap makeMapR();
// Fork A=1001 -> B=1002 (up) and C=1003 (down). B's right boundary is a
// dashed divider, C's left boundary is virtual.
LaneletMap makeMapFork();

// Lanelet 1001 whose right linestring 102 does not exist.
LaneletMap makeDanglingReferenceMap();
// MAP-S2 with one_way=no on lanelet 1001.
LaneletMap makeBidirectionalMap();

struct CanonicalCase {
  std::string name;
  LaneletMap map;
  ReferencePose pose;
  RoiSpec roi;
};

// Every canonical map with a pose and a 50 m ROI that contains it entirely.
std::vector<CanonicalCase> canonicalCases();

// Random grid map with at most 12 lanelets, randomized boundary types, and a
// pose near it.
CanonicalCase randomGridCase(std::uint64_t seed);

RoiSpec squareRoi(double half_extent);

}  // namespace laneletml::testutil

#endif  // LANELETML_TESTS_SUPPORT_FIXTURES_H_
