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

#ifndef LANELETML_SYNTHETIC_H_
#define LANELETML_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "laneletml/map_model.h"
#include "laneletml/pose.h"

namespace laneletml {

// Rectangular grid of parallel lanes heading along +x. Lane i of segment j is
// bounded by shared linestrings, so neighbouring lanes are adjacent and
// consecutive segments are successors.
struct GridMapOptions {
  std::size_t lanes = 10;
  std::size_t segments = 100;
  double segment_length = 10.0;
  double lane_width = 3.5;
  // Interior vertices per linestring.
  std::size_t interior_points = 1;
  std::uint64_t seed = 1;
  // Draw divider subtypes (dashed, solid, virtual) and outer border types
  // (road_border, curbstone) from the seed; otherwise all dividers are dashed
  // and borders are road_border.
  bool randomize_types = true;
};

LaneletMap makeGridMap(const GridMapOptions& options);

// Grid map with exactly `lanelet_count` lanelets, using up to 10 lanes.
LaneletMap makeSyntheticGridMap(std::size_t lanelet_count,
                                std::uint64_t seed = 1);

// Poses on lane centers with uniformly drawn positions and yaw.
std::vector<ReferencePose> makeSyntheticPoses(const LaneletMap& map,
                                              std::size_t count,
                                              std::uint64_t seed = 1);

}  // namespace laneletml

#endif  // LANELETML_SYNTHETIC_H_
