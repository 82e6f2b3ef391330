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

#ifndef LANELETML_SPATIAL_INDEX_H_
#define LANELETML_SPATIAL_INDEX_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "laneletml/geometry.h"

namespace laneletml {

class LaneletMap;

// Uniform grid over the map-frame bounding boxes of lanelet boundaries.
// Entries are positions in LaneletMap::lanelets(). Lanelets whose geometry
// does not resolve have an empty box and are never returned.
class LaneletGridIndex {
 public:
  static constexpr double kDefaultCellSize = 25.0;

  explicit LaneletGridIndex(const LaneletMap& map,
                            double cell_size = kDefaultCellSize);

  // Positions of lanelets whose box intersects `query`, ascending. Falls back
  // to a linear scan when the query covers more cells than there are
  // lanelets.
  std::vector<std::size_t> query(const Box2d& query) const;

  std::span<const Box2d> boxes() const { return boxes_; }
  // Largest distance from a box centre to its corners, over all lanelets.
  double maxHalfDiagonal() const { return max_half_diagonal_; }
  double cellSize() const { return cell_size_; }

 private:
  std::int64_t cellKey(std::int64_t cx, std::int64_t cy) const;
  std::int64_t cellCoord(double v) const;

  double cell_size_;
  std::vector<Box2d> boxes_;
  double max_half_diagonal_ = 0.0;
  std::unordered_map<std::int64_t, std::vector<std::uint32_t>> cells_;
};

}  // namespace laneletml

#endif  // LANELETML_SPATIAL_INDEX_H_
