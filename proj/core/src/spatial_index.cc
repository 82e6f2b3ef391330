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

#include "laneletml/spatial_index.h"

#include <algorithm>
#include <cmath>

#include "laneletml/errors.h"
#include "laneletml/map_model.h"

namespace laneletml {
namespace {

Box2d laneletBox(const LaneletMap& map, const Lanelet& lanelet) {
  Box2d box;
  for (const BoundaryRef* ref : {&lanelet.left, &lanelet.right}) {
    const LineString3d* ls = map.findLineString(ref->linestring);
    if (ls == nullptr) return {};
    for (ElementId pid : ls->points) {
      const Point3d* p = map.findPoint(pid);
      if (p == nullptr) return {};
      box.extend(p->x, p->y);
    }
  }
  return box;
}

}  // namespace

LaneletGridIndex::LaneletGridIndex(const LaneletMap& map, double cell_size)
    : cell_size_(cell_size) {
  const auto lanelets = map.lanelets();
  boxes_.reserve(lanelets.size());
  for (std::size_t i = 0; i < lanelets.size(); ++i) {
    const Box2d box = laneletBox(map, lanelets[i]);
    boxes_.push_back(box);
    if (box.empty()) continue;
    max_half_diagonal_ =
        std::max(max_half_diagonal_, 0.5 * std::hypot(box.max_x - box.min_x,
                                                      box.max_y - box.min_y));
    for (std::int64_t cx = cellCoord(box.min_x); cx <= cellCoord(box.max_x);
         ++cx) {
      for (std::int64_t cy = cellCoord(box.min_y); cy <= cellCoord(box.max_y);
           ++cy) {
        cells_[cellKey(cx, cy)].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }
}

std::int64_t LaneletGridIndex::cellCoord(double v) const {
  return static_cast<std::int64_t>(std::floor(v / cell_size_));
}

std::int64_t LaneletGridIndex::cellKey(std::int64_t cx, std::int64_t cy) const {
  return (cx << 32) ^ (cy & 0xffffffffLL);
}

std::vector<std::size_t> LaneletGridIndex::query(const Box2d& query) const {
  std::vector<std::size_t> out;
  if (query.empty()) return out;

  const double span_x = (query.max_x - query.min_x) / cell_size_ + 1.0;
  const double span_y = (query.max_y - query.min_y) / cell_size_ + 1.0;
  if (!std::isfinite(span_x * span_y) ||
      span_x * span_y > static_cast<double>(boxes_.size())) {
    for (std::size_t i = 0; i < boxes_.size(); ++i) {
      if (boxes_[i].intersects(query)) out.push_back(i);
    }
    return out;
  }

  for (std::int64_t cx = cellCoord(query.min_x); cx <= cellCoord(query.max_x);
       ++cx) {
    for (std::int64_t cy = cellCoord(query.min_y);
         cy <= cellCoord(query.max_y); ++cy) {
      const auto it = cells_.find(cellKey(cx, cy));
      if (it == cells_.end()) continue;
      for (std::uint32_t i : it->second) {
        if (boxes_[i].intersects(query)) out.push_back(i);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace laneletml
