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

#include "laneletml/synthetic.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace laneletml {
namespace {

// Portable draws; the std distributions differ between standard libraries.
double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + unit * (hi - lo);
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return rng() % n; }

AttributeMap borderTags(std::mt19937_64& rng, bool randomize) {
  if (randomize && pick(rng, 4) == 0) return {{"type", "curbstone"}};
  return {{"type", "road_border"}};
}

AttributeMap dividerTags(std::mt19937_64& rng, bool randomize) {
  if (!randomize) return {{"type", "line_thin"}, {"subtype", "dashed"}};
  switch (pick(rng, 6)) {
    case 0:
      return {{"type", "virtual"}};
    case 1:
    case 2:
      return {{"type", "line_thin"}, {"subtype", "solid"}};
    case 3:
      return {{"type", "line_thick"}, {"subtype", "dashed"}};
    default:
      return {{"type", "line_thin"}, {"subtype", "dashed"}};
  }
}

}  // namespace

LaneletMap makeGridMap(const GridMapOptions& options) {
  if (options.lanes == 0 || options.segments == 0) return LaneletMap();
  if (!(options.segment_length > 0.0) || !(options.lane_width > 0.0)) {
    throw std::invalid_argument("grid map needs positive dimensions");
  }
  std::mt19937_64 rng(options.seed);
  const std::size_t lines = options.lanes + 1;
  const std::size_t columns = options.segments + 1;
  const std::size_t step = options.interior_points + 1;

  std::int64_t next_id = 1;
  std::vector<Point3d> points;
  // Point IDs along each line, including interior vertices.
  std::vector<std::vector<ElementId>> line_points(lines);
  for (std::size_t k = 0; k < lines; ++k) {
    const double y = static_cast<double>(k) * options.lane_width;
    for (std::size_t c = 0; c < (columns - 1) * step + 1; ++c) {
      const double x = static_cast<double>(c) * options.segment_length /
                       static_cast<double>(step);
      const ElementId id(next_id++);
      points.push_back({id, x, y, 0.0});
      line_points[k].push_back(id);
    }
  }

  std::vector<LineString3d> linestrings;
  // linestring_ids[k][j]: line k, segment j.
  std::vector<std::vector<ElementId>> linestring_ids(lines);
  for (std::size_t k = 0; k < lines; ++k) {
    const bool border = k == 0 || k + 1 == lines;
    // Dividers keep one type per line with occasional changes, which gives
    // the type-change splits real maps have.
    AttributeMap tags = border ? borderTags(rng, options.randomize_types)
                               : dividerTags(rng, options.randomize_types);
    for (std::size_t j = 0; j < options.segments; ++j) {
      if (options.randomize_types && j > 0 && pick(rng, 8) == 0) {
        tags = border ? borderTags(rng, true) : dividerTags(rng, true);
      }
      LineString3d ls;
      ls.id = ElementId(next_id++);
      ls.points.assign(line_points[k].begin() + j * step,
                       line_points[k].begin() + (j + 1) * step + 1);
      ls.attributes = tags;
      linestring_ids[k].push_back(ls.id);
      linestrings.push_back(std::move(ls));
    }
  }

  std::vector<Lanelet> lanelets;
  for (std::size_t j = 0; j < options.segments; ++j) {
    for (std::size_t i = 0; i < options.lanes; ++i) {
      Lanelet lanelet;
      lanelet.id = ElementId(next_id++);
      lanelet.left = {linestring_ids[i + 1][j], false};
      lanelet.right = {linestring_ids[i][j], false};
      lanelet.attributes = {{"type", "lanelet"}, {"subtype", "road"}};
      lanelets.push_back(std::move(lanelet));
    }
  }
  return LaneletMap(std::move(points), std::move(linestrings),
                    std::move(lanelets));
}

LaneletMap makeSyntheticGridMap(std::size_t lanelet_count,
                                std::uint64_t seed) {
  std::size_t lanes = 1;
  for (std::size_t d = 10; d >= 1; --d) {
    if (lanelet_count % d == 0) {
      lanes = d;
      break;
    }
  }
  GridMapOptions options;
  options.lanes = lanelet_count == 0 ? 0 : lanes;
  options.segments = lanelet_count == 0 ? 0 : lanelet_count / lanes;
  options.seed = seed;
  return makeGridMap(options);
}

std::vector<ReferencePose> makeSyntheticPoses(const LaneletMap& map,
                                              std::size_t count,
                                              std::uint64_t seed) {
  std::vector<ReferencePose> poses;
  if (map.lanelets().empty()) return poses;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const Lanelet& lanelet = map.lanelets()[pick(rng, map.lanelets().size())];
    const Polyline3d center = centerline(map, lanelet);
    const std::vector<double> cumulative = cumulativeArcLengths(center);
    const Vec3 p =
        pointAtArcLength(center, cumulative,
                         uniform(rng, 0.0, cumulative.back()));
    ReferencePose pose;
    pose.x = p.x();
    pose.y = p.y();
    pose.yaw = uniform(rng, -std::numbers::pi, std::numbers::pi);
    poses.push_back(pose);
  }
  return poses;
}

}  // namespace laneletml
