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

#ifndef LANELETML_ROUTING_H_
#define LANELETML_ROUTING_H_

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "laneletml/map_model.h"
#include "laneletml/pose.h"

namespace laneletml {

// Successor/predecessor and left/right adjacency relations between lanelets.
//
// b is a successor of a when the directed left and right boundaries of b start
// at the point IDs where those of a end. b is right-adjacent to a when a's
// right boundary and b's left boundary are the same linestring.
class RoutingGraph {
 public:
  struct Adjacency {
    ElementId left;
    ElementId right;
  };

  RoutingGraph() = default;

  static RoutingGraph build(const LaneletMap& map);

  // Graph with explicit edges; used for graph-only tooling and tests. Edges
  // touching unknown lanelets and self edges are ignored.
  static RoutingGraph fromEdges(
      std::vector<ElementId> lanelets,
      std::span<const std::pair<ElementId, ElementId>> successors,
      std::span<const Adjacency> adjacencies = {});

  // Sorted ascending.
  std::span<const ElementId> lanelets() const { return ids_; }
  bool contains(ElementId id) const;

  // Sorted ascending; empty for unknown lanelets.
  std::span<const ElementId> successors(ElementId id) const;
  std::span<const ElementId> predecessors(ElementId id) const;
  std::optional<ElementId> leftAdjacent(ElementId id) const;
  std::optional<ElementId> rightAdjacent(ElementId id) const;

  std::size_t successorEdgeCount() const;
  // Number of (left, right) lanelet pairs.
  std::size_t adjacencyCount() const;

 private:
  struct Node {
    std::vector<ElementId> successors;
    std::vector<ElementId> predecessors;
    std::optional<ElementId> left;
    std::optional<ElementId> right;
  };

  const Node* node(ElementId id) const;
  void finalize();

  std::vector<ElementId> ids_;
  std::vector<Node> nodes_;
};

RoutingGraph buildRoutingGraph(const LaneletMap& map);

// Axis-aligned rectangle in the local frame: x in [-backward, forward],
// y in [-right, left]. `margin` inflates it for submap selection only.
struct RoiSpec {
  double forward = 60.0;
  double backward = 30.0;
  double left = 30.0;
  double right = 30.0;
  double margin = 5.0;

  // Throws std::invalid_argument unless all extents > 0 and margin >= 0.
  void validate() const;
  Box2d box() const { return {-backward, -right, forward, left}; }

  bool operator==(const RoiSpec&) const = default;
};

// Lanelets whose boundary polylines, in the local frame of `pose`, have a
// bounding box intersecting the ROI inflated by its margin. Sorted ascending.
std::vector<ElementId> extractSubmap(const LaneletMap& map,
                                     const ReferencePose& pose,
                                     const RoiSpec& roi);

// Same selection by brute force over every lanelet, bypassing the grid index.
std::vector<ElementId> extractSubmapLinear(const LaneletMap& map,
                                           const ReferencePose& pose,
                                           const RoiSpec& roi);

struct LaneletPath {
  std::vector<ElementId> lanelets;

  bool operator==(const LaneletPath&) const = default;
  auto operator<=>(const LaneletPath&) const = default;
};

struct PathLimits {
  std::size_t max_paths = 1024;
  std::size_t max_length = 64;
};

// All maximal successor chains inside `submap` (sorted, unique IDs).
//
// Chains start at every submap lanelet without a predecessor inside the
// submap. Lanelets not reachable from those seeds belong to cycles or hang
// off them; each source strongly connected component among them is seeded at
// its lowest ID. A chain never revisits a lanelet. Output is ordered
// lexicographically by lanelet IDs. Throws PathExplosionError when `limits`
// are exceeded.
std::vector<LaneletPath> enumeratePaths(const RoutingGraph& graph,
                                        std::span<const ElementId> submap,
                                        const PathLimits& limits = {});

}  // namespace laneletml

#endif  // LANELETML_ROUTING_H_
