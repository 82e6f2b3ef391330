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

#include "laneletml/routing.h"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "laneletml/errors.h"
#include "laneletml/spatial_index.h"

namespace laneletml {
namespace {

struct EndpointKey {
  std::int64_t left;
  std::int64_t right;
  bool operator==(const EndpointKey&) const = default;
};

struct EndpointKeyHash {
  std::size_t operator()(const EndpointKey& k) const noexcept {
    return std::hash<std::int64_t>{}(k.left) * 31u ^
           std::hash<std::int64_t>{}(k.right);
  }
};

void sortUnique(std::vector<ElementId>& ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

bool localBoxIntersects(const LaneletMap& map, const Lanelet& lanelet,
                        const PoseTransform& transform, const Box2d& query) {
  Box2d box;
  for (const BoundaryRef* ref : {&lanelet.left, &lanelet.right}) {
    const LineString3d* ls = map.findLineString(ref->linestring);
    if (ls == nullptr) return false;
    for (ElementId pid : ls->points) {
      const Point3d* p = map.findPoint(pid);
      if (p == nullptr) return false;
      box.extend(transform.toLocal(p->position()));
    }
  }
  return box.intersects(query);
}

}  // namespace

RoutingGraph RoutingGraph::build(const LaneletMap& map) {
  RoutingGraph graph;
  const auto lanelets = map.lanelets();
  graph.ids_.reserve(lanelets.size());
  for (const Lanelet& ll : lanelets) graph.ids_.push_back(ll.id);
  graph.nodes_.resize(lanelets.size());

  struct Ends {
    bool valid = false;
    BoundaryEndpoints left;
    BoundaryEndpoints right;
  };
  std::vector<Ends> ends(lanelets.size());
  std::unordered_map<EndpointKey, std::vector<std::size_t>, EndpointKeyHash>
      by_start;
  for (std::size_t i = 0; i < lanelets.size(); ++i) {
    const Lanelet& ll = lanelets[i];
    if (ll.left.linestring == ll.right.linestring) continue;
    try {
      ends[i] = {true, directedEndpoints(map, ll.left),
                 directedEndpoints(map, ll.right)};
    } catch (const StructuralError&) {
      continue;
    }
    by_start[{ends[i].left.first.value, ends[i].right.first.value}].push_back(
        i);
  }

  for (std::size_t i = 0; i < lanelets.size(); ++i) {
    if (!ends[i].valid) continue;
    const auto it =
        by_start.find({ends[i].left.last.value, ends[i].right.last.value});
    if (it == by_start.end()) continue;
    for (std::size_t j : it->second) {
      if (j == i) continue;
      graph.nodes_[i].successors.push_back(graph.ids_[j]);
      graph.nodes_[j].predecessors.push_back(graph.ids_[i]);
    }
  }

  // linestring -> lanelets using it as left / right boundary, ascending.
  std::unordered_map<ElementId, std::pair<std::vector<std::size_t>,
                                          std::vector<std::size_t>>,
                     ElementIdHash>
      users;
  for (std::size_t i = 0; i < lanelets.size(); ++i) {
    if (!ends[i].valid) continue;
    users[lanelets[i].left.linestring].first.push_back(i);
    users[lanelets[i].right.linestring].second.push_back(i);
  }
  for (const auto& [linestring, sides] : users) {
    const auto& [as_left, as_right] = sides;
    if (as_left.empty() || as_right.empty()) continue;
    const std::size_t left_lanelet = as_right.front();
    const std::size_t right_lanelet = as_left.front();
    if (left_lanelet == right_lanelet) continue;
    graph.nodes_[left_lanelet].right = graph.ids_[right_lanelet];
    graph.nodes_[right_lanelet].left = graph.ids_[left_lanelet];
  }

  graph.finalize();
  return graph;
}

RoutingGraph RoutingGraph::fromEdges(
    std::vector<ElementId> lanelets,
    std::span<const std::pair<ElementId, ElementId>> successors,
    std::span<const Adjacency> adjacencies) {
  RoutingGraph graph;
  sortUnique(lanelets);
  graph.ids_ = std::move(lanelets);
  graph.nodes_.resize(graph.ids_.size());
  auto index = [&](ElementId id) -> std::optional<std::size_t> {
    const auto it = std::lower_bound(graph.ids_.begin(), graph.ids_.end(), id);
    if (it == graph.ids_.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - graph.ids_.begin());
  };
  for (const auto& [from, to] : successors) {
    const auto a = index(from);
    const auto b = index(to);
    if (!a || !b || *a == *b) continue;
    graph.nodes_[*a].successors.push_back(to);
    graph.nodes_[*b].predecessors.push_back(from);
  }
  for (const Adjacency& adj : adjacencies) {
    const auto a = index(adj.left);
    const auto b = index(adj.right);
    if (!a || !b || *a == *b) continue;
    if (graph.nodes_[*a].right || graph.nodes_[*b].left) continue;
    graph.nodes_[*a].right = adj.right;
    graph.nodes_[*b].left = adj.left;
  }
  graph.finalize();
  return graph;
}

void RoutingGraph::finalize() {
  for (Node& n : nodes_) {
    sortUnique(n.successors);
    sortUnique(n.predecessors);
  }
}

const RoutingGraph::Node* RoutingGraph::node(ElementId id) const {
  const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return nullptr;
  return &nodes_[static_cast<std::size_t>(it - ids_.begin())];
}

bool RoutingGraph::contains(ElementId id) const { return node(id) != nullptr; }

std::span<const ElementId> RoutingGraph::successors(ElementId id) const {
  const Node* n = node(id);
  return n ? std::span<const ElementId>(n->successors)
           : std::span<const ElementId>();
}

std::span<const ElementId> RoutingGraph::predecessors(ElementId id) const {
  const Node* n = node(id);
  return n ? std::span<const ElementId>(n->predecessors)
           : std::span<const ElementId>();
}

std::optional<ElementId> RoutingGraph::leftAdjacent(ElementId id) const {
  const Node* n = node(id);
  return n ? n->left : std::nullopt;
}

std::optional<ElementId> RoutingGraph::rightAdjacent(ElementId id) const {
  const Node* n = node(id);
  return n ? n->right : std::nullopt;
}

std::size_t RoutingGraph::successorEdgeCount() const {
  std::size_t count = 0;
  for (const Node& n : nodes_) count += n.successors.size();
  return count;
}

std::size_t RoutingGraph::adjacencyCount() const {
  std::size_t count = 0;
  for (const Node& n : nodes_) count += n.right.has_value() ? 1 : 0;
  return count;
}

RoutingGraph buildRoutingGraph(const LaneletMap& map) {
  return RoutingGraph::build(map);
}

void RoiSpec::validate() const {
  if (!(forward > 0.0) || !(backward > 0.0) || !(left > 0.0) ||
      !(right > 0.0)) {
    throw std::invalid_argument("ROI extents must be positive");
  }
  if (!(margin >= 0.0)) {
    throw std::invalid_argument("ROI margin must be non-negative");
  }
}

std::vector<ElementId> extractSubmapLinear(const LaneletMap& map,
                                           const ReferencePose& pose,
                                           const RoiSpec& roi) {
  roi.validate();
  const PoseTransform transform(pose);
  const Box2d query = roi.box().inflated(roi.margin);
  std::vector<ElementId> out;
  for (const Lanelet& ll : map.lanelets()) {
    if (localBoxIntersects(map, ll, transform, query)) out.push_back(ll.id);
  }
  return out;
}

std::vector<ElementId> extractSubmap(const LaneletMap& map,
                                     const ReferencePose& pose,
                                     const RoiSpec& roi) {
  // Tilted poses make the local xy footprint depend on element heights, so
  // the planar grid cannot bound the candidates.
  if (pose.tilted()) return extractSubmapLinear(map, pose, roi);
  roi.validate();

  const PoseTransform transform(pose);
  const Box2d query = roi.box().inflated(roi.margin);
  const LaneletGridIndex& index = map.spatialIndex();

  // A lanelet whose local box meets `query` has its box centre within
  // maxHalfDiagonal of `query` in the local frame, so the world box of the
  // inflated query bounds every candidate.
  const Box2d reach = query.inflated(index.maxHalfDiagonal());
  Box2d world;
  for (const auto& [x, y] : {std::pair{reach.min_x, reach.min_y},
                             std::pair{reach.min_x, reach.max_y},
                             std::pair{reach.max_x, reach.min_y},
                             std::pair{reach.max_x, reach.max_y}}) {
    world.extend(transform.toWorld(Vec3(x, y, 0.0)));
  }

  const auto lanelets = map.lanelets();
  std::vector<ElementId> out;
  for (std::size_t i : index.query(world)) {
    if (localBoxIntersects(map, lanelets[i], transform, query)) {
      out.push_back(lanelets[i].id);
    }
  }
  return out;
}

namespace {

class PathEnumerator {
 public:
  PathEnumerator(const RoutingGraph& graph, std::span<const ElementId> submap,
                 const PathLimits& limits)
      : limits_(limits), ids_(submap.begin(), submap.end()) {
    sortUnique(ids_);
    successors_.resize(ids_.size());
    has_predecessor_.assign(ids_.size(), false);
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      for (ElementId s : graph.successors(ids_[i])) {
        const auto j = indexOf(s);
        if (!j || *j == i) continue;
        successors_[i].push_back(*j);
        has_predecessor_[*j] = true;
      }
    }
  }

  std::vector<LaneletPath> run() {
    reached_.assign(ids_.size(), false);
    on_path_.assign(ids_.size(), false);
    for (std::size_t i = 0; i < ids_.size(); ++i) {
      if (!has_predecessor_[i]) follow(i);
    }
    for (std::size_t seed : cycleSeeds()) follow(seed);
    std::sort(paths_.begin(), paths_.end());
    return std::move(paths_);
  }

 private:
  std::optional<std::size_t> indexOf(ElementId id) const {
    const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - ids_.begin());
  }

  void follow(std::size_t seed) {
    std::vector<std::size_t> path{seed};
    on_path_[seed] = true;
    extend(path);
    on_path_[seed] = false;
  }

  void extend(std::vector<std::size_t>& path) {
    if (path.size() > limits_.max_length) {
      throw PathExplosionError("lanelet path exceeds " +
                               std::to_string(limits_.max_length) +
                               " lanelets");
    }
    const std::size_t tip = path.back();
    reached_[tip] = true;
    bool extended = false;
    for (std::size_t next : successors_[tip]) {
      if (on_path_[next]) continue;
      extended = true;
      path.push_back(next);
      on_path_[next] = true;
      extend(path);
      on_path_[next] = false;
      path.pop_back();
    }
    if (extended) return;
    if (paths_.size() >= limits_.max_paths) {
      throw PathExplosionError("lanelet path count exceeds " +
                               std::to_string(limits_.max_paths));
    }
    LaneletPath out;
    out.lanelets.reserve(path.size());
    for (std::size_t i : path) out.lanelets.push_back(ids_[i]);
    paths_.push_back(std::move(out));
  }

  // Lowest index of every source strongly connected component among the
  // lanelets the predecessor-free seeds did not reach.
  std::vector<std::size_t> cycleSeeds() const {
    const std::size_t n = ids_.size();
    std::vector<int> component(n, -1);
    std::vector<int> low(n, 0);
    std::vector<int> order(n, -1);
    std::vector<std::size_t> stack;
    std::vector<bool> on_stack(n, false);
    int counter = 0;
    int components = 0;

    std::function<void(std::size_t)> strongConnect = [&](std::size_t v) {
      order[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = true;
      for (std::size_t w : successors_[v]) {
        if (reached_[w]) continue;
        if (order[w] < 0) {
          strongConnect(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], order[w]);
        }
      }
      if (low[v] == order[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = components;
        } while (w != v);
        ++components;
      }
    };
    for (std::size_t v = 0; v < n; ++v) {
      if (!reached_[v] && order[v] < 0) strongConnect(v);
    }

    std::vector<bool> has_incoming(static_cast<std::size_t>(components), false);
    std::vector<std::size_t> lowest(static_cast<std::size_t>(components), n);
    for (std::size_t v = 0; v < n; ++v) {
      if (reached_[v]) continue;
      const auto c = static_cast<std::size_t>(component[v]);
      lowest[c] = std::min(lowest[c], v);
      for (std::size_t w : successors_[v]) {
        if (!reached_[w] && component[w] != component[v]) {
          has_incoming[static_cast<std::size_t>(component[w])] = true;
        }
      }
    }
    std::vector<std::size_t> seeds;
    for (std::size_t c = 0; c < lowest.size(); ++c) {
      if (!has_incoming[c]) seeds.push_back(lowest[c]);
    }
    std::sort(seeds.begin(), seeds.end());
    return seeds;
  }

  PathLimits limits_;
  std::vector<ElementId> ids_;
  std::vector<std::vector<std::size_t>> successors_;
  std::vector<bool> has_predecessor_;
  std::vector<bool> reached_;
  std::vector<bool> on_path_;
  std::vector<LaneletPath> paths_;
};

}  // namespace

std::vector<LaneletPath> enumeratePaths(const RoutingGraph& graph,
                                        std::span<const ElementId> submap,
                                        const PathLimits& limits) {
  return PathEnumerator(graph, submap, limits).run();
}

}  // namespace laneletml
