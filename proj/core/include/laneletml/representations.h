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

#ifndef LANELETML_REPRESENTATIONS_H_
#define LANELETML_REPRESENTATIONS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "laneletml/labeler.h"
#include "laneletml/routing.h"

namespace laneletml {

// Class codes used by every learning representation.
constexpr std::int64_t classCode(LabelClass c) {
  return static_cast<std::int64_t>(c);
}

// Fixed point-count polylines, one row per label: points is a dense
// [size() x point_count x 3] row-major array in meters.
struct FixedPointSet {
  struct Warning {
    std::size_t label_index = 0;
    std::string message;
  };

  std::size_t point_count = 0;
  std::vector<std::int64_t> classes;
  std::vector<float> points;
  std::vector<std::vector<TraceRecord>> traces;
  std::vector<Warning> warnings;

  std::size_t size() const { return classes.size(); }
};

// Requires stage kCropped or kResampled (std::invalid_argument otherwise).
// Zero-length labels are skipped and reported in `warnings`.
FixedPointSet toFixedPointSet(const LocalInstanceSet& instances,
                              std::size_t point_count);

enum class EdgeKind { kSuccessor, kLeftNeighbour, kRightNeighbour };

std::string_view toString(EdgeKind kind);

// Lane graph with one node per centerline label; lanelet granularity stays
// available through each node's lanelet sequence.
struct CenterlineGraph {
  struct Node {
    std::size_t label_index = 0;
    std::vector<ElementId> lanelets;
  };
  struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
    EdgeKind kind = EdgeKind::kSuccessor;

    auto operator<=>(const Edge&) const = default;
  };

  std::vector<Node> nodes;
  std::vector<Edge> edges;
};

// Successor edge a -> b iff the last lanelet of a has the first lanelet of b
// as routing successor. Neighbour edge a -> b iff the last lanelet of b is
// the left (right) adjacent lanelet of the last lanelet of a. Edges are
// sorted by (from, to, kind).
CenterlineGraph toCenterlineGraph(const LocalInstanceSet& instances,
                                  const RoutingGraph& graph);

// Compact JSON, floats rounded to 9 significant digits, trailing newline.
std::string serializeJson(const LocalInstanceSet& instances);
// Throws ParseError on malformed documents.
LocalInstanceSet parseJson(std::string_view json);

enum class DType : std::uint8_t { kFloat32 = 1, kInt64 = 2 };

struct Tensor {
  std::string name;
  DType dtype = DType::kFloat32;
  std::vector<std::uint64_t> dims;
  // Little-endian, row-major.
  std::string data;

  std::size_t elementCount() const;
  std::vector<float> floats() const;
  std::vector<std::int64_t> int64s() const;
};

inline constexpr char kTensorMagic[4] = {'L', 'M', 'L', 'C'};
inline constexpr std::uint32_t kTensorFormatVersion = 1;

// "classes" int64[N] followed by "points" float32[N, n, 3].
std::string serializeTensors(const FixedPointSet& set);
std::string serializeTensors(std::span<const Tensor> tensors);
// Throws ParseError on truncated or malformed input.
std::vector<Tensor> readTensors(std::string_view bytes);

// SVG 1.1 top view with the vehicle heading pointing up.
std::string renderSvg(const LocalInstanceSet& instances, const RoiSpec& roi);

}  // namespace laneletml

#endif  // LANELETML_REPRESENTATIONS_H_
