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

#ifndef LANELETML_MAP_MODEL_H_
#define LANELETML_MAP_MODEL_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "laneletml/geometry.h"

namespace laneletml {

// Identifier of a map element. IDs are shared across points, linestrings and
// lanelets; valid IDs are >= 1.
struct ElementId {
  std::int64_t value = 0;

  constexpr ElementId() = default;
  constexpr explicit ElementId(std::int64_t v) : value(v) {}

  constexpr auto operator<=>(const ElementId&) const = default;
};

struct ElementIdHash {
  std::size_t operator()(ElementId id) const noexcept {
    return std::hash<std::int64_t>{}(id.value);
  }
};

using AttributeMap = std::map<std::string, std::string, std::less<>>;

struct Point3d {
  ElementId id;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 position() const { return {x, y, z}; }
  bool operator==(const Point3d&) const = default;
};

struct LineString3d {
  ElementId id;
  std::vector<ElementId> points;
  AttributeMap attributes;

  bool operator==(const LineString3d&) const = default;
};

enum class BoundarySide { kLeft, kRight };

// Reference to a lanelet boundary. `inverted` reverses the linestring's
// stored point order so that the boundary points in the driving direction.
struct BoundaryRef {
  ElementId linestring;
  bool inverted = false;

  bool operator==(const BoundaryRef&) const = default;
};

struct Lanelet {
  ElementId id;
  BoundaryRef left;
  BoundaryRef right;
  AttributeMap attributes;

  const BoundaryRef& boundary(BoundarySide side) const {
    return side == BoundarySide::kLeft ? left : right;
  }
  bool operator==(const Lanelet&) const = default;
};

enum class BoundaryClass {
  kRoadBorder,
  kLaneDividerDashed,
  kLaneDividerSolid,
  kVirtual,
  kUnknown,
};

std::string_view toString(BoundaryClass c);

// Table driven mapping from linestring tags to a BoundaryClass. Rules are
// matched in insertion order; an empty subtype list matches any subtype.
class BoundaryClassifier {
 public:
  struct Rule {
    std::vector<std::string> types;
    std::vector<std::string> subtypes;
    BoundaryClass result;
  };

  BoundaryClassifier() = default;
  explicit BoundaryClassifier(std::vector<Rule> rules)
      : rules_(std::move(rules)) {}

  // road_border/curbstone, line_thin/line_thick with dashed or solid
  // subtypes, and virtual.
  static const BoundaryClassifier& standard();

  BoundaryClass classify(const AttributeMap& attributes) const;
  void addRule(Rule rule) { rules_.push_back(std::move(rule)); }
  std::span<const Rule> rules() const { return rules_; }

 private:
  std::vector<Rule> rules_;
};

BoundaryClass classifyBoundary(const AttributeMap& attributes);

struct MapMetadata {
  double origin_lat = 0.0;
  double origin_lon = 0.0;
  // "local" or "tangent"
  std::string projector = "local";

  bool operator==(const MapMetadata&) const = default;
};

class LaneletGridIndex;

// Immutable layered map. Each layer is stored sorted by ID, so iteration
// order never depends on insertion order. The constructor rejects duplicate
// IDs within a layer but keeps dangling references; validateMap reports them.
class LaneletMap {
 public:
  LaneletMap();
  LaneletMap(std::vector<Point3d> points, std::vector<LineString3d> linestrings,
             std::vector<Lanelet> lanelets, MapMetadata metadata = {});

  std::span<const Point3d> points() const { return points_; }
  std::span<const LineString3d> linestrings() const { return linestrings_; }
  std::span<const Lanelet> lanelets() const { return lanelets_; }
  const MapMetadata& metadata() const { return metadata_; }

  const Point3d* findPoint(ElementId id) const;
  const LineString3d* findLineString(ElementId id) const;
  const Lanelet* findLanelet(ElementId id) const;

  // Grid index over lanelet bounding boxes in the map frame.
  const LaneletGridIndex& spatialIndex() const { return *index_; }

  bool empty() const {
    return points_.empty() && linestrings_.empty() && lanelets_.empty();
  }

 private:
  std::vector<Point3d> points_;
  std::vector<LineString3d> linestrings_;
  std::vector<Lanelet> lanelets_;
  MapMetadata metadata_;
  std::shared_ptr<const LaneletGridIndex> index_;
};

using MapElement =
    std::variant<const Point3d*, const LineString3d*, const Lanelet*>;

std::optional<MapElement> resolveElement(const LaneletMap& map, ElementId id);

// Point sequence of a linestring in stored order. Throws StructuralError on
// a missing linestring or point.
Polyline3d linestringGeometry(const LaneletMap& map, ElementId linestring);

// Boundary of `lanelet` in driving direction.
Polyline3d directedBoundary(const LaneletMap& map, const Lanelet& lanelet,
                            BoundarySide side);

// First and last point IDs of a directed boundary.
struct BoundaryEndpoints {
  ElementId first;
  ElementId last;
};
BoundaryEndpoints directedEndpoints(const LaneletMap& map,
                                    const BoundaryRef& boundary);

// Minimum number of samples per boundary used for centerlines.
inline constexpr std::size_t kMinCenterlineSamples = 10;

// Midpoints of both directed boundaries at equal arc fractions: the
// boundary vertices of either side plus max(point counts,
// kMinCenterlineSamples) equidistant samples.
Polyline3d centerline(const LaneletMap& map, const Lanelet& lanelet);

enum class Severity { kWarning, kError };

struct Finding {
  Severity severity = Severity::kError;
  ElementId element;
  std::string message;

  bool operator==(const Finding&) const = default;
};

std::vector<Finding> validateMap(const LaneletMap& map);

bool hasErrors(std::span<const Finding> findings);

}  // namespace laneletml

#endif  // LANELETML_MAP_MODEL_H_
