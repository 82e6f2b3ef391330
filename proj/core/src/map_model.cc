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

#include "laneletml/map_model.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "laneletml/errors.h"
#include "laneletml/spatial_index.h"

namespace laneletml {
namespace {

template <typename T>
void sortAndCheckUnique(std::vector<T>& elements, std::string_view kind) {
  std::sort(elements.begin(), elements.end(),
            [](const T& a, const T& b) { return a.id < b.id; });
  const auto dup = std::adjacent_find(
      elements.begin(), elements.end(),
      [](const T& a, const T& b) { return a.id == b.id; });
  if (dup != elements.end()) {
    throw StructuralError("duplicate " + std::string(kind) + " id " +
                          std::to_string(dup->id.value));
  }
}

template <typename T>
const T* findById(const std::vector<T>& elements, ElementId id) {
  const auto it = std::lower_bound(
      elements.begin(), elements.end(), id,
      [](const T& element, ElementId key) { return element.id < key; });
  if (it == elements.end() || it->id != id) return nullptr;
  return &*it;
}

bool contains(const std::vector<std::string>& values, std::string_view v) {
  return std::find(values.begin(), values.end(), v) != values.end();
}

std::string_view attribute(const AttributeMap& attributes,
                           std::string_view key) {
  const auto it = attributes.find(key);
  return it == attributes.end() ? std::string_view{} : it->second;
}

}  // namespace

std::string_view toString(BoundaryClass c) {
  switch (c) {
    case BoundaryClass::kRoadBorder:
      return "road_border";
    case BoundaryClass::kLaneDividerDashed:
      return "lane_divider_dashed";
    case BoundaryClass::kLaneDividerSolid:
      return "lane_divider_solid";
    case BoundaryClass::kVirtual:
      return "virtual";
    case BoundaryClass::kUnknown:
      return "unknown";
  }
  return "unknown";
}

const BoundaryClassifier& BoundaryClassifier::standard() {
  static const BoundaryClassifier classifier({
      {{"road_border", "curbstone"}, {}, BoundaryClass::kRoadBorder},
      {{"line_thin", "line_thick"}, {"dashed"}, BoundaryClass::kLaneDividerDashed},
      {{"line_thin", "line_thick"},
       {"solid", "solid_dashed", "dashed_solid"},
       BoundaryClass::kLaneDividerSolid},
      {{"virtual"}, {}, BoundaryClass::kVirtual},
  });
  return classifier;
}

BoundaryClass BoundaryClassifier::classify(
    const AttributeMap& attributes) const {
  const std::string_view type = attribute(attributes, "type");
  const std::string_view subtype = attribute(attributes, "subtype");
  for (const Rule& rule : rules_) {
    if (!contains(rule.types, type)) continue;
    if (!rule.subtypes.empty() && !contains(rule.subtypes, subtype)) continue;
    return rule.result;
  }
  return BoundaryClass::kUnknown;
}

BoundaryClass classifyBoundary(const AttributeMap& attributes) {
  return BoundaryClassifier::standard().classify(attributes);
}

LaneletMap::LaneletMap() : index_(std::make_shared<LaneletGridIndex>(*this)) {}

LaneletMap::LaneletMap(std::vector<Point3d> points,
                       std::vector<LineString3d> linestrings,
                       std::vector<Lanelet> lanelets, MapMetadata metadata)
    : points_(std::move(points)),
      linestrings_(std::move(linestrings)),
      lanelets_(std::move(lanelets)),
      metadata_(std::move(metadata)) {
  sortAndCheckUnique(points_, "point");
  sortAndCheckUnique(linestrings_, "linestring");
  sortAndCheckUnique(lanelets_, "lanelet");
  index_ = std::make_shared<LaneletGridIndex>(*this);
}

const Point3d* LaneletMap::findPoint(ElementId id) const {
  return findById(points_, id);
}

const LineString3d* LaneletMap::findLineString(ElementId id) const {
  return findById(linestrings_, id);
}

const Lanelet* LaneletMap::findLanelet(ElementId id) const {
  return findById(lanelets_, id);
}

std::optional<MapElement> resolveElement(const LaneletMap& map, ElementId id) {
  if (const Point3d* p = map.findPoint(id)) return MapElement{p};
  if (const LineString3d* ls = map.findLineString(id)) return MapElement{ls};
  if (const Lanelet* ll = map.findLanelet(id)) return MapElement{ll};
  return std::nullopt;
}

Polyline3d linestringGeometry(const LaneletMap& map, ElementId linestring) {
  const LineString3d* ls = map.findLineString(linestring);
  if (ls == nullptr) {
    throw StructuralError("linestring " + std::to_string(linestring.value) +
                          " does not exist");
  }
  Polyline3d out;
  out.reserve(ls->points.size());
  for (ElementId pid : ls->points) {
    const Point3d* p = map.findPoint(pid);
    if (p == nullptr) {
      throw StructuralError("linestring " + std::to_string(linestring.value) +
                            " references missing point " +
                            std::to_string(pid.value));
    }
    out.push_back(p->position());
  }
  return out;
}

Polyline3d directedBoundary(const LaneletMap& map, const Lanelet& lanelet,
                            BoundarySide side) {
  const BoundaryRef& ref = lanelet.boundary(side);
  Polyline3d out = linestringGeometry(map, ref.linestring);
  if (ref.inverted) std::reverse(out.begin(), out.end());
  return out;
}

BoundaryEndpoints directedEndpoints(const LaneletMap& map,
                                    const BoundaryRef& boundary) {
  const LineString3d* ls = map.findLineString(boundary.linestring);
  if (ls == nullptr || ls->points.empty()) {
    throw StructuralError("linestring " +
                          std::to_string(boundary.linestring.value) +
                          " does not exist or is empty");
  }
  if (boundary.inverted) return {ls->points.back(), ls->points.front()};
  return {ls->points.front(), ls->points.back()};
}

Polyline3d centerline(const LaneletMap& map, const Lanelet& lanelet) {
  const Polyline3d left = directedBoundary(map, lanelet, BoundarySide::kLeft);
  const Polyline3d right = directedBoundary(map, lanelet, BoundarySide::kRight);
  const std::vector<double> left_cum = cumulativeArcLengths(left);
  const std::vector<double> right_cum = cumulativeArcLengths(right);
  const double left_len = left_cum.empty() ? 0.0 : left_cum.back();
  const double right_len = right_cum.empty() ? 0.0 : right_cum.back();
  if (!(left_len > 0.0) || !(right_len > 0.0)) {
    throw StructuralError("lanelet " + std::to_string(lanelet.id.value) +
                          " has a degenerate boundary");
  }

  // Arc fraction plus the exact arc length on each side. Boundary vertices
  // are breakpoints so the result does not depend on how a lane is split.
  struct Station {
    double t;
    double s_left;
    double s_right;
  };
  std::vector<Station> stations;
  for (double s : left_cum) {
    stations.push_back({s / left_len, s, s / left_len * right_len});
  }
  for (double s : right_cum) {
    stations.push_back({s / right_len, s / right_len * left_len, s});
  }
  std::sort(stations.begin(), stations.end(),
            [](const Station& a, const Station& b) { return a.t < b.t; });
  std::vector<Station> breakpoints;
  for (const Station& st : stations) {
    if (breakpoints.empty() || st.t - breakpoints.back().t > 1e-12) {
      breakpoints.push_back(st);
    }
  }

  const std::size_t samples =
      std::max({left.size(), right.size(), kMinCenterlineSamples});
  std::vector<Station> merged = breakpoints;
  for (std::size_t i = 1; i + 1 < samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
    const auto it = std::lower_bound(
        breakpoints.begin(), breakpoints.end(), t,
        [](const Station& a, double v) { return a.t < v; });
    const bool near_next = it != breakpoints.end() && it->t - t < 1e-9;
    const bool near_prev = it != breakpoints.begin() && t - (it - 1)->t < 1e-9;
    if (!near_next && !near_prev) {
      merged.push_back({t, t * left_len, t * right_len});
    }
  }
  std::sort(merged.begin(), merged.end(),
            [](const Station& a, const Station& b) { return a.t < b.t; });

  Polyline3d out;
  out.reserve(merged.size());
  for (const Station& st : merged) {
    out.push_back(0.5 * (pointAtArcLength(left, left_cum, st.s_left) +
                         pointAtArcLength(right, right_cum, st.s_right)));
  }
  return out;
}

std::vector<Finding> validateMap(const LaneletMap& map) {
  std::vector<Finding> findings;
  auto report = [&](Severity severity, ElementId id, std::string message) {
    findings.push_back({severity, id, std::move(message)});
  };

  std::set<ElementId> seen;
  auto checkGlobalUnique = [&](ElementId id) {
    if (id.value < 1) {
      report(Severity::kError, id, "element id must be positive");
    }
    if (!seen.insert(id).second) {
      report(Severity::kError, id, "id is used by more than one element kind");
    }
  };

  for (const Point3d& p : map.points()) {
    checkGlobalUnique(p.id);
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      report(Severity::kError, p.id, "point has non-finite coordinates");
    }
  }

  for (const LineString3d& ls : map.linestrings()) {
    checkGlobalUnique(ls.id);
    if (ls.points.size() < 2) {
      report(Severity::kError, ls.id, "linestring has fewer than 2 points");
    }
    for (std::size_t i = 0; i < ls.points.size(); ++i) {
      if (map.findPoint(ls.points[i]) == nullptr) {
        report(Severity::kError, ls.id,
               "references missing point " +
                   std::to_string(ls.points[i].value));
      }
      if (i > 0 && ls.points[i] == ls.points[i - 1]) {
        report(Severity::kError, ls.id,
               "repeats point " + std::to_string(ls.points[i].value) +
                   " consecutively");
      }
    }
  }

  auto usable = [&](const LineString3d* ls) {
    if (ls == nullptr || ls->points.size() < 2) return false;
    return std::all_of(ls->points.begin(), ls->points.end(), [&](ElementId p) {
      return map.findPoint(p) != nullptr;
    });
  };

  for (const Lanelet& ll : map.lanelets()) {
    checkGlobalUnique(ll.id);
    const LineString3d* left = map.findLineString(ll.left.linestring);
    const LineString3d* right = map.findLineString(ll.right.linestring);
    if (left == nullptr) {
      report(Severity::kError, ll.id,
             "left boundary references missing linestring " +
                 std::to_string(ll.left.linestring.value));
    }
    if (right == nullptr) {
      report(Severity::kError, ll.id,
             "right boundary references missing linestring " +
                 std::to_string(ll.right.linestring.value));
    }
    if (ll.left.linestring == ll.right.linestring) {
      report(Severity::kError, ll.id, "left and right boundary are identical");
      continue;
    }
    if (attribute(ll.attributes, "one_way") == "no") {
      report(Severity::kWarning, ll.id,
             "bidirectional lanelet is treated as one-way");
    }
    for (const auto* ls : {left, right}) {
      if (ls != nullptr &&
          classifyBoundary(ls->attributes) == BoundaryClass::kUnknown) {
        report(Severity::kWarning, ll.id,
               "boundary " + std::to_string(ls->id.value) +
                   " has an unknown boundary class");
      }
    }
    if (left != nullptr && right != nullptr) {
      const std::set<ElementId> left_points(left->points.begin(),
                                            left->points.end());
      for (ElementId p : right->points) {
        if (left_points.count(p) != 0) {
          report(Severity::kWarning, ll.id,
                 "left and right boundary share point " +
                     std::to_string(p.value));
          break;
        }
      }
    }
    if (usable(left) && usable(right)) {
      for (BoundarySide side : {BoundarySide::kLeft, BoundarySide::kRight}) {
        if (!(polylineLength(directedBoundary(map, ll, side)) > 0.0)) {
          report(Severity::kError, ll.id,
                 std::string(side == BoundarySide::kLeft ? "left" : "right") +
                     " boundary has zero length");
        }
      }
    }
  }
  return findings;
}

bool hasErrors(std::span<const Finding> findings) {
  return std::any_of(findings.begin(), findings.end(), [](const Finding& f) {
    return f.severity == Severity::kError;
  });
}

}  // namespace laneletml
