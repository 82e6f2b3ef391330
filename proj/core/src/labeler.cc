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

#include "laneletml/labeler.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_set>

#include "laneletml/errors.h"

namespace laneletml {
namespace {

// Lengths are compared on a 1 nm grid so that equal chains reached along
// different paths tie exactly.
constexpr double kMinPieceLength = 1e-9;

std::int64_t quantizedLength(double length) {
  return std::llround(length * 1e9);
}

std::optional<LabelClass> labelClassFor(BoundaryClass c) {
  switch (c) {
    case BoundaryClass::kRoadBorder:
      return LabelClass::kRoadBorder;
    case BoundaryClass::kLaneDividerDashed:
    case BoundaryClass::kLaneDividerSolid:
      return LabelClass::kLaneDivider;
    default:
      return std::nullopt;
  }
}

struct ChainMember {
  ElementId element;
  bool inverted = false;
  Polyline3d geometry;
};

// Concatenates members into one polyline and derives the trace from the
// vertex positions of the concatenated result.
CompoundLabel assemble(LabelClass label_class,
                       std::optional<BoundaryClass> boundary_class,
                       std::span<const ChainMember> members,
                       std::size_t path_index) {
  CompoundLabel label;
  label.label_class = label_class;
  label.boundary_class = boundary_class;
  label.source_path_index = path_index;

  std::vector<std::pair<std::size_t, std::size_t>> vertex_ranges;
  for (const ChainMember& m : members) {
    if (m.geometry.size() < 2 || !(polylineLength(m.geometry) > 0.0)) {
      throw StructuralError("element " + std::to_string(m.element.value) +
                            " has degenerate geometry");
    }
    if (!label.points.empty() &&
        (label.points.back() - m.geometry.front()).norm() >
            kJunctionTolerance) {
      throw StructuralError("element " + std::to_string(m.element.value) +
                            " does not continue the preceding chain");
    }
    const std::size_t first =
        label.points.empty() ? 0 : label.points.size() - 1;
    appendDeduplicated(label.points, m.geometry, kJunctionTolerance);
    vertex_ranges.emplace_back(first, label.points.size() - 1);
  }

  const std::vector<double> cumulative = cumulativeArcLengths(label.points);
  for (std::size_t i = 0; i < members.size(); ++i) {
    label.trace.push_back({members[i].element,
                           cumulative[vertex_ranges[i].first],
                           cumulative[vertex_ranges[i].second],
                           members[i].inverted, 0.0});
  }
  return label;
}

// Shifts trace records so that `from` becomes 0 and closes the tiling at
// `length`.
std::vector<TraceRecord> rebaseTrace(std::span<const TraceRecord> trace,
                                     double from, double to, double length) {
  std::vector<TraceRecord> out;
  for (const TraceRecord& r : trace) {
    if (!(r.arc_end > from) || !(r.arc_start < to)) continue;
    TraceRecord piece = r;
    piece.arc_start = std::max(r.arc_start, from) - from;
    piece.arc_end = std::min(r.arc_end, to) - from;
    piece.member_offset = r.member_offset + std::max(0.0, from - r.arc_start);
    if (!(piece.arc_end - piece.arc_start > 1e-12)) continue;
    out.push_back(piece);
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k].arc_start = k == 0 ? 0.0 : out[k - 1].arc_end;
  }
  if (!out.empty()) out.back().arc_end = length;
  return out;
}

struct ClipResult {
  double t0;
  double t1;
  // Edge that fixed t0 / t1: 0 = min x, 1 = max x, 2 = min y, 3 = max y,
  // -1 = segment end point inside.
  int edge0;
  int edge1;
};

// Liang-Barsky against the closed rectangle in xy.
std::optional<ClipResult> clipSegment(const Vec3& a, const Vec3& b,
                                      const Box2d& box) {
  const double dx = b.x() - a.x();
  const double dy = b.y() - a.y();
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.x() - box.min_x, box.max_x - a.x(),
                       a.y() - box.min_y, box.max_y - a.y()};
  ClipResult r{0.0, 1.0, -1, -1};
  for (int k = 0; k < 4; ++k) {
    if (p[k] == 0.0) {
      if (q[k] < 0.0) return std::nullopt;
      continue;
    }
    const double t = q[k] / p[k];
    if (p[k] < 0.0) {
      if (t > r.t1) return std::nullopt;
      if (t > r.t0) {
        r.t0 = t;
        r.edge0 = k;
      }
    } else {
      if (t < r.t0) return std::nullopt;
      if (t < r.t1) {
        r.t1 = t;
        r.edge1 = k;
      }
    }
  }
  return r;
}

Vec3 clippedPoint(const Vec3& a, const Vec3& b, double t, int edge,
                  const Box2d& box) {
  if (edge < 0) return t <= 0.0 ? a : b;
  Vec3 p = a + t * (b - a);
  switch (edge) {
    case 0:
      p.x() = box.min_x;
      break;
    case 1:
      p.x() = box.max_x;
      break;
    case 2:
      p.y() = box.min_y;
      break;
    case 3:
      p.y() = box.max_y;
      break;
  }
  p.x() = std::clamp(p.x(), box.min_x, box.max_x);
  p.y() = std::clamp(p.y(), box.min_y, box.max_y);
  return p;
}

}  // namespace

std::string_view toString(LabelClass c) {
  switch (c) {
    case LabelClass::kRoadBorder:
      return "road_border";
    case LabelClass::kLaneDivider:
      return "lane_divider";
    case LabelClass::kCenterline:
      return "centerline";
  }
  return "road_border";
}

std::optional<LabelClass> labelClassFromString(std::string_view s) {
  if (s == "road_border") return LabelClass::kRoadBorder;
  if (s == "lane_divider") return LabelClass::kLaneDivider;
  if (s == "centerline") return LabelClass::kCenterline;
  return std::nullopt;
}

std::string_view toString(ProcessingStage stage) {
  switch (stage) {
    case ProcessingStage::kRaw:
      return "raw";
    case ProcessingStage::kCropped:
      return "cropped";
    case ProcessingStage::kResampled:
      return "resampled";
  }
  return "raw";
}

std::optional<ProcessingStage> stageFromString(std::string_view s) {
  if (s == "raw") return ProcessingStage::kRaw;
  if (s == "cropped") return ProcessingStage::kCropped;
  if (s == "resampled") return ProcessingStage::kResampled;
  return std::nullopt;
}

Vec3 transformToLocal(const ReferencePose& pose, const Vec3& world) {
  return worldToLocal(pose, world);
}

std::vector<CompoundLabel> buildPathCompounds(const LaneletPath& path,
                                              const LaneletMap& map,
                                              std::size_t path_index) {
  std::vector<const Lanelet*> lanelets;
  lanelets.reserve(path.lanelets.size());
  for (ElementId id : path.lanelets) {
    const Lanelet* ll = map.findLanelet(id);
    if (ll == nullptr) {
      throw StructuralError("path references missing lanelet " +
                            std::to_string(id.value));
    }
    lanelets.push_back(ll);
  }

  std::vector<CompoundLabel> out;
  for (BoundarySide side : {BoundarySide::kLeft, BoundarySide::kRight}) {
    std::vector<ChainMember> run;
    BoundaryClass run_class = BoundaryClass::kUnknown;
    auto flush = [&] {
      if (run.empty()) return;
      if (const auto label_class = labelClassFor(run_class)) {
        out.push_back(assemble(*label_class, run_class, run, path_index));
      }
      run.clear();
    };
    for (const Lanelet* ll : lanelets) {
      const BoundaryRef& ref = ll->boundary(side);
      const LineString3d* ls = map.findLineString(ref.linestring);
      if (ls == nullptr) {
        throw StructuralError("lanelet " + std::to_string(ll->id.value) +
                              " references missing linestring " +
                              std::to_string(ref.linestring.value));
      }
      const BoundaryClass c = classifyBoundary(ls->attributes);
      if (!run.empty() && c != run_class) flush();
      run_class = c;
      run.push_back({ref.linestring, ref.inverted,
                     directedBoundary(map, *ll, side)});
    }
    flush();
  }

  std::vector<ChainMember> centers;
  centers.reserve(lanelets.size());
  for (const Lanelet* ll : lanelets) {
    centers.push_back({ll->id, false, centerline(map, *ll)});
  }
  if (!centers.empty()) {
    out.push_back(
        assemble(LabelClass::kCenterline, std::nullopt, centers, path_index));
  }
  return out;
}

std::vector<CompoundLabel> eliminateOverlaps(
    std::vector<CompoundLabel> compounds) {
  std::vector<CompoundLabel> borders;
  std::vector<CompoundLabel> centerlines;
  for (CompoundLabel& c : compounds) {
    if (c.label_class == LabelClass::kCenterline) {
      centerlines.push_back(std::move(c));
    } else if (!c.trace.empty()) {
      borders.push_back(std::move(c));
    }
  }

  auto key = [](const CompoundLabel& c) {
    return std::make_tuple(-quantizedLength(c.tracedLength()),
                           c.trace.front().element, c.source_path_index);
  };
  std::stable_sort(borders.begin(), borders.end(),
                   [&](const CompoundLabel& a, const CompoundLabel& b) {
                     return key(a) < key(b);
                   });

  std::unordered_set<ElementId, ElementIdHash> claimed;
  std::vector<CompoundLabel> kept;
  for (CompoundLabel& c : borders) {
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    for (std::size_t i = 0; i < c.trace.size(); ++i) {
      if (claimed.count(c.trace[i].element) != 0) continue;
      if (!runs.empty() && runs.back().second == i) {
        runs.back().second = i + 1;
      } else {
        runs.emplace_back(i, i + 1);
      }
    }
    if (runs.empty()) continue;

    std::vector<CompoundLabel> pieces;
    if (runs.size() == 1 && runs.front().first == 0 &&
        runs.front().second == c.trace.size()) {
      pieces.push_back(std::move(c));
    } else {
      for (const auto& [begin, end] : runs) {
        const double from = c.trace[begin].arc_start;
        const double to = c.trace[end - 1].arc_end;
        CompoundLabel piece;
        piece.label_class = c.label_class;
        piece.boundary_class = c.boundary_class;
        piece.source_path_index = c.source_path_index;
        piece.points = slicePolyline(c.points, from, to);
        piece.trace = rebaseTrace(
            std::span(c.trace).subspan(begin, end - begin), from, to,
            polylineLength(piece.points));
        pieces.push_back(std::move(piece));
      }
    }
    for (CompoundLabel& piece : pieces) {
      for (const TraceRecord& r : piece.trace) claimed.insert(r.element);
      kept.push_back(std::move(piece));
    }
  }

  for (CompoundLabel& c : centerlines) kept.push_back(std::move(c));
  return kept;
}

std::vector<CroppedPiece> cropToRoi(std::span<const Vec3> polyline,
                                    const RoiSpec& roi,
                                    std::span<const TraceRecord> trace) {
  const Box2d box = roi.box();
  std::vector<CroppedPiece> out;
  if (polyline.empty()) return out;
  const std::vector<double> cumulative = cumulativeArcLengths(polyline);

  Polyline3d current;
  double current_from = 0.0;
  double current_to = 0.0;
  auto close = [&] {
    if (current.size() >= 2) {
      // Pieces that only graze the rectangle carry no usable geometry.
      const double length = polylineLength(current);
      if (length > kMinPieceLength) {
        std::vector<TraceRecord> rebased =
            rebaseTrace(trace, current_from, current_to, length);
        if (trace.empty() || !rebased.empty()) {
          out.push_back({std::move(current), std::move(rebased)});
        }
      }
    }
    current.clear();
  };

  if (polyline.size() == 1) return out;
  for (std::size_t i = 0; i + 1 < polyline.size(); ++i) {
    const Vec3& a = polyline[i];
    const Vec3& b = polyline[i + 1];
    const double segment = cumulative[i + 1] - cumulative[i];
    const auto clip = clipSegment(a, b, box);
    if (!clip || !(clip->t1 > clip->t0)) {
      close();
      continue;
    }
    if (clip->t0 > 0.0 || current.empty()) {
      close();
      current.push_back(clippedPoint(a, b, clip->t0, clip->edge0, box));
      current_from = cumulative[i] + clip->t0 * segment;
    }
    current.push_back(clippedPoint(a, b, clip->t1, clip->edge1, box));
    current_to = clip->t1 >= 1.0 ? cumulative[i + 1]
                                 : cumulative[i] + clip->t1 * segment;
    if (clip->t1 < 1.0) close();
  }
  close();
  return out;
}

LocalInstanceSet generateLocalInstances(const LaneletMap& map,
                                        const RoutingGraph& graph,
                                        const ReferencePose& pose,
                                        const RoiSpec& roi,
                                        const GeneratorConfig& config) {
  roi.validate();
  if (!pose.isFinite()) throw std::invalid_argument("pose is not finite");
  if (config.stage == ProcessingStage::kResampled && config.point_count < 2) {
    throw std::invalid_argument("resampling needs a point count >= 2");
  }

  LocalInstanceSet result;
  result.pose = pose;
  result.roi = roi;
  result.stage = config.stage;

  const std::vector<ElementId> submap = extractSubmap(map, pose, roi);
  if (submap.empty()) return result;
  const std::vector<LaneletPath> paths =
      enumeratePaths(graph, submap, config.limits);

  const PoseTransform transform(pose);
  std::vector<CompoundLabel> compounds;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (CompoundLabel& c : buildPathCompounds(paths[i], map, i)) {
      for (Vec3& p : c.points) p = transform.toLocal(p);
      compounds.push_back(std::move(c));
    }
  }
  compounds = eliminateOverlaps(std::move(compounds));

  if (config.stage == ProcessingStage::kRaw) {
    result.labels = std::move(compounds);
  } else {
    for (const CompoundLabel& c : compounds) {
      for (CroppedPiece& piece : cropToRoi(c.points, roi, c.trace)) {
        CompoundLabel label;
        label.label_class = c.label_class;
        label.boundary_class = c.boundary_class;
        label.source_path_index = c.source_path_index;
        label.points = std::move(piece.points);
        label.trace = std::move(piece.trace);
        result.labels.push_back(std::move(label));
      }
    }
    if (config.stage == ProcessingStage::kResampled) {
      for (CompoundLabel& label : result.labels) {
        label.points = resamplePolyline(label.points, config.point_count);
      }
    }
  }

  auto order = [](const CompoundLabel& c) {
    return std::make_tuple(c.label_class, c.trace.front().element,
                           c.trace.front().member_offset, c.source_path_index);
  };
  std::stable_sort(result.labels.begin(), result.labels.end(),
                   [&](const CompoundLabel& a, const CompoundLabel& b) {
                     return order(a) < order(b);
                   });
  return result;
}

Polyline3d reconstructFromTrace(const LaneletMap& map,
                                const CompoundLabel& label,
                                const ReferencePose& pose) {
  const PoseTransform transform(pose);
  Polyline3d chain;
  for (const TraceRecord& r : label.trace) {
    Polyline3d geometry;
    if (label.label_class == LabelClass::kCenterline) {
      const Lanelet* ll = map.findLanelet(r.element);
      if (ll == nullptr) {
        throw TraceabilityError(r.element.value, "no such lanelet in map");
      }
      geometry = centerline(map, *ll);
    } else {
      if (map.findLineString(r.element) == nullptr) {
        throw TraceabilityError(r.element.value, "no such linestring in map");
      }
      geometry = linestringGeometry(map, r.element);
    }
    if (r.inverted) std::reverse(geometry.begin(), geometry.end());
    const Polyline3d local = transform.toLocal(geometry);
    appendDeduplicated(
        chain,
        slicePolyline(local, r.member_offset,
                      r.member_offset + (r.arc_end - r.arc_start)),
        kJunctionTolerance);
  }
  return chain;
}

}  // namespace laneletml
