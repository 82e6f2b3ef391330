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

#ifndef LANELETML_LABELER_H_
#define LANELETML_LABELER_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "laneletml/geometry.h"
#include "laneletml/map_model.h"
#include "laneletml/pose.h"
#include "laneletml/routing.h"

namespace laneletml {

enum class LabelClass { kRoadBorder = 0, kLaneDivider = 1, kCenterline = 2 };

std::string_view toString(LabelClass c);
std::optional<LabelClass> labelClassFromString(std::string_view s);

// Span [arc_start, arc_end] of a label contributed by one map element.
// `member_offset` is where that span begins along the element's own directed
// geometry (boundary linestring or lanelet centerline), so a cropped piece
// can be rebuilt from the map alone.
struct TraceRecord {
  ElementId element;
  double arc_start = 0.0;
  double arc_end = 0.0;
  bool inverted = false;
  double member_offset = 0.0;

  bool operator==(const TraceRecord&) const = default;
};

struct CompoundLabel {
  LabelClass label_class = LabelClass::kRoadBorder;
  // Fine grained class of border and divider labels; empty for centerlines.
  std::optional<BoundaryClass> boundary_class;
  Polyline3d points;
  // Ordered, contiguous, tiling [0, traced length]. Trace elements are
  // linestrings for borders and dividers and lanelets for centerlines.
  std::vector<TraceRecord> trace;
  std::size_t source_path_index = 0;

  // Length of the geometry the trace describes (before any resampling).
  double tracedLength() const {
    return trace.empty() ? 0.0 : trace.back().arc_end;
  }
  bool operator==(const CompoundLabel&) const = default;
};

enum class ProcessingStage { kRaw, kCropped, kResampled };

std::string_view toString(ProcessingStage stage);
std::optional<ProcessingStage> stageFromString(std::string_view s);

struct LocalInstanceSet {
  ReferencePose pose;
  RoiSpec roi;
  ProcessingStage stage = ProcessingStage::kRaw;
  std::vector<CompoundLabel> labels;

  bool operator==(const LocalInstanceSet&) const = default;
};

struct GeneratorConfig {
  ProcessingStage stage = ProcessingStage::kResampled;
  // Points per label at stage kResampled; 8 and 20 are the usual choices.
  std::size_t point_count = 20;
  PathLimits limits;
};

// Tolerance for treating consecutive chain points as the same junction.
inline constexpr double kJunctionTolerance = 1e-6;

Vec3 transformToLocal(const ReferencePose& pose, const Vec3& world);

// Border/divider compounds for the left and right boundary chains of `path`,
// split into runs of constant BoundaryClass (virtual and unknown runs are
// dropped), followed by one centerline compound spanning the path. Geometry
// is in the map frame. Throws StructuralError for degenerate boundaries.
std::vector<CompoundLabel> buildPathCompounds(const LaneletPath& path,
                                              const LaneletMap& map,
                                              std::size_t path_index = 0);

// Keeps each border/divider linestring in exactly one compound. Compounds are
// visited longest first (ties: smaller first member ID, then smaller path
// index); a fully claimed compound is dropped and a partially claimed one is
// cut into its unclaimed runs. Centerlines are passed through unchanged.
std::vector<CompoundLabel> eliminateOverlaps(std::vector<CompoundLabel> compounds);

struct CroppedPiece {
  Polyline3d points;
  std::vector<TraceRecord> trace;
};

// Clips a local-frame polyline to the closed ROI rectangle. Every re-entry
// starts a new piece; trace ranges are re-derived per piece.
std::vector<CroppedPiece> cropToRoi(std::span<const Vec3> polyline,
                                    const RoiSpec& roi,
                                    std::span<const TraceRecord> trace);

LocalInstanceSet generateLocalInstances(const LaneletMap& map,
                                        const RoutingGraph& graph,
                                        const ReferencePose& pose,
                                        const RoiSpec& roi,
                                        const GeneratorConfig& config = {});

// Rebuilds a label's pre-resampling geometry in the local frame of `pose`
// from the map and its trace. Throws TraceabilityError naming any trace
// element that does not resolve.
Polyline3d reconstructFromTrace(const LaneletMap& map,
                                const CompoundLabel& label,
                                const ReferencePose& pose);

}  // namespace laneletml

#endif  // LANELETML_LABELER_H_
