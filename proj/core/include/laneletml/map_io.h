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

#ifndef LANELETML_MAP_IO_H_
#define LANELETML_MAP_IO_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "laneletml/errors.h"
#include "laneletml/map_model.h"

namespace laneletml {

enum class ProjectorKind {
  // Coordinates come from local_x / local_y node tags.
  kLocalMetric,
  // Equirectangular tangent plane around the origin.
  kTangentPlane,
};

struct Projector {
  ProjectorKind kind = ProjectorKind::kLocalMetric;
  double origin_lat = 0.0;
  double origin_lon = 0.0;

  static Projector localMetric() { return {}; }
  static Projector tangentPlane(double lat, double lon);

  // Throws std::invalid_argument for out-of-range origins.
  void validate() const;
  // "local" or "tangent:LAT,LON".
  static Projector fromString(std::string_view spec);
};

inline constexpr double kEarthRadius = 6378137.0;

struct MetricCoordinate {
  double x = 0.0;
  double y = 0.0;
};

struct GeodeticCoordinate {
  double lat = 0.0;
  double lon = 0.0;
};

// Throws UnsupportedOperationError for LocalMetric projectors.
MetricCoordinate project(GeodeticCoordinate position,
                         const Projector& projector);
GeodeticCoordinate unproject(MetricCoordinate position,
                             const Projector& projector);

struct ParseWarning {
  std::size_t line = 0;
  std::string message;
};

struct ParseReport {
  std::size_t points = 0;
  std::size_t linestrings = 0;
  std::size_t lanelets = 0;
  std::vector<ParseWarning> warnings;
};

struct ParsedMap {
  LaneletMap map;
  ParseReport report;
};

// Parses the Lanelet2 OSM XML subset. Throws ParseError for malformed XML,
// duplicate IDs and nodes lacking coordinates required by `projector`.
ParsedMap parseOsmMap(std::string_view xml, const Projector& projector);
ParsedMap parseOsmMap(std::istream& in, const Projector& projector);
ParsedMap loadOsmMap(const std::filesystem::path& path,
                     const Projector& projector);

// Thrown by writeOsmMap for maps with error-severity findings.
class InvalidMapError : public Error {
 public:
  explicit InvalidMapError(std::vector<Finding> findings);
  const std::vector<Finding>& findings() const { return findings_; }

 private:
  std::vector<Finding> findings_;
};

// Elements are written in ascending ID order per kind; tags sorted by key.
std::string writeOsmMap(const LaneletMap& map, const Projector& projector);

}  // namespace laneletml

#endif  // LANELETML_MAP_IO_H_
