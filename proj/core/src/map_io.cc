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

#include "laneletml/map_io.h"

#include <expat.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace laneletml {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

MetricCoordinate projectUnchecked(GeodeticCoordinate g, const Projector& p) {
  return {kEarthRadius * (g.lon - p.origin_lon) * kDegToRad *
              std::cos(p.origin_lat * kDegToRad),
          kEarthRadius * (g.lat - p.origin_lat) * kDegToRad};
}

GeodeticCoordinate unprojectUnchecked(MetricCoordinate m, const Projector& p) {
  return {p.origin_lat + m.y / (kEarthRadius * kDegToRad),
          p.origin_lon + m.x / (kEarthRadius * kDegToRad *
                                std::cos(p.origin_lat * kDegToRad))};
}

template <typename T>
std::optional<T> parseNumber(std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

struct PendingRelation {
  ElementId id;
  std::size_t line = 0;
  std::optional<ElementId> left;
  std::optional<ElementId> right;
  AttributeMap attributes;
};

// Expat callbacks cannot propagate exceptions, so failures are recorded here
// and the parser is stopped.
class OsmHandler {
 public:
  OsmHandler(XML_Parser parser, const Projector& projector)
      : parser_(parser), projector_(projector) {}

  void start(std::string_view name, const XML_Char** attrs) {
    const std::size_t line = currentLine();
    ++depth_;
    std::map<std::string_view, std::string_view> a;
    for (int i = 0; attrs[i] != nullptr; i += 2) a[attrs[i]] = attrs[i + 1];

    if (depth_ == 1) {
      if (name != "osm") fail("root element must be <osm>", line);
      return;
    }
    if (depth_ == 2) {
      element_line_ = line;
      if (name == "node") {
        kind_ = Kind::kNode;
        node_ = {};
        node_tags_.clear();
        node_.id = requireId(a, line);
        lat_ = optionalNumber(a, "lat", line);
        lon_ = optionalNumber(a, "lon", line);
      } else if (name == "way") {
        kind_ = Kind::kWay;
        way_ = {};
        way_.id = requireId(a, line);
      } else if (name == "relation") {
        kind_ = Kind::kRelation;
        relation_ = {};
        relation_.id = requireId(a, line);
        relation_.line = line;
      } else {
        kind_ = Kind::kOther;
        if (name != "bounds") {
          warn("ignoring element <" + std::string(name) + ">", line);
        }
      }
      return;
    }
    if (depth_ != 3) return;
    if (name == "tag") {
      const auto k = a.find("k");
      const auto v = a.find("v");
      if (k == a.end() || v == a.end()) {
        fail("<tag> requires k and v attributes", line);
        return;
      }
      tag(std::string(k->second), std::string(v->second));
    } else if (name == "nd" && kind_ == Kind::kWay) {
      way_.points.push_back(requireRef(a, line));
    } else if (name == "member" && kind_ == Kind::kRelation) {
      const ElementId ref = requireRef(a, line);
      const auto type = a.find("type");
      const auto role = a.find("role");
      if (type == a.end() || type->second != "way" || role == a.end()) return;
      auto& slot = role->second == "left"    ? relation_.left
                   : role->second == "right" ? relation_.right
                                             : ignored_member_;
      if (&slot != &ignored_member_ && slot.has_value()) {
        warn("relation " + std::to_string(relation_.id.value) +
                 " has more than one " + std::string(role->second) +
                 " member; using the first",
             line);
        return;
      }
      slot = ref;
    }
  }

  void end(std::string_view name) {
    if (depth_ == 2 && !failed_) {
      if (name == "node" && kind_ == Kind::kNode) finishNode();
      if (name == "way" && kind_ == Kind::kWay) finishWay();
      if (name == "relation" && kind_ == Kind::kRelation) finishRelation();
      kind_ = Kind::kNone;
    }
    --depth_;
  }

  bool failed() const { return failed_; }
  const std::string& error() const { return error_; }
  std::size_t errorLine() const { return error_line_; }

  ParsedMap finish() {
    std::unordered_map<ElementId, const LineString3d*, ElementIdHash> ways;
    for (const LineString3d& ls : linestrings_) ways[ls.id] = &ls;
    std::unordered_map<ElementId, const Point3d*, ElementIdHash> nodes;
    for (const Point3d& p : points_) nodes[p.id] = &p;

    auto endpoint = [&](ElementId way, bool front) -> std::optional<Vec3> {
      const auto it = ways.find(way);
      if (it == ways.end() || it->second->points.empty()) return std::nullopt;
      const ElementId pid =
          front ? it->second->points.front() : it->second->points.back();
      const auto p = nodes.find(pid);
      if (p == nodes.end()) return std::nullopt;
      return p->second->position();
    };

    std::vector<Lanelet> lanelets;
    lanelets.reserve(relations_.size());
    for (const PendingRelation& rel : relations_) {
      Lanelet ll;
      ll.id = rel.id;
      ll.left = {*rel.left, false};
      ll.right = {*rel.right, false};
      ll.attributes = rel.attributes;
      // Orient the right boundary so that its first point is the one nearer
      // to the first point of the left boundary; ties keep stored order.
      const auto left_first = endpoint(*rel.left, true);
      const auto right_first = endpoint(*rel.right, true);
      const auto right_last = endpoint(*rel.right, false);
      if (left_first && right_first && right_last) {
        ll.right.inverted = (*left_first - *right_last).norm() <
                            (*left_first - *right_first).norm();
      }
      lanelets.push_back(std::move(ll));
    }

    ParsedMap out;
    out.report.points = points_.size();
    out.report.linestrings = linestrings_.size();
    out.report.lanelets = lanelets.size();
    out.report.warnings = std::move(warnings_);
    MapMetadata metadata;
    metadata.origin_lat = projector_.origin_lat;
    metadata.origin_lon = projector_.origin_lon;
    metadata.projector =
        projector_.kind == ProjectorKind::kLocalMetric ? "local" : "tangent";
    out.map = LaneletMap(std::move(points_), std::move(linestrings_),
                         std::move(lanelets), std::move(metadata));
    return out;
  }

 private:
  enum class Kind { kNone, kNode, kWay, kRelation, kOther };

  std::size_t currentLine() const {
    return static_cast<std::size_t>(XML_GetCurrentLineNumber(parser_));
  }

  void fail(std::string message, std::size_t line) {
    if (failed_) return;
    failed_ = true;
    error_ = std::move(message);
    error_line_ = line;
    XML_StopParser(parser_, XML_FALSE);
  }

  void warn(std::string message, std::size_t line) {
    warnings_.push_back({line, std::move(message)});
  }

  ElementId requireId(const std::map<std::string_view, std::string_view>& a,
                      std::size_t line) {
    return requireIdAttribute(a, "id", line);
  }

  ElementId requireRef(const std::map<std::string_view, std::string_view>& a,
                       std::size_t line) {
    return requireIdAttribute(a, "ref", line);
  }

  ElementId requireIdAttribute(
      const std::map<std::string_view, std::string_view>& a,
      std::string_view key, std::size_t line) {
    const auto it = a.find(key);
    if (it == a.end()) {
      fail("missing " + std::string(key) + " attribute", line);
      return ElementId{};
    }
    const auto value = parseNumber<std::int64_t>(it->second);
    if (!value) {
      fail("invalid " + std::string(key) + " '" + std::string(it->second) +
               "'",
           line);
      return ElementId{};
    }
    return ElementId{*value};
  }

  std::optional<double> optionalNumber(
      const std::map<std::string_view, std::string_view>& a,
      std::string_view key, std::size_t line) {
    const auto it = a.find(key);
    if (it == a.end()) return std::nullopt;
    const auto value = parseNumber<double>(it->second);
    if (!value) {
      fail("invalid " + std::string(key) + " '" + std::string(it->second) +
               "'",
           line);
    }
    return value;
  }

  void tag(std::string k, std::string v) {
    switch (kind_) {
      case Kind::kNode:
        node_tags_[std::move(k)] = std::move(v);
        break;
      case Kind::kWay:
        way_.attributes[std::move(k)] = std::move(v);
        break;
      case Kind::kRelation:
        relation_.attributes[std::move(k)] = std::move(v);
        break;
      default:
        break;
    }
  }

  std::optional<double> nodeTag(std::string_view key) {
    const auto it = node_tags_.find(key);
    if (it == node_tags_.end()) return std::nullopt;
    const auto value = parseNumber<double>(it->second);
    if (!value) {
      fail("node " + std::to_string(node_.id.value) + " has invalid " +
               std::string(key) + " '" + it->second + "'",
           element_line_);
    }
    return value;
  }

  void finishNode() {
    if (!point_ids_.insert(node_.id).second) {
      fail("duplicate node id " + std::to_string(node_.id.value),
           element_line_);
      return;
    }
    if (projector_.kind == ProjectorKind::kLocalMetric) {
      const auto x = nodeTag("local_x");
      const auto y = nodeTag("local_y");
      if (failed_) return;
      if (!x || !y) {
        fail("node " + std::to_string(node_.id.value) +
                 " lacks local_x/local_y tags required by the local projector",
             element_line_);
        return;
      }
      node_.x = *x;
      node_.y = *y;
    } else {
      if (!lat_ || !lon_) {
        fail("node " + std::to_string(node_.id.value) + " lacks lat/lon",
             element_line_);
        return;
      }
      const MetricCoordinate m = projectUnchecked({*lat_, *lon_}, projector_);
      node_.x = m.x;
      node_.y = m.y;
    }
    node_.z = nodeTag("ele").value_or(0.0);
    if (failed_) return;
    points_.push_back(node_);
  }

  void finishWay() {
    if (!linestring_ids_.insert(way_.id).second) {
      fail("duplicate way id " + std::to_string(way_.id.value), element_line_);
      return;
    }
    linestrings_.push_back(std::move(way_));
  }

  void finishRelation() {
    if (!relation_ids_.insert(relation_.id).second) {
      fail("duplicate relation id " + std::to_string(relation_.id.value),
           relation_.line);
      return;
    }
    const auto type = relation_.attributes.find("type");
    if (type == relation_.attributes.end() || type->second != "lanelet") {
      warn("skipping relation " + std::to_string(relation_.id.value) +
               " of type '" +
               (type == relation_.attributes.end() ? std::string()
                                                   : type->second) +
               "'",
           relation_.line);
      return;
    }
    if (!relation_.left || !relation_.right) {
      warn("lanelet relation " + std::to_string(relation_.id.value) +
               " lacks a " + (relation_.left ? "right" : "left") +
               " member; skipped",
           relation_.line);
      return;
    }
    relations_.push_back(std::move(relation_));
  }

  XML_Parser parser_;
  Projector projector_;
  int depth_ = 0;
  Kind kind_ = Kind::kNone;
  std::size_t element_line_ = 0;

  Point3d node_;
  std::optional<double> lat_;
  std::optional<double> lon_;
  std::map<std::string, std::string, std::less<>> node_tags_;
  LineString3d way_;
  PendingRelation relation_;
  std::optional<ElementId> ignored_member_;

  std::vector<Point3d> points_;
  std::vector<LineString3d> linestrings_;
  std::vector<PendingRelation> relations_;
  std::unordered_set<ElementId, ElementIdHash> point_ids_;
  std::unordered_set<ElementId, ElementIdHash> linestring_ids_;
  std::unordered_set<ElementId, ElementIdHash> relation_ids_;
  std::vector<ParseWarning> warnings_;

  bool failed_ = false;
  std::string error_;
  std::size_t error_line_ = 0;
};

void XMLCALL onStart(void* user, const XML_Char* name, const XML_Char** atts) {
  static_cast<OsmHandler*>(user)->start(name, atts);
}

void XMLCALL onEnd(void* user, const XML_Char* name) {
  static_cast<OsmHandler*>(user)->end(name);
}

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

std::string formatNumber(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

void appendEscaped(std::string& out, std::string_view text) {
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\'':
        out += "&apos;";
        break;
      case '\n':
        out += "&#10;";
        break;
      case '\r':
        out += "&#13;";
        break;
      case '\t':
        out += "&#9;";
        break;
      default:
        out += c;
    }
  }
}

void appendTag(std::string& out, std::string_view k, std::string_view v) {
  out += "    <tag k=\"";
  appendEscaped(out, k);
  out += "\" v=\"";
  appendEscaped(out, v);
  out += "\"/>\n";
}

}  // namespace

Projector Projector::tangentPlane(double lat, double lon) {
  Projector p{ProjectorKind::kTangentPlane, lat, lon};
  p.validate();
  return p;
}

void Projector::validate() const {
  if (!(std::abs(origin_lat) <= 90.0) || !(std::abs(origin_lon) <= 180.0)) {
    throw std::invalid_argument("projector origin out of range");
  }
}

Projector Projector::fromString(std::string_view spec) {
  if (spec == "local") return localMetric();
  constexpr std::string_view kPrefix = "tangent:";
  if (spec.substr(0, kPrefix.size()) == kPrefix) {
    const std::string_view rest = spec.substr(kPrefix.size());
    const auto comma = rest.find(',');
    if (comma != std::string_view::npos) {
      const auto lat = parseNumber<double>(rest.substr(0, comma));
      const auto lon = parseNumber<double>(rest.substr(comma + 1));
      if (lat && lon) return tangentPlane(*lat, *lon);
    }
  }
  throw std::invalid_argument("invalid projector '" + std::string(spec) +
                              "', expected local or tangent:LAT,LON");
}

MetricCoordinate project(GeodeticCoordinate position,
                         const Projector& projector) {
  if (projector.kind != ProjectorKind::kTangentPlane) {
    throw UnsupportedOperationError(
        "the local metric projector does not project geodetic coordinates");
  }
  return projectUnchecked(position, projector);
}

GeodeticCoordinate unproject(MetricCoordinate position,
                             const Projector& projector) {
  if (projector.kind != ProjectorKind::kTangentPlane) {
    throw UnsupportedOperationError(
        "the local metric projector does not project geodetic coordinates");
  }
  return unprojectUnchecked(position, projector);
}

ParsedMap parseOsmMap(std::string_view xml, const Projector& projector) {
  projector.validate();
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(
      XML_ParserCreate("UTF-8"));
  if (!parser) throw std::bad_alloc();
  OsmHandler handler(parser.get(), projector);
  XML_SetUserData(parser.get(), &handler);
  XML_SetElementHandler(parser.get(), onStart, onEnd);

  const XML_Status status = XML_Parse(
      parser.get(), xml.data(), static_cast<int>(xml.size()), XML_TRUE);
  if (handler.failed()) throw ParseError(handler.error(), handler.errorLine());
  if (status != XML_STATUS_OK) {
    throw ParseError(XML_ErrorString(XML_GetErrorCode(parser.get())),
                     static_cast<std::size_t>(
                         XML_GetCurrentLineNumber(parser.get())));
  }
  return handler.finish();
}

ParsedMap parseOsmMap(std::istream& in, const Projector& projector) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parseOsmMap(buffer.str(), projector);
}

ParsedMap loadOsmMap(const std::filesystem::path& path,
                     const Projector& projector) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open map file " + path.string());
  }
  return parseOsmMap(in, projector);
}

InvalidMapError::InvalidMapError(std::vector<Finding> findings)
    : Error("map has " + std::to_string(findings.size()) +
            " validation finding(s); refusing to write"),
      findings_(std::move(findings)) {}

std::string writeOsmMap(const LaneletMap& map, const Projector& projector) {
  projector.validate();
  std::vector<Finding> findings = validateMap(map);
  if (hasErrors(findings)) throw InvalidMapError(std::move(findings));

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (map.empty()) {
    out += "<osm version=\"0.6\" generator=\"laneletml\"/>\n";
    return out;
  }
  out += "<osm version=\"0.6\" generator=\"laneletml\">\n";

  const bool local = projector.kind == ProjectorKind::kLocalMetric;
  for (const Point3d& p : map.points()) {
    const GeodeticCoordinate g = unprojectUnchecked({p.x, p.y}, projector);
    out += "  <node id=\"" + std::to_string(p.id.value) + "\" lat=\"" +
           formatNumber(g.lat) + "\" lon=\"" + formatNumber(g.lon) + "\"";
    if (!local && p.z == 0.0) {
      out += "/>\n";
      continue;
    }
    out += ">\n";
    if (local) {
      appendTag(out, "local_x", formatNumber(p.x));
      appendTag(out, "local_y", formatNumber(p.y));
    }
    if (p.z != 0.0) appendTag(out, "ele", formatNumber(p.z));
    out += "  </node>\n";
  }

  for (const LineString3d& ls : map.linestrings()) {
    out += "  <way id=\"" + std::to_string(ls.id.value) + "\">\n";
    for (ElementId pid : ls.points) {
      out += "    <nd ref=\"" + std::to_string(pid.value) + "\"/>\n";
    }
    for (const auto& [k, v] : ls.attributes) appendTag(out, k, v);
    out += "  </way>\n";
  }

  for (const Lanelet& ll : map.lanelets()) {
    out += "  <relation id=\"" + std::to_string(ll.id.value) + "\">\n";
    out += "    <member type=\"way\" role=\"left\" ref=\"" +
           std::to_string(ll.left.linestring.value) + "\"/>\n";
    out += "    <member type=\"way\" role=\"right\" ref=\"" +
           std::to_string(ll.right.linestring.value) + "\"/>\n";
    AttributeMap tags = ll.attributes;
    tags["type"] = "lanelet";
    for (const auto& [k, v] : tags) appendTag(out, k, v);
    out += "  </relation>\n";
  }
  out += "</osm>\n";
  return out;
}

}  // namespace laneletml
