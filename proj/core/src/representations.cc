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

#include "laneletml/representations.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstring>
#include <stdexcept>

#include "json.hpp"
#include "laneletml/errors.h"

namespace laneletml {
namespace {

using Json = nlohmann::ordered_json;

double round9(double value) {
  if (!std::isfinite(value)) return value;
  char buffer[32];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                       std::chars_format::general, 9);
  double rounded = value;
  std::from_chars(buffer, end, rounded);
  return rounded;
}

std::string formatSvgNumber(double value) {
  char buffer[32];
  // Millimetre resolution keeps the documents small and stable.
  double rounded = std::round(value * 1000.0) / 1000.0;
  if (rounded == 0.0) rounded = 0.0;
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer),
                                       rounded, std::chars_format::general, 12);
  return std::string(buffer, end);
}

Json subtypeJson(const CompoundLabel& label) {
  if (!label.boundary_class) return nullptr;
  switch (*label.boundary_class) {
    case BoundaryClass::kLaneDividerDashed:
      return "dashed";
    case BoundaryClass::kLaneDividerSolid:
      return "solid";
    default:
      return nullptr;
  }
}

std::optional<BoundaryClass> boundaryClassFromJson(LabelClass label_class,
                                                   const Json& subtype) {
  switch (label_class) {
    case LabelClass::kCenterline:
      return std::nullopt;
    case LabelClass::kRoadBorder:
      return BoundaryClass::kRoadBorder;
    case LabelClass::kLaneDivider:
      if (subtype.is_string() && subtype.get<std::string>() == "solid") {
        return BoundaryClass::kLaneDividerSolid;
      }
      if (subtype.is_string() && subtype.get<std::string>() == "dashed") {
        return BoundaryClass::kLaneDividerDashed;
      }
      throw ParseError("lane_divider label needs subtype dashed or solid", 0);
  }
  return std::nullopt;
}

template <typename T>
void appendLittleEndian(std::string& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes, bytes + sizeof(T));
  }
  out.append(bytes, sizeof(T));
}

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T read() {
    char raw[sizeof(T)];
    take(raw, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
      std::reverse(raw, raw + sizeof(T));
    }
    T value;
    std::memcpy(&value, raw, sizeof(T));
    return value;
  }

  std::string readString(std::size_t size) {
    std::string out(size, '\0');
    take(out.data(), size);
    return out;
  }

  bool done() const { return offset_ == bytes_.size(); }

 private:
  void take(char* dst, std::size_t size) {
    if (bytes_.size() - offset_ < size) {
      throw ParseError("tensor file truncated at byte " +
                           std::to_string(offset_),
                       0);
    }
    std::memcpy(dst, bytes_.data() + offset_, size);
    offset_ += size;
  }

  std::string_view bytes_;
  std::size_t offset_ = 0;
};

std::size_t dtypeSize(DType dtype) {
  return dtype == DType::kFloat32 ? sizeof(float) : sizeof(std::int64_t);
}

}  // namespace

FixedPointSet toFixedPointSet(const LocalInstanceSet& instances,
                              std::size_t point_count) {
  if (instances.stage == ProcessingStage::kRaw) {
    throw std::invalid_argument(
        "fixed point sets need cropped or resampled instances");
  }
  if (point_count < 2) {
    throw std::invalid_argument("fixed point sets need >= 2 points per label");
  }
  FixedPointSet set;
  set.point_count = point_count;
  for (std::size_t i = 0; i < instances.labels.size(); ++i) {
    const CompoundLabel& label = instances.labels[i];
    Polyline3d points;
    if (instances.stage == ProcessingStage::kResampled &&
        label.points.size() == point_count) {
      points = label.points;
    } else {
      try {
        points = resamplePolyline(label.points, point_count);
      } catch (const DegenerateInputError& e) {
        set.warnings.push_back({i, e.what()});
        continue;
      }
    }
    set.classes.push_back(classCode(label.label_class));
    for (const Vec3& p : points) {
      set.points.push_back(static_cast<float>(p.x()));
      set.points.push_back(static_cast<float>(p.y()));
      set.points.push_back(static_cast<float>(p.z()));
    }
    set.traces.push_back(label.trace);
  }
  return set;
}

std::string_view toString(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::kSuccessor:
      return "successor";
    case EdgeKind::kLeftNeighbour:
      return "left_neighbour";
    case EdgeKind::kRightNeighbour:
      return "right_neighbour";
  }
  return "successor";
}

CenterlineGraph toCenterlineGraph(const LocalInstanceSet& instances,
                                  const RoutingGraph& graph) {
  CenterlineGraph out;
  for (std::size_t i = 0; i < instances.labels.size(); ++i) {
    const CompoundLabel& label = instances.labels[i];
    if (label.label_class != LabelClass::kCenterline || label.trace.empty()) {
      continue;
    }
    CenterlineGraph::Node node;
    node.label_index = i;
    for (const TraceRecord& r : label.trace) {
      if (node.lanelets.empty() || node.lanelets.back() != r.element) {
        node.lanelets.push_back(r.element);
      }
    }
    out.nodes.push_back(std::move(node));
  }

  for (std::size_t a = 0; a < out.nodes.size(); ++a) {
    const ElementId tail = out.nodes[a].lanelets.back();
    const auto successors = graph.successors(tail);
    const auto left = graph.leftAdjacent(tail);
    const auto right = graph.rightAdjacent(tail);
    for (std::size_t b = 0; b < out.nodes.size(); ++b) {
      const ElementId head = out.nodes[b].lanelets.front();
      if (std::binary_search(successors.begin(), successors.end(), head)) {
        out.edges.push_back({a, b, EdgeKind::kSuccessor});
      }
      if (a == b) continue;
      const ElementId other_tail = out.nodes[b].lanelets.back();
      if (left == other_tail) {
        out.edges.push_back({a, b, EdgeKind::kLeftNeighbour});
      }
      if (right == other_tail) {
        out.edges.push_back({a, b, EdgeKind::kRightNeighbour});
      }
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

std::string serializeJson(const LocalInstanceSet& instances) {
  Json doc;
  Json pose;
  pose["x"] = round9(instances.pose.x);
  pose["y"] = round9(instances.pose.y);
  pose["yaw"] = round9(instances.pose.yaw);
  if (instances.pose.z) pose["z"] = round9(*instances.pose.z);
  if (instances.pose.roll) pose["roll"] = round9(*instances.pose.roll);
  if (instances.pose.pitch) pose["pitch"] = round9(*instances.pose.pitch);
  doc["pose"] = std::move(pose);

  doc["roi"] = {{"forward", round9(instances.roi.forward)},
                {"backward", round9(instances.roi.backward)},
                {"left", round9(instances.roi.left)},
                {"right", round9(instances.roi.right)},
                {"margin", round9(instances.roi.margin)}};
  doc["stage"] = std::string(toString(instances.stage));

  Json labels = Json::array();
  for (const CompoundLabel& label : instances.labels) {
    Json points = Json::array();
    for (const Vec3& p : label.points) {
      points.push_back({round9(p.x()), round9(p.y()), round9(p.z())});
    }
    Json trace = Json::array();
    for (const TraceRecord& r : label.trace) {
      trace.push_back({{"id", r.element.value},
                       {"arc_start", round9(r.arc_start)},
                       {"arc_end", round9(r.arc_end)},
                       {"inverted", r.inverted},
                       {"member_offset", round9(r.member_offset)}});
    }
    labels.push_back({{"class", std::string(toString(label.label_class))},
                      {"subtype", subtypeJson(label)},
                      {"source_path", label.source_path_index},
                      {"points", std::move(points)},
                      {"trace", std::move(trace)}});
  }
  doc["labels"] = std::move(labels);
  return doc.dump() + "\n";
}

LocalInstanceSet parseJson(std::string_view json) {
  try {
    const Json doc = Json::parse(json);
    LocalInstanceSet out;
    const Json& pose = doc.at("pose");
    out.pose.x = pose.at("x").get<double>();
    out.pose.y = pose.at("y").get<double>();
    out.pose.yaw = pose.at("yaw").get<double>();
    if (pose.contains("z")) out.pose.z = pose["z"].get<double>();
    if (pose.contains("roll")) out.pose.roll = pose["roll"].get<double>();
    if (pose.contains("pitch")) out.pose.pitch = pose["pitch"].get<double>();

    const Json& roi = doc.at("roi");
    out.roi.forward = roi.at("forward").get<double>();
    out.roi.backward = roi.at("backward").get<double>();
    out.roi.left = roi.at("left").get<double>();
    out.roi.right = roi.at("right").get<double>();
    out.roi.margin = roi.value("margin", RoiSpec{}.margin);

    const auto stage = stageFromString(doc.at("stage").get<std::string>());
    if (!stage) throw ParseError("unknown stage", 0);
    out.stage = *stage;

    for (const Json& item : doc.at("labels")) {
      CompoundLabel label;
      const auto label_class =
          labelClassFromString(item.at("class").get<std::string>());
      if (!label_class) throw ParseError("unknown label class", 0);
      label.label_class = *label_class;
      label.boundary_class =
          boundaryClassFromJson(*label_class, item.value("subtype", Json()));
      label.source_path_index = item.value("source_path", std::size_t{0});
      for (const Json& p : item.at("points")) {
        if (p.size() != 3) throw ParseError("points must have 3 coordinates", 0);
        label.points.emplace_back(p[0].get<double>(), p[1].get<double>(),
                                  p[2].get<double>());
      }
      for (const Json& r : item.at("trace")) {
        label.trace.push_back({ElementId{r.at("id").get<std::int64_t>()},
                               r.at("arc_start").get<double>(),
                               r.at("arc_end").get<double>(),
                               r.at("inverted").get<bool>(),
                               r.value("member_offset", 0.0)});
      }
      out.labels.push_back(std::move(label));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), 0);
  }
}

std::size_t Tensor::elementCount() const {
  std::size_t count = 1;
  for (std::uint64_t d : dims) count *= static_cast<std::size_t>(d);
  return count;
}

std::vector<float> Tensor::floats() const {
  if (dtype != DType::kFloat32) throw std::invalid_argument(name + " is not float32");
  std::vector<float> out(elementCount());
  ByteReader reader(data);
  for (float& v : out) v = reader.read<float>();
  return out;
}

std::vector<std::int64_t> Tensor::int64s() const {
  if (dtype != DType::kInt64) throw std::invalid_argument(name + " is not int64");
  std::vector<std::int64_t> out(elementCount());
  ByteReader reader(data);
  for (std::int64_t& v : out) v = reader.read<std::int64_t>();
  return out;
}

std::string serializeTensors(std::span<const Tensor> tensors) {
  std::string out(kTensorMagic, sizeof(kTensorMagic));
  appendLittleEndian(out, kTensorFormatVersion);
  appendLittleEndian(out, static_cast<std::uint32_t>(tensors.size()));
  for (const Tensor& t : tensors) {
    if (t.data.size() != t.elementCount() * dtypeSize(t.dtype)) {
      throw std::invalid_argument("tensor " + t.name +
                                  " data does not match its shape");
    }
    appendLittleEndian(out, static_cast<std::uint16_t>(t.name.size()));
    out += t.name;
    appendLittleEndian(out, static_cast<std::uint8_t>(t.dtype));
    appendLittleEndian(out, static_cast<std::uint8_t>(t.dims.size()));
    for (std::uint64_t d : t.dims) appendLittleEndian(out, d);
    out += t.data;
  }
  return out;
}

std::string serializeTensors(const FixedPointSet& set) {
  Tensor classes{"classes", DType::kInt64, {set.size()}, {}};
  for (std::int64_t c : set.classes) appendLittleEndian(classes.data, c);
  Tensor points{"points", DType::kFloat32, {set.size(), set.point_count, 3}, {}};
  for (float v : set.points) appendLittleEndian(points.data, v);
  const Tensor tensors[] = {std::move(classes), std::move(points)};
  return serializeTensors(tensors);
}

std::vector<Tensor> readTensors(std::string_view bytes) {
  ByteReader reader(bytes);
  if (reader.readString(4) != std::string_view(kTensorMagic, 4)) {
    throw ParseError("not an LMLC tensor file", 0);
  }
  const auto version = reader.read<std::uint32_t>();
  if (version != kTensorFormatVersion) {
    throw ParseError("unsupported tensor format version " +
                         std::to_string(version),
                     0);
  }
  const auto count = reader.read<std::uint32_t>();
  std::vector<Tensor> out;
  for (std::uint32_t i = 0; i < count; ++i) {
    Tensor t;
    t.name = reader.readString(reader.read<std::uint16_t>());
    const auto dtype = reader.read<std::uint8_t>();
    if (dtype != 1 && dtype != 2) {
      throw ParseError("unknown dtype code " + std::to_string(dtype), 0);
    }
    t.dtype = static_cast<DType>(dtype);
    const auto rank = reader.read<std::uint8_t>();
    for (std::uint8_t d = 0; d < rank; ++d) {
      t.dims.push_back(reader.read<std::uint64_t>());
    }
    t.data = reader.readString(t.elementCount() * dtypeSize(t.dtype));
    out.push_back(std::move(t));
  }
  if (!reader.done()) throw ParseError("trailing bytes after tensors", 0);
  return out;
}

std::string renderSvg(const LocalInstanceSet& instances, const RoiSpec& roi) {
  // Local x (forward) maps to -svg_y, local y (left) to -svg_x.
  const double min_x = -roi.left;
  const double min_y = -roi.forward;
  const double width = roi.left + roi.right;
  const double height = roi.forward + roi.backward;

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" +
         formatSvgNumber(min_x) + " " + formatSvgNumber(min_y) + " " +
         formatSvgNumber(width) + " " + formatSvgNumber(height) +
         "\" width=\"" + formatSvgNumber(width * 10.0) + "\" height=\"" +
         formatSvgNumber(height * 10.0) + "\">\n";
  out += "  <rect id=\"roi\" x=\"" + formatSvgNumber(min_x) + "\" y=\"" +
         formatSvgNumber(min_y) + "\" width=\"" + formatSvgNumber(width) +
         "\" height=\"" + formatSvgNumber(height) +
         "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"0.2\"/>\n";

  for (std::size_t i = 0; i < instances.labels.size(); ++i) {
    const CompoundLabel& label = instances.labels[i];
    std::string style;
    switch (label.label_class) {
      case LabelClass::kRoadBorder:
        style = "stroke=\"#1a1a1a\" stroke-width=\"0.4\"";
        break;
      case LabelClass::kLaneDivider:
        style = "stroke=\"#1f5fbf\" stroke-width=\"0.25\" "
                "stroke-dasharray=\"1.5 1.5\"";
        break;
      case LabelClass::kCenterline:
        style = "stroke=\"#9fd49f\" stroke-width=\"0.2\"";
        break;
    }
    std::string points;
    for (const Vec3& p : label.points) {
      if (!points.empty()) points += ' ';
      points += formatSvgNumber(-p.y()) + "," + formatSvgNumber(-p.x());
    }
    std::string ids;
    for (const TraceRecord& r : label.trace) {
      if (!ids.empty()) ids += ',';
      ids += std::to_string(r.element.value);
    }
    out += "  <polyline id=\"label-" + std::to_string(i) + "\" class=\"" +
           std::string(toString(label.label_class)) + "\" points=\"" + points +
           "\" fill=\"none\" " + style + "><title>" +
           std::string(toString(label.label_class)) + " " + ids +
           "</title></polyline>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace laneletml
