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

#include "laneletml/pose.h"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Geometry>

namespace laneletml {

bool ReferencePose::tilted() const {
  return roll.value_or(0.0) != 0.0 || pitch.value_or(0.0) != 0.0;
}

bool ReferencePose::isFinite() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(yaw) &&
         std::isfinite(z.value_or(0.0)) && std::isfinite(roll.value_or(0.0)) &&
         std::isfinite(pitch.value_or(0.0));
}

ReferencePose ReferencePose::parse(std::string_view text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view field = text.substr(start, comma - start);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() ||
        ptr != field.data() + field.size()) {
      throw std::invalid_argument("invalid pose field '" + std::string(field) +
                                  "'");
    }
    values.push_back(value);
    start = comma + 1;
  }
  if (values.size() != 3 && values.size() != 6) {
    throw std::invalid_argument(
        "pose needs 3 (x,y,yaw) or 6 (x,y,yaw,z,roll,pitch) values");
  }
  ReferencePose pose{values[0], values[1], values[2], {}, {}, {}};
  if (values.size() == 6) {
    pose.z = values[3];
    pose.roll = values[4];
    pose.pitch = values[5];
  }
  if (!pose.isFinite()) throw std::invalid_argument("pose is not finite");
  return pose;
}

PoseTransform::PoseTransform(const ReferencePose& pose)
    : planar_(!pose.tilted()),
      cos_yaw_(std::cos(pose.yaw)),
      sin_yaw_(std::sin(pose.yaw)),
      translation_(pose.x, pose.y, pose.z.value_or(0.0)) {
  rotation_ = (Eigen::AngleAxisd(pose.yaw, Eigen::Vector3d::UnitZ()) *
               Eigen::AngleAxisd(pose.pitch.value_or(0.0),
                                 Eigen::Vector3d::UnitY()) *
               Eigen::AngleAxisd(pose.roll.value_or(0.0),
                                 Eigen::Vector3d::UnitX()))
                  .toRotationMatrix();
}

Vec3 PoseTransform::toLocal(const Vec3& world) const {
  const Vec3 d = world - translation_;
  if (planar_) {
    return {cos_yaw_ * d.x() + sin_yaw_ * d.y(),
            -sin_yaw_ * d.x() + cos_yaw_ * d.y(), d.z()};
  }
  return rotation_.transpose() * d;
}

Vec3 PoseTransform::toWorld(const Vec3& local) const {
  if (planar_) {
    return Vec3{cos_yaw_ * local.x() - sin_yaw_ * local.y(),
                sin_yaw_ * local.x() + cos_yaw_ * local.y(), local.z()} +
           translation_;
  }
  return rotation_ * local + translation_;
}

Polyline3d PoseTransform::toLocal(std::span<const Vec3> world) const {
  Polyline3d out;
  out.reserve(world.size());
  for (const Vec3& p : world) out.push_back(toLocal(p));
  return out;
}

Vec3 worldToLocal(const ReferencePose& pose, const Vec3& world) {
  return PoseTransform(pose).toLocal(world);
}

}  // namespace laneletml
