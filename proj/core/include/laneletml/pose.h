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

#ifndef LANELETML_POSE_H_
#define LANELETML_POSE_H_

#include <optional>
#include <string_view>

#include <Eigen/Core>

#include "laneletml/geometry.h"

namespace laneletml {

// Vehicle pose defining the local frame: x along the heading, y to the left,
// z up. x, y and yaw are mandatory; missing z, roll and pitch count as 0.
struct ReferencePose {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;
  std::optional<double> z;
  std::optional<double> roll;
  std::optional<double> pitch;

  // True when roll or pitch is present and non-zero.
  bool tilted() const;
  bool isFinite() const;

  bool operator==(const ReferencePose&) const = default;

  // "x,y,yaw" or "x,y,yaw,z,roll,pitch". Throws std::invalid_argument.
  static ReferencePose parse(std::string_view text);
};

// Rigid transform between map and local frame for one pose. Untilted poses
// use a planar rotation about z; tilted poses the ZYX (yaw-pitch-roll)
// rotation.
class PoseTransform {
 public:
  explicit PoseTransform(const ReferencePose& pose);

  Vec3 toLocal(const Vec3& world) const;
  Vec3 toWorld(const Vec3& local) const;
  Polyline3d toLocal(std::span<const Vec3> world) const;

 private:
  bool planar_;
  double cos_yaw_;
  double sin_yaw_;
  Vec3 translation_;
  Eigen::Matrix3d rotation_;
};

Vec3 worldToLocal(const ReferencePose& pose, const Vec3& world);

}  // namespace laneletml

#endif  // LANELETML_POSE_H_
