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

#include <gtest/gtest.h>

#include <numbers>
#include <random>

namespace laneletml {
namespace {

TEST(PoseTest, WorldToLocalExamples) {
  EXPECT_EQ(worldToLocal({0, 0, 0}, {1, 2, 0}), Vec3(1, 2, 0));
  const Vec3 rotated = worldToLocal({0, 0, std::numbers::pi / 2}, {1, 0, 0});
  EXPECT_NEAR((rotated - Vec3(0, -1, 0)).norm(), 0.0, 1e-12);
  ReferencePose pose{5, 5, 0, 1.0, 0.0, 0.0};
  EXPECT_EQ(worldToLocal(pose, {5, 5, 1}), Vec3(0, 0, 0));
}

TEST(PoseTest, PlanarPosesPassZThrough) {
  const ReferencePose pose{3, 4, 0.3};
  EXPECT_DOUBLE_EQ(worldToLocal(pose, {1, 1, 7.5}).z(), 7.5);
}

TEST(PoseTest, TiltedRoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const ReferencePose pose{u(rng) * 10, u(rng) * 10, u(rng),
                             u(rng), u(rng) / 5, u(rng) / 5};
    const PoseTransform t(pose);
    const Vec3 p(u(rng) * 20, u(rng) * 20, u(rng));
    EXPECT_NEAR((t.toWorld(t.toLocal(p)) - p).norm(), 0.0, 1e-9);
    // Rigid: distances are preserved.
    const Vec3 q(u(rng), u(rng), u(rng));
    EXPECT_NEAR((t.toLocal(p) - t.toLocal(q)).norm(), (p - q).norm(), 1e-9);
  }
}

TEST(PoseTest, SixDofWithZeroTiltEqualsThreeDof) {
  const ReferencePose planar{2, -1, 0.7};
  const ReferencePose full{2, -1, 0.7, 0.0, 0.0, 0.0};
  EXPECT_FALSE(full.tilted());
  const Vec3 p(4.5, 3.25, 1.0);
  EXPECT_EQ(worldToLocal(planar, p), worldToLocal(full, p));
}

TEST(PoseTest, PitchTiltsForwardAxis) {
  // Positive pitch about y points the heading downwards in ZYX order.
  const ReferencePose pose{0, 0, 0, 0.0, 0.0, std::numbers::pi / 2};
  EXPECT_TRUE(pose.tilted());
  const Vec3 local = worldToLocal(pose, {0, 0, -1});
  EXPECT_NEAR((local - Vec3(1, 0, 0)).norm(), 0.0, 1e-12);
}

TEST(PoseTest, Parse) {
  const ReferencePose p = ReferencePose::parse("10, 1.5, 0");
  EXPECT_EQ(p, (ReferencePose{10, 1.5, 0}));
  const ReferencePose q = ReferencePose::parse("1,2,3,4,5,6");
  ASSERT_TRUE(q.z && q.roll && q.pitch);
  EXPECT_EQ(*q.z, 4.0);
  EXPECT_EQ(*q.roll, 5.0);
  EXPECT_EQ(*q.pitch, 6.0);
  for (const char* bad : {"", "1,2", "1,2,3,4", "1,2,x", "1,2,3,4,5,6,7",
                          "nan,0,0", "1,,3"}) {
    EXPECT_THROW(ReferencePose::parse(bad), std::invalid_argument) << bad;
  }
}

}  // namespace
}  // namespace laneletml
