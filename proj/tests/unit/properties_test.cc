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

// Randomized invariants over the whole extraction pipeline.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "fixtures.h"
#include "laneletml/labeler.h"
#include "laneletml/map_io.h"
#include "laneletml/representations.h"
#include "mutations.h"
#include "oracles.h"

namespace laneletml {
namespace {

LocalInstanceSet generate(const LaneletMap& map, const ReferencePose& pose,
                          const RoiSpec& roi,
                          ProcessingStage stage = ProcessingStage::kResampled) {
  GeneratorConfig config;
  config.stage = stage;
  config.point_count = 20;
  return generateLocalInstances(map, RoutingGraph::build(map), pose, roi,
                                config);
}

LaneletMap rigidlyMoved(const LaneletMap& map, double dx, double dy,
                        double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  std::vector<Point3d> points(map.points().begin(), map.points().end());
  for (Point3d& p : points) {
    const double x = p.x;
    const double y = p.y;
    p.x = c * x - s * y + dx;
    p.y = s * x + c * y + dy;
  }
  return LaneletMap(std::move(points),
                    {map.linestrings().begin(), map.linestrings().end()},
                    {map.lanelets().begin(), map.lanelets().end()});
}

double distanceToPolyline(const Vec3& p, const Polyline3d& line) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < line.size(); ++i) {
    const Vec3 d = line[i + 1] - line[i];
    const double len2 = d.squaredNorm();
    const double t =
        len2 > 0.0 ? std::clamp((p - line[i]).dot(d) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, (line[i] + t * d - p).norm());
  }
  return best;
}

TEST(PropertiesTest, LinestringSplitsDoNotChangeLabels) {
  std::mt19937_64 rng(11);
  for (const auto& c : testutil::canonicalCases()) {
    const LocalInstanceSet expected = generate(c.map, c.pose, c.roi);
    for (int i = 0; i < 5; ++i) {
      const LaneletMap mutated = testutil::randomLinestringSplit(c.map, rng);
      const auto result =
          testutil::matchLabels(expected, generate(mutated, c.pose, c.roi), 1e-9);
      EXPECT_TRUE(result.ok) << c.name << ": " << result.message;
    }
  }
}

TEST(PropertiesTest, LaneletSubdivisionsDoNotChangeLabels) {
  std::mt19937_64 rng(12);
  for (const auto& c : testutil::canonicalCases()) {
    const LocalInstanceSet expected = generate(c.map, c.pose, c.roi);
    for (int i = 0; i < 5; ++i) {
      const LaneletMap mutated = testutil::randomLaneletSubdivision(c.map, rng);
      const auto result =
          testutil::matchLabels(expected, generate(mutated, c.pose, c.roi), 1e-9);
      EXPECT_TRUE(result.ok) << c.name << ": " << result.message;
    }
  }
}

TEST(PropertiesTest, ReserializedMapsGiveSameLabels) {
  std::mt19937_64 rng(13);
  for (const auto& c : testutil::canonicalCases()) {
    const LocalInstanceSet expected = generate(c.map, c.pose, c.roi);
    for (int i = 0; i < 5; ++i) {
      const std::string osm = testutil::shuffledOsm(c.map, rng);
      const LaneletMap reparsed =
          parseOsmMap(osm, Projector::localMetric()).map;
      const auto result =
          testutil::matchLabels(expected, generate(reparsed, c.pose, c.roi), 1e-9);
      EXPECT_TRUE(result.ok) << c.name << ": " << result.message;
    }
  }
}

TEST(PropertiesTest, ElementOrderDoesNotChangeOutputBytes) {
  std::mt19937_64 rng(14);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto c = testutil::randomGridCase(seed);
    const std::string expected = serializeJson(generate(c.map, c.pose, c.roi));
    EXPECT_EQ(serializeJson(generate(testutil::permutedModel(c.map, rng),
                                     c.pose, c.roi)),
              expected);
    const LaneletMap reparsed =
        parseOsmMap(testutil::shuffledOsm(c.map, rng, false),
                    Projector::localMetric())
            .map;
    EXPECT_EQ(serializeJson(generate(reparsed, c.pose, c.roi)), expected);
  }
}

TEST(PropertiesTest, EveryVisibleBoundaryIsInExactlyOneLabel) {
  std::vector<testutil::CanonicalCase> cases = testutil::canonicalCases();
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    cases.push_back(testutil::randomGridCase(seed));
  }
  for (const auto& c : cases) {
    const LocalInstanceSet set = generate(c.map, c.pose, c.roi);
    std::map<ElementId, int> labels_per_linestring;
    for (const CompoundLabel& label : set.labels) {
      if (label.label_class == LabelClass::kCenterline) continue;
      std::set<ElementId> in_label;
      for (const TraceRecord& r : label.trace) in_label.insert(r.element);
      for (ElementId id : in_label) ++labels_per_linestring[id];
    }
    const auto visible =
        testutil::visibleBoundaryLinestrings(c.map, c.pose, c.roi);
    for (ElementId id : visible) {
      EXPECT_EQ(labels_per_linestring[id], 1)
          << c.name << " linestring " << id.value;
    }
    for (const auto& [id, count] : labels_per_linestring) {
      EXPECT_TRUE(visible.count(id)) << c.name << " linestring " << id.value;
    }
  }
}

TEST(PropertiesTest, LabelsAreInvariantUnderRigidMotion) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> offset(-500.0, 500.0);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto c = testutil::randomGridCase(seed);
    const double dx = offset(rng);
    const double dy = offset(rng);
    const double a = angle(rng);
    const LaneletMap moved = rigidlyMoved(c.map, dx, dy, a);
    ReferencePose pose = c.pose;
    pose.x = std::cos(a) * c.pose.x - std::sin(a) * c.pose.y + dx;
    pose.y = std::sin(a) * c.pose.x + std::cos(a) * c.pose.y + dy;
    pose.yaw = c.pose.yaw + a;
    const auto expected = generate(c.map, c.pose, c.roi);
    const auto result =
        testutil::matchLabels(expected, generate(moved, pose, c.roi), 1e-6);
    EXPECT_TRUE(result.ok) << c.name << ": " << result.message;
  }
}

TEST(PropertiesTest, ResampledLabelsFollowCroppedGeometry) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto c = testutil::randomGridCase(seed);
    const auto cropped = generate(c.map, c.pose, c.roi, ProcessingStage::kCropped);
    const auto resampled = generate(c.map, c.pose, c.roi);
    ASSERT_EQ(cropped.labels.size(), resampled.labels.size());
    for (std::size_t i = 0; i < cropped.labels.size(); ++i) {
      const Polyline3d& dense = cropped.labels[i].points;
      const Polyline3d& sparse = resampled.labels[i].points;
      EXPECT_EQ(sparse.front(), dense.front());
      EXPECT_EQ(sparse.back(), dense.back());
      EXPECT_EQ(cropped.labels[i].trace, resampled.labels[i].trace);
      // Every resampled point lies on the cropped polyline.
      for (const Vec3& p : sparse) {
        EXPECT_LT(distanceToPolyline(p, dense), 1e-9);
      }
    }
  }
}

}  // namespace
}  // namespace laneletml
