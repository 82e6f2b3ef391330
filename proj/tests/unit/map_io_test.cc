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

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.h"
#include "laneletml/errors.h"
#include "mutations.h"

namespace laneletml {
namespace {

std::string dataPath(const std::string& name) {
  return std::string(LANELETML_TEST_DATA_DIR) + "/" + name;
}

std::string readData(const std::string& name) {
  std::ifstream in(dataPath(name), std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void expectSameMap(const LaneletMap& a, const LaneletMap& b, double tol) {
  ASSERT_EQ(a.points().size(), b.points().size());
  for (std::size_t i = 0; i < a.points().size(); ++i) {
    EXPECT_EQ(a.points()[i].id, b.points()[i].id);
    EXPECT_LE((a.points()[i].position() - b.points()[i].position()).norm(),
              tol);
  }
  ASSERT_EQ(a.linestrings().size(), b.linestrings().size());
  for (std::size_t i = 0; i < a.linestrings().size(); ++i) {
    EXPECT_EQ(a.linestrings()[i], b.linestrings()[i]);
  }
  ASSERT_EQ(a.lanelets().size(), b.lanelets().size());
  for (std::size_t i = 0; i < a.lanelets().size(); ++i) {
    const Lanelet& x = a.lanelets()[i];
    const Lanelet& y = b.lanelets()[i];
    EXPECT_EQ(x.id, y.id);
    EXPECT_EQ(x.left, y.left);
    EXPECT_EQ(x.right, y.right);
    AttributeMap tags = x.attributes;
    tags["type"] = "lanelet";
    EXPECT_EQ(tags, y.attributes);
  }
}

TEST(MapIoTest, ParsesS2Fixture) {
  const ParsedMap parsed =
      loadOsmMap(dataPath("map_s2.osm"), Projector::localMetric());
  EXPECT_EQ(parsed.report.points, 6u);
  EXPECT_EQ(parsed.report.linestrings, 4u);
  EXPECT_EQ(parsed.report.lanelets, 2u);
  EXPECT_TRUE(parsed.report.warnings.empty());
  expectSameMap(testutil::makeMapS2(), parsed.map, 0.0);
}

TEST(MapIoTest, GoldenFixturesMatchWriter) {
  const std::vector<std::pair<std::string, LaneletMap>> maps = {
      {"map_s2.osm", testutil::makeMapS2()},
      {"map_s2_ramp.osm", testutil::makeMapS2Ramp()},
      {"map_b3.osm", testutil::makeMapB3()},
      {"map_p4.osm", testutil::makeMapP4()},
      {"map_t.osm", testutil::makeMapT()},
      {"map_r.osm", testutil::makeMapR()},
      {"map_fork.osm", testutil::makeMapFork()},
      {"bidirectional.osm", testutil::makeBidirectionalMap()},
      {"empty.osm", LaneletMap()},
  };
  for (const auto& [name, map] : maps) {
    EXPECT_EQ(writeOsmMap(map, Projector::localMetric()), readData(name))
        << name;
  }
}

TEST(MapIoTest, EmptyDocument) {
  for (const char* xml : {"<osm/>", "<osm version=\"0.6\"></osm>"}) {
    const ParsedMap parsed = parseOsmMap(xml, Projector::localMetric());
    EXPECT_TRUE(parsed.map.empty());
    EXPECT_EQ(parsed.report.points, 0u);
    EXPECT_EQ(parsed.report.lanelets, 0u);
  }
  EXPECT_EQ(writeOsmMap(LaneletMap(), Projector::localMetric()),
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            "<osm version=\"0.6\" generator=\"laneletml\"/>\n");
}

TEST(MapIoTest, RelationMissingMemberIsSkipped) {
  const std::string xml = R"(<osm>
  <node id="1" lat="0" lon="0"><tag k="local_x" v="0"/><tag k="local_y" v="0"/></node>
  <node id="2" lat="0" lon="0"><tag k="local_x" v="1"/><tag k="local_y" v="0"/></node>
  <way id="10"><nd ref="1"/><nd ref="2"/></way>
  <relation id="20">
    <member type="way" role="left" ref="10"/>
    <tag k="type" v="lanelet"/>
  </relation>
  <relation id="21"><tag k="type" v="multipolygon"/></relation>
</osm>)";
  const ParsedMap parsed = parseOsmMap(xml, Projector::localMetric());
  EXPECT_TRUE(parsed.map.lanelets().empty());
  ASSERT_EQ(parsed.report.warnings.size(), 2u);
  EXPECT_EQ(parsed.report.warnings[0].line, 5u);
  EXPECT_EQ(parsed.map.linestrings().size(), 1u);
}

TEST(MapIoTest, MalformedXmlReportsLine) {
  try {
    parseOsmMap(readData("malformed.osm"), Projector::localMetric());
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    // The unterminated end tag on line 5 is detected at the next '<'.
    EXPECT_EQ(e.line(), 6u);
  }
}

TEST(MapIoTest, RejectsBadDocuments) {
  const Projector local = Projector::localMetric();
  EXPECT_THROW(parseOsmMap("<map/>", local), ParseError);
  EXPECT_THROW(parseOsmMap("", local), ParseError);
  // Duplicate node.
  EXPECT_THROW(parseOsmMap(R"(<osm>
    <node id="1" lat="0" lon="0"><tag k="local_x" v="0"/><tag k="local_y" v="0"/></node>
    <node id="1" lat="0" lon="0"><tag k="local_x" v="0"/><tag k="local_y" v="0"/></node>
    </osm>)",
                           local),
               ParseError);
  // Local projector needs local_x/local_y.
  try {
    parseOsmMap("<osm>\n<node id=\"1\" lat=\"0\" lon=\"0\"/>\n</osm>", local);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parseOsmMap("<osm><node id=\"x\" lat=\"0\" lon=\"0\"/></osm>",
                           Projector::tangentPlane(0, 0)),
               ParseError);
}

TEST(MapIoTest, TangentPlaneParsingAndElevation) {
  const Projector projector = Projector::tangentPlane(48.0, 11.0);
  const ParsedMap parsed = parseOsmMap(
      R"(<osm><node id="1" lat="48.00001" lon="11"><tag k="ele" v="2.5"/></node></osm>)",
      projector);
  ASSERT_EQ(parsed.map.points().size(), 1u);
  const Point3d& p = parsed.map.points()[0];
  EXPECT_NEAR(p.x, 0.0, 1e-9);
  EXPECT_NEAR(p.y, 1.113, 1e-3);
  EXPECT_DOUBLE_EQ(p.z, 2.5);
  EXPECT_EQ(parsed.map.metadata().projector, "tangent");
  EXPECT_DOUBLE_EQ(parsed.map.metadata().origin_lat, 48.0);
}

TEST(MapIoTest, InfersRightBoundaryDirection) {
  const LaneletMap reversed =
      testutil::reverseLinestring(testutil::makeMapS2(), ElementId(102));
  const std::string xml = writeOsmMap(reversed, Projector::localMetric());
  const ParsedMap parsed = parseOsmMap(xml, Projector::localMetric());
  const Lanelet& a = *parsed.map.findLanelet(ElementId(1001));
  EXPECT_FALSE(a.left.inverted);
  EXPECT_TRUE(a.right.inverted);
  EXPECT_EQ(directedBoundary(parsed.map, a, BoundarySide::kRight),
            (Polyline3d{{0, 0, 0}, {10, 0, 0}}));
}

TEST(MapIoTest, RoundTripCanonicalAndRandomMaps) {
  std::vector<LaneletMap> maps;
  for (auto& c : testutil::canonicalCases()) maps.push_back(std::move(c.map));
  maps.push_back(testutil::makeMapS2Ramp());
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    maps.push_back(testutil::randomGridCase(seed).map);
  }
  for (const LaneletMap& map : maps) {
    const std::string local = writeOsmMap(map, Projector::localMetric());
    expectSameMap(map, parseOsmMap(local, Projector::localMetric()).map, 0.0);
    const Projector tangent = Projector::tangentPlane(48.1, 11.5);
    const std::string geo = writeOsmMap(map, tangent);
    expectSameMap(map, parseOsmMap(geo, tangent).map, 1e-6);
  }
}

TEST(MapIoTest, EscapesUnicodeAndMarkup) {
  testutil::MapBuilder b;
  b.point(1, 0, 0).point(2, 1, 0).point(3, 0, 3).point(4, 1, 3);
  b.linestring(11, {3, 4},
               {{"type", "road_border"}, {"name", "Straße <\"A&B\"> 'ü' ✓"}});
  b.linestring(12, {1, 2}, testutil::roadBorder());
  b.lanelet(100, 11, 12);
  const LaneletMap map = b.build();
  const std::string xml = writeOsmMap(map, Projector::localMetric());
  EXPECT_NE(xml.find("&lt;&quot;A&amp;B&quot;&gt;"), std::string::npos);
  expectSameMap(map, parseOsmMap(xml, Projector::localMetric()).map, 0.0);
}

TEST(MapIoTest, WriterRefusesInvalidMaps) {
  try {
    writeOsmMap(testutil::makeDanglingReferenceMap(), Projector::localMetric());
    FAIL() << "expected InvalidMapError";
  } catch (const InvalidMapError& e) {
    EXPECT_EQ(e.findings().size(), 1u);
  }
}

TEST(MapIoTest, ParsingIsOrderInsensitive) {
  std::mt19937_64 rng(11);
  for (const auto& c : testutil::canonicalCases()) {
    const LaneletMap reference =
        parseOsmMap(writeOsmMap(c.map, Projector::localMetric()),
                    Projector::localMetric())
            .map;
    for (int i = 0; i < 5; ++i) {
      const std::string xml = testutil::shuffledOsm(c.map, rng, false);
      expectSameMap(reference,
                    parseOsmMap(xml, Projector::localMetric()).map, 0.0);
    }
  }
}

TEST(MapIoTest, ProjectionFormula) {
  const Projector origin = Projector::tangentPlane(0.0, 0.0);
  const MetricCoordinate zero = project({0.0, 0.0}, origin);
  EXPECT_EQ(zero.x, 0.0);
  EXPECT_EQ(zero.y, 0.0);
  const MetricCoordinate north = project({1e-5, 0.0}, origin);
  EXPECT_NEAR(north.x, 0.0, 1e-12);
  EXPECT_NEAR(north.y, 1.113, 1e-3);
  const MetricCoordinate east = project({0.0, 1e-5}, origin);
  EXPECT_NEAR(east.x, 1.113, 1e-3);
  EXPECT_NEAR(east.y, 0.0, 1e-12);
  EXPECT_THROW(project({0, 0}, Projector::localMetric()),
               UnsupportedOperationError);
  EXPECT_THROW(unproject({0, 0}, Projector::localMetric()),
               UnsupportedOperationError);
}

TEST(MapIoTest, ProjectionRoundTrip) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> lat0(-80.0, 80.0);
  std::uniform_real_distribution<double> lon0(-179.0, 179.0);
  std::uniform_real_distribution<double> delta(-0.1, 0.1);
  for (int i = 0; i < 1000; ++i) {
    const Projector p = Projector::tangentPlane(lat0(rng), lon0(rng));
    const GeodeticCoordinate g{p.origin_lat + delta(rng),
                               p.origin_lon + delta(rng)};
    const GeodeticCoordinate back = unproject(project(g, p), p);
    EXPECT_NEAR(back.lat, g.lat, 1e-9);
    EXPECT_NEAR(back.lon, g.lon, 1e-9);
  }
}

TEST(MapIoTest, ProjectorSpec) {
  EXPECT_EQ(Projector::fromString("local").kind, ProjectorKind::kLocalMetric);
  const Projector t = Projector::fromString("tangent:48.5,-11.25");
  EXPECT_EQ(t.kind, ProjectorKind::kTangentPlane);
  EXPECT_DOUBLE_EQ(t.origin_lat, 48.5);
  EXPECT_DOUBLE_EQ(t.origin_lon, -11.25);
  EXPECT_THROW(Projector::fromString("utm"), std::invalid_argument);
  EXPECT_THROW(Projector::fromString("tangent:91,0"), std::invalid_argument);
  EXPECT_THROW(Projector::fromString("tangent:0,181"), std::invalid_argument);
  EXPECT_THROW(Projector::fromString("tangent:1"), std::invalid_argument);
}

}  // namespace
}  // namespace laneletml
