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

#include <benchmark/benchmark.h>

#include <map>

#include "laneletml/labeler.h"
#include "laneletml/representations.h"
#include "laneletml/routing.h"
#include "laneletml/synthetic.h"

namespace laneletml {
namespace {

struct Scene {
  LaneletMap map;
  RoutingGraph graph;
  std::vector<ReferencePose> poses;

  explicit Scene(std::size_t lanelets)
      : map(makeSyntheticGridMap(lanelets, 1)),
        graph(RoutingGraph::build(map)),
        poses(makeSyntheticPoses(map, 64, 7)) {}
};

const Scene& scene(std::size_t lanelets) {
  static std::map<std::size_t, Scene> scenes;
  auto it = scenes.find(lanelets);
  if (it == scenes.end()) it = scenes.try_emplace(lanelets, lanelets).first;
  return it->second;
}

void BM_Extraction(benchmark::State& state) {
  const Scene& s = scene(static_cast<std::size_t>(state.range(0)));
  GeneratorConfig config;
  config.point_count = static_cast<std::size_t>(state.range(1));
  std::size_t i = 0;
  for (auto _ : state) {
    const ReferencePose& pose = s.poses[i++ % s.poses.size()];
    const LocalInstanceSet set =
        generateLocalInstances(s.map, s.graph, pose, RoiSpec{}, config);
    std::string bytes = serializeTensors(toFixedPointSet(set, config.point_count));
    benchmark::DoNotOptimize(bytes);
  }
}
BENCHMARK(BM_Extraction)
    ->ArgsProduct({{100, 1000, 10000}, {8, 20}})
    ->Unit(benchmark::kMillisecond);

void BM_Submap(benchmark::State& state) {
  const Scene& s = scene(static_cast<std::size_t>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    auto submap = extractSubmap(s.map, s.poses[i++ % s.poses.size()], RoiSpec{});
    benchmark::DoNotOptimize(submap);
  }
}
BENCHMARK(BM_Submap)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_RoutingGraph(benchmark::State& state) {
  const Scene& s = scene(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    RoutingGraph graph = RoutingGraph::build(s.map);
    benchmark::DoNotOptimize(graph);
  }
}
BENCHMARK(BM_RoutingGraph)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Centerline(benchmark::State& state) {
  const Scene& s = scene(1000);
  std::size_t i = 0;
  for (auto _ : state) {
    Polyline3d c = centerline(s.map, s.map.lanelets()[i++ % 1000]);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_Centerline);

}  // namespace
}  // namespace laneletml

BENCHMARK_MAIN();
