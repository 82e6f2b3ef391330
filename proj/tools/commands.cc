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

#include "commands.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "laneletml/errors.h"
#include "laneletml/labeler.h"
#include "laneletml/map_io.h"
#include "laneletml/map_model.h"
#include "laneletml/representations.h"
#include "laneletml/routing.h"
#include "laneletml/synthetic.h"

namespace laneletml::cli {
namespace {

namespace fs = std::filesystem;

constexpr double kLatencyBudgetMs = 50.0;
constexpr double kLatencyStretchBudgetMs = 10.0;

// Command failure carrying its exit code.
class CommandError : public std::runtime_error {
 public:
  CommandError(int code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

struct MapOptions {
  std::string path;
  std::string projector = "local";
};

struct ExtractOptions {
  MapOptions map;
  std::string pose;
  std::string poses;
  std::string roi;
  double margin = RoiSpec{}.margin;
  std::size_t points = 20;
  std::string stage = "resampled";
  std::string format = "json";
  std::string out;
  std::size_t max_paths = PathLimits{}.max_paths;
  bool parallel = false;
};

struct BenchOptions {
  MapOptions map;
  std::size_t synthetic = 0;
  std::string poses;
  std::size_t pose_count = 100;
  std::uint64_t seed = 1;
  std::size_t repetitions = 1;
  std::string roi;
  double margin = RoiSpec{}.margin;
  std::size_t points = 20;
  std::size_t max_paths = PathLimits{}.max_paths;
  std::string out = "bench_report.json";
};

std::vector<double> parseNumbers(std::string_view text, std::size_t count,
                                 std::string_view what) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string_view token = text.substr(start, comma - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    double value = 0.0;
    const auto [end, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() ||
        end != token.data() + token.size() || !std::isfinite(value)) {
      throw CommandError(kExitInputError, "invalid " + std::string(what) +
                                              " '" + std::string(text) + "'");
    }
    values.push_back(value);
    start = comma + 1;
  }
  if (values.size() != count) {
    throw CommandError(kExitInputError,
                       std::string(what) + " needs " + std::to_string(count) +
                           " comma separated values");
  }
  return values;
}

RoiSpec makeRoi(const std::string& text, double margin) {
  RoiSpec roi;
  if (!text.empty()) {
    const auto v = parseNumbers(text, 4, "--roi");
    roi.forward = v[0];
    roi.backward = v[1];
    roi.left = v[2];
    roi.right = v[3];
  }
  roi.margin = margin;
  try {
    roi.validate();
  } catch (const std::invalid_argument& e) {
    throw CommandError(kExitInputError, e.what());
  }
  return roi;
}

Projector makeProjector(const std::string& text) {
  try {
    return Projector::fromString(text);
  } catch (const std::invalid_argument& e) {
    throw CommandError(kExitInputError, e.what());
  }
}

ParsedMap loadMap(const MapOptions& options, std::ostream& err) {
  const Projector projector = makeProjector(options.projector);
  std::error_code ec;
  if (!fs::is_regular_file(options.path, ec)) {
    throw CommandError(kExitDomainError,
                       "cannot open map file '" + options.path + "'");
  }
  ParsedMap parsed;
  try {
    parsed = loadOsmMap(options.path, projector);
  } catch (const ParseError& e) {
    throw CommandError(kExitInputError,
                       options.path + ": " + std::string(e.what()));
  } catch (const Error& e) {
    throw CommandError(kExitInputError,
                       options.path + ": " + std::string(e.what()));
  } catch (const std::runtime_error& e) {
    throw CommandError(kExitDomainError, e.what());
  }
  for (const ParseWarning& w : parsed.report.warnings) {
    err << "warning: line " << w.line << ": " << w.message << "\n";
  }
  return parsed;
}

void requireValidMap(const LaneletMap& map) {
  const auto findings = validateMap(map);
  const auto errors = std::count_if(
      findings.begin(), findings.end(),
      [](const Finding& f) { return f.severity == Severity::kError; });
  if (errors > 0) {
    throw CommandError(kExitDomainError,
                       "map has " + std::to_string(errors) +
                           " validation errors; run 'laneletml validate'");
  }
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError(kExitInputError, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void writeOutput(const std::string& path, const std::string& bytes,
                 std::ostream& out) {
  if (path.empty() || path == "-") {
    out << bytes;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  file << bytes;
  if (!file) throw CommandError(kExitDomainError, "cannot write '" + path + "'");
}

struct StreamPose {
  std::size_t line = 0;
  ReferencePose pose;
};

// Valid poses of a pose-stream file; invalid lines are reported and skipped.
std::vector<StreamPose> readPoseStream(const std::string& path,
                                       std::ostream& err) {
  std::istringstream in(readFile(path));
  std::vector<StreamPose> poses;
  std::size_t invalid = 0;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      poses.push_back({number, ReferencePose::parse(line)});
    } catch (const std::invalid_argument& e) {
      err << "warning: " << path << ":" << number << ": " << e.what()
          << "; skipped\n";
      ++invalid;
    }
  }
  if (poses.empty()) {
    throw CommandError(kExitInputError,
                       invalid > 0 ? "no valid pose in '" + path + "'"
                                   : "pose stream '" + path + "' is empty");
  }
  return poses;
}

ReferencePose parsePose(const std::string& text) {
  try {
    return ReferencePose::parse(text);
  } catch (const std::invalid_argument& e) {
    throw CommandError(kExitInputError, "--pose: " + std::string(e.what()));
  }
}

std::string streamOutputPath(const std::string& out, std::size_t line) {
  const fs::path path(out);
  fs::path name = path.stem();
  name += "_" + std::to_string(line);
  name += path.extension();
  return (path.parent_path() / name).string();
}

std::string formatNumber(double value) {
  std::ostringstream s;
  s << value;
  return s.str();
}

int cmdInfo(const MapOptions& options, std::ostream& out, std::ostream& err) {
  const ParsedMap parsed = loadMap(options, err);
  const LaneletMap& map = parsed.map;
  const RoutingGraph graph = buildRoutingGraph(map);
  out << "points: " << map.points().size() << "\n"
      << "linestrings: " << map.linestrings().size() << "\n"
      << "lanelets: " << map.lanelets().size() << "\n"
      << "successor edges: " << graph.successorEdgeCount() << "\n"
      << "adjacent pairs: " << graph.adjacencyCount() << "\n";
  Box2d box;
  for (const Point3d& p : map.points()) box.extend(p.position());
  if (box.empty()) {
    out << "bounding box: empty\n";
  } else {
    out << "bounding box: [" << formatNumber(box.min_x) << ", "
        << formatNumber(box.min_y) << "] - [" << formatNumber(box.max_x)
        << ", " << formatNumber(box.max_y) << "]\n";
  }
  return kExitOk;
}

int cmdValidate(const MapOptions& options, std::ostream& out,
                std::ostream& err) {
  const ParsedMap parsed = loadMap(options, err);
  const auto findings = validateMap(parsed.map);
  std::size_t errors = 0;
  for (const Finding& f : findings) {
    const bool is_error = f.severity == Severity::kError;
    errors += is_error ? 1 : 0;
    out << (is_error ? "error " : "warning ") << f.element.value << ": "
        << f.message << "\n";
  }
  if (errors > 0) {
    out << "FAILED: " << errors << " error(s)\n";
    return kExitDomainError;
  }
  out << "OK\n";
  return kExitOk;
}

struct Extraction {
  const LaneletMap* map = nullptr;
  const RoutingGraph* graph = nullptr;
  RoiSpec roi;
  GeneratorConfig config;
  std::string format;
};

std::string extractOne(const Extraction& job, const ReferencePose& pose,
                       std::vector<std::string>& warnings) {
  const LocalInstanceSet set =
      generateLocalInstances(*job.map, *job.graph, pose, job.roi, job.config);
  if (job.format == "json") return serializeJson(set);
  if (job.format == "svg") return renderSvg(set, job.roi);
  const FixedPointSet fps = toFixedPointSet(set, job.config.point_count);
  for (const auto& w : fps.warnings) {
    warnings.push_back("label " + std::to_string(w.label_index) + ": " +
                       w.message + "; skipped");
  }
  return serializeTensors(fps);
}

int cmdExtract(ExtractOptions options, std::ostream& out, std::ostream& err) {
  if (options.pose.empty() == options.poses.empty()) {
    throw CommandError(kExitInputError,
                       "exactly one of --pose and --poses is required");
  }
  const auto stage = stageFromString(options.stage);
  if (!stage) {
    throw CommandError(kExitInputError, "unknown stage '" + options.stage + "'");
  }
  if (options.format != "json" && options.format != "tensors" &&
      options.format != "svg") {
    throw CommandError(kExitInputError,
                       "unknown format '" + options.format + "'");
  }
  if (options.format != "json" && *stage == ProcessingStage::kRaw) {
    throw CommandError(kExitInputError,
                       options.format + " output needs stage cropped or resampled");
  }
  if (options.points < 2 && (*stage == ProcessingStage::kResampled ||
                             options.format == "tensors")) {
    throw CommandError(kExitInputError, "--points must be at least 2");
  }
  if (!options.poses.empty() && (options.out.empty() || options.out == "-")) {
    throw CommandError(kExitInputError, "--poses needs --out");
  }
  if (options.max_paths == 0) {
    throw CommandError(kExitInputError, "--max-paths must be positive");
  }

  Extraction job;
  job.roi = makeRoi(options.roi, options.margin);
  job.config.stage = *stage;
  job.config.point_count = options.points;
  job.config.limits.max_paths = options.max_paths;
  job.format = options.format;

  std::vector<StreamPose> poses;
  if (!options.pose.empty()) {
    poses.push_back({0, parsePose(options.pose)});
  } else {
    poses = readPoseStream(options.poses, err);
  }

  const ParsedMap parsed = loadMap(options.map, err);
  requireValidMap(parsed.map);
  const RoutingGraph graph = buildRoutingGraph(parsed.map);
  job.map = &parsed.map;
  job.graph = &graph;

  struct Result {
    std::optional<std::string> bytes;
    std::string error;
    std::vector<std::string> warnings;
  };
  std::vector<Result> results(poses.size());
  auto run = [&](std::size_t i) {
    try {
      results[i].bytes = extractOne(job, poses[i].pose, results[i].warnings);
    } catch (const std::exception& e) {
      results[i].error = e.what();
    }
  };
  if (options.parallel && poses.size() > 1) {
    const std::size_t workers = std::min<std::size_t>(
        poses.size(), std::max(1u, std::thread::hardware_concurrency()));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&] {
        for (std::size_t i = next++; i < poses.size(); i = next++) run(i);
      });
    }
    for (std::thread& t : threads) t.join();
  } else {
    for (std::size_t i = 0; i < poses.size(); ++i) run(i);
  }

  std::size_t failures = 0;
  for (std::size_t i = 0; i < poses.size(); ++i) {
    const std::string where =
        poses[i].line == 0 ? std::string("pose")
                           : "pose on line " + std::to_string(poses[i].line);
    for (const std::string& w : results[i].warnings) {
      err << "warning: " << where << ": " << w << "\n";
    }
    if (!results[i].bytes) {
      err << "error: " << where << ": " << results[i].error << "\n";
      ++failures;
      continue;
    }
    const std::string path = poses[i].line == 0
                                 ? options.out
                                 : streamOutputPath(options.out, poses[i].line);
    writeOutput(path, *results[i].bytes, out);
  }
  return failures == poses.size() ? kExitDomainError : kExitOk;
}

double percentile(const std::vector<double>& sorted, double q) {
  const double position = q * static_cast<double>(sorted.size() - 1);
  const auto lower = static_cast<std::size_t>(std::floor(position));
  const std::size_t upper = std::min(lower + 1, sorted.size() - 1);
  const double t = position - static_cast<double>(lower);
  return sorted[lower] + t * (sorted[upper] - sorted[lower]);
}

int cmdBench(const BenchOptions& options, std::ostream& out,
             std::ostream& err) {
  if (options.map.path.empty() == (options.synthetic == 0)) {
    throw CommandError(kExitInputError,
                       "exactly one of --map and --synthetic is required");
  }
  if (options.repetitions == 0 || options.points < 2) {
    throw CommandError(kExitInputError,
                       "--repetitions must be positive and --points >= 2");
  }
  const RoiSpec roi = makeRoi(options.roi, options.margin);

  LaneletMap map;
  std::string source;
  if (options.synthetic > 0) {
    map = makeSyntheticGridMap(options.synthetic, options.seed);
    source = "synthetic:" + std::to_string(options.synthetic);
  } else {
    map = loadMap(options.map, err).map;
    source = options.map.path;
  }
  requireValidMap(map);

  std::vector<ReferencePose> poses;
  if (!options.poses.empty()) {
    for (const StreamPose& p : readPoseStream(options.poses, err)) {
      poses.push_back(p.pose);
    }
  } else {
    poses = makeSyntheticPoses(map, options.pose_count, options.seed);
  }
  if (poses.empty()) throw CommandError(kExitInputError, "no poses to run");

  const RoutingGraph graph = buildRoutingGraph(map);
  GeneratorConfig config;
  config.stage = ProcessingStage::kResampled;
  config.point_count = options.points;
  config.limits.max_paths = options.max_paths;

  std::vector<double> samples;
  std::size_t labels = 0;
  for (std::size_t r = 0; r < options.repetitions; ++r) {
    for (const ReferencePose& pose : poses) {
      const auto start = std::chrono::steady_clock::now();
      const LocalInstanceSet set =
          generateLocalInstances(map, graph, pose, roi, config);
      const std::string bytes =
          serializeTensors(toFixedPointSet(set, options.points));
      const auto stop = std::chrono::steady_clock::now();
      samples.push_back(
          std::chrono::duration<double, std::milli>(stop - start).count());
      labels += set.labels.size();
    }
  }

  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double s : samples) sum += s;
  const double mean = sum / static_cast<double>(samples.size());
  const double p50 = samples.size() == 1 ? mean : percentile(sorted, 0.5);
  const double p99 = percentile(sorted, 0.99);

  nlohmann::ordered_json report;
  report["map"] = {{"source", source},
                   {"lanelets", map.lanelets().size()}};
  report["roi"] = {{"forward", roi.forward},
                   {"backward", roi.backward},
                   {"left", roi.left},
                   {"right", roi.right},
                   {"margin", roi.margin}};
  report["points"] = options.points;
  report["poses"] = poses.size();
  report["repetitions"] = options.repetitions;
  report["samples"] = samples.size();
  report["labels_per_extraction"] =
      static_cast<double>(labels) / static_cast<double>(samples.size());
  report["timings_ms"] = {{"mean", mean},
                          {"p50", p50},
                          {"p99", p99},
                          {"min", sorted.front()},
                          {"max", sorted.back()}};
  report["budget_ms"] = kLatencyBudgetMs;
  report["stretch_budget_ms"] = kLatencyStretchBudgetMs;
  report["within_budget"] = mean <= kLatencyBudgetMs;
  report["within_stretch_budget"] = mean <= kLatencyStretchBudgetMs;

  out << "map: " << source << " (" << map.lanelets().size() << " lanelets)\n"
      << "poses: " << poses.size() << ", repetitions: " << options.repetitions
      << ", samples: " << samples.size() << "\n"
      << "mean_ms: " << mean << "\n"
      << "p50_ms: " << p50 << "\n"
      << "p99_ms: " << p99 << "\n"
      << "min_ms: " << sorted.front() << "\n"
      << "max_ms: " << sorted.back() << "\n"
      << "budget_ms: " << kLatencyBudgetMs
      << (mean <= kLatencyBudgetMs ? " (met)" : " (missed)") << "\n"
      << "stretch_budget_ms: " << kLatencyStretchBudgetMs
      << (mean <= kLatencyStretchBudgetMs ? " (met)" : " (missed)") << "\n";
  if (!options.out.empty()) {
    writeOutput(options.out, report.dump(2) + "\n", out);
    out << "report: " << options.out << "\n";
  }
  return kExitOk;
}

void addMapOptions(CLI::App* command, MapOptions& options) {
  command->add_option("--map", options.path, "Lanelet2 OSM map file")
      ->required();
  command->add_option("--projector", options.projector,
                      "local or tangent:LAT,LON")
      ->capture_default_str();
}

void addExtractOptions(CLI::App* command, ExtractOptions& options,
                       bool with_format) {
  addMapOptions(command, options.map);
  command->add_option("--pose", options.pose, "X,Y,YAW[,Z,ROLL,PITCH]");
  command->add_option("--poses", options.poses,
                      "pose stream file, one pose per line");
  command->add_option("--roi", options.roi, "F,B,L,R in meters");
  command->add_option("--margin", options.margin, "submap margin in meters")
      ->capture_default_str();
  command->add_option("--points", options.points, "points per label")
      ->capture_default_str();
  command->add_option("--stage", options.stage, "raw, cropped or resampled")
      ->capture_default_str();
  if (with_format) {
    command->add_option("--format", options.format, "json, tensors or svg")
        ->capture_default_str();
  }
  command->add_option("--out", options.out,
                      "output file; pose streams write <stem>_<line><ext>");
  command->add_option("--max-paths", options.max_paths,
                      "path enumeration limit")
      ->capture_default_str();
  command->add_flag("--parallel", options.parallel,
                    "process pose-stream entries on all cores");
}

}  // namespace

int runCli(std::span<const std::string> args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Local map instance labels from Lanelet2 maps", "laneletml"};
  app.require_subcommand(1);

  MapOptions info_options;
  addMapOptions(app.add_subcommand("info", "Print element and graph counts"),
                info_options);
  MapOptions validate_options;
  addMapOptions(app.add_subcommand("validate", "Check structural consistency"),
                validate_options);
  ExtractOptions extract_options;
  addExtractOptions(app.add_subcommand("extract", "Generate local labels"),
                    extract_options, true);
  ExtractOptions render_options;
  addExtractOptions(app.add_subcommand("render", "Render local labels as SVG"),
                    render_options, false);

  BenchOptions bench_options;
  CLI::App* bench = app.add_subcommand("bench", "Measure extraction latency");
  bench->add_option("--map", bench_options.map.path, "Lanelet2 OSM map file");
  bench->add_option("--projector", bench_options.map.projector,
                    "local or tangent:LAT,LON");
  bench->add_option("--synthetic", bench_options.synthetic,
                    "generate a grid map with N lanelets");
  bench->add_option("--poses", bench_options.poses, "pose stream file");
  bench->add_option("--pose-count", bench_options.pose_count,
                    "synthetic poses when --poses is absent")
      ->capture_default_str();
  bench->add_option("--seed", bench_options.seed)->capture_default_str();
  bench->add_option("--repetitions", bench_options.repetitions)
      ->capture_default_str();
  bench->add_option("--roi", bench_options.roi, "F,B,L,R in meters");
  bench->add_option("--margin", bench_options.margin)->capture_default_str();
  bench->add_option("--points", bench_options.points)->capture_default_str();
  bench->add_option("--max-paths", bench_options.max_paths)
      ->capture_default_str();
  bench->add_option("--out", bench_options.out, "JSON report path")
      ->capture_default_str();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("laneletml");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "info") return cmdInfo(info_options, out, err);
    if (name == "validate") return cmdValidate(validate_options, out, err);
    if (name == "extract") return cmdExtract(extract_options, out, err);
    if (name == "render") {
      render_options.format = "svg";
      return cmdExtract(render_options, out, err);
    }
    return cmdBench(bench_options, out, err);
  } catch (const CommandError& e) {
    err << "error: " << e.what() << "\n";
    return e.code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
}

}  // namespace laneletml::cli
