// Copyright 2026 The bottleneck-robustness Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <catch_amalgamated.hpp>
#include <json.hpp>

#include "bottleneck/commands.hpp"
#include "support.hpp"

using namespace bottleneck;
using namespace bottleneck::cli;

namespace {

std::string data(const std::string& name) { return std::string(BOTTLENECK_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("bottleneck_test_" + name);
  std::ofstream(path, std::ios::binary) << contents;
  return path.string();
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

template <typename F>
Run capture(F&& f) {
  std::ostringstream out, err;
  const int code = f(out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("solve prints value, bottleneck edges and a witness", "[cli]") {
  Run r = capture([](auto& o, auto& e) { return cmd_solve(data("example1.csv"), o, e); });
  CHECK(r.code == kSuccess);
  CHECK(r.out.rfind("value 7\nbottleneck (3,3)\nwitness ", 0) == 0);

  r = capture([](auto& o, auto& e) { return cmd_solve(data("tasks_3x4.csv"), o, e); });
  CHECK(r.code == kSuccess);
  CHECK(r.out.rfind("value 21.5\nbottleneck (2,3)\n", 0) == 0);
}

TEST_CASE("solve exit codes", "[cli]") {
  Run r = capture([](auto& o, auto& e) { return cmd_solve(data("unmatchable.csv"), o, e); });
  CHECK(r.code == kInfeasible);
  CHECK(r.err.find("infeasible") != std::string::npos);

  r = capture([](auto& o, auto& e) { return cmd_solve("/nonexistent/x.csv", o, e); });
  CHECK(r.code == kUsage);

  const std::string bad = temp_file("bad.csv", "1,2\nx,y\n");
  r = capture([&](auto& o, auto& e) { return cmd_solve(bad, o, e); });
  CHECK(r.code == kUsage);
  CHECK(r.err.find("parse error") != std::string::npos);
}

TEST_CASE("bounds table shows the published cells", "[cli]") {
  Run r = capture([](auto& o, auto& e) {
    return cmd_bounds(data("tasks_3x4.csv"), BoundsMethod::kNaive, OutputFormat::kTable, o, e);
  });
  REQUIRE(r.code == kSuccess);
  CHECK(r.out.find("[-inf, 7.0]") != std::string::npos);
  CHECK(r.out.find("[-5.05, inf]") != std::string::npos);
  CHECK(r.out.find("[-4.7, 1.75]") != std::string::npos);

  r = capture([](auto& o, auto& e) {
    return cmd_bounds(data("tasks_3x4.csv"), BoundsMethod::kRelaxed, OutputFormat::kTable, o, e);
  });
  REQUIRE(r.code == kSuccess);
  CHECK(r.out.find("e- (3,2) weight 12.1") != std::string::npos);
  CHECK(r.out.find("e+ (2,4) weight 28.3") != std::string::npos);
  CHECK(r.out.find("[-4.7, 3.4]") != std::string::npos);
  CHECK(r.out.find("[-inf, inf]") != std::string::npos);

  r = capture([](auto& o, auto& e) {
    return cmd_bounds(data("example1.csv"), BoundsMethod::kTheorem1Box, OutputFormat::kTable, o, e);
  });
  REQUIRE(r.code == kSuccess);
  CHECK(r.out.find("Δ = 0.5\n") != std::string::npos);
  CHECK(r.out.find("[-0.5, 0.5]") != std::string::npos);
}

TEST_CASE("bounds csv and json carry full precision", "[cli]") {
  const auto expected = bottleneck::testing::naive_table();
  Run r = capture([](auto& o, auto& e) {
    return cmd_bounds(data("tasks_3x4.csv"), BoundsMethod::kNaive, OutputFormat::kCsv, o, e);
  });
  REQUIRE(r.code == kSuccess);
  std::istringstream in(r.out);
  std::string line;
  std::size_t rows = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      CHECK(line == "agent,task,weight,lower,upper");
      header = true;
      continue;
    }
    std::istringstream cells(line);
    std::string a, t, w, lo, hi;
    std::getline(cells, a, ',');
    std::getline(cells, t, ',');
    std::getline(cells, w, ',');
    std::getline(cells, lo, ',');
    std::getline(cells, hi, ',');
    const auto& row = expected.at(rows++);
    CHECK(std::stoul(a) == row.edge.agent);
    CHECK(std::stoul(t) == row.edge.task);
    CHECK(bottleneck::testing::same_bound(std::stod(lo), row.lower, 1e-9));
    CHECK(bottleneck::testing::same_bound(std::stod(hi), row.upper, 1e-9));
  }
  CHECK(rows == 12);

  r = capture([](auto& o, auto& e) {
    return cmd_bounds(data("tasks_3x4.csv"), BoundsMethod::kRelaxed, OutputFormat::kJson, o, e);
  });
  REQUIRE(r.code == kSuccess);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["method"] == "relaxed");
  CHECK(doc["bottleneck"]["agent"] == 1);
  CHECK(doc["bottleneck"]["task"] == 2);
  CHECK(doc["e_minus"]["weight"] == 12.1);
  CHECK(doc["e_plus"]["weight"] == 28.3);
  CHECK(doc["intervals"].size() == 12);
}

TEST_CASE("verify finds no violations of the certified bounds", "[cli]") {
  for (BoundsMethod m : {BoundsMethod::kTheorem1Box, BoundsMethod::kRelaxed, BoundsMethod::kNaive}) {
    Run r = capture([&](auto& o, auto& e) { return cmd_verify(data("tasks_3x4.csv"), m, 1000, 5, o, e); });
    CHECK(r.code == kSuccess);
    CHECK(r.out.find("violations 0\n") != std::string::npos);
  }
  Run r = capture([](auto& o, auto& e) {
    return cmd_verify(data("tasks_3x4.csv"), BoundsMethod::kNaive, 0, 5, o, e);
  });
  CHECK(r.code == kUsage);
}

TEST_CASE("simulate writes reproducible csv", "[cli]") {
  SimulationConfig config;
  config.n_min = 3;
  config.n_max = 5;
  config.trials_per_size = 4;
  config.seed = 11;
  config.parallelism = 2;
  const auto path_a = (std::filesystem::temp_directory_path() / "bottleneck_sim_a.csv").string();
  const auto path_b = (std::filesystem::temp_directory_path() / "bottleneck_sim_b.csv").string();
  Run a = capture([&](auto& o, auto& e) { return cmd_simulate(config, path_a, o, e); });
  config.parallelism = 1;
  Run b = capture([&](auto& o, auto& e) { return cmd_simulate(config, path_b, o, e); });
  REQUIRE(a.code == kSuccess);
  REQUIRE(b.code == kSuccess);
  CHECK(a.out.find("records 12, relaxed below naive in 0") != std::string::npos);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(slurp(path_a) == slurp(path_b));
  CHECK(slurp(path_a).size() > 40);

  Run bad = capture([&](auto& o, auto& e) { return cmd_simulate(config, "/nonexistent/dir/out.csv", o, e); });
  CHECK(bad.code == kUsage);
  config.n_min = 1;
  Run invalid = capture([&](auto& o, auto& e) { return cmd_simulate(config, "-", o, e); });
  CHECK(invalid.code == kUsage);
}
