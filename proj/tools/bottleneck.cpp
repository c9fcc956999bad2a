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

#include <cstdint>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bottleneck/commands.hpp"

namespace {

using bottleneck::BoundsMethod;
using bottleneck::cli::OutputFormat;

const std::vector<std::string> kMethods{"theorem1", "relaxed", "naive"};
const std::vector<std::string> kFormats{"table", "csv", "json"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bottleneck assignment solver with certified perturbation bounds"};
  app.require_subcommand(1);

  std::string input;
  std::string method_name = "relaxed";
  std::string format_name = "table";
  std::size_t trials = 1000;
  std::uint64_t seed = 1;

  auto* solve = app.add_subcommand("solve", "Solve the bottleneck assignment problem");
  solve->add_option("-i,--input", input, "Cost matrix (CSV or JSON)")->required();

  auto* bounds = app.add_subcommand("bounds", "Print per-edge allowable perturbation intervals");
  bounds->add_option("-i,--input", input, "Cost matrix (CSV or JSON)")->required();
  bounds->add_option("-m,--method", method_name, "theorem1 | relaxed | naive")
      ->transform(CLI::IsMember(kMethods, CLI::ignore_case));
  bounds->add_option("-f,--format", format_name, "table | csv | json")
      ->transform(CLI::IsMember(kFormats, CLI::ignore_case));

  auto* verify = app.add_subcommand("verify", "Monte-Carlo check that the bounds hold");
  verify->add_option("-i,--input", input, "Cost matrix (CSV or JSON)")->required();
  verify->add_option("-m,--method", method_name, "theorem1 | relaxed | naive")
      ->transform(CLI::IsMember(kMethods, CLI::ignore_case));
  verify->add_option("-t,--trials", trials, "Number of sampled perturbations")
      ->check(CLI::PositiveNumber);
  verify->add_option("-s,--seed", seed, "Random seed");

  bottleneck::SimulationConfig config;
  config.parallelism = std::max(1u, std::thread::hardware_concurrency());
  std::pair<double, double> weight_range{config.weight_low, config.weight_high};
  std::string output;
  auto* simulate = app.add_subcommand("simulate", "Random-graph sweep of minimum bound sizes");
  simulate->add_option("--n-min", config.n_min, "Smallest graph size")->capture_default_str();
  simulate->add_option("--n-max", config.n_max, "Largest graph size")->capture_default_str();
  simulate->add_option("-t,--trials", config.trials_per_size, "Graphs per size")
      ->capture_default_str();
  simulate->add_option("--weight-range", weight_range, "Uniform weight range: low high")
      ->delimiter(',');
  simulate->add_option("-s,--seed", config.seed, "Random seed")->capture_default_str();
  simulate->add_option("-j,--jobs", config.parallelism, "Worker threads");
  simulate->add_option("-o,--output", output, "CSV path, or - for stdout")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return bottleneck::cli::kUsage;
  }

  const BoundsMethod method = *bottleneck::parse_method(method_name);
  const OutputFormat format = *bottleneck::cli::parse_format(format_name);
  if (*solve) return bottleneck::cli::cmd_solve(input, std::cout, std::cerr);
  if (*bounds) return bottleneck::cli::cmd_bounds(input, method, format, std::cout, std::cerr);
  if (*verify) return bottleneck::cli::cmd_verify(input, method, trials, seed, std::cout, std::cerr);
  config.weight_low = weight_range.first;
  config.weight_high = weight_range.second;
  return bottleneck::cli::cmd_simulate(config, output, std::cout, std::cerr);
}
