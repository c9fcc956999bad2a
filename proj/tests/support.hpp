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

// Shared fixtures and generators for the test suites.

#ifndef BOTTLENECK_TESTS_SUPPORT_HPP_
#define BOTTLENECK_TESTS_SUPPORT_HPP_

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "bottleneck/graph.hpp"
#include "bottleneck/random.hpp"

namespace bottleneck::testing {

inline BipartiteGraph matrix_graph(std::size_t rows, std::size_t cols,
                                   const std::vector<double>& values) {
  CostMatrix m{rows, cols, {}};
  for (double v : values) {
    m.entries.push_back(std::isinf(v) ? std::nullopt : std::optional<double>(v));
  }
  return from_cost_matrix(m);
}

inline constexpr double kMissing = std::numeric_limits<double>::infinity();

/// 3 x 3 matrix whose threshold run ends at weight 7.
inline BipartiteGraph example1() {
  return matrix_graph(3, 3, {3, 2, 1, 4, 5, 6, 9, 8, 7});
}

/// 3 agents, 4 tasks.
inline BipartiteGraph tasks_3x4() {
  return matrix_graph(3, 4, {64.5, 79.2, 25.0, 9.8, 85.9, 81.2, 21.5, 28.3, 47.1, 12.1, 41.3, 35.7});
}

struct ExpectedInterval {
  EdgeId edge;
  double lower;
  double upper;
};

/// Published intervals for tasks_3x4() from the relaxed rule.
inline std::vector<ExpectedInterval> relaxed_table() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {{{0, 0}, -39.6, inf}, {{0, 1}, -54.3, inf}, {{0, 2}, -inf, inf}, {{0, 3}, -inf, 7.0},
          {{1, 0}, -61.0, inf}, {{1, 1}, -56.3, inf}, {{1, 2}, -4.7, 3.4}, {{1, 3}, -3.4, inf},
          {{2, 0}, -22.2, inf}, {{2, 1}, -inf, 4.7}, {{2, 2}, -16.4, inf}, {{2, 3}, -10.8, inf}};
}

/// Published intervals for tasks_3x4() from the naive rule.
inline std::vector<ExpectedInterval> naive_table() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {{{0, 0}, -41.25, inf}, {{0, 1}, -55.95, inf}, {{0, 2}, -1.75, inf}, {{0, 3}, -inf, 7.0},
          {{1, 0}, -62.65, inf}, {{1, 1}, -57.95, inf}, {{1, 2}, -4.7, 1.75}, {{1, 3}, -5.05, inf},
          {{2, 0}, -23.85, inf}, {{2, 1}, -inf, 4.7}, {{2, 2}, -18.05, inf}, {{2, 3}, -12.45, inf}};
}

/// Equal infinities, or finite values within `tol`.
inline bool same_bound(double actual, double expected, double tol) {
  if (std::isinf(expected)) return actual == expected;
  return std::abs(actual - expected) <= tol;
}

struct RandomGraphSpec {
  std::size_t min_agents = 1;
  std::size_t max_agents = 6;
  std::size_t max_tasks = 7;
  double min_density = 0.5;
  double max_density = 1.0;
  /// Weights drawn from {0, ..., grid - 1} when set, else uniform [0, 100].
  std::optional<int> integer_grid;
};

inline BipartiteGraph random_graph(Rng& rng, const RandomGraphSpec& spec) {
  while (true) {
    const std::size_t agents = rng.integer(spec.min_agents, spec.max_agents);
    const std::size_t tasks = rng.integer(agents, std::max(agents, spec.max_tasks));
    const double density = rng.uniform(spec.min_density, spec.max_density);
    std::vector<Edge> edges;
    for (std::size_t a = 0; a < agents; ++a) {
      for (std::size_t t = 0; t < tasks; ++t) {
        if (!rng.bernoulli(density)) continue;
        const double w = spec.integer_grid
                             ? static_cast<double>(rng.integer(0, static_cast<std::uint64_t>(*spec.integer_grid - 1)))
                             : rng.uniform(0.0, 100.0);
        edges.push_back({{a, t}, w});
      }
    }
    if (!edges.empty()) return BipartiteGraph(agents, tasks, std::move(edges));
  }
}

/// Largest matching by trying every assignment, letting agents stay unmatched.
inline std::size_t brute_force_matching_size(const BipartiteGraph& g, std::size_t agent,
                                             std::vector<char>& used) {
  if (agent == g.num_agents()) return 0;
  std::size_t best = brute_force_matching_size(g, agent + 1, used);
  for (const Edge& e : g.agent_edges(agent)) {
    if (used[e.id.task]) continue;
    used[e.id.task] = 1;
    best = std::max(best, 1 + brute_force_matching_size(g, agent + 1, used));
    used[e.id.task] = 0;
  }
  return best;
}

inline std::size_t brute_force_matching_size(const BipartiteGraph& g) {
  std::vector<char> used(g.num_tasks(), 0);
  return brute_force_matching_size(g, 0, used);
}

}  // namespace bottleneck::testing

#endif  // BOTTLENECK_TESTS_SUPPORT_HPP_
