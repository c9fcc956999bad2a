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

// Bottleneck assignment: among matchings that saturate every agent, find one
// whose heaviest edge is as light as possible.
//
// solve() binary-searches the distinct weights for the smallest feasible
// threshold. solve_reference() is the classic threshold algorithm, deleting
// the heaviest edge one at a time until the agents can no longer be
// saturated; it also identifies bottleneck edges by a different route
// (alternating reachability instead of forced-edge rematching), so the two
// can be checked against each other.

#ifndef BOTTLENECK_BAP_HPP_
#define BOTTLENECK_BAP_HPP_

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "bottleneck/error.hpp"
#include "bottleneck/graph.hpp"
#include "bottleneck/matching.hpp"

namespace bottleneck {

struct BottleneckSolution {
  /// Optimal min-max weight.
  double value = 0.0;
  /// Agent-saturating matching whose heaviest edge weighs `value`.
  Matching witness;
  /// Every edge that is the heaviest edge of some optimal matching, sorted.
  std::vector<EdgeId> bottleneck_edges;

  bool is_bottleneck(const EdgeId& e) const {
    return std::binary_search(bottleneck_edges.begin(), bottleneck_edges.end(), e);
  }
  /// Lexicographically smallest bottleneck edge.
  const EdgeId& representative() const { return bottleneck_edges.front(); }
};

namespace detail {

inline void require_agents(const BipartiteGraph& g) {
  if (g.num_agents() == 0) throw Infeasible("graph has no agents to assign");
}

inline void require_saturating(const BipartiteGraph& g) {
  require_agents(g);
  if (!has_maximal_matching(g, g.num_agents())) {
    throw Infeasible("no matching assigns all " + std::to_string(g.num_agents()) + " agents");
  }
}

/// Edges of weight `value` that some agent-saturating matching within
/// {weight <= value} can contain. Each candidate is forced by deleting its
/// endpoints and matching the remaining agents.
inline std::vector<EdgeId> forced_bottleneck_edges(const BipartiteGraph& g, double value) {
  std::vector<EdgeId> out;
  for (const Edge& cand : g.edges()) {
    if (cand.weight != value) continue;
    auto keep = [&](const Edge& e) {
      return e.weight <= value && e.id.agent != cand.id.agent && e.id.task != cand.id.task;
    };
    if (has_maximal_matching(g, g.num_agents() - 1, keep)) out.push_back(cand.id);
  }
  return out;
}

/// Same set as forced_bottleneck_edges, from one saturating matching `m` of
/// H = {weight <= value}: a non-matching edge (a, t) lies in some maximum
/// matching of H iff t is free, or the agent b holding t can hand it over
/// along an alternating path that ends at a free task or closes a cycle
/// through a.
inline std::vector<EdgeId> alternating_bottleneck_edges(const BipartiteGraph& g, double value,
                                                        const Matching& m) {
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  const std::size_t n = g.num_agents();
  std::vector<std::size_t> agent_task(n, kNone), task_agent(g.num_tasks(), kNone);
  for (const EdgeId& e : m.pairs) {
    agent_task[e.agent] = e.task;
    task_agent[e.task] = e.agent;
  }
  // x -> y when x could take y's task.
  std::vector<std::vector<std::size_t>> next(n);
  std::vector<char> reaches_free_task(n, 0);
  for (const Edge& e : g.edges()) {
    if (e.weight > value) continue;
    std::size_t holder = task_agent[e.id.task];
    if (holder == kNone) {
      reaches_free_task[e.id.agent] = 1;
    } else if (holder != e.id.agent) {
      next[e.id.agent].push_back(holder);
    }
  }

  std::vector<EdgeId> out;
  std::vector<char> seen(n);
  std::vector<std::size_t> stack;
  for (const Edge& e : g.edges()) {
    if (e.weight != value) continue;
    const std::size_t a = e.id.agent;
    const std::size_t holder = task_agent[e.id.task];
    bool member = holder == a || holder == kNone;
    if (!member) {
      std::fill(seen.begin(), seen.end(), 0);
      stack.assign(1, holder);
      seen[holder] = 1;
      while (!stack.empty() && !member) {
        std::size_t x = stack.back();
        stack.pop_back();
        if (x == a || reaches_free_task[x]) {
          member = true;
          break;
        }
        for (std::size_t y : next[x]) {
          if (!seen[y]) {
            seen[y] = 1;
            stack.push_back(y);
          }
        }
      }
    }
    if (member) out.push_back(e.id);
  }
  return out;
}

}  // namespace detail

/// Optimal bottleneck value, a witness, and the full bottleneck edge set.
/// Throws Infeasible when no matching saturates the agents.
inline BottleneckSolution solve(const BipartiteGraph& g) {
  detail::require_saturating(g);

  std::vector<double> weights;
  weights.reserve(g.num_edges());
  for (const Edge& e : g.edges()) weights.push_back(e.weight);
  std::sort(weights.begin(), weights.end());
  weights.erase(std::unique(weights.begin(), weights.end()), weights.end());

  // Invariant: weights[hi] is feasible, everything below lo is not.
  std::size_t lo = 0, hi = weights.size() - 1;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (has_maximal_matching(g, g.num_agents(), WeightAtMost{weights[mid]})) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }

  BottleneckSolution s;
  s.value = weights[hi];
  s.witness = maximum_matching(g, WeightAtMost{s.value});
  s.bottleneck_edges = detail::forced_bottleneck_edges(g, s.value);
  return s;
}

/// Threshold algorithm: repeatedly delete the heaviest remaining edge while
/// the agents can still be saturated; the last deleted edge is a bottleneck.
/// Equal weights are deleted in descending (agent, task) order.
inline BottleneckSolution solve_reference(const BipartiteGraph& g) {
  detail::require_saturating(g);

  const std::span<const Edge> edges = g.edges();
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    if (edges[i].weight != edges[j].weight) return edges[i].weight > edges[j].weight;
    return edges[j].id < edges[i].id;
  });

  std::vector<char> active(edges.size(), 1);
  auto keep = [&](const Edge& e) { return active[static_cast<std::size_t>(&e - edges.data())] != 0; };

  std::size_t next = 0, last = 0;
  while (has_maximal_matching(g, g.num_agents(), keep)) {
    last = order[next++];
    active[last] = 0;
  }
  active[last] = 1;

  BottleneckSolution s;
  s.value = edges[last].weight;
  s.witness = maximum_matching(g, keep);
  s.bottleneck_edges = detail::alternating_bottleneck_edges(
      g, s.value, maximum_matching(g, WeightAtMost{s.value}));
  return s;
}

}  // namespace bottleneck

#endif  // BOTTLENECK_BAP_HPP_
