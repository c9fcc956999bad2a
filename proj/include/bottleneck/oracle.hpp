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

// Brute-force ground truth.
//
// Nothing here calls into the matching or bap headers for small graphs:
// bottlenecks come from walking every agent-saturating matching directly.
// certify() samples perturbations from a set of intervals and counts how
// often the protected edge stops being a bottleneck.

#ifndef BOTTLENECK_ORACLE_HPP_
#define BOTTLENECK_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "bottleneck/bap.hpp"
#include "bottleneck/error.hpp"
#include "bottleneck/graph.hpp"
#include "bottleneck/matching.hpp"
#include "bottleneck/random.hpp"
#include "bottleneck/robustness.hpp"

namespace bottleneck {

inline constexpr std::size_t kMaxOracleAgents = 8;

struct PerturbationVector {
  /// One (edge, delta) pair per graph edge, in the graph's edge order.
  std::vector<std::pair<EdgeId, double>> deltas;

  static PerturbationVector zero(const BipartiteGraph& g) {
    PerturbationVector p;
    p.deltas.reserve(g.num_edges());
    for (const Edge& e : g.edges()) p.deltas.emplace_back(e.id, 0.0);
    return p;
  }
};

namespace detail {

inline void require_oracle_size(const BipartiteGraph& g) {
  if (g.num_agents() > kMaxOracleAgents) {
    throw TooLarge("exhaustive enumeration supports at most " + std::to_string(kMaxOracleAgents) +
                   " agents, graph has " + std::to_string(g.num_agents()));
  }
}

// Depth-first walk over agents 0..n-1, each taking one unused task.
template <typename Visit, typename Prune>
void walk_matchings(const BipartiteGraph& g, std::size_t agent, std::vector<char>& task_used,
                    std::vector<EdgeId>& chosen, double heaviest, const Visit& visit,
                    const Prune& prune) {
  if (agent == g.num_agents()) {
    visit(chosen, heaviest);
    return;
  }
  for (const Edge& e : g.agent_edges(agent)) {
    if (task_used[e.id.task]) continue;
    const double h = std::max(heaviest, e.weight);
    if (prune(h)) continue;
    task_used[e.id.task] = 1;
    chosen.push_back(e.id);
    walk_matchings(g, agent + 1, task_used, chosen, h, visit, prune);
    chosen.pop_back();
    task_used[e.id.task] = 0;
  }
}

}  // namespace detail

/// Every matching that saturates the agents, in lexicographic order.
inline std::vector<Matching> enumerate_agent_saturating_matchings(const BipartiteGraph& g) {
  detail::require_oracle_size(g);
  std::vector<Matching> out;
  std::vector<char> used(g.num_tasks(), 0);
  std::vector<EdgeId> chosen;
  detail::walk_matchings(
      g, 0, used, chosen, -kInfinity,
      [&](const std::vector<EdgeId>& m, double) { out.push_back(Matching{m}); },
      [](double) { return false; });
  return out;
}

/// Bottleneck by exhaustive search. Branches whose running maximum already
/// exceeds the best complete matching are cut; ties are kept so that every
/// edge attaining the optimum in some optimal matching is collected.
inline BottleneckSolution brute_force_bottleneck(const BipartiteGraph& g) {
  detail::require_oracle_size(g);
  if (g.num_agents() == 0) throw Infeasible("graph has no agents to assign");

  double best = kInfinity;
  std::vector<EdgeId> witness;
  std::vector<EdgeId> attaining;
  std::vector<char> used(g.num_tasks(), 0);
  std::vector<EdgeId> chosen;
  detail::walk_matchings(
      g, 0, used, chosen, -kInfinity,
      [&](const std::vector<EdgeId>& m, double heaviest) {
        if (heaviest < best) {
          best = heaviest;
          witness = m;
          attaining.clear();
        }
        for (const EdgeId& e : m) {
          if (g.weight(e) == best) attaining.push_back(e);
        }
      },
      [&](double heaviest) { return heaviest > best; });

  if (witness.empty()) throw Infeasible("no matching assigns all agents");
  std::sort(attaining.begin(), attaining.end());
  attaining.erase(std::unique(attaining.begin(), attaining.end()), attaining.end());
  return BottleneckSolution{best, Matching{std::move(witness)}, std::move(attaining)};
}

/// Same edges, weights w_e + delta_e.
inline BipartiteGraph apply_perturbation(const BipartiteGraph& g, const PerturbationVector& p) {
  if (p.deltas.size() != g.num_edges()) {
    throw InvalidInput("perturbation covers " + std::to_string(p.deltas.size()) +
                       " edges, graph has " + std::to_string(g.num_edges()));
  }
  std::vector<double> w(g.num_edges());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (p.deltas[i].first != g.edge(i).id) {
      throw InvalidInput("perturbation entry " + std::to_string(i) + " names edge " +
                         to_string(p.deltas[i].first) + ", expected " + to_string(g.edge(i).id));
    }
    if (!std::isfinite(p.deltas[i].second)) throw InvalidInput("perturbation is not finite");
    w[i] = g.edge(i).weight + p.deltas[i].second;
  }
  return g.with_weights(w);
}

/// Exhaustive search when the graph is small enough, the threshold solver
/// otherwise.
inline BottleneckSolution reference_bottleneck(const BipartiteGraph& g) {
  return g.num_agents() <= kMaxOracleAgents ? brute_force_bottleneck(g) : solve(g);
}

struct CertificationOptions {
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  /// Distance kept from every finite interval end.
  double epsilon = 0.0;
  /// Replacement for infinite interval ends.
  double infinite_cap = 0.0;

  /// epsilon = 1e-6 and cap = 10 times the graph's weight scale.
  static CertificationOptions for_graph(const BipartiteGraph& g, std::size_t trials,
                                        std::uint64_t seed) {
    const double scale = weight_scale(g);
    return {trials, seed, 1e-6 * scale, 10.0 * scale};
  }
};

struct CertificationReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  /// Edges whose interval was narrower than 2 * epsilon; held at delta = 0.
  std::vector<EdgeId> degenerate_edges;
  struct Violation {
    std::size_t trial = 0;
    PerturbationVector perturbation;
    std::vector<EdgeId> bottleneck_edges;
  };
  std::optional<Violation> first_violation;
};

/// Samples each edge's perturbation uniformly from its interval pulled in by
/// epsilon (infinite ends capped), re-solves, and counts trials where the
/// protected edge is no longer a bottleneck. Trial t draws from a stream
/// derived from (seed, t) only, so any trial can be replayed alone.
inline CertificationReport certify(const BipartiteGraph& g, const RobustnessBounds& bounds,
                                   const CertificationOptions& options) {
  if (options.trials == 0) throw std::invalid_argument("certify needs at least one trial");
  if (!(options.epsilon > 0.0)) throw std::invalid_argument("certify needs epsilon > 0");
  if (bounds.intervals.size() != g.num_edges()) {
    throw InvalidInput("bounds cover " + std::to_string(bounds.intervals.size()) +
                       " edges, graph has " + std::to_string(g.num_edges()));
  }

  CertificationReport report;
  report.trials = options.trials;
  std::vector<double> lo(g.num_edges()), hi(g.num_edges());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const PerturbationInterval& iv = bounds.intervals[i];
    lo[i] = std::max(iv.lower() + options.epsilon, -options.infinite_cap);
    hi[i] = std::min(iv.upper() - options.epsilon, options.infinite_cap);
    if (lo[i] > hi[i]) {
      report.degenerate_edges.push_back(g.edge(i).id);
      lo[i] = hi[i] = 0.0;
    }
  }

  const EdgeId protected_edge = bounds.bottleneck.id;
  PerturbationVector p = PerturbationVector::zero(g);
  for (std::size_t t = 0; t < options.trials; ++t) {
    Rng rng(derive_seed(options.seed, {t}));
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
      p.deltas[i].second = lo[i] == hi[i] ? lo[i] : rng.uniform(lo[i], hi[i]);
    }
    const BottleneckSolution s = reference_bottleneck(apply_perturbation(g, p));
    if (!s.is_bottleneck(protected_edge)) {
      ++report.violations;
      if (!report.first_violation) report.first_violation = {t, p, s.bottleneck_edges};
    }
  }
  return report;
}

}  // namespace bottleneck

#endif  // BOTTLENECK_ORACLE_HPP_
