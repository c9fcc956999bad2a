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

// Perturbation intervals within which the bottleneck edge stays a bottleneck.
//
// Three certificates are provided, all built around the bottleneck edge e*
// of G and two neighbouring bottlenecks:
//
//   e-  bottleneck of G with both endpoints of e* deleted,
//   e+  bottleneck of G with only the edge e* deleted.
//
// With w- <= w* <= w+:
//
//   box      every edge may move by at most min(w* - w-, w+ - w*) / 2;
//   relaxed  edges at or above w+ may not drop below the midpoint of
//            (w*, w+), edges at or below w- may not rise above the midpoint
//            of (w-, w*), everything strictly in between is free;
//   naive    the same half-space rule, but using the nearest weight above
//            and below w* instead of w+ and w-. Needs no further matchings.
//
// Every interval is closed at its finite ends and always contains 0.

#ifndef BOTTLENECK_ROBUSTNESS_HPP_
#define BOTTLENECK_ROBUSTNESS_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bottleneck/bap.hpp"
#include "bottleneck/graph.hpp"
#include "bottleneck/matching.hpp"

namespace bottleneck {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct CriticalEdges {
  std::optional<Edge> minus;
  Edge star;
  std::optional<Edge> plus;
};

class PerturbationInterval {
 public:
  PerturbationInterval() = default;
  /// Throws std::logic_error unless lower <= 0 <= upper.
  PerturbationInterval(double lower, double upper) : lower_(lower), upper_(upper) {
    if (!(lower_ <= 0.0 && 0.0 <= upper_)) {
      throw std::logic_error("perturbation interval [" + std::to_string(lower) + ", " +
                             std::to_string(upper) + "] excludes zero");
    }
  }

  static PerturbationInterval unbounded() { return {-kInfinity, kInfinity}; }

  double lower() const { return lower_; }
  double upper() const { return upper_; }
  bool contains(double delta) const { return lower_ <= delta && delta <= upper_; }

  friend bool operator==(const PerturbationInterval&, const PerturbationInterval&) = default;

 private:
  double lower_ = 0.0;
  double upper_ = 0.0;
};

enum class BoundsMethod { kTheorem1Box, kRelaxed, kNaive };

inline std::string_view to_string(BoundsMethod m) {
  switch (m) {
    case BoundsMethod::kTheorem1Box:
      return "theorem1";
    case BoundsMethod::kRelaxed:
      return "relaxed";
    case BoundsMethod::kNaive:
      return "naive";
  }
  return "unknown";
}

inline std::optional<BoundsMethod> parse_method(std::string_view name) {
  if (name == "theorem1" || name == "box") return BoundsMethod::kTheorem1Box;
  if (name == "relaxed") return BoundsMethod::kRelaxed;
  if (name == "naive") return BoundsMethod::kNaive;
  return std::nullopt;
}

struct RobustnessBounds {
  BoundsMethod method = BoundsMethod::kNaive;
  /// The bottleneck edge the intervals protect.
  Edge bottleneck;
  double delta_minus = kInfinity;
  double delta_plus = kInfinity;
  /// One interval per edge, aligned with the analysed graph's edges().
  std::vector<Edge> edges;
  std::vector<PerturbationInterval> intervals;

  const PerturbationInterval& at(const EdgeId& id) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), id,
                               [](const Edge& e, const EdgeId& k) { return e.id < k; });
    if (it == edges.end() || it->id != id) throw InvalidInput("no interval for edge " + to_string(id));
    return intervals[static_cast<std::size_t>(it - edges.begin())];
  }
};

/// Counts elementary steps of naive_bounds so tests can check it is linear.
struct OperationCounter {
  std::size_t steps = 0;
};

/// e*, e- and e+ of `g`, all in g's labels. e* is the lexicographically
/// smallest bottleneck edge. e- is absent when g has a single agent; e+ is
/// absent when deleting e* leaves no agent-saturating matching.
inline CriticalEdges critical_edges(const BipartiteGraph& g) {
  const BottleneckSolution base = solve(g);
  const EdgeId star = base.representative();
  CriticalEdges c{std::nullopt, Edge{star, base.value}, std::nullopt};

  const BipartiteGraph minus_graph = remove_endpoints(g, star);
  if (minus_graph.num_agents() > 0 &&
      has_maximal_matching(minus_graph, minus_graph.num_agents())) {
    const BottleneckSolution s = solve(minus_graph);
    c.minus = Edge{minus_graph.to_parent(s.representative()), s.value};
  }

  const BipartiteGraph plus_graph = remove_edge(g, star);
  if (has_maximal_matching(plus_graph, plus_graph.num_agents())) {
    const BottleneckSolution s = solve(plus_graph);
    c.plus = Edge{s.representative(), s.value};
  }
  return c;
}

namespace detail {

inline double gap_below(const CriticalEdges& c) {
  return c.minus ? c.star.weight - c.minus->weight : kInfinity;
}
inline double gap_above(const CriticalEdges& c) {
  return c.plus ? c.plus->weight - c.star.weight : kInfinity;
}

// Lower and upper ends computed from midpoints can land a rounding error on
// the wrong side of zero when a gap vanishes.
inline PerturbationInterval make_interval(double lower, double upper) {
  return PerturbationInterval(std::min(lower, 0.0), std::max(upper, 0.0));
}

inline RobustnessBounds bounds_skeleton(const BipartiteGraph& g, BoundsMethod method,
                                        const Edge& star) {
  RobustnessBounds b;
  b.method = method;
  b.bottleneck = star;
  b.edges.assign(g.edges().begin(), g.edges().end());
  b.intervals.reserve(g.num_edges());
  return b;
}

}  // namespace detail

struct DeltaBox {
  double delta = kInfinity;
  CriticalEdges critical;
};

/// Symmetric radius half the smaller of the gaps w* - w- and w+ - w*; a
/// missing neighbour contributes no constraint.
inline DeltaBox theorem1_delta(const BipartiteGraph& g) {
  DeltaBox box;
  box.critical = critical_edges(g);
  box.delta = 0.5 * std::min(detail::gap_below(box.critical), detail::gap_above(box.critical));
  return box;
}

/// The box as per-edge intervals [-delta, delta].
inline RobustnessBounds theorem1_bounds(const BipartiteGraph& g, const CriticalEdges& c) {
  const double delta = 0.5 * std::min(detail::gap_below(c), detail::gap_above(c));
  RobustnessBounds b = detail::bounds_skeleton(g, BoundsMethod::kTheorem1Box, c.star);
  b.delta_minus = b.delta_plus = delta;
  b.intervals.assign(g.num_edges(), PerturbationInterval(-delta, delta));
  return b;
}

inline RobustnessBounds theorem1_bounds(const BipartiteGraph& g) {
  return theorem1_bounds(g, critical_edges(g));
}

inline RobustnessBounds relaxed_bounds(const BipartiteGraph& g, const CriticalEdges& c) {
  RobustnessBounds b = detail::bounds_skeleton(g, BoundsMethod::kRelaxed, c.star);
  b.delta_plus = 0.5 * detail::gap_above(c);
  b.delta_minus = 0.5 * detail::gap_below(c);
  const double w_star = c.star.weight;
  for (const Edge& e : g.edges()) {
    if (e.id == c.star.id) {
      b.intervals.push_back(detail::make_interval(-b.delta_minus, b.delta_plus));
      continue;
    }
    double lower = -kInfinity, upper = kInfinity;
    if (c.plus && e.weight >= c.plus->weight) lower = (w_star + b.delta_plus) - e.weight;
    // Both branches apply only when w- = w* = w+; the edge is then pinned.
    if (c.minus && e.weight <= c.minus->weight) upper = (w_star - b.delta_minus) - e.weight;
    b.intervals.push_back(detail::make_interval(lower, upper));
  }
  return b;
}

inline RobustnessBounds relaxed_bounds(const BipartiteGraph& g) {
  return relaxed_bounds(g, critical_edges(g));
}

/// Half-space intervals from the weight multiset alone. Another edge with
/// weight exactly w* counts as a zero gap on both sides. Two passes over the
/// edges; `counter`, when given, receives one step per edge visited.
inline RobustnessBounds naive_bounds(const BipartiteGraph& g, const Edge& star,
                                     OperationCounter* counter = nullptr) {
  RobustnessBounds b = detail::bounds_skeleton(g, BoundsMethod::kNaive, star);
  const double w_star = star.weight;
  double above = kInfinity, below = kInfinity;
  for (const Edge& e : g.edges()) {
    if (counter) ++counter->steps;
    if (e.id == star.id) continue;
    if (e.weight >= w_star) above = std::min(above, e.weight - w_star);
    if (e.weight <= w_star) below = std::min(below, w_star - e.weight);
  }
  b.delta_plus = 0.5 * above;
  b.delta_minus = 0.5 * below;
  for (const Edge& e : g.edges()) {
    if (counter) ++counter->steps;
    if (e.weight > w_star) {
      b.intervals.push_back(detail::make_interval((w_star + b.delta_plus) - e.weight, kInfinity));
    } else if (e.weight < w_star) {
      b.intervals.push_back(detail::make_interval(-kInfinity, (w_star - b.delta_minus) - e.weight));
    } else {
      b.intervals.push_back(detail::make_interval(-b.delta_minus, b.delta_plus));
    }
  }
  return b;
}

inline RobustnessBounds naive_bounds(const BipartiteGraph& g) {
  const BottleneckSolution s = solve(g);
  const EdgeId star = s.representative();
  return naive_bounds(g, Edge{star, s.value});
}

inline RobustnessBounds compute_bounds(const BipartiteGraph& g, BoundsMethod method) {
  switch (method) {
    case BoundsMethod::kTheorem1Box:
      return theorem1_bounds(g);
    case BoundsMethod::kRelaxed:
      return relaxed_bounds(g);
    case BoundsMethod::kNaive:
      return naive_bounds(g);
  }
  throw std::invalid_argument("unknown bounds method");
}

/// Smallest |bound| over every finite interval end; +inf if there is none.
inline double min_finite_magnitude(const RobustnessBounds& b) {
  double m = kInfinity;
  for (const PerturbationInterval& iv : b.intervals) {
    if (std::isfinite(iv.lower())) m = std::min(m, std::abs(iv.lower()));
    if (std::isfinite(iv.upper())) m = std::min(m, std::abs(iv.upper()));
  }
  return m;
}

}  // namespace bottleneck

#endif  // BOTTLENECK_ROBUSTNESS_HPP_
