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

// Weighted bipartite graph between agents and tasks.
//
// Edges are kept sorted by (agent, task), so the edges of one agent form a
// contiguous run and every traversal visits edges in a fixed order. The agent
// side is never larger than the task side; a construction that violates this
// is transposed and remembers it, so results can be reported in the caller's
// orientation.

#ifndef BOTTLENECK_GRAPH_HPP_
#define BOTTLENECK_GRAPH_HPP_

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bottleneck/error.hpp"

namespace bottleneck {

struct EdgeId {
  std::size_t agent = 0;
  std::size_t task = 0;

  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

inline std::string to_string(const EdgeId& e) {
  return "(" + std::to_string(e.agent) + "," + std::to_string(e.task) + ")";
}

struct Edge {
  EdgeId id;
  double weight = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  /// Builds a graph from an edge list in any order. If `num_agents >
  /// num_tasks` the two sides are swapped and transposed() becomes true.
  BipartiteGraph(std::size_t num_agents, std::size_t num_tasks,
                 std::vector<Edge> edges);

  std::size_t num_agents() const { return num_agents_; }
  std::size_t num_tasks() const { return num_tasks_; }
  std::size_t num_edges() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  /// All edges, sorted by (agent, task).
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::size_t index) const { return edges_[index]; }

  /// Edges leaving `agent`, sorted by task.
  std::span<const Edge> agent_edges(std::size_t agent) const {
    return std::span<const Edge>(edges_).subspan(
        agent_offsets_[agent], agent_offsets_[agent + 1] - agent_offsets_[agent]);
  }

  /// Position of `id` in edges(), if present.
  std::optional<std::size_t> index_of(const EdgeId& id) const;
  bool contains(const EdgeId& id) const { return index_of(id).has_value(); }

  /// Weight of `id`; throws InvalidInput if the edge is absent.
  double weight(const EdgeId& id) const;

  /// True when the caller's rows were tasks and its columns agents.
  bool transposed() const { return transposed_; }

  /// Maps an edge back to the (row, column) of the matrix it came from.
  EdgeId to_input_orientation(const EdgeId& id) const {
    return transposed_ ? EdgeId{id.task, id.agent} : id;
  }
  EdgeId from_input_orientation(const EdgeId& id) const {
    return to_input_orientation(id);
  }

  /// After remove_endpoints, the index the vertex had in the graph the
  /// surgery was applied to. Identity for graphs built directly.
  std::size_t parent_agent(std::size_t agent) const { return agent_labels_[agent]; }
  std::size_t parent_task(std::size_t task) const { return task_labels_[task]; }
  EdgeId to_parent(const EdgeId& id) const {
    return {agent_labels_[id.agent], task_labels_[id.task]};
  }

  /// Same structure with new weights, `weights[i]` replacing edge(i).
  BipartiteGraph with_weights(std::span<const double> weights) const;

  /// Applies `f(weight)` to every weight.
  template <typename F>
  BipartiteGraph transform_weights(F&& f) const {
    std::vector<double> w;
    w.reserve(edges_.size());
    for (const Edge& e : edges_) w.push_back(f(e.weight));
    return with_weights(w);
  }

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

 private:
  friend BipartiteGraph remove_edge(const BipartiteGraph&, const EdgeId&);
  friend BipartiteGraph remove_endpoints(const BipartiteGraph&, const EdgeId&);

  void rebuild_offsets();

  std::size_t num_agents_ = 0;
  std::size_t num_tasks_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> agent_offsets_{0};
  std::vector<std::size_t> agent_labels_;
  std::vector<std::size_t> task_labels_;
  bool transposed_ = false;
};

/// Row-major grid where std::nullopt marks a missing edge.
struct CostMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::optional<double>> entries;

  const std::optional<double>& at(std::size_t r, std::size_t c) const {
    return entries[r * cols + c];
  }
};

BipartiteGraph from_cost_matrix(const CostMatrix& matrix);

/// Inverse of from_cost_matrix, in the caller's original orientation.
CostMatrix to_cost_matrix(const BipartiteGraph& g);

/// The graph without edge `e`; vertices are untouched.
BipartiteGraph remove_edge(const BipartiteGraph& g, const EdgeId& e);

/// The graph without either endpoint of `e` and every edge incident to them.
/// Surviving vertices are renumbered densely in their original order.
BipartiteGraph remove_endpoints(const BipartiteGraph& g, const EdgeId& e);

/// Largest minus smallest weight; 0 for graphs with fewer than two edges.
inline double weight_range(const BipartiteGraph& g) {
  if (g.empty()) return 0.0;
  auto [lo, hi] = std::minmax_element(
      g.edges().begin(), g.edges().end(),
      [](const Edge& a, const Edge& b) { return a.weight < b.weight; });
  return hi->weight - lo->weight;
}

/// Positive length scale for tolerances: the weight range, or the largest
/// magnitude (at least 1) when all weights coincide.
inline double weight_scale(const BipartiteGraph& g) {
  double range = weight_range(g);
  if (range > 0.0) return range;
  double m = 1.0;
  for (const Edge& e : g.edges()) m = std::max(m, std::abs(e.weight));
  return m;
}

// ---------------------------------------------------------------------------

inline BipartiteGraph::BipartiteGraph(std::size_t num_agents, std::size_t num_tasks,
                                      std::vector<Edge> edges)
    : num_agents_(num_agents), num_tasks_(num_tasks), edges_(std::move(edges)) {
  if (num_agents_ > num_tasks_) {
    std::swap(num_agents_, num_tasks_);
    for (Edge& e : edges_) std::swap(e.id.agent, e.id.task);
    transposed_ = true;
  }
  for (const Edge& e : edges_) {
    if (e.id.agent >= num_agents_ || e.id.task >= num_tasks_) {
      throw InvalidInput("edge " + to_string(to_input_orientation(e.id)) +
                         " lies outside the graph");
    }
    if (!std::isfinite(e.weight)) {
      throw InvalidInput("edge " + to_string(to_input_orientation(e.id)) +
                         " has a non-finite weight");
    }
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });
  auto dup = std::adjacent_find(edges_.begin(), edges_.end(),
                                [](const Edge& a, const Edge& b) { return a.id == b.id; });
  if (dup != edges_.end()) {
    throw InvalidInput("duplicate edge " + to_string(to_input_orientation(dup->id)));
  }
  agent_labels_.resize(num_agents_);
  task_labels_.resize(num_tasks_);
  std::iota(agent_labels_.begin(), agent_labels_.end(), std::size_t{0});
  std::iota(task_labels_.begin(), task_labels_.end(), std::size_t{0});
  rebuild_offsets();
}

inline void BipartiteGraph::rebuild_offsets() {
  agent_offsets_.assign(num_agents_ + 1, 0);
  for (const Edge& e : edges_) ++agent_offsets_[e.id.agent + 1];
  std::partial_sum(agent_offsets_.begin(), agent_offsets_.end(), agent_offsets_.begin());
}

inline std::optional<std::size_t> BipartiteGraph::index_of(const EdgeId& id) const {
  if (id.agent >= num_agents_) return std::nullopt;
  auto run = agent_edges(id.agent);
  auto it = std::lower_bound(run.begin(), run.end(), id.task,
                             [](const Edge& e, std::size_t t) { return e.id.task < t; });
  if (it == run.end() || it->id.task != id.task) return std::nullopt;
  return agent_offsets_[id.agent] + static_cast<std::size_t>(it - run.begin());
}

inline double BipartiteGraph::weight(const EdgeId& id) const {
  auto i = index_of(id);
  if (!i) throw InvalidInput("no edge " + to_string(id));
  return edges_[*i].weight;
}

inline BipartiteGraph BipartiteGraph::with_weights(std::span<const double> weights) const {
  if (weights.size() != edges_.size()) {
    throw InvalidInput("expected " + std::to_string(edges_.size()) + " weights, got " +
                       std::to_string(weights.size()));
  }
  BipartiteGraph out = *this;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i])) {
      throw InvalidInput("edge " + to_string(edges_[i].id) + " has a non-finite weight");
    }
    out.edges_[i].weight = weights[i];
  }
  return out;
}

inline BipartiteGraph from_cost_matrix(const CostMatrix& matrix) {
  if (matrix.rows == 0 || matrix.cols == 0) throw InvalidInput("cost matrix is empty");
  if (matrix.entries.size() != matrix.rows * matrix.cols) {
    throw InvalidInput("cost matrix has " + std::to_string(matrix.entries.size()) +
                       " entries, expected " + std::to_string(matrix.rows * matrix.cols));
  }
  std::vector<Edge> edges;
  for (std::size_t r = 0; r < matrix.rows; ++r) {
    for (std::size_t c = 0; c < matrix.cols; ++c) {
      if (const auto& w = matrix.at(r, c)) edges.push_back({{r, c}, *w});
    }
  }
  if (edges.empty()) throw InvalidInput("cost matrix has no edges");
  return BipartiteGraph(matrix.rows, matrix.cols, std::move(edges));
}

inline CostMatrix to_cost_matrix(const BipartiteGraph& g) {
  CostMatrix m;
  m.rows = g.transposed() ? g.num_tasks() : g.num_agents();
  m.cols = g.transposed() ? g.num_agents() : g.num_tasks();
  m.entries.assign(m.rows * m.cols, std::nullopt);
  for (const Edge& e : g.edges()) {
    EdgeId rc = g.to_input_orientation(e.id);
    m.entries[rc.agent * m.cols + rc.task] = e.weight;
  }
  return m;
}

inline BipartiteGraph remove_edge(const BipartiteGraph& g, const EdgeId& e) {
  auto i = g.index_of(e);
  if (!i) throw InvalidInput("cannot remove missing edge " + to_string(e));
  BipartiteGraph out = g;
  out.edges_.erase(out.edges_.begin() + static_cast<std::ptrdiff_t>(*i));
  out.rebuild_offsets();
  return out;
}

inline BipartiteGraph remove_endpoints(const BipartiteGraph& g, const EdgeId& e) {
  if (!g.contains(e)) throw InvalidInput("cannot remove endpoints of missing edge " + to_string(e));
  auto shift = [](std::size_t i, std::size_t removed) { return i < removed ? i : i - 1; };
  BipartiteGraph out;
  out.num_agents_ = g.num_agents_ - 1;
  out.num_tasks_ = g.num_tasks_ - 1;
  out.transposed_ = g.transposed_;
  for (const Edge& edge : g.edges_) {
    if (edge.id.agent == e.agent || edge.id.task == e.task) continue;
    out.edges_.push_back({{shift(edge.id.agent, e.agent), shift(edge.id.task, e.task)}, edge.weight});
  }
  for (std::size_t a = 0; a < g.num_agents_; ++a) {
    if (a != e.agent) out.agent_labels_.push_back(a);
  }
  for (std::size_t t = 0; t < g.num_tasks_; ++t) {
    if (t != e.task) out.task_labels_.push_back(t);
  }
  out.rebuild_offsets();
  return out;
}

}  // namespace bottleneck

#endif  // BOTTLENECK_GRAPH_HPP_
