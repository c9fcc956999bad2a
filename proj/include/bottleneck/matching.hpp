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

// Maximum-cardinality bipartite matching (Hopcroft-Karp).
//
// Every entry point takes an optional edge filter so that threshold
// subgraphs ("edges of weight <= t", "edges avoiding these endpoints") can be
// matched without materializing a new graph. Agents and their edges are
// visited in sorted order, which makes the returned matching a deterministic
// function of the graph and filter.

#ifndef BOTTLENECK_MATCHING_HPP_
#define BOTTLENECK_MATCHING_HPP_

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "bottleneck/graph.hpp"

namespace bottleneck {

/// A set of pairwise non-adjacent edges, sorted by agent.
struct Matching {
  std::vector<EdgeId> pairs;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
  bool contains(const EdgeId& e) const {
    return std::binary_search(pairs.begin(), pairs.end(), e);
  }

  friend bool operator==(const Matching&, const Matching&) = default;
};

/// Accepts every edge.
struct AllEdges {
  constexpr bool operator()(const Edge&) const { return true; }
};

/// Keeps edges with weight <= threshold.
struct WeightAtMost {
  double threshold;
  bool operator()(const Edge& e) const { return e.weight <= threshold; }
};

/// True if `m` only uses edges of `g` and no two pairs share a vertex.
inline bool is_matching(const BipartiteGraph& g, const Matching& m) {
  std::vector<char> agent_used(g.num_agents(), 0), task_used(g.num_tasks(), 0);
  for (const EdgeId& e : m.pairs) {
    if (!g.contains(e) || agent_used[e.agent] || task_used[e.task]) return false;
    agent_used[e.agent] = task_used[e.task] = 1;
  }
  return true;
}

/// Largest weight among the pairs of `m`; -inf for the empty matching.
inline double max_weight(const BipartiteGraph& g, const Matching& m) {
  double w = -std::numeric_limits<double>::infinity();
  for (const EdgeId& e : m.pairs) w = std::max(w, g.weight(e));
  return w;
}

namespace detail {

class HopcroftKarp {
 public:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  template <typename EdgeFilter>
  HopcroftKarp(const BipartiteGraph& g, const EdgeFilter& keep)
      : agent_mate_(g.num_agents(), kNone),
        task_mate_(g.num_tasks(), kNone),
        dist_(g.num_agents()),
        cursor_(g.num_agents()) {
    adjacency_.reserve(g.num_edges());
    offsets_.reserve(g.num_agents() + 1);
    offsets_.push_back(0);
    for (std::size_t a = 0; a < g.num_agents(); ++a) {
      for (const Edge& e : g.agent_edges(a)) {
        if (keep(e)) adjacency_.push_back(e.id.task);
      }
      offsets_.push_back(adjacency_.size());
    }
  }

  /// Runs phases until no augmenting path remains, or until `stop_at`
  /// agents are matched.
  std::size_t run(std::size_t stop_at = kNone) {
    while (size_ < stop_at && bfs()) {
      std::copy(offsets_.begin(), offsets_.end() - 1, cursor_.begin());
      for (std::size_t a = 0; a < agent_mate_.size() && size_ < stop_at; ++a) {
        if (agent_mate_[a] == kNone && augment(a)) ++size_;
      }
    }
    return size_;
  }

  Matching matching() const {
    Matching m;
    m.pairs.reserve(size_);
    for (std::size_t a = 0; a < agent_mate_.size(); ++a) {
      if (agent_mate_[a] != kNone) m.pairs.push_back({a, agent_mate_[a]});
    }
    return m;
  }

 private:
  static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

  // Layers agents by alternating distance from the free agents; true if a
  // free task is reachable.
  bool bfs() {
    queue_.clear();
    for (std::size_t a = 0; a < agent_mate_.size(); ++a) {
      if (agent_mate_[a] == kNone) {
        dist_[a] = 0;
        queue_.push_back(a);
      } else {
        dist_[a] = kInf;
      }
    }
    bool found = false;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      std::size_t a = queue_[head];
      for (std::size_t k = offsets_[a]; k < offsets_[a + 1]; ++k) {
        std::size_t b = task_mate_[adjacency_[k]];
        if (b == kNone) {
          found = true;
        } else if (dist_[b] == kInf) {
          dist_[b] = dist_[a] + 1;
          queue_.push_back(b);
        }
      }
    }
    return found;
  }

  bool augment(std::size_t a) {
    for (std::size_t& k = cursor_[a]; k < offsets_[a + 1]; ++k) {
      std::size_t t = adjacency_[k];
      std::size_t b = task_mate_[t];
      if (b == kNone || (dist_[b] == dist_[a] + 1 && augment(b))) {
        agent_mate_[a] = t;
        task_mate_[t] = a;
        ++k;
        return true;
      }
    }
    dist_[a] = kInf;
    return false;
  }

  std::vector<std::size_t> adjacency_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> agent_mate_;
  std::vector<std::size_t> task_mate_;
  std::vector<std::size_t> dist_;
  std::vector<std::size_t> cursor_;
  std::vector<std::size_t> queue_;
  std::size_t size_ = 0;
};

}  // namespace detail

template <typename EdgeFilter>
Matching maximum_matching(const BipartiteGraph& g, const EdgeFilter& keep) {
  detail::HopcroftKarp hk(g, keep);
  hk.run();
  return hk.matching();
}

inline Matching maximum_matching(const BipartiteGraph& g) {
  return maximum_matching(g, AllEdges{});
}

/// True iff the filtered graph has a matching with at least `required_size`
/// pairs. Stops augmenting as soon as that many agents are matched.
template <typename EdgeFilter>
bool has_maximal_matching(const BipartiteGraph& g, std::size_t required_size,
                          const EdgeFilter& keep) {
  if (required_size == 0) return true;
  if (required_size > g.num_agents()) return false;
  detail::HopcroftKarp hk(g, keep);
  return hk.run(required_size) >= required_size;
}

inline bool has_maximal_matching(const BipartiteGraph& g, std::size_t required_size) {
  return has_maximal_matching(g, required_size, AllEdges{});
}

/// Matching of `g` restricted by `keep` that saturates every agent, if any.
template <typename EdgeFilter>
std::optional<Matching> agent_saturating_matching(const BipartiteGraph& g,
                                                  const EdgeFilter& keep) {
  Matching m = maximum_matching(g, keep);
  if (m.size() < g.num_agents()) return std::nullopt;
  return m;
}

}  // namespace bottleneck

#endif  // BOTTLENECK_MATCHING_HPP_
