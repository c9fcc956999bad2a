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

// Random-graph sweep comparing the tightest bound of each certificate as the
// problem grows.

#ifndef BOTTLENECK_SIMULATE_HPP_
#define BOTTLENECK_SIMULATE_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

#include "bottleneck/error.hpp"
#include "bottleneck/graph.hpp"
#include "bottleneck/io.hpp"
#include "bottleneck/random.hpp"
#include "bottleneck/robustness.hpp"

namespace bottleneck {

struct SimulationConfig {
  std::size_t n_min = 3;
  std::size_t n_max = 50;
  std::size_t trials_per_size = 100;
  double weight_low = 0.0;
  double weight_high = 100.0;
  std::uint64_t seed = 1;
  std::size_t parallelism = 1;

  void validate() const {
    if (n_min < 3) throw InvalidInput("n-min must be at least 3");
    if (n_max < n_min) throw InvalidInput("n-max must be at least n-min");
    if (trials_per_size == 0) throw InvalidInput("trials must be at least 1");
    if (!(weight_low < weight_high)) throw InvalidInput("weight range must satisfy low < high");
    if (parallelism == 0) throw InvalidInput("jobs must be at least 1");
  }
};

struct SimulationRecord {
  std::size_t n = 0;
  std::size_t trial = 0;
  double min_relaxed = 0.0;
  double min_naive = 0.0;
  double delta_theorem1 = 0.0;

  friend bool operator==(const SimulationRecord&, const SimulationRecord&) = default;
};

/// Fully connected n x n graph with i.i.d. uniform weights.
inline BipartiteGraph random_complete_graph(std::size_t n, double low, double high, Rng& rng) {
  std::vector<Edge> edges;
  edges.reserve(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t t = 0; t < n; ++t) edges.push_back({{a, t}, rng.uniform(low, high)});
  }
  return BipartiteGraph(n, n, std::move(edges));
}

inline SimulationRecord simulate_cell(const SimulationConfig& config, std::size_t n,
                                      std::size_t trial) {
  Rng rng(derive_seed(config.seed, {n, trial}));
  const BipartiteGraph g = random_complete_graph(n, config.weight_low, config.weight_high, rng);
  const CriticalEdges c = critical_edges(g);
  const RobustnessBounds relaxed = relaxed_bounds(g, c);
  const RobustnessBounds naive = naive_bounds(g, c.star);
  return {n, trial, min_finite_magnitude(relaxed), min_finite_magnitude(naive),
          std::min(relaxed.delta_minus, relaxed.delta_plus)};
}

/// Every (n, trial) cell, ordered by n then trial. Cells are spread over
/// `config.parallelism` threads; each seeds itself from (seed, n, trial), so
/// the output does not depend on the thread count.
inline std::vector<SimulationRecord> run_simulation(const SimulationConfig& config) {
  config.validate();
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t n = config.n_min; n <= config.n_max; ++n) {
    for (std::size_t t = 0; t < config.trials_per_size; ++t) cells.emplace_back(n, t);
  }
  std::vector<SimulationRecord> records(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        records[i] = simulate_cell(config, cells[i].first, cells[i].second);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const std::size_t workers = std::min(config.parallelism, std::max<std::size_t>(cells.size(), 1));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

inline void write_simulation_csv(std::ostream& out, const std::vector<SimulationRecord>& records) {
  out << "n,trial,min_relaxed,min_naive,delta_theorem1\n";
  for (const SimulationRecord& r : records) {
    out << r.n << ',' << r.trial << ',' << format_number(r.min_relaxed) << ','
        << format_number(r.min_naive) << ',' << format_number(r.delta_theorem1) << '\n';
  }
}

struct SizeSummary {
  std::size_t n = 0;
  std::size_t count = 0;
  double mean_relaxed = 0.0;
  double mean_naive = 0.0;
  double mean_delta = 0.0;
  /// Records where the relaxed minimum fell below the naive one.
  std::size_t dominance_failures = 0;
};

inline std::vector<SizeSummary> summarize(const std::vector<SimulationRecord>& records) {
  std::map<std::size_t, SizeSummary> by_n;
  for (const SimulationRecord& r : records) {
    SizeSummary& s = by_n[r.n];
    s.n = r.n;
    ++s.count;
    s.mean_relaxed += r.min_relaxed;
    s.mean_naive += r.min_naive;
    s.mean_delta += r.delta_theorem1;
    if (r.min_relaxed < r.min_naive) ++s.dominance_failures;
  }
  std::vector<SizeSummary> out;
  for (auto& [n, s] : by_n) {
    s.mean_relaxed /= static_cast<double>(s.count);
    s.mean_naive /= static_cast<double>(s.count);
    s.mean_delta /= static_cast<double>(s.count);
    out.push_back(s);
  }
  return out;
}

}  // namespace bottleneck

#endif  // BOTTLENECK_SIMULATE_HPP_
