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

// Subcommands behind the `bottleneck` executable. Each writes to the given
// streams and returns the process exit code, so tests can drive them without
// spawning a process.
//
// Human-readable output uses 1-based (row, column) positions in the input
// matrix; csv and json output use 0-based indices.

#ifndef BOTTLENECK_COMMANDS_HPP_
#define BOTTLENECK_COMMANDS_HPP_

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bottleneck/bap.hpp"
#include "bottleneck/error.hpp"
#include "bottleneck/graph.hpp"
#include "bottleneck/io.hpp"
#include "bottleneck/oracle.hpp"
#include "bottleneck/robustness.hpp"
#include "bottleneck/simulate.hpp"

namespace bottleneck::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kInfeasible = 2,
  kViolations = 3,
};

enum class OutputFormat { kTable, kCsv, kJson };

inline std::optional<OutputFormat> parse_format(std::string_view s) {
  if (s == "table") return OutputFormat::kTable;
  if (s == "csv") return OutputFormat::kCsv;
  if (s == "json") return OutputFormat::kJson;
  return std::nullopt;
}

namespace detail {

inline std::string one_based(const BipartiteGraph& g, const EdgeId& e) {
  EdgeId rc = g.to_input_orientation(e);
  return "(" + std::to_string(rc.agent + 1) + "," + std::to_string(rc.task + 1) + ")";
}

inline std::vector<EdgeId> in_input_order(const BipartiteGraph& g, std::vector<EdgeId> ids) {
  std::sort(ids.begin(), ids.end(), [&](const EdgeId& a, const EdgeId& b) {
    return g.to_input_orientation(a) < g.to_input_orientation(b);
  });
  return ids;
}

inline nlohmann::json json_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

inline nlohmann::json json_edge(const BipartiteGraph& g, const Edge& e) {
  EdgeId rc = g.to_input_orientation(e.id);
  return {{"agent", rc.agent}, {"task", rc.task}, {"weight", e.weight}};
}

// Maps library exceptions onto exit codes.
inline int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Infeasible& ex) {
    err << "infeasible: " << ex.what() << '\n';
    return kInfeasible;
  } catch (const FileError& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsage;
  } catch (const ParseError& ex) {
    err << "parse error: " << ex.what() << '\n';
    return kUsage;
  } catch (const InvalidInput& ex) {
    err << "invalid input: " << ex.what() << '\n';
    return kUsage;
  } catch (const TooLarge& ex) {
    err << "error: " << ex.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& ex) {
    err << "usage error: " << ex.what() << '\n';
    return kUsage;
  }
}

struct AnalysedBounds {
  RobustnessBounds bounds;
  std::optional<CriticalEdges> critical;
};

inline AnalysedBounds analyse(const BipartiteGraph& g, BoundsMethod method) {
  switch (method) {
    case BoundsMethod::kTheorem1Box: {
      CriticalEdges c = critical_edges(g);
      return {theorem1_bounds(g, c), c};
    }
    case BoundsMethod::kRelaxed: {
      CriticalEdges c = critical_edges(g);
      return {relaxed_bounds(g, c), c};
    }
    case BoundsMethod::kNaive:
      return {naive_bounds(g), std::nullopt};
  }
  throw std::invalid_argument("unknown method");
}

inline void print_table(std::ostream& out, const BipartiteGraph& g, const AnalysedBounds& a) {
  const RobustnessBounds& b = a.bounds;
  out << "method " << to_string(b.method) << '\n';
  out << "bottleneck " << one_based(g, b.bottleneck.id) << " weight "
      << format_number(b.bottleneck.weight) << '\n';
  if (a.critical) {
    out << "e- ";
    if (a.critical->minus) {
      out << one_based(g, a.critical->minus->id) << " weight " << format_number(a.critical->minus->weight);
    } else {
      out << "none";
    }
    out << "\ne+ ";
    if (a.critical->plus) {
      out << one_based(g, a.critical->plus->id) << " weight " << format_number(a.critical->plus->weight);
    } else {
      out << "none";
    }
    out << '\n';
  }
  if (b.method == BoundsMethod::kTheorem1Box) {
    out << "Δ = " << format_rounded(b.delta_plus) << '\n';
  } else {
    out << "Δ⁻ = " << format_rounded(b.delta_minus) << '\n';
    out << "Δ⁺ = " << format_rounded(b.delta_plus) << '\n';
  }

  const CostMatrix shape = to_cost_matrix(g);
  std::vector<std::vector<std::string>> cells(shape.rows + 1,
                                              std::vector<std::string>(shape.cols + 1));
  for (std::size_t c = 0; c < shape.cols; ++c) cells[0][c + 1] = "T" + std::to_string(c + 1);
  for (std::size_t r = 0; r < shape.rows; ++r) {
    cells[r + 1][0] = "A" + std::to_string(r + 1);
    for (std::size_t c = 0; c < shape.cols; ++c) {
      const EdgeId id = g.from_input_orientation({r, c});
      if (!g.contains(id)) {
        cells[r + 1][c + 1] = "-";
        continue;
      }
      const PerturbationInterval& iv = b.at(id);
      cells[r + 1][c + 1] = "[" + format_rounded(iv.lower()) + ", " + format_rounded(iv.upper()) + "]";
    }
  }
  std::vector<std::size_t> width(shape.cols + 1, 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << "  ";
      if (c + 1 == row.size()) {
        out << row[c];
      } else {
        out << std::left << std::setw(static_cast<int>(width[c])) << row[c];
      }
    }
    out << '\n';
  }
}

inline void print_csv(std::ostream& out, const BipartiteGraph& g, const AnalysedBounds& a) {
  const RobustnessBounds& b = a.bounds;
  const EdgeId star = g.to_input_orientation(b.bottleneck.id);
  out << "# method " << to_string(b.method) << '\n';
  out << "# bottleneck " << star.agent << ',' << star.task << '\n';
  out << "# delta_minus " << format_number(b.delta_minus) << '\n';
  out << "# delta_plus " << format_number(b.delta_plus) << '\n';
  out << "agent,task,weight,lower,upper\n";
  std::vector<EdgeId> ids;
  for (const Edge& e : g.edges()) ids.push_back(e.id);
  for (const EdgeId& id : in_input_order(g, ids)) {
    const EdgeId rc = g.to_input_orientation(id);
    const PerturbationInterval& iv = b.at(id);
    out << rc.agent << ',' << rc.task << ',' << format_number(g.weight(id)) << ','
        << format_number(iv.lower()) << ',' << format_number(iv.upper()) << '\n';
  }
}

inline void print_json(std::ostream& out, const BipartiteGraph& g, const AnalysedBounds& a) {
  const RobustnessBounds& b = a.bounds;
  nlohmann::json doc;
  doc["method"] = to_string(b.method);
  doc["bottleneck"] = json_edge(g, b.bottleneck);
  if (a.critical) {
    doc["e_minus"] = a.critical->minus ? json_edge(g, *a.critical->minus) : nlohmann::json(nullptr);
    doc["e_plus"] = a.critical->plus ? json_edge(g, *a.critical->plus) : nlohmann::json(nullptr);
  }
  doc["delta_minus"] = json_number(b.delta_minus);
  doc["delta_plus"] = json_number(b.delta_plus);
  nlohmann::json intervals = nlohmann::json::array();
  std::vector<EdgeId> ids;
  for (const Edge& e : g.edges()) ids.push_back(e.id);
  for (const EdgeId& id : in_input_order(g, ids)) {
    const PerturbationInterval& iv = b.at(id);
    nlohmann::json row = json_edge(g, Edge{id, g.weight(id)});
    row["lower"] = json_number(iv.lower());
    row["upper"] = json_number(iv.upper());
    intervals.push_back(std::move(row));
  }
  doc["intervals"] = std::move(intervals);
  out << doc.dump(2) << '\n';
}

}  // namespace detail

inline int cmd_solve(const std::string& input, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const BipartiteGraph g = read_graph_file(input);
    const BottleneckSolution s = solve(g);
    out << "value " << format_number(s.value) << '\n';
    out << "bottleneck";
    for (const EdgeId& e : detail::in_input_order(g, s.bottleneck_edges)) {
      out << ' ' << detail::one_based(g, e);
    }
    out << "\nwitness";
    for (const EdgeId& e : detail::in_input_order(g, s.witness.pairs)) {
      out << ' ' << detail::one_based(g, e);
    }
    out << '\n';
    return int{kSuccess};
  });
}

inline int cmd_bounds(const std::string& input, BoundsMethod method, OutputFormat format,
                      std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const BipartiteGraph g = read_graph_file(input);
    const detail::AnalysedBounds a = detail::analyse(g, method);
    switch (format) {
      case OutputFormat::kTable:
        detail::print_table(out, g, a);
        break;
      case OutputFormat::kCsv:
        detail::print_csv(out, g, a);
        break;
      case OutputFormat::kJson:
        detail::print_json(out, g, a);
        break;
    }
    return int{kSuccess};
  });
}

inline int cmd_verify(const std::string& input, BoundsMethod method, std::size_t trials,
                      std::uint64_t seed, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (trials == 0) throw std::invalid_argument("--trials must be at least 1");
    const BipartiteGraph g = read_graph_file(input);
    const RobustnessBounds b = compute_bounds(g, method);
    const CertificationReport r = certify(g, b, CertificationOptions::for_graph(g, trials, seed));
    out << "method " << to_string(method) << '\n';
    out << "bottleneck " << detail::one_based(g, b.bottleneck.id) << '\n';
    out << "trials " << r.trials << '\n';
    out << "violations " << r.violations << '\n';
    out << "degenerate_edges " << r.degenerate_edges.size() << '\n';
    out << "seed " << seed << '\n';
    if (r.first_violation) {
      out << "first_violation trial " << r.first_violation->trial << '\n';
      out << "perturbed_bottleneck";
      for (const EdgeId& e : detail::in_input_order(g, r.first_violation->bottleneck_edges)) {
        out << ' ' << detail::one_based(g, e);
      }
      out << '\n';
      for (const auto& [id, delta] : r.first_violation->perturbation.deltas) {
        out << "  delta " << detail::one_based(g, id) << ' ' << format_number(delta) << '\n';
      }
      return int{kViolations};
    }
    return int{kSuccess};
  });
}

inline int cmd_simulate(const SimulationConfig& config, const std::string& output,
                        std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    config.validate();
    std::ofstream file;
    if (output != "-") {
      file.open(output, std::ios::binary);
      if (!file) throw FileError("cannot write '" + output + "'");
    }
    const std::vector<SimulationRecord> records = run_simulation(config);
    std::ostream& csv = output == "-" ? out : file;
    write_simulation_csv(csv, records);
    csv.flush();
    if (!csv) throw FileError("failed writing '" + output + "'");

    std::ostream& summary = output == "-" ? err : out;
    std::size_t failures = 0;
    summary << "n,mean_min_relaxed,mean_min_naive,mean_delta_theorem1\n";
    for (const SizeSummary& s : summarize(records)) {
      failures += s.dominance_failures;
      summary << s.n << ',' << format_number(s.mean_relaxed) << ',' << format_number(s.mean_naive)
              << ',' << format_number(s.mean_delta) << '\n';
    }
    summary << "records " << records.size() << ", relaxed below naive in " << failures << '\n';
    return int{kSuccess};
  });
}

}  // namespace bottleneck::cli

#endif  // BOTTLENECK_COMMANDS_HPP_
