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

// Cost matrix files and number formatting.
//
// CSV: one row per agent, comma separated. An empty cell or "inf" marks a
// missing edge. A first row containing any other non-numeric cell is taken
// as a header and skipped. Lines starting with '#' are comments.
//
// JSON: {"agents": n, "tasks": m, "edges": [{"a": i, "t": j, "w": x}, ...]}
// with 0-based indices.

#ifndef BOTTLENECK_IO_HPP_
#define BOTTLENECK_IO_HPP_

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "bottleneck/error.hpp"
#include "bottleneck/graph.hpp"

namespace bottleneck {

/// The input file could not be opened.
class FileError : public Error {
 public:
  using Error::Error;
};

/// Shortest text that reads back as the same double; "inf" / "-inf".
inline std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

/// Rounded to two decimals with trailing zeros dropped, keeping at least one
/// decimal: 7 -> "7.0", -39.6 -> "-39.6", -5.05 -> "-5.05".
inline std::string format_rounded(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  while (s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
  return s;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline bool is_missing_token(std::string_view cell) {
  std::string lower(cell);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return lower.empty() || lower == "inf" || lower == "+inf" || lower == "infinity" ||
         lower == "\xe2\x88\x9e";  // U+221E
}

enum class CellKind { kMissing, kNumber, kText };

struct Cell {
  CellKind kind = CellKind::kMissing;
  double value = 0.0;
};

inline Cell classify(std::string_view raw) {
  std::string_view cell = trim(raw);
  if (is_missing_token(cell)) return {};
  std::string_view digits = cell;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec == std::errc() && ptr == digits.data() + digits.size()) {
    return {CellKind::kNumber, v};
  }
  return {CellKind::kText, 0.0};
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace detail

inline CostMatrix parse_csv_matrix(std::string_view text) {
  CostMatrix m;
  bool first_row = true;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? end : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    std::string_view body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;

    auto raw_cells = detail::split(body, ',');
    std::vector<detail::Cell> cells;
    cells.reserve(raw_cells.size());
    bool has_text = false;
    for (auto raw : raw_cells) {
      cells.push_back(detail::classify(raw));
      has_text = has_text || cells.back().kind == detail::CellKind::kText;
    }
    if (first_row) {
      first_row = false;
      if (has_text) continue;  // header
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].kind == detail::CellKind::kText) {
        throw ParseError("line " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                         ": '" + std::string(detail::trim(raw_cells[c])) + "' is not a weight");
      }
      if (cells[c].kind == detail::CellKind::kNumber && !std::isfinite(cells[c].value)) {
        throw ParseError("line " + std::to_string(line_no) + ", column " + std::to_string(c + 1) +
                         ": weight must be finite");
      }
    }
    if (m.rows == 0) {
      m.cols = cells.size();
    } else if (cells.size() != m.cols) {
      throw ParseError("line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                       " cells, expected " + std::to_string(m.cols));
    }
    for (const auto& cell : cells) {
      m.entries.push_back(cell.kind == detail::CellKind::kNumber ? std::optional<double>(cell.value)
                                                                 : std::nullopt);
    }
    ++m.rows;
  }
  if (m.rows == 0) throw ParseError("no matrix rows found");
  return m;
}

inline BipartiteGraph parse_json_graph(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    const auto agents = doc.at("agents").get<std::size_t>();
    const auto tasks = doc.at("tasks").get<std::size_t>();
    if (agents == 0 || tasks == 0) throw ParseError("graph must have agents and tasks");
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      edges.push_back({{e.at("a").get<std::size_t>(), e.at("t").get<std::size_t>()},
                       e.at("w").get<double>()});
    }
    if (edges.empty()) throw ParseError("graph has no edges");
    return BipartiteGraph(agents, tasks, std::move(edges));
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("invalid graph JSON: ") + ex.what());
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidInput& ex) {
    throw ParseError(ex.what());
  }
}

/// JSON document in the caller's orientation (rows are "agents").
inline nlohmann::json graph_to_json(const BipartiteGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  std::vector<Edge> ordered;
  for (const Edge& e : g.edges()) ordered.push_back({g.to_input_orientation(e.id), e.weight});
  std::sort(ordered.begin(), ordered.end(), [](const Edge& a, const Edge& b) { return a.id < b.id; });
  for (const Edge& e : ordered) edges.push_back({{"a", e.id.agent}, {"t", e.id.task}, {"w", e.weight}});
  const bool t = g.transposed();
  return {{"agents", t ? g.num_tasks() : g.num_agents()},
          {"tasks", t ? g.num_agents() : g.num_tasks()},
          {"edges", std::move(edges)}};
}

/// Parses CSV or JSON (chosen by a leading '{').
inline BipartiteGraph parse_graph(std::string_view text) {
  std::string_view body = detail::trim(text);
  if (!body.empty() && body.front() == '{') return parse_json_graph(body);
  try {
    return from_cost_matrix(parse_csv_matrix(text));
  } catch (const ParseError&) {
    throw;
  } catch (const InvalidInput& ex) {
    throw ParseError(ex.what());
  }
}

inline BipartiteGraph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

}  // namespace bottleneck

#endif  // BOTTLENECK_IO_HPP_
