/*
Copyright 2026 The tripled Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace tripled {

// Column name used when a query binds no variables; each solution is a `1`.
inline constexpr const char* kExistenceColumn = "matched";

/// Engine-neutral answer table: named columns of canonical term strings.
struct ResultSet {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void sortRows() { std::sort(rows.begin(), rows.end()); }
};

/// TSV: header, rows sorted lexicographically, then `# rows: N`.
inline std::string renderTsv(ResultSet rs) {
  rs.sortRows();
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += '\t';
      out += cells[i];
    }
    out += '\n';
  };
  line(rs.columns);
  for (const auto& r : rs.rows) line(r);
  out += "# rows: " + std::to_string(rs.rows.size()) + "\n";
  return out;
}

/// Aligned, boxed table for humans. Same row order as renderTsv.
inline std::string renderTable(ResultSet rs) {
  rs.sortRows();
  std::vector<std::size_t> width(rs.columns.size());
  for (std::size_t c = 0; c < rs.columns.size(); ++c) width[c] = rs.columns[c].size();
  for (const auto& r : rs.rows)
    for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
  std::string rule = "+";
  for (auto w : width) rule += std::string(w + 2, '-') + "+";
  rule += '\n';
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s = "|";
    for (std::size_t c = 0; c < width.size(); ++c) {
      const std::string& v = c < cells.size() ? cells[c] : std::string();
      s += ' ' + v + std::string(width[c] - v.size(), ' ') + " |";
    }
    return s + '\n';
  };
  std::string out = rule + line(rs.columns) + rule;
  for (const auto& r : rs.rows) out += line(r);
  out += rule;
  out += "(" + std::to_string(rs.rows.size()) + " rows)\n";
  return out;
}

}  // namespace tripled
