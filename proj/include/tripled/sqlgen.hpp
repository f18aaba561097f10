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
#include <array>
#include <cctype>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "tripled/errors.hpp"
#include "tripled/io.hpp"
#include "tripled/pattern.hpp"
#include "tripled/results.hpp"
#include "tripled/term.hpp"

namespace tripled {

inline constexpr const char* kTripleTableName = "T";

// ---------------------------------------------------------------------------
// Triple table T(s, p, o)
// ---------------------------------------------------------------------------

/// The single relational table holding every triple as canonical strings.
/// Stored sorted and duplicate-free.
class TripleTable {
 public:
  using Row = std::array<std::string, 3>;

  TripleTable() = default;

  static TripleTable fromRows(std::vector<Row> rows) {
    TripleTable t;
    t.rows_ = std::move(rows);
    t.normalize();
    return t;
  }

  const std::vector<Row>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }

  // Returns the number of rows that were not already present.
  std::size_t insert(std::span<const Triple> triples) {
    const std::size_t before = rows_.size();
    rows_.reserve(before + triples.size());
    for (const auto& t : triples) rows_.push_back({serializeTerm(t.s), serializeTerm(t.p), serializeTerm(t.o)});
    normalize();
    return rows_.size() - before;
  }

  std::string dump() const {
    std::string out;
    for (const auto& r : rows_) out += r[0] + '\t' + r[1] + '\t' + r[2] + '\n';
    return out;
  }

  void save(const std::filesystem::path& path) const { io::writeFileAtomic(path, dump()); }

  /// Reads a `s TAB p TAB o` image. A missing file is an empty table.
  static TripleTable load(const std::filesystem::path& path) {
    TripleTable t;
    if (!std::filesystem::exists(path)) return t;
    const std::string text = io::readFile(path);
    std::size_t offset = 0, record = 0;
    while (offset < text.size()) {
      auto fail = [&](const std::string& why) {
        throw LoadError("table T: record " + std::to_string(record) + " at byte offset " +
                        std::to_string(offset) + ": " + why);
      };
      const std::size_t nl = text.find('\n', offset);
      if (nl == std::string::npos) fail("truncated record (no line terminator)");
      std::string_view line(text.data() + offset, nl - offset);
      Row row;
      std::size_t field = 0, start = 0;
      for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == '\t') {
          if (field >= 3) fail("expected 3 tab-separated fields");
          row[field++] = std::string(line.substr(start, i - start));
          start = i + 1;
        }
      }
      if (field != 3) fail("expected 3 tab-separated fields");
      try {
        for (const auto& f : row) parseTerm(f);
      } catch (const ParseError& e) {
        fail(e.what());
      }
      t.rows_.push_back(std::move(row));
      ++record;
      offset = nl + 1;
    }
    t.normalize();
    return t;
  }

 private:
  void normalize() {
    std::sort(rows_.begin(), rows_.end());
    rows_.erase(std::unique(rows_.begin(), rows_.end()), rows_.end());
  }

  std::vector<Row> rows_;
};

inline TripleTable loadTripleTable(std::span<const Triple> triples) {
  TripleTable t;
  t.insert(triples);
  return t;
}

// ---------------------------------------------------------------------------
// Flat SQL query model
// ---------------------------------------------------------------------------

struct ColumnRef {
  std::string alias;
  char column = 's';

  std::string str() const { return alias + '.' + column; }

  friend bool operator==(const ColumnRef&, const ColumnRef&) = default;
};

struct SelectItem {
  std::variant<ColumnRef, std::string> expr;  // column, or a raw SQL constant such as `1`
  std::string name;

  friend bool operator==(const SelectItem&, const SelectItem&) = default;
};

struct FromItem {
  std::string table;
  std::string alias;

  friend bool operator==(const FromItem&, const FromItem&) = default;
};

/// `lhs = rhs` where rhs is a column or a constant (stored unquoted).
struct Conjunct {
  ColumnRef lhs;
  std::variant<ColumnRef, std::string> rhs;

  bool isJoin() const noexcept { return std::holds_alternative<ColumnRef>(rhs); }

  friend bool operator==(const Conjunct&, const Conjunct&) = default;
};

struct FlatSqlQuery {
  std::vector<SelectItem> select;
  std::vector<FromItem> from;
  std::vector<Conjunct> where;

  friend bool operator==(const FlatSqlQuery&, const FlatSqlQuery&) = default;
};

/// variable -> column references, in pattern order then s < p < o.
using InvertedVarIndex = std::vector<std::pair<std::string, std::vector<ColumnRef>>>;

inline std::string patternAlias(std::size_t index) { return "tp" + std::to_string(index + 1); }

inline InvertedVarIndex buildInvertedIndex(const Bgp& bgp) {
  InvertedVarIndex h;
  for (std::size_t i = 0; i < bgp.size(); ++i) {
    for (Position pos : kPositions) {
      const PatternPos& pp = bgp[i].at(pos);
      if (!pp.isVariable()) continue;
      auto it = std::find_if(h.begin(), h.end(), [&](const auto& e) { return e.first == pp.varName(); });
      if (it == h.end()) {
        h.emplace_back(pp.varName(), std::vector<ColumnRef>{});
        it = std::prev(h.end());
      }
      it->second.push_back(ColumnRef{patternAlias(i), positionLetter(pos)});
    }
  }
  return h;
}

/// Translates a BGP into a single SELECT-FROM-WHERE over T(s, p, o).
///
/// Pattern i gets alias `tp<i+1>`. Constants become `alias.col = 'value'`
/// conjuncts in pattern then position order. Every later occurrence of a
/// variable is equated with its first occurrence, which is also what SELECT
/// projects under the variable's name. A BGP without variables selects
/// `1 As matched`.
inline FlatSqlQuery bgpToFlatSql(const Bgp& bgp) {
  const InvertedVarIndex h = buildInvertedIndex(bgp);
  for (std::size_t a = 0; a < h.size(); ++a) {
    for (std::size_t b = a + 1; b < h.size(); ++b) {
      const auto& x = h[a].first;
      const auto& y = h[b].first;
      const bool same = x.size() == y.size() &&
                        std::equal(x.begin(), x.end(), y.begin(), [](char c1, char c2) {
                          return std::tolower(static_cast<unsigned char>(c1)) ==
                                 std::tolower(static_cast<unsigned char>(c2));
                        });
      if (same) throw TranslateError("variables ?" + x + " and ?" + y + " differ only in case");
    }
  }

  FlatSqlQuery q;
  for (std::size_t i = 0; i < bgp.size(); ++i) q.from.push_back({kTripleTableName, patternAlias(i)});

  for (std::size_t i = 0; i < bgp.size(); ++i)
    for (Position pos : kPositions)
      if (const PatternPos& pp = bgp[i].at(pos); pp.isConstant())
        q.where.push_back({ColumnRef{patternAlias(i), positionLetter(pos)}, serializeTerm(pp.term())});

  for (const auto& [var, refs] : h)
    for (std::size_t k = 1; k < refs.size(); ++k) q.where.push_back({refs.front(), refs[k]});

  for (const auto& [var, refs] : h) q.select.push_back({refs.front(), var});
  if (q.select.empty()) q.select.push_back({std::string("1"), kExistenceColumn});
  return q;
}

inline std::string quoteSqlString(std::string_view v) {
  std::string out = "'";
  for (char c : v) {
    if (c == '\'') out += '\'';
    out += c;
  }
  out += '\'';
  return out;
}

/// One line, `Select ... From ... Where ...`, conjuncts joined by ` And `.
/// The Where clause is omitted when there are no conjuncts.
inline std::string renderSql(const FlatSqlQuery& q) {
  std::string out = "Select ";
  for (std::size_t i = 0; i < q.select.size(); ++i) {
    if (i) out += ", ";
    const auto& item = q.select[i];
    if (const auto* col = std::get_if<ColumnRef>(&item.expr))
      out += col->str();
    else
      out += std::get<std::string>(item.expr);
    out += " As " + item.name;
  }
  out += " From ";
  for (std::size_t i = 0; i < q.from.size(); ++i) {
    if (i) out += ", ";
    out += q.from[i].table + ' ' + q.from[i].alias;
  }
  if (!q.where.empty()) {
    out += " Where ";
    for (std::size_t i = 0; i < q.where.size(); ++i) {
      if (i) out += " And ";
      const auto& c = q.where[i];
      out += c.lhs.str() + " = ";
      if (const auto* col = std::get_if<ColumnRef>(&c.rhs))
        out += col->str();
      else
        out += quoteSqlString(std::get<std::string>(c.rhs));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Embedded evaluator
// ---------------------------------------------------------------------------

namespace detail {

struct BoundColumn {
  std::size_t from;  // index into q.from
  std::size_t col;   // 0..2
};

inline std::size_t columnIndex(char c) {
  switch (c) {
    case 's': return 0;
    case 'p': return 1;
    case 'o': return 2;
    default: throw EvalError(std::string("unknown column '") + c + "'");
  }
}

inline BoundColumn resolve(const FlatSqlQuery& q, const ColumnRef& ref) {
  for (std::size_t i = 0; i < q.from.size(); ++i)
    if (q.from[i].alias == ref.alias) return {i, columnIndex(ref.column)};
  throw EvalError("unknown alias '" + ref.alias + "' in " + ref.str());
}

}  // namespace detail

/// Executes a flat query with select-project-join semantics over `table`.
/// The answer is the bag the naive cross-product-then-filter reading gives;
/// internally joins use hash lookups on one equality per step.
inline ResultSet evalFlatSql(const FlatSqlQuery& q, const TripleTable& table) {
  using detail::BoundColumn;
  const std::size_t n = q.from.size();
  if (n == 0) throw EvalError("query has no FROM items");
  for (std::size_t i = 0; i < n; ++i) {
    if (q.from[i].table != kTripleTableName) throw EvalError("unknown table '" + q.from[i].table + "'");
    for (std::size_t j = i + 1; j < n; ++j)
      if (q.from[i].alias == q.from[j].alias) throw EvalError("duplicate alias '" + q.from[i].alias + "'");
  }

  struct Equality {
    BoundColumn a, b;
  };
  std::vector<std::vector<std::pair<std::size_t, std::string>>> constants(n);
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> selfJoins(n);
  std::vector<Equality> joins;
  for (const auto& c : q.where) {
    const BoundColumn lhs = detail::resolve(q, c.lhs);
    if (const auto* col = std::get_if<ColumnRef>(&c.rhs)) {
      const BoundColumn rhs = detail::resolve(q, *col);
      if (lhs.from == rhs.from)
        selfJoins[lhs.from].emplace_back(lhs.col, rhs.col);
      else
        joins.push_back({lhs, rhs});
    } else {
      constants[lhs.from].emplace_back(lhs.col, std::get<std::string>(c.rhs));
    }
  }

  ResultSet rs;
  std::vector<std::optional<BoundColumn>> projection;
  for (const auto& item : q.select) {
    rs.columns.push_back(item.name);
    if (const auto* col = std::get_if<ColumnRef>(&item.expr))
      projection.emplace_back(detail::resolve(q, *col));
    else
      projection.emplace_back(std::nullopt);
  }

  // Per-alias candidates after local filters.
  const auto& rows = table.rows();
  std::vector<std::vector<std::size_t>> candidates(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      bool ok = true;
      for (const auto& [col, value] : constants[i]) ok = ok && rows[r][col] == value;
      for (const auto& [c1, c2] : selfJoins[i]) ok = ok && rows[r][c1] == rows[r][c2];
      if (ok) candidates[i].push_back(r);
    }
    if (candidates[i].empty()) return rs;
  }

  // Greedy join order: smallest candidate set first, then connected aliases.
  std::vector<std::size_t> order;
  std::vector<bool> placed(n, false);
  while (order.size() < n) {
    std::optional<std::size_t> best, bestConnected;
    for (std::size_t i = 0; i < n; ++i) {
      if (placed[i]) continue;
      if (!best || candidates[i].size() < candidates[*best].size()) best = i;
      bool connected = false;
      for (const auto& e : joins)
        connected = connected || (e.a.from == i && placed[e.b.from]) || (e.b.from == i && placed[e.a.from]);
      if (connected && (!bestConnected || candidates[i].size() < candidates[*bestConnected].size()))
        bestConnected = i;
    }
    const std::size_t pick = bestConnected ? *bestConnected : *best;
    placed[pick] = true;
    order.push_back(pick);
  }

  // For each step: equalities against earlier aliases; the first one drives a hash probe.
  struct Step {
    std::size_t alias;
    std::vector<std::pair<std::size_t, BoundColumn>> checks;  // (own column, earlier column)
    std::unordered_multimap<std::string_view, std::size_t> index;
  };
  std::vector<Step> steps(n);
  std::vector<std::size_t> position(n);
  for (std::size_t k = 0; k < n; ++k) position[order[k]] = k;
  for (std::size_t k = 0; k < n; ++k) {
    Step& st = steps[k];
    st.alias = order[k];
    for (const auto& e : joins) {
      if (e.a.from == st.alias && position[e.b.from] < k) st.checks.emplace_back(e.a.col, e.b);
      if (e.b.from == st.alias && position[e.a.from] < k) st.checks.emplace_back(e.b.col, e.a);
    }
    if (!st.checks.empty()) {
      const std::size_t col = st.checks.front().first;
      for (std::size_t r : candidates[st.alias]) st.index.emplace(rows[r][col], r);
    }
  }

  std::vector<std::size_t> chosen(n);
  auto emit = [&] {
    std::vector<std::string> out;
    out.reserve(projection.size());
    for (std::size_t c = 0; c < projection.size(); ++c) {
      if (projection[c])
        out.push_back(rows[chosen[projection[c]->from]][projection[c]->col]);
      else
        out.push_back(std::get<std::string>(q.select[c].expr));
    }
    rs.rows.push_back(std::move(out));
  };
  auto accepts = [&](const Step& st, std::size_t r) {
    for (const auto& [own, other] : st.checks)
      if (rows[r][own] != rows[chosen[other.from]][other.col]) return false;
    return true;
  };
  auto recurse = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      emit();
      return;
    }
    const Step& st = steps[k];
    if (st.checks.empty()) {
      for (std::size_t r : candidates[st.alias]) {
        chosen[st.alias] = r;
        self(self, k + 1);
      }
      return;
    }
    const auto& [ownCol, other] = st.checks.front();
    (void)ownCol;
    auto [lo, hi] = st.index.equal_range(rows[chosen[other.from]][other.col]);
    for (auto it = lo; it != hi; ++it) {
      if (!accepts(st, it->second)) continue;
      chosen[st.alias] = it->second;
      self(self, k + 1);
    }
  };
  recurse(recurse, 0);
  return rs;
}

}  // namespace tripled
