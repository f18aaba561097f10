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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tripled/errors.hpp"
#include "tripled/pattern.hpp"
#include "tripled/results.hpp"
#include "tripled/store.hpp"

namespace tripled {

inline constexpr std::size_t kDefaultIntermediateCap = 1'000'000;

/// One solution: variable bindings plus the triple matched by each evaluated
/// pattern, in evaluation order.
struct SolutionTuple {
  std::map<std::string, Term> bindings;
  std::vector<Triple> provenance;
};

struct SolutionBag {
  std::vector<std::size_t> evaluationOrder;  // indices into the input BGP
  std::vector<std::string> variables;        // first-mention order of the input BGP
  std::vector<SolutionTuple> tuples;
  std::size_t peakSize = 0;  // largest intermediate bag seen

  bool empty() const noexcept { return tuples.empty(); }
  std::size_t size() const noexcept { return tuples.size(); }
};

struct MatchOptions {
  std::size_t cap = kDefaultIntermediateCap;
};

/// All stored triples matching `tp`. Access path: bound subject reads T_sp by
/// row key, else bound object reads T_op by row key, else T_sp is scanned.
/// The predicate, when bound, restricts the columns read. Candidates are then
/// filtered with matchTPT.
inline std::vector<Triple> matchTPDB(const TriplePattern& tp, const WideColumnDb& db) {
  const std::optional<Term> pred = tp.p.isConstant() ? std::optional<Term>(tp.p.term()) : std::nullopt;
  std::vector<Triple> bag;
  if (tp.s.isConstant())
    bag = db.getBySubject(tp.s.term(), pred);
  else if (tp.o.isConstant())
    bag = db.getByObject(tp.o.term(), pred);
  else
    bag = db.scanAll(pred);
  std::erase_if(bag, [&](const Triple& t) { return !matchTPT(tp, t); });
  return bag;
}

/// Structural selectivity rank, 0 = most selective. Bound s or o allows a
/// keyed row read; predicate-only patterns force a scan.
inline int selectivityClass(const TriplePattern& tp) {
  const bool s = tp.s.isConstant();
  const bool p = tp.p.isConstant();
  const bool o = tp.o.isConstant();
  if (s && p && o) return 0;
  if (s && o) return 1;
  if (s && p) return 2;
  if (p && o) return 3;
  if (s) return 4;
  if (o) return 5;
  if (p) return 6;
  return 7;
}

/// Greedy evaluation order as indices into `bgp`. The first pick is the most
/// selective pattern; later picks prefer patterns sharing a variable with
/// those already placed, then selectivity. Ties keep textual order.
inline std::vector<std::size_t> orderBgpIndices(const Bgp& bgp) {
  const std::size_t n = bgp.size();
  std::vector<std::vector<std::string>> vars(n);
  std::vector<int> rank(n);
  for (std::size_t i = 0; i < n; ++i) {
    vars[i] = bgp[i].variables();
    rank[i] = selectivityClass(bgp[i]);
  }
  std::vector<bool> placed(n, false);
  std::vector<std::string> placedVars;
  std::vector<std::size_t> order;
  order.reserve(n);
  auto shares = [&](std::size_t i) {
    for (const auto& v : vars[i])
      if (std::find(placedVars.begin(), placedVars.end(), v) != placedVars.end()) return true;
    return false;
  };
  while (order.size() < n) {
    std::optional<std::size_t> bestConnected, bestAny;
    for (std::size_t i = 0; i < n; ++i) {
      if (placed[i]) continue;
      if (!bestAny || rank[i] < rank[*bestAny]) bestAny = i;
      if (!order.empty() && shares(i) && (!bestConnected || rank[i] < rank[*bestConnected]))
        bestConnected = i;
    }
    const std::size_t pick = bestConnected ? *bestConnected : *bestAny;
    placed[pick] = true;
    order.push_back(pick);
    for (const auto& v : vars[pick])
      if (std::find(placedVars.begin(), placedVars.end(), v) == placedVars.end()) placedVars.push_back(v);
  }
  return order;
}

inline Bgp orderBgp(const Bgp& bgp) {
  std::vector<TriplePattern> out;
  for (std::size_t i : orderBgpIndices(bgp)) out.push_back(bgp[i]);
  return Bgp(std::move(out));
}

namespace detail {

inline void bindFrom(const TriplePattern& tp, const Triple& t, std::map<std::string, Term>& bindings) {
  for (Position pos : kPositions) {
    const PatternPos& pp = tp.at(pos);
    if (pp.isVariable()) bindings.emplace(pp.varName(), termAt(t, pos));
  }
}

inline void checkCap(std::size_t size, const MatchOptions& opts) {
  if (size > opts.cap) throw ResourceLimitError(opts.cap, size);
}

}  // namespace detail

/// Evaluates a basic graph pattern with index-nested-loop joins.
///
/// Patterns run in orderBgpIndices order. A pattern sharing variables with
/// earlier ones is probed once per distinct substituted pattern, and its
/// matches are concatenated onto every tuple that produced that substitution;
/// tuples whose probe finds nothing are dropped. A pattern with no shared
/// variables is joined by Cartesian product. Evaluation stops as soon as the
/// bag is empty.
///
/// Throws ResourceLimitError if an intermediate bag would exceed `opts.cap`.
inline SolutionBag matchBgpDb(const Bgp& bgp, const WideColumnDb& db, MatchOptions opts = {}) {
  SolutionBag result;
  result.evaluationOrder = orderBgpIndices(bgp);
  result.variables = bgp.variables();

  std::vector<std::string> boundVars;
  auto& bag = result.tuples;

  const TriplePattern& first = bgp[result.evaluationOrder.front()];
  std::vector<Triple> seed = matchTPDB(first, db);
  detail::checkCap(seed.size(), opts);
  bag.reserve(seed.size());
  for (auto& t : seed) {
    SolutionTuple tuple;
    detail::bindFrom(first, t, tuple.bindings);
    tuple.provenance.push_back(std::move(t));
    bag.push_back(std::move(tuple));
  }
  result.peakSize = bag.size();
  if (bag.empty()) return result;
  boundVars = first.variables();

  for (std::size_t step = 1; step < result.evaluationOrder.size(); ++step) {
    const TriplePattern& tp = bgp[result.evaluationOrder[step]];
    const auto tpVars = tp.variables();
    bool shared = false;
    for (const auto& v : tpVars)
      shared = shared || std::find(boundVars.begin(), boundVars.end(), v) != boundVars.end();

    std::vector<SolutionTuple> next;
    if (shared) {
      // Distinct substituted patterns, probed in canonical order.
      std::map<TriplePattern, std::size_t> probeIndex;
      std::vector<std::size_t> probeOf(bag.size());
      for (std::size_t i = 0; i < bag.size(); ++i) {
        auto [it, fresh] = probeIndex.try_emplace(substitute(tp, bag[i].bindings), probeIndex.size());
        probeOf[i] = it->second;
      }
      std::vector<const TriplePattern*> probes(probeIndex.size());
      for (const auto& [pattern, idx] : probeIndex) probes[idx] = &pattern;
      std::vector<std::vector<Triple>> matches(probes.size());
      for (const auto& [pattern, idx] : probeIndex) matches[idx] = matchTPDB(pattern, db);

      std::size_t total = 0;
      for (std::size_t i = 0; i < bag.size(); ++i) total += matches[probeOf[i]].size();
      detail::checkCap(total, opts);
      next.reserve(total);
      for (std::size_t i = 0; i < bag.size(); ++i) {
        const auto& found = matches[probeOf[i]];
        const TriplePattern& probe = *probes[probeOf[i]];
        for (const Triple& t : found) {
          SolutionTuple tuple = bag[i];
          detail::bindFrom(probe, t, tuple.bindings);
          tuple.provenance.push_back(t);
          next.push_back(std::move(tuple));
        }
      }
    } else {
      const std::vector<Triple> found = matchTPDB(tp, db);
      if (!found.empty() && bag.size() > opts.cap / found.size())
        throw ResourceLimitError(opts.cap, bag.size() * found.size());
      next.reserve(bag.size() * found.size());
      for (const auto& left : bag) {
        for (const Triple& t : found) {
          SolutionTuple tuple = left;
          detail::bindFrom(tp, t, tuple.bindings);
          tuple.provenance.push_back(t);
          next.push_back(std::move(tuple));
        }
      }
    }
    bag = std::move(next);
    result.peakSize = std::max(result.peakSize, bag.size());
    if (bag.empty()) return result;
    for (const auto& v : tpVars)
      if (std::find(boundVars.begin(), boundVars.end(), v) == boundVars.end()) boundVars.push_back(v);
  }
  return result;
}

/// Projects a bag onto its variables (first-mention order). A bag without
/// variables yields one `1` per solution under the existence column.
inline ResultSet toResultSet(const SolutionBag& bag) {
  ResultSet rs;
  if (bag.variables.empty()) {
    rs.columns = {kExistenceColumn};
    rs.rows.assign(bag.size(), {"1"});
    return rs;
  }
  rs.columns = bag.variables;
  rs.rows.reserve(bag.size());
  for (const auto& tuple : bag.tuples) {
    std::vector<std::string> row;
    row.reserve(bag.variables.size());
    for (const auto& v : bag.variables) row.push_back(serializeTerm(tuple.bindings.at(v)));
    rs.rows.push_back(std::move(row));
  }
  return rs;
}

}  // namespace tripled
