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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "support/sample_graph.hpp"
#include "support/oracle.hpp"
#include "support/random_cases.hpp"
#include "tripled/harness.hpp"
#include "tripled/matcher.hpp"
#include "tripled/parse.hpp"
#include "tripled/sqlgen.hpp"
#include "tripled/store.hpp"

namespace {

using namespace tripled;
using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) detail << what;
    ok = ok && cond;
  }
};

double secondsSince(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string normalizeSpace(const std::string& s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (c == ' ' || c == '\n' || c == '\t') {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

void sampleGraphGolden(Check& c) {
  WideColumnDb db;
  const auto data = testing::sampleGraph();
  db.ingest(data);
  c.expect(db.tsp().rows().size() == 3, "T_sp rows != 3");
  c.expect(db.top().rows().size() == 7, "T_op rows != 7");
  const auto* row = db.tsp().row("<A>");
  c.expect(row && row->count("<memberOf>") &&
               row->at("<memberOf>") == WideColumnTable::CellValues{"<IEEE>", "<ACM>"},
           "cell (<A>, memberOf) != {<IEEE>, <ACM>}");
}

void q7TranslationGolden(Check& c) {
  const char* expected =
      "Select tp1.s As X, tp2.s As Y\n"
      "From T tp1, T tp2, T tp3, T tp4\n"
      "Where tp1.p = '<type>' And tp1.o = '<Student>'\n"
      "  And tp2.p = '<type>' And tp2.o = '<Course>'\n"
      "  And tp3.s = '<http://...Professor0>' And tp3.p = '<teacherOf>'\n"
      "  And tp4.p = '<takesCourse>'\n"
      "  And tp1.s = tp4.s And tp2.s = tp3.o And tp2.s = tp4.o";
  const FlatSqlQuery q = bgpToFlatSql(parseBgpQuery(testing::kQ7Text));
  c.expect(normalizeSpace(renderSql(q)) == normalizeSpace(expected), "SQL text differs: " + renderSql(q));
  std::size_t constants = 0;
  std::vector<std::string> joins;
  for (const auto& w : q.where) {
    if (w.isJoin())
      joins.push_back(w.lhs.str() + "=" + std::get<ColumnRef>(w.rhs).str());
    else
      ++constants;
  }
  c.expect(constants == 7, "constant conjuncts != 7");
  std::sort(joins.begin(), joins.end());
  c.expect(joins == std::vector<std::string>{"tp1.s=tp4.s", "tp2.s=tp3.o", "tp2.s=tp4.o"}, "join conjuncts differ");
}

void q7Reordering(Check& c) {
  const Bgp q7 = parseBgpQuery(testing::kQ7Text);
  const auto order = orderBgpIndices(q7);
  c.expect(order == std::vector<std::size_t>{2, 1, 3, 0}, "order is not (tp3, tp2, tp4, tp1)");
  const Bgp ordered = orderBgp(q7);
  c.expect(ordered[0] == q7[2] && ordered[1] == q7[1] && ordered[2] == q7[3] && ordered[3] == q7[0],
           "orderBgp patterns differ");
}

std::vector<testing::RandomCase> g_cases;
std::size_t g_rejected = 0;

void buildCases() {
  testing::Rng rng(20260101);
  while (g_cases.size() < 200) {
    auto data = testing::randomDataset(rng, 300);
    Bgp bgp = testing::randomBgp(rng, data, 1, 6);
    if (auto expected = testing::oracleEvaluate(bgp, data)) {
      g_cases.push_back({std::move(data), std::move(bgp), std::move(*expected)});
    } else {
      ++g_rejected;
    }
  }
}

void oracleEquivalence(Check& c) {
  buildCases();
  std::size_t nonEmpty = 0, mismatches = 0;
  for (const auto& rc : g_cases) {
    WideColumnDb db;
    db.ingest(rc.data);
    if (testing::toBindingBag(matchBgpDb(rc.bgp, db)) != rc.expected) ++mismatches;
    nonEmpty += !rc.expected.empty();
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " mismatching cases");
  c.detail << "200 cases, " << nonEmpty << " nonempty, " << g_rejected << " draws over oracle budget";
}

void crossEngine(Check& c) {
  if (g_cases.empty()) buildCases();
  std::size_t mismatches = 0, compared = 0;
  auto compare = [&](const Bgp& bgp, const WideColumnDb& db, const TripleTable& table) {
    ++compared;
    const std::string wide = renderTsv(toResultSet(matchBgpDb(bgp, db)));
    const std::string sql = renderTsv(evalFlatSql(bgpToFlatSql(bgp), table));
    if (wide != sql) ++mismatches;
  };
  for (const auto& rc : g_cases) {
    WideColumnDb db;
    db.ingest(rc.data);
    compare(rc.bgp, db, loadTripleTable(rc.data));
  }
  for (Shape shape : {Shape::University, Shape::Pc3}) {
    const auto data = generate({shape, 1, 0});
    WideColumnDb db;
    db.ingest(data);
    const TripleTable table = loadTripleTable(data);
    for (const auto& nq : queryCatalog(shape)) compare(nq.bgp, db, table);
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " TSV mismatches");
  c.detail << compared << " queries compared";
}

void permutationInvariance(Check& c) {
  testing::Rng rng(4242);
  std::size_t bgps = 0, perms = 0, mismatches = 0;
  while (bgps < 50) {
    auto data = testing::randomDataset(rng, 300);
    Bgp bgp = testing::randomBgp(rng, data, 2, 6);
    WideColumnDb db;
    db.ingest(data);
    std::optional<testing::BindingBag> reference;
    try {
      reference = testing::toBindingBag(matchBgpDb(bgp, db, MatchOptions{200000}));
    } catch (const ResourceLimitError&) {
      continue;  // too large to compare cheaply; draw another
    }
    ++bgps;
    std::vector<std::size_t> idx(bgp.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::size_t k = 0;
    do {
      std::vector<TriplePattern> ps;
      for (auto i : idx) ps.push_back(bgp[i]);
      if (testing::toBindingBag(matchBgpDb(Bgp(ps), db)) != *reference) ++mismatches;
      ++perms;
    } while (++k < 24 && std::next_permutation(idx.begin(), idx.end()));
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " permutations disagree");
  c.detail << bgps << " BGPs, " << perms << " orders";
}

void structuralCounts(Check& c) {
  testing::Rng rng(777);
  std::size_t violations = 0;
  for (int i = 0; i < 500; ++i) {
    const auto data = testing::randomDataset(rng, 40);
    const Bgp bgp = testing::randomBgp(rng, data, 1, 6);
    const FlatSqlQuery q = bgpToFlatSql(bgp);
    std::size_t constants = 0;
    std::map<std::string, std::size_t> occurrences;
    for (const auto& tp : bgp.patterns())
      for (Position pos : kPositions) {
        const PatternPos& pp = tp.at(pos);
        if (pp.isConstant())
          ++constants;
        else
          ++occurrences[pp.varName()];
      }
    std::size_t expectedWhere = constants;
    for (const auto& [v, n] : occurrences) expectedWhere += n - 1;
    std::size_t projected = 0;
    for (const auto& item : q.select) projected += std::holds_alternative<ColumnRef>(item.expr);
    const bool ok = q.from.size() == bgp.size() && q.where.size() == expectedWhere &&
                    projected == occurrences.size() && q.select.size() == std::max<std::size_t>(projected, 1);
    violations += !ok;
  }
  c.expect(violations == 0, std::to_string(violations) + " violations");
  c.detail << "500 BGPs";
}

double medianQueryMs(const Bgp& bgp, const WideColumnDb& db, int inner) {
  std::vector<double> samples;
  for (int s = 0; s < 9; ++s) {
    const auto t0 = Clock::now();
    std::size_t sink = 0;
    for (int k = 0; k < inner; ++k) sink += matchBgpDb(bgp, db).size();
    samples.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count() / inner);
    if (sink == 0) return -1;
  }
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

void scalabilitySmoke(Check& c) {
  const auto catalog = queryCatalog(Shape::Pc3);
  std::vector<double> q1Ms;
  for (std::size_t scale : {1, 10, 100}) {
    const auto data = generate({Shape::Pc3, scale, 1});
    WideColumnDb db;
    db.ingest(data);
    const TripleTable table = loadTripleTable(data);
    for (const auto& nq : catalog) {
      const std::size_t wide = matchBgpDb(nq.bgp, db).size();
      const std::size_t sql = evalFlatSql(bgpToFlatSql(nq.bgp), table).rows.size();
      c.expect(wide > 0 && wide == sql, nq.name + " at scale " + std::to_string(scale) + " failed; ");
    }
    q1Ms.push_back(medianQueryMs(catalog[0].bgp, db, 200));
  }
  for (std::size_t i = 1; i < q1Ms.size(); ++i)
    c.expect(q1Ms[i] > 0 && q1Ms[i] < 10.0 * q1Ms[i - 1], "bound-subject query grew 10x or more; ");
  char buf[160];
  std::snprintf(buf, sizeof buf, "pc3_q1 ms/query at scale 1/10/100: %.4f / %.4f / %.4f", q1Ms[0], q1Ms[1],
                q1Ms[2]);
  c.detail << buf;
}

struct Criterion {
  int id;
  const char* name;
  double budgetSeconds;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "sample data golden (T_sp/T_op rows, multi-valued cell)", 1, sampleGraphGolden},
      {2, "Q7 flat SQL golden", 1, q7TranslationGolden},
      {3, "Q7 reordering golden", 1, q7Reordering},
      {4, "oracle equivalence on 200 random cases", 300, oracleEquivalence},
      {5, "cross-engine byte-identical TSV", 300, crossEngine},
      {6, "permutation invariance", 120, permutationInvariance},
      {7, "structural SQL counts on 500 BGPs", 30, structuralCounts},
      {8, "pc3 scalability smoke", 600, scalabilitySmoke},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    Check check;
    const auto t0 = Clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = secondsSince(t0);
    check.expect(secs < cr.budgetSeconds, "; over time budget");
    std::printf("%s [%d] %s (%.3f s, budget %.0f s) %s\n", check.ok ? "PASS" : "FAIL", cr.id, cr.name, secs,
                cr.budgetSeconds, check.detail.str().c_str());
    failures += !check.ok;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
