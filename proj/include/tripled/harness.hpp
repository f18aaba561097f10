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
#include <chrono>
#include <cstdio>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tripled/errors.hpp"
#include "tripled/matcher.hpp"
#include "tripled/parse.hpp"
#include "tripled/sqlgen.hpp"
#include "tripled/store.hpp"

namespace tripled {

enum class Shape { Pc3, University };

inline Shape parseShape(std::string_view s) {
  if (s == "pc3") return Shape::Pc3;
  if (s == "university") return Shape::University;
  throw Error("unknown shape '" + std::string(s) + "' (expected pc3 or university)");
}

inline const char* shapeName(Shape s) { return s == Shape::Pc3 ? "pc3" : "university"; }

struct GenSpec {
  Shape shape = Shape::University;
  std::size_t scale = 1;  // workflow runs (pc3) or universities
  std::uint64_t seed = 0;
};

namespace detail {

// mt19937_64 output is fixed by the standard; distributions are not, so
// reduce by hand to keep output identical across standard libraries.
class GenRng {
 public:
  explicit GenRng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool chance(std::size_t percent) { return below(100) < percent; }

 private:
  std::mt19937_64 engine_;
};

class TripleSink {
 public:
  explicit TripleSink(std::vector<Triple>& out) : out_(out) {}

  void add(const std::string& s, const std::string& p, const std::string& o) {
    out_.push_back(Triple{iri(s), iri(p), iri(o)});
  }
  void lit(const std::string& s, const std::string& p, std::string value,
           std::optional<std::string> datatype = std::nullopt) {
    out_.push_back(Triple{iri(s), iri(p), Term::literal(std::move(value), std::move(datatype))});
  }

 private:
  static Term iri(const std::string& s) { return Term::iri(s); }
  std::vector<Triple>& out_;
};

inline constexpr const char* kXsdInteger = "http://www.w3.org/2001/XMLSchema#integer";

inline std::string pc3Run(std::size_t r) { return "http://pc3.example.org/run" + std::to_string(r); }
inline std::string pc3Process(std::size_t r, std::size_t i) {
  return pc3Run(r) + "/process/" + std::to_string(i);
}
inline std::string pc3Artifact(std::size_t r, std::size_t i) {
  return pc3Run(r) + "/artifact/" + std::to_string(i);
}

inline constexpr std::size_t kPc3Steps = 66;

// Chained provenance records: each step's process uses the previous step's
// artifact and is triggered by the previous process.
inline void generatePc3(const GenSpec& spec, std::vector<Triple>& out) {
  static const char* const kStepNames[] = {
      "IsCSVReadyFileExists", "ReadCSVReadyFile",   "IsMatchCSVFileTables", "CreateEmptyLoadDB",
      "LoadCSVFileIntoTable", "UpdateComputedColumns", "IsMatchTableRowCount", "IsMatchTableColumnRanges",
      "CompactDatabase",      "DetectDuplicates",   "ValidateChecksums"};
  GenRng rng(spec.seed);
  TripleSink sink(out);
  for (std::size_t r = 0; r < spec.scale; ++r) {
    const std::string run = pc3Run(r);
    sink.add(run, "type", "WorkflowRun");
    sink.lit(run, "label", "Load workflow run " + std::to_string(r));
    sink.lit(run, "startTime", std::to_string(1262304000 + r * 3600 + rng.below(600)), kXsdInteger);
    for (std::size_t i = 0; i < kPc3Steps; ++i) {
      const std::string proc = pc3Process(r, i);
      const std::string art = pc3Artifact(r, i);
      const char* stepName = kStepNames[i % std::size(kStepNames)];
      sink.add(proc, "type", "Process");
      sink.lit(proc, "label", std::string(stepName) + " #" + std::to_string(i));
      sink.add(proc, "partOfRun", run);
      if (i > 0) {
        sink.add(proc, "used", pc3Artifact(r, i - 1));
        sink.add(proc, "wasTriggeredBy", pc3Process(r, i - 1));
      }
      if (rng.chance(50)) sink.lit(proc, "annotation", "retry count " + std::to_string(rng.below(4)));
      sink.add(art, "type", "Artifact");
      sink.add(art, "wasGeneratedBy", proc);
      sink.add(art, "partOfRun", run);
      sink.lit(art, "hasValue", "value-" + std::to_string(rng.below(1000000)));
      sink.lit(art, "byteSize", std::to_string(1024 + rng.below(1 << 20)), kXsdInteger);
    }
  }
}

inline std::string universityIri(std::size_t u) { return "http://www.University" + std::to_string(u) + ".edu"; }
inline std::string departmentIri(std::size_t u, std::size_t d) {
  return "http://www.Department" + std::to_string(d) + ".University" + std::to_string(u) + ".edu";
}
inline std::string memberIri(std::size_t u, std::size_t d, const char* kind, std::size_t i) {
  return departmentIri(u, d) + "/" + kind + std::to_string(i);
}

inline constexpr std::size_t kDepartments = 4;
inline constexpr std::size_t kFaculty = 6;
inline constexpr std::size_t kCourses = 10;
inline constexpr std::size_t kGraduateCourses = 5;

// Students, faculty and courses with enrollment, teaching and advising
// edges. Inferred types (every student is also a Student, every graduate
// course also a Course) are materialized.
inline void generateUniversity(const GenSpec& spec, std::vector<Triple>& out) {
  GenRng rng(spec.seed);
  TripleSink sink(out);
  for (std::size_t u = 0; u < spec.scale; ++u) {
    const std::string univ = universityIri(u);
    sink.add(univ, "type", "University");
    sink.lit(univ, "name", "University" + std::to_string(u));
    for (std::size_t d = 0; d < kDepartments; ++d) {
      const std::string dept = departmentIri(u, d);
      sink.add(dept, "type", "Department");
      sink.lit(dept, "name", "Department" + std::to_string(d));
      sink.add(dept, "subOrganizationOf", univ);

      for (std::size_t c = 0; c < kCourses; ++c) {
        const std::string course = memberIri(u, d, "Course", c);
        sink.add(course, "type", "Course");
        sink.lit(course, "name", "Course" + std::to_string(c));
      }
      for (std::size_t c = 0; c < kGraduateCourses; ++c) {
        const std::string course = memberIri(u, d, "GraduateCourse", c);
        sink.add(course, "type", "GraduateCourse");
        sink.add(course, "type", "Course");
        sink.lit(course, "name", "GraduateCourse" + std::to_string(c));
      }
      for (std::size_t f = 0; f < kFaculty; ++f) {
        const std::string prof = memberIri(u, d, "Professor", f);
        sink.add(prof, "type", "Faculty");
        sink.lit(prof, "name", "Professor" + std::to_string(f));
        sink.lit(prof, "emailAddress", "Professor" + std::to_string(f) + "@Department" + std::to_string(d) +
                                           ".University" + std::to_string(u) + ".edu");
        sink.lit(prof, "telephone", "555-" + std::to_string(1000 + rng.below(9000)));
        sink.add(prof, "worksFor", dept);
        sink.add(prof, "undergraduateDegreeFrom", universityIri(rng.below(spec.scale)));
        sink.add(prof, "doctoralDegreeFrom", universityIri(rng.below(spec.scale)));
        for (std::size_t c = f; c < kCourses; c += kFaculty) sink.add(prof, "teacherOf", memberIri(u, d, "Course", c));
        for (std::size_t c = f; c < kGraduateCourses; c += kFaculty)
          sink.add(prof, "teacherOf", memberIri(u, d, "GraduateCourse", c));
      }

      const std::size_t undergrads = 40 + rng.below(10);
      for (std::size_t s = 0; s < undergrads; ++s) {
        const std::string stu = memberIri(u, d, "UndergraduateStudent", s);
        sink.add(stu, "type", "UndergraduateStudent");
        sink.add(stu, "type", "Student");
        sink.lit(stu, "name", "UndergraduateStudent" + std::to_string(s));
        sink.lit(stu, "emailAddress", "UndergraduateStudent" + std::to_string(s) + "@Department" +
                                          std::to_string(d) + ".University" + std::to_string(u) + ".edu");
        sink.add(stu, "memberOf", dept);
        const std::size_t first = rng.below(kCourses);
        const std::size_t count = 2 + rng.below(3);
        for (std::size_t k = 0; k < count; ++k)
          sink.add(stu, "takesCourse", memberIri(u, d, "Course", (first + k * 3) % kCourses));
        if (rng.chance(20)) sink.add(stu, "advisor", memberIri(u, d, "Professor", rng.below(kFaculty)));
      }

      const std::size_t grads = 12 + rng.below(4);
      for (std::size_t s = 0; s < grads; ++s) {
        const std::string stu = memberIri(u, d, "GraduateStudent", s);
        sink.add(stu, "type", "GraduateStudent");
        sink.add(stu, "type", "Student");
        sink.lit(stu, "name", "GraduateStudent" + std::to_string(s));
        sink.lit(stu, "emailAddress", "GraduateStudent" + std::to_string(s) + "@Department" +
                                          std::to_string(d) + ".University" + std::to_string(u) + ".edu");
        sink.add(stu, "memberOf", dept);
        sink.add(stu, "undergraduateDegreeFrom", universityIri(rng.below(spec.scale)));
        sink.add(stu, "advisor", memberIri(u, d, "Professor", rng.below(kFaculty)));
        const std::size_t first = rng.below(kGraduateCourses);
        const std::size_t count = 1 + rng.below(3);
        for (std::size_t k = 0; k < count; ++k)
          sink.add(stu, "takesCourse", memberIri(u, d, "GraduateCourse", (first + k) % kGraduateCourses));
      }
    }
  }
}

}  // namespace detail

/// Synthetic dataset. A pure function of `spec`.
inline std::vector<Triple> generate(const GenSpec& spec) {
  if (spec.scale == 0) throw Error("scale must be at least 1");
  std::vector<Triple> out;
  if (spec.shape == Shape::Pc3)
    detail::generatePc3(spec, out);
  else
    detail::generateUniversity(spec, out);
  return out;
}

inline std::string formatTriples(std::span<const Triple> triples) {
  std::string out;
  for (const auto& t : triples) {
    out += serializeTerm(t.s);
    out += ' ';
    out += serializeTerm(t.p);
    out += ' ';
    out += serializeTerm(t.o);
    out += " .\n";
  }
  return out;
}

struct NamedQuery {
  std::string name;
  Bgp bgp;
  bool extension = false;  // not modelled on a published benchmark query
};

/// Benchmark queries for a dataset shape.
inline std::vector<NamedQuery> queryCatalog(Shape shape) {
  auto q = [](std::string name, std::string_view text, bool ext = false) {
    return NamedQuery{std::move(name), parseBgpQuery(text), ext};
  };
  if (shape == Shape::Pc3) {
    const std::string p10 = "<" + detail::pc3Process(0, 10) + ">";
    const std::string a20 = "<" + detail::pc3Artifact(0, 20) + ">";
    return {
        q("pc3_q1_process_record", p10 + " ?p ?o ."),
        q("pc3_q2_input_producer", p10 + " <used> ?a . ?a <wasGeneratedBy> ?p . ?p <label> ?l ."),
        q("pc3_q3_two_hop_lineage", a20 + " <wasGeneratedBy> ?p1 .\n"
                                          "?p1 <used> ?a1 .\n"
                                          "?a1 <wasGeneratedBy> ?p2 .\n"
                                          "?p2 <used> ?a2 .\n"
                                          "?a2 <hasValue> ?v .\n"
                                          "?p2 <label> ?l ."),
    };
  }
  const std::string dept0 = "<" + detail::departmentIri(0, 0) + ">";
  const std::string prof0 = "<" + detail::memberIri(0, 0, "Professor", 0) + ">";
  const std::string gcourse0 = "<" + detail::memberIri(0, 0, "GraduateCourse", 0) + ">";
  return {
      q("lubm_q14_undergraduates", "?X <type> <UndergraduateStudent> ."),
      q("lubm_q6_students", "?X <type> <Student> ."),
      q("lubm_q1_graduate_course", "?X <type> <GraduateStudent> .\n?X <takesCourse> " + gcourse0 + " ."),
      q("ext_advised_in_department",
        "?X <advisor> ?Y .\n?Y <worksFor> " + dept0 + " .\n?X <type> <GraduateStudent> .", true),
      q("lubm_q7_students_of_professor", "?X <type> <Student> .\n"
                                         "?Y <type> <Course> .\n" +
                                             prof0 + " <teacherOf> ?Y .\n"
                                                     "?X <takesCourse> ?Y ."),
      q("lubm_q4_faculty_contacts", "?X <type> <Faculty> .\n"
                                    "?X <worksFor> " + dept0 + " .\n"
                                    "?X <name> ?N .\n"
                                    "?X <emailAddress> ?E .\n"
                                    "?X <telephone> ?T ."),
      q("lubm_q2_degree_triangle", "?X <type> <GraduateStudent> .\n"
                                   "?Y <type> <University> .\n"
                                   "?Z <type> <Department> .\n"
                                   "?X <memberOf> ?Z .\n"
                                   "?Z <subOrganizationOf> ?Y .\n"
                                   "?X <undergraduateDegreeFrom> ?Y ."),
  };
}

// ---------------------------------------------------------------------------
// Benchmark runner
// ---------------------------------------------------------------------------

struct EngineRun {
  std::size_t count = 0;
  std::optional<std::size_t> peak;
};

/// A query engine bound to its data.
struct Engine {
  std::string name;
  std::function<EngineRun(const Bgp&)> run;
};

inline Engine wideColumnEngine(const WideColumnDb& db, MatchOptions opts = {}) {
  return Engine{"widecolumn", [&db, opts](const Bgp& bgp) {
                  SolutionBag bag = matchBgpDb(bgp, db, opts);
                  return EngineRun{bag.size(), bag.peakSize};
                }};
}

inline Engine sqlEngine(const TripleTable& table) {
  return Engine{"sql", [&table](const Bgp& bgp) {
                  return EngineRun{evalFlatSql(bgpToFlatSql(bgp), table).rows.size(), std::nullopt};
                }};
}

struct BenchEntry {
  std::string engine;
  std::string query;
  double medianMs = 0;
  std::size_t resultCount = 0;
  std::optional<std::size_t> peak;
};

struct BenchReport {
  std::vector<BenchEntry> entries;

  std::string tsv() const {
    std::string out = "engine\tquery\tmedian_ms\tresults\tpeak_intermediate\n";
    for (const auto& e : entries) {
      char ms[32];
      std::snprintf(ms, sizeof ms, "%.3f", e.medianMs);
      out += e.engine + '\t' + e.query + '\t' + ms + '\t' + std::to_string(e.resultCount) + '\t' +
             (e.peak ? std::to_string(*e.peak) : std::string("-")) + '\n';
    }
    return out;
  }

  // Aligned columns in execution order.
  std::string table() const {
    std::vector<std::vector<std::string>> rows = {{"engine", "query", "median_ms", "results", "peak"}};
    for (const auto& e : entries) {
      char ms[32];
      std::snprintf(ms, sizeof ms, "%.3f", e.medianMs);
      rows.push_back({e.engine, e.query, ms, std::to_string(e.resultCount),
                      e.peak ? std::to_string(*e.peak) : std::string("-")});
    }
    std::vector<std::size_t> width(5, 0);
    for (const auto& r : rows)
      for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    std::string out;
    for (const auto& r : rows) {
      for (std::size_t c = 0; c < r.size(); ++c) {
        out += r[c];
        if (c + 1 < r.size()) out += std::string(width[c] - r[c].size() + 2, ' ');
      }
      out += '\n';
    }
    return out;
  }
};

struct BenchOptions {
  std::size_t repeats = 3;
};

/// Runs every query on every engine. A warm-up run per engine checks that all
/// engines agree on the result count before anything is timed; the reported
/// time is the median of `repeats` timed runs.
inline BenchReport runBench(std::span<const NamedQuery> catalog, std::span<const Engine> engines,
                            BenchOptions opts = {}) {
  if (catalog.empty()) throw Error("no queries");
  if (engines.empty()) throw Error("no engines");
  if (opts.repeats == 0) opts.repeats = 1;
  BenchReport report;
  for (const auto& nq : catalog) {
    std::vector<EngineRun> warm;
    for (const auto& e : engines) warm.push_back(e.run(nq.bgp));
    for (std::size_t i = 1; i < engines.size(); ++i) {
      if (warm[i].count != warm[0].count)
        throw CorrectnessError("query " + nq.name + ": " + engines[0].name + " returned " +
                               std::to_string(warm[0].count) + " rows but " + engines[i].name +
                               " returned " + std::to_string(warm[i].count));
    }
    for (std::size_t i = 0; i < engines.size(); ++i) {
      std::vector<double> times;
      for (std::size_t k = 0; k < opts.repeats; ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        const EngineRun r = engines[i].run(nq.bgp);
        const auto t1 = std::chrono::steady_clock::now();
        if (r.count != warm[0].count)
          throw CorrectnessError("query " + nq.name + ": " + engines[i].name + " is not deterministic");
        times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
      }
      std::sort(times.begin(), times.end());
      report.entries.push_back({engines[i].name, nq.name, times[times.size() / 2], warm[i].count, warm[i].peak});
    }
  }
  return report;
}

}  // namespace tripled
