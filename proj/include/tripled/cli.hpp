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
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tripled/errors.hpp"
#include "tripled/harness.hpp"
#include "tripled/io.hpp"
#include "tripled/matcher.hpp"
#include "tripled/parse.hpp"
#include "tripled/results.hpp"
#include "tripled/sqlgen.hpp"
#include "tripled/store.hpp"

namespace tripled::cli {

namespace fs = std::filesystem;

enum ExitCode : int {
  kOk = 0,
  kUsageOrParse = 1,
  kIo = 2,
  kResourceLimit = 3,
  kCorrectness = 4,
};

inline constexpr const char* kCapEnvVar = "TRIPLED_CAP";
inline constexpr const char* kTripleTableFile = "triples.tbl";

struct CliConfig {
  fs::path dbPath;
  std::string engine;
  fs::path inputPath;
  fs::path queryPath;
  fs::path outputPath;
  std::string format = "tsv";
  std::optional<std::size_t> cap;
  std::size_t batchSize = 1000;
  std::string shape = "university";
  std::size_t scale = 1;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::size_t effectiveCap(const CliConfig& cfg) {
  if (cfg.cap) return *cfg.cap;
  if (const char* env = std::getenv(kCapEnvVar); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0) throw Error(std::string(kCapEnvVar) + " must be a positive integer");
    return static_cast<std::size_t>(v);
  }
  return kDefaultIntermediateCap;
}

inline void requireFile(const fs::path& p, const char* what) {
  if (p.empty()) throw Error(std::string("missing ") + what);
  if (!fs::exists(p)) throw IoError(std::string(what) + " " + p.string() + " does not exist");
}

inline void requireDbDir(const fs::path& p) {
  if (p.empty()) throw Error("missing --db");
  if (!fs::is_directory(p)) throw IoError("database directory " + p.string() + " does not exist");
}

inline void emit(const CliConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.outputPath.empty())
    out << text;
  else
    io::writeFileAtomic(cfg.outputPath, text);
}

inline std::string renderResult(const CliConfig& cfg, ResultSet rs) {
  return cfg.format == "table" ? renderTable(std::move(rs)) : renderTsv(std::move(rs));
}

}  // namespace detail

/// Loads a triple file into both engine images under the database directory.
inline int cmdLoad(const CliConfig& cfg, std::ostream&, std::ostream& err) {
  detail::requireFile(cfg.inputPath, "input file");
  if (cfg.dbPath.empty()) throw Error("missing --db");
  const auto triples = parseTriples(io::readFile(cfg.inputPath));
  WideColumnDb db = WideColumnDb::open(cfg.dbPath);
  const IngestReport report = db.ingest(triples, IngestOptions{cfg.batchSize, false});
  TripleTable table = TripleTable::load(cfg.dbPath / kTripleTableFile);
  table.insert(triples);
  db.close();
  table.save(cfg.dbPath / kTripleTableFile);
  err << report.seen << " seen, " << report.distinct << " distinct, " << report.added << " new\n";
  return kOk;
}

inline ResultSet runQuery(const CliConfig& cfg, const Bgp& bgp) {
  if (cfg.engine == "widecolumn") {
    const WideColumnDb db = WideColumnDb::open(cfg.dbPath);
    return toResultSet(matchBgpDb(bgp, db, MatchOptions{detail::effectiveCap(cfg)}));
  }
  if (cfg.engine == "sql") {
    const TripleTable table = TripleTable::load(cfg.dbPath / kTripleTableFile);
    return evalFlatSql(bgpToFlatSql(bgp), table);
  }
  throw Error("--engine must be widecolumn or sql");
}

/// Answers a query on one engine. Rows are sorted so both engines print
/// byte-identical output for the same data.
inline int cmdQuery(const CliConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.engine.empty()) throw Error("query requires --engine widecolumn|sql");
  detail::requireDbDir(cfg.dbPath);
  detail::requireFile(cfg.queryPath, "query file");
  const Bgp bgp = parseBgpQuery(io::readFile(cfg.queryPath));
  detail::emit(cfg, out, detail::renderResult(cfg, runQuery(cfg, bgp)));
  return kOk;
}

inline int cmdTranslate(const CliConfig& cfg, std::ostream& out, std::ostream&) {
  detail::requireFile(cfg.queryPath, "query file");
  const Bgp bgp = parseBgpQuery(io::readFile(cfg.queryPath));
  detail::emit(cfg, out, renderSql(bgpToFlatSql(bgp)) + "\n");
  return kOk;
}

inline int cmdGen(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto triples = generate(GenSpec{parseShape(cfg.shape), cfg.scale, cfg.seed});
  detail::emit(cfg, out, formatTriples(triples));
  err << triples.size() << " triples generated\n";
  return kOk;
}

namespace detail {

inline std::vector<NamedQuery> benchCatalog(const CliConfig& cfg) {
  if (cfg.queryPath.empty()) return queryCatalog(parseShape(cfg.shape));
  std::vector<NamedQuery> out;
  if (fs::is_directory(cfg.queryPath)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(cfg.queryPath))
      if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) out.push_back({f.stem().string(), parseBgpQuery(io::readFile(f))});
    return out;
  }
  requireFile(cfg.queryPath, "query file");
  out.push_back({cfg.queryPath.stem().string(), parseBgpQuery(io::readFile(cfg.queryPath))});
  return out;
}

}  // namespace detail

/// Times the catalog on both engines (or the one named by --engine).
inline int cmdBench(const CliConfig& cfg, std::ostream& out, std::ostream&) {
  detail::requireDbDir(cfg.dbPath);
  const auto catalog = detail::benchCatalog(cfg);
  if (catalog.empty()) throw Error("no queries");
  const WideColumnDb db = WideColumnDb::open(cfg.dbPath);
  const TripleTable table = TripleTable::load(cfg.dbPath / kTripleTableFile);
  std::vector<Engine> engines;
  if (cfg.engine.empty() || cfg.engine == "widecolumn")
    engines.push_back(wideColumnEngine(db, MatchOptions{detail::effectiveCap(cfg)}));
  if (cfg.engine.empty() || cfg.engine == "sql") engines.push_back(sqlEngine(table));
  if (engines.empty()) throw Error("--engine must be widecolumn or sql");
  const BenchReport report = runBench(catalog, engines);
  if (!cfg.outputPath.empty()) io::writeFileAtomic(cfg.outputPath, report.tsv());
  out << (cfg.format == "table" ? report.table() : report.tsv());
  return kOk;
}

inline int cmdStats(const CliConfig& cfg, std::ostream& out, std::ostream&) {
  detail::requireDbDir(cfg.dbPath);
  const WideColumnDb db = WideColumnDb::open(cfg.dbPath);
  const DbStats st = db.stats();
  out << "table\trows\tcolumns\tvalues\n";
  out << "tsp\t" << st.tsp.rows << '\t' << st.tsp.columns << '\t' << st.tsp.values << '\n';
  out << "top\t" << st.top.rows << '\t' << st.top.columns << '\t' << st.top.values << '\n';
  return kOk;
}

/// Entry point: `tripled load|query|translate|gen|bench|stats [flags]`.
/// Returns the process exit code; results go to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Dual-engine RDF store: wide-column BGP matching and flat-SQL translation", "tripled"};
  app.require_subcommand(1);

  auto addDb = [&](CLI::App* sub) { sub->add_option("--db", cfg.dbPath, "Database directory"); };
  auto addQuery = [&](CLI::App* sub) { sub->add_option("--query", cfg.queryPath, "Query file"); };
  auto addOut = [&](CLI::App* sub) { sub->add_option("--out", cfg.outputPath, "Output file (default stdout)"); };
  auto addFormat = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"tsv", "table"}));
  };
  auto addCap = [&](CLI::App* sub) {
    sub->add_option("--cap", cfg.cap, "Intermediate bag cap (overrides TRIPLED_CAP)")
        ->check(CLI::PositiveNumber);
  };
  auto addEngine = [&](CLI::App* sub) {
    sub->add_option("--engine", cfg.engine, "widecolumn or sql")->check(CLI::IsMember({"widecolumn", "sql"}));
  };
  auto addGen = [&](CLI::App* sub) {
    sub->add_option("--shape", cfg.shape, "pc3 or university")->check(CLI::IsMember({"pc3", "university"}));
    sub->add_option("--scale", cfg.scale, "Workflow runs or universities")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Generator seed");
  };

  auto* load = app.add_subcommand("load", "Load a triple file into the database");
  addDb(load);
  load->add_option("--input", cfg.inputPath, "Triple file");
  load->add_option("--batch", cfg.batchSize, "Ingest batch size")->check(CLI::PositiveNumber);

  auto* query = app.add_subcommand("query", "Answer a basic graph pattern query");
  addDb(query);
  addEngine(query);
  addQuery(query);
  addOut(query);
  addFormat(query);
  addCap(query);

  auto* translate = app.add_subcommand("translate", "Print the flat SQL for a query");
  addQuery(translate);
  addOut(translate);

  auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset");
  addGen(gen);
  addOut(gen);

  auto* bench = app.add_subcommand("bench", "Time a query catalog on both engines");
  addDb(bench);
  addEngine(bench);
  addQuery(bench);
  addOut(bench);
  addFormat(bench);
  addCap(bench);
  bench->add_option("--shape", cfg.shape, "Catalog to run when --query is absent")
      ->check(CLI::IsMember({"pc3", "university"}));

  auto* stats = app.add_subcommand("stats", "Print table statistics");
  addDb(stats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageOrParse;
  }

  try {
    if (load->parsed()) return cmdLoad(cfg, out, err);
    if (query->parsed()) return cmdQuery(cfg, out, err);
    if (translate->parsed()) return cmdTranslate(cfg, out, err);
    if (gen->parsed()) return cmdGen(cfg, out, err);
    if (bench->parsed()) return cmdBench(cfg, out, err);
    if (stats->parsed()) return cmdStats(cfg, out, err);
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << " (raise with --cap or " << kCapEnvVar << ")\n";
    return kResourceLimit;
  } catch (const CorrectnessError& e) {
    err << "error: " << e.what() << '\n';
    return kCorrectness;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const LoadError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrParse;
  }
  return kUsageOrParse;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"tripled"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace tripled::cli
