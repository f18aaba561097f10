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
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "tripled/errors.hpp"
#include "tripled/io.hpp"
#include "tripled/term.hpp"

namespace tripled {

// Every column qualifier lives in this single family.
inline constexpr std::string_view kColumnFamily = "p";

struct TableStats {
  std::size_t rows = 0;
  std::size_t columns = 0;  // distinct qualifiers with at least one value
  std::size_t values = 0;

  friend bool operator==(const TableStats&, const TableStats&) = default;
};

/// A sparse sorted map: row key -> column qualifier -> set of values.
/// Keys, qualifiers and values are canonical term serializations. Rows and
/// cells never exist empty.
class WideColumnTable {
 public:
  using CellValues = std::set<std::string>;
  using Row = std::map<std::string, CellValues>;
  using Rows = std::map<std::string, Row>;

  explicit WideColumnTable(std::string name) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }
  const Rows& rows() const noexcept { return rows_; }

  const Row* row(const std::string& key) const {
    auto it = rows_.find(key);
    return it == rows_.end() ? nullptr : &it->second;
  }

  // Returns true if the value was not present.
  bool insert(const std::string& key, const std::string& qualifier, const std::string& value) {
    return rows_[key][qualifier].insert(value).second;
  }

  bool erase(const std::string& key, const std::string& qualifier, const std::string& value) {
    auto rit = rows_.find(key);
    if (rit == rows_.end()) return false;
    auto cit = rit->second.find(qualifier);
    if (cit == rit->second.end()) return false;
    const bool erased = cit->second.erase(value) > 0;
    if (cit->second.empty()) rit->second.erase(cit);
    if (rit->second.empty()) rows_.erase(rit);
    return erased;
  }

  TableStats stats() const {
    TableStats st;
    std::set<std::string_view> qualifiers;
    st.rows = rows_.size();
    for (const auto& [key, row] : rows_) {
      for (const auto& [qual, cell] : row) {
        qualifiers.insert(qual);
        st.values += cell.size();
      }
    }
    st.columns = qualifiers.size();
    return st;
  }

  std::size_t valueCount() const {
    std::size_t n = 0;
    for (const auto& [key, row] : rows_)
      for (const auto& [qual, cell] : row) n += cell.size();
    return n;
  }

  // `rowKey TAB qualifier TAB value` lines in (key, qualifier, value) order.
  std::string dump() const {
    std::string out;
    for (const auto& [key, row] : rows_)
      for (const auto& [qual, cell] : row)
        for (const auto& v : cell) {
          out += key;
          out += '\t';
          out += qual;
          out += '\t';
          out += v;
          out += '\n';
        }
    return out;
  }

  void clear() { rows_.clear(); }

 private:
  std::string name_;
  Rows rows_;
};

struct IngestOptions {
  std::size_t batchSize = 1000;
  // Persist after every batch; an I/O failure rolls back only that batch.
  bool flushEachBatch = false;
};

struct IngestReport {
  std::size_t seen = 0;      // triples in the input, duplicates included
  std::size_t distinct = 0;  // distinct triples in the input
  std::size_t added = 0;     // triples not previously stored
  std::size_t batches = 0;
};

struct DbStats {
  TableStats tsp;
  TableStats top;
};

/// The two-table database: T_sp keyed by subject, T_op keyed by object, both
/// with predicates as column qualifiers. Every triple is stored in both.
///
/// Reads are safe from concurrent threads; ingest needs exclusive access.
class WideColumnDb {
 public:
  static constexpr std::string_view kFormatTag = "tripled-widecolumn 1";

  WideColumnDb() = default;

  WideColumnDb(const WideColumnDb& other)
      : tsp_(other.tsp_), top_(other.top_), dir_(other.dir_), reads_(other.reads()) {}
  WideColumnDb& operator=(const WideColumnDb& other) {
    tsp_ = other.tsp_;
    top_ = other.top_;
    dir_ = other.dir_;
    reads_.store(other.reads());
    return *this;
  }
  WideColumnDb(WideColumnDb&& other) noexcept
      : tsp_(std::move(other.tsp_)), top_(std::move(other.top_)), dir_(std::move(other.dir_)),
        reads_(other.reads()) {}
  WideColumnDb& operator=(WideColumnDb&& other) noexcept {
    tsp_ = std::move(other.tsp_);
    top_ = std::move(other.top_);
    dir_ = std::move(other.dir_);
    reads_.store(other.reads());
    return *this;
  }

  /// Opens (creating if needed) the database directory and loads both tables.
  static WideColumnDb open(const std::filesystem::path& dir) {
    io::ensureDirectory(dir);
    WideColumnDb db;
    db.dir_ = dir;
    const auto meta = dir / "meta";
    const bool haveMeta = std::filesystem::exists(meta);
    const bool haveTables =
        std::filesystem::exists(dir / "tsp.tbl") || std::filesystem::exists(dir / "top.tbl");
    if (!haveMeta) {
      if (haveTables) throw LoadError(dir.string() + ": table files present but meta is missing");
      return db;
    }
    const auto counts = readMeta(meta);
    loadTable(db.tsp_, dir / "tsp.tbl", counts.first, true);
    loadTable(db.top_, dir / "top.tbl", counts.second, false);
    db.checkDuality();
    return db;
  }

  bool persistent() const noexcept { return dir_.has_value(); }
  const std::optional<std::filesystem::path>& directory() const noexcept { return dir_; }

  /// Writes both tables and the meta file. No-op for an in-memory database.
  void flush() const {
    if (!dir_) return;
    const auto tspPath = *dir_ / "tsp.tbl";
    const auto topPath = *dir_ / "top.tbl";
    const auto metaPath = *dir_ / "meta";
    io::writeStaged(tspPath, tsp_.dump());
    io::writeStaged(topPath, top_.dump());
    io::writeStaged(metaPath, std::string(kFormatTag) + "\ntsp " + std::to_string(tsp_.valueCount()) +
                                  "\ntop " + std::to_string(top_.valueCount()) + "\n");
    io::commitStaged(tspPath);
    io::commitStaged(topPath);
    io::commitStaged(metaPath);
  }

  /// Flushes and detaches from the directory.
  void close() {
    flush();
    dir_.reset();
  }

  const WideColumnTable& tsp() const noexcept { return tsp_; }
  const WideColumnTable& top() const noexcept { return top_; }

  DbStats stats() const { return {tsp_.stats(), top_.stats()}; }

  std::size_t size() const { return tsp_.valueCount(); }

  // Store reads (row fetches and scans) served so far.
  std::uint64_t reads() const noexcept { return reads_.load(std::memory_order_relaxed); }

  IngestReport ingest(std::span<const Triple> triples, IngestOptions opts = {}) {
    if (opts.batchSize == 0) throw Error("batch size must be positive");
    IngestReport report;
    report.seen = triples.size();
    std::set<std::tuple<std::string, std::string, std::string>> distinct;
    std::vector<std::tuple<std::string, std::string, std::string>> added;
    for (std::size_t begin = 0; begin < triples.size(); begin += opts.batchSize) {
      const std::size_t end = std::min(triples.size(), begin + opts.batchSize);
      added.clear();
      for (std::size_t i = begin; i < end; ++i)
        if (!triples[i].s.isIri() || !triples[i].p.isIri())
          throw Error("triple " + std::to_string(i) + ": subject and predicate must be IRIs");
      for (std::size_t i = begin; i < end; ++i) {
        const Triple& t = triples[i];
        auto key = std::make_tuple(serializeTerm(t.s), serializeTerm(t.p), serializeTerm(t.o));
        const auto& [s, p, o] = key;
        if (tsp_.insert(s, p, o)) {
          top_.insert(o, p, s);
          added.push_back(key);
        }
        distinct.insert(std::move(key));
      }
      if (opts.flushEachBatch && dir_) {
        try {
          flush();
        } catch (const IoError& e) {
          for (const auto& [s, p, o] : added) {
            tsp_.erase(s, p, o);
            top_.erase(o, p, s);
          }
          throw IoError("batch " + std::to_string(report.batches) + " aborted: " + e.what());
        }
      }
      report.added += added.size();
      ++report.batches;
    }
    report.distinct = distinct.size();
    return report;
  }

  IngestReport ingest(std::span<const Triple> triples, std::size_t batchSize) {
    return ingest(triples, IngestOptions{batchSize, false});
  }

  /// Triples in row `s` of T_sp, restricted to column `p` when given.
  std::vector<Triple> getBySubject(const Term& s, const std::optional<Term>& p = std::nullopt) const {
    countRead();
    std::vector<Triple> out;
    const auto* row = tsp_.row(serializeTerm(s));
    if (!row) return out;
    forEachCell(*row, p, [&](const Term& pred, const std::string& value) {
      out.push_back(Triple{s, pred, parseTerm(value)});
    });
    return out;
  }

  /// Triples in row `o` of T_op, restricted to column `p` when given.
  std::vector<Triple> getByObject(const Term& o, const std::optional<Term>& p = std::nullopt) const {
    countRead();
    std::vector<Triple> out;
    const auto* row = top_.row(serializeTerm(o));
    if (!row) return out;
    forEachCell(*row, p, [&](const Term& pred, const std::string& value) {
      out.push_back(Triple{parseTerm(value), pred, o});
    });
    return out;
  }

  /// Full scan of T_sp, restricted to column `p` when given.
  std::vector<Triple> scanAll(const std::optional<Term>& p = std::nullopt) const {
    countRead();
    std::vector<Triple> out;
    const std::string qual = p ? serializeTerm(*p) : std::string();
    for (const auto& [key, row] : tsp_.rows()) {
      std::optional<Term> subject;
      if (p) {
        auto cit = row.find(qual);
        if (cit == row.end()) continue;
        subject = parseTerm(key);
        for (const auto& v : cit->second) out.push_back(Triple{*subject, *p, parseTerm(v)});
        continue;
      }
      subject = parseTerm(key);
      for (const auto& [q, cell] : row) {
        Term pred = parseTerm(q);
        for (const auto& v : cell) out.push_back(Triple{*subject, pred, parseTerm(v)});
      }
    }
    return out;
  }

  bool contains(const Triple& t) const {
    const auto* row = tsp_.row(serializeTerm(t.s));
    if (!row) return false;
    auto cit = row->find(serializeTerm(t.p));
    return cit != row->end() && cit->second.count(serializeTerm(t.o)) > 0;
  }

 private:
  template <typename F>
  static void forEachCell(const WideColumnTable::Row& row, const std::optional<Term>& p, F&& f) {
    if (p) {
      auto cit = row.find(serializeTerm(*p));
      if (cit == row.end()) return;
      for (const auto& v : cit->second) f(*p, v);
      return;
    }
    for (const auto& [q, cell] : row) {
      Term pred = parseTerm(q);
      for (const auto& v : cell) f(pred, v);
    }
  }

  void countRead() const noexcept { reads_.fetch_add(1, std::memory_order_relaxed); }

  static std::pair<std::size_t, std::size_t> readMeta(const std::filesystem::path& path) {
    const std::string text = io::readFile(path);
    std::istringstream in(text);
    std::string tag;
    std::getline(in, tag);
    if (tag != kFormatTag) throw LoadError(path.string() + ": unsupported format '" + tag + "'");
    std::string name1, name2;
    std::size_t n1 = 0, n2 = 0;
    if (!(in >> name1 >> n1 >> name2 >> n2) || name1 != "tsp" || name2 != "top")
      throw LoadError(path.string() + ": malformed record counts");
    return {n1, n2};
  }

  static void loadTable(WideColumnTable& table, const std::filesystem::path& path,
                        std::size_t expected, bool subjectKeyed) {
    if (!std::filesystem::exists(path)) {
      if (expected == 0) return;
      throw LoadError("table " + table.name() + ": file " + path.string() + " is missing");
    }
    const std::string text = io::readFile(path);
    std::size_t offset = 0;
    std::size_t record = 0;
    std::tuple<std::string_view, std::string_view, std::string_view> prev;
    auto fail = [&](const std::string& why) {
      throw LoadError("table " + table.name() + ": record " + std::to_string(record) +
                      " at byte offset " + std::to_string(offset) + ": " + why);
    };
    while (offset < text.size()) {
      const std::size_t nl = text.find('\n', offset);
      if (nl == std::string::npos) fail("truncated record (no line terminator)");
      std::string_view line(text.data() + offset, nl - offset);
      const std::size_t t1 = line.find('\t');
      const std::size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
      if (t2 == std::string_view::npos || line.find('\t', t2 + 1) != std::string_view::npos)
        fail("expected 3 tab-separated fields");
      std::string_view key = line.substr(0, t1);
      std::string_view qual = line.substr(t1 + 1, t2 - t1 - 1);
      std::string_view value = line.substr(t2 + 1);
      Term keyTerm, qualTerm, valueTerm;
      try {
        keyTerm = parseTerm(key);
        qualTerm = parseTerm(qual);
        valueTerm = parseTerm(value);
      } catch (const ParseError& e) {
        fail(e.what());
      }
      if (!qualTerm.isIri()) fail("qualifier is not an IRI");
      if (subjectKeyed ? !keyTerm.isIri() : !valueTerm.isIri()) fail("subject is not an IRI");
      auto cur = std::make_tuple(key, qual, value);
      if (record > 0 && !(prev < cur)) fail("records out of order or duplicated");
      table.insert(std::string(key), std::string(qual), std::string(value));
      prev = cur;
      ++record;
      offset = nl + 1;
    }
    if (record != expected)
      throw LoadError("table " + table.name() + ": expected " + std::to_string(expected) +
                      " records, found " + std::to_string(record) + " (file truncated?)");
  }

  void checkDuality() const {
    std::vector<std::tuple<std::string_view, std::string_view, std::string_view>> a, b;
    for (const auto& [key, row] : tsp_.rows())
      for (const auto& [q, cell] : row)
        for (const auto& v : cell) a.emplace_back(key, q, v);
    for (const auto& [key, row] : top_.rows())
      for (const auto& [q, cell] : row)
        for (const auto& v : cell) b.emplace_back(v, q, key);
    std::sort(b.begin(), b.end());
    if (a != b) throw LoadError("tables tsp and top do not describe the same triples");
  }

  WideColumnTable tsp_{"tsp"};
  WideColumnTable top_{"top"};
  std::optional<std::filesystem::path> dir_;
  mutable std::atomic<std::uint64_t> reads_{0};
};

}  // namespace tripled
