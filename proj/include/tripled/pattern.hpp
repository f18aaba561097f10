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
#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tripled/term.hpp"

namespace tripled {

struct Variable {
  std::string name;

  friend bool operator==(const Variable&, const Variable&) = default;
  friend auto operator<=>(const Variable&, const Variable&) = default;

  // [A-Za-z_][A-Za-z0-9_]*
  static bool isValidName(std::string_view s) noexcept {
    if (s.empty()) return false;
    auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
    if (!alpha(s.front())) return false;
    for (char c : s)
      if (!alpha(c) && !(c >= '0' && c <= '9')) return false;
    return true;
  }
};

/// One position of a triple pattern: a constant term or a variable.
class PatternPos {
 public:
  PatternPos(Term t) : value_(std::move(t)) {}           // NOLINT(google-explicit-constructor)
  PatternPos(Variable v) : value_(std::move(v)) {}       // NOLINT(google-explicit-constructor)

  static PatternPos var(std::string name) { return PatternPos(Variable{std::move(name)}); }

  bool isVariable() const noexcept { return std::holds_alternative<Variable>(value_); }
  bool isConstant() const noexcept { return !isVariable(); }
  const Term& term() const { return std::get<Term>(value_); }
  const std::string& varName() const { return std::get<Variable>(value_).name; }

  friend bool operator==(const PatternPos&, const PatternPos&) = default;
  friend auto operator<=>(const PatternPos&, const PatternPos&) = default;

 private:
  std::variant<Term, Variable> value_;
};

enum class Position : std::size_t { Subject = 0, Predicate = 1, Object = 2 };

inline constexpr std::array<Position, 3> kPositions = {Position::Subject, Position::Predicate,
                                                       Position::Object};

inline char positionLetter(Position p) noexcept {
  constexpr char letters[] = {'s', 'p', 'o'};
  return letters[static_cast<std::size_t>(p)];
}

struct TriplePattern {
  PatternPos s;
  PatternPos p;
  PatternPos o;

  const PatternPos& at(Position pos) const {
    switch (pos) {
      case Position::Subject: return s;
      case Position::Predicate: return p;
      default: return o;
    }
  }
  PatternPos& at(Position pos) {
    return const_cast<PatternPos&>(static_cast<const TriplePattern&>(*this).at(pos));
  }

  // Distinct variable names in s, p, o order.
  std::vector<std::string> variables() const {
    std::vector<std::string> out;
    for (Position pos : kPositions) {
      const PatternPos& pp = at(pos);
      if (!pp.isVariable()) continue;
      bool seen = false;
      for (const auto& v : out) seen = seen || v == pp.varName();
      if (!seen) out.push_back(pp.varName());
    }
    return out;
  }

  // Constant subject/predicate must be IRIs. Checked on parsed input only.
  void validate() const {
    if (s.isConstant() && !s.term().isIri()) throw ParseError(0, "subject must be IRI or variable");
    if (p.isConstant() && !p.term().isIri()) throw ParseError(0, "predicate must be IRI or variable");
  }

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
  friend auto operator<=>(const TriplePattern&, const TriplePattern&) = default;
};

inline const Term& termAt(const Triple& t, Position pos) {
  switch (pos) {
    case Position::Subject: return t.s;
    case Position::Predicate: return t.p;
    default: return t.o;
  }
}

/// Basic graph pattern: an ordered, nonempty list of triple patterns.
class Bgp {
 public:
  explicit Bgp(std::vector<TriplePattern> patterns) : patterns_(std::move(patterns)) {
    if (patterns_.empty()) throw ParseError(0, "basic graph pattern needs at least one triple pattern");
  }

  const std::vector<TriplePattern>& patterns() const noexcept { return patterns_; }
  std::size_t size() const noexcept { return patterns_.size(); }
  const TriplePattern& operator[](std::size_t i) const { return patterns_[i]; }

  // Distinct variables in first-mention order.
  std::vector<std::string> variables() const {
    std::vector<std::string> out;
    for (const auto& tp : patterns_)
      for (auto& v : tp.variables())
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
    return out;
  }

  friend bool operator==(const Bgp&, const Bgp&) = default;

 private:
  std::vector<TriplePattern> patterns_;
};

inline std::ostream& operator<<(std::ostream& os, const PatternPos& pp) {
  if (pp.isVariable()) return os << '?' << pp.varName();
  return os << pp.term();
}

inline std::ostream& operator<<(std::ostream& os, const TriplePattern& tp) {
  return os << tp.s << ' ' << tp.p << ' ' << tp.o << " .";
}

inline std::ostream& operator<<(std::ostream& os, const Bgp& bgp) {
  for (const auto& tp : bgp.patterns()) os << tp << '\n';
  return os;
}

/// True iff some assignment of the pattern's variables turns `tp` into `t`.
/// Repeated variables must receive the same term at every occurrence.
inline bool matchTPT(const TriplePattern& tp, const Triple& t) {
  std::array<std::pair<const std::string*, const Term*>, 3> bound{};
  std::size_t nbound = 0;
  for (Position pos : kPositions) {
    const PatternPos& pp = tp.at(pos);
    const Term& value = termAt(t, pos);
    if (pp.isConstant()) {
      if (pp.term() != value) return false;
      continue;
    }
    bool consistent = true;
    bool seen = false;
    for (std::size_t i = 0; i < nbound; ++i) {
      if (*bound[i].first == pp.varName()) {
        seen = true;
        consistent = *bound[i].second == value;
        break;
      }
    }
    if (!consistent) return false;
    if (!seen) bound[nbound++] = {&pp.varName(), &value};
  }
  return true;
}

/// Replaces every variable that has an entry in `bindings` by its term.
inline TriplePattern substitute(const TriplePattern& tp, const std::map<std::string, Term>& bindings) {
  TriplePattern out = tp;
  for (Position pos : kPositions) {
    PatternPos& pp = out.at(pos);
    if (!pp.isVariable()) continue;
    if (auto it = bindings.find(pp.varName()); it != bindings.end()) pp = PatternPos(it->second);
  }
  return out;
}

}  // namespace tripled
