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

#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "tripled/errors.hpp"

namespace tripled {

enum class TermKind { Iri, Literal };

/// An RDF node. Blank nodes and language tags are not modeled.
///
/// Two literals are equal iff both the lexical form and the datatype IRI
/// match; a plain literal has no datatype.
class Term {
 public:
  Term() = default;

  static Term iri(std::string lexical) {
    if (!isValidIri(lexical)) throw ParseError(0, "invalid IRI <" + lexical + ">");
    return Term(TermKind::Iri, std::move(lexical), std::nullopt);
  }

  static Term literal(std::string lexical, std::optional<std::string> datatype = std::nullopt) {
    if (datatype && !isValidIri(*datatype))
      throw ParseError(0, "invalid datatype IRI <" + *datatype + ">");
    return Term(TermKind::Literal, std::move(lexical), std::move(datatype));
  }

  TermKind kind() const noexcept { return kind_; }
  bool isIri() const noexcept { return kind_ == TermKind::Iri; }
  bool isLiteral() const noexcept { return kind_ == TermKind::Literal; }
  const std::string& lexical() const noexcept { return lexical_; }
  const std::optional<std::string>& datatype() const noexcept { return datatype_; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;

  // Nonempty, no whitespace, no angle brackets.
  static bool isValidIri(std::string_view s) noexcept {
    if (s.empty()) return false;
    for (char c : s) {
      switch (c) {
        case ' ': case '\t': case '\n': case '\r': case '\f': case '\v':
        case '<': case '>':
          return false;
        default:
          break;
      }
    }
    return true;
  }

 private:
  Term(TermKind kind, std::string lexical, std::optional<std::string> datatype)
      : kind_(kind), lexical_(std::move(lexical)), datatype_(std::move(datatype)) {}

  TermKind kind_ = TermKind::Iri;
  std::string lexical_;
  std::optional<std::string> datatype_;
};

struct Triple {
  Term s;
  Term p;
  Term o;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Canonical text form, also used as the storage key:
/// `<iri>`, `"lexical"`, or `"lexical"^^<datatype>`.
inline std::string serializeTerm(const Term& t) {
  std::string out;
  if (t.isIri()) {
    out.reserve(t.lexical().size() + 2);
    out += '<';
    out += t.lexical();
    out += '>';
    return out;
  }
  out.reserve(t.lexical().size() + 2);
  out += '"';
  for (char c : t.lexical()) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  out += '"';
  if (t.datatype()) {
    out += "^^<";
    out += *t.datatype();
    out += '>';
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Term& t) { return os << serializeTerm(t); }

inline std::ostream& operator<<(std::ostream& os, const Triple& t) {
  return os << serializeTerm(t.s) << ' ' << serializeTerm(t.p) << ' ' << serializeTerm(t.o) << " .";
}

namespace detail {

// Reads one term starting at `pos`; advances `pos` past it.
// Throws ParseError (line 0) on malformed input; callers attach line numbers.
inline Term scanTerm(std::string_view text, std::size_t& pos) {
  if (pos >= text.size()) throw ParseError(0, "expected term, found end of input");
  const char first = text[pos];
  if (first == '<') {
    const std::size_t close = text.find('>', pos + 1);
    if (close == std::string_view::npos) throw ParseError(0, "unterminated IRI");
    std::string_view body = text.substr(pos + 1, close - pos - 1);
    if (!Term::isValidIri(body)) throw ParseError(0, "invalid IRI <" + std::string(body) + ">");
    pos = close + 1;
    return Term::iri(std::string(body));
  }
  if (first == '"') {
    std::string lexical;
    std::size_t i = pos + 1;
    for (;;) {
      if (i >= text.size()) throw ParseError(0, "unterminated literal");
      const char c = text[i];
      if (c == '"') break;
      if (c == '\n' || c == '\r') throw ParseError(0, "raw line break inside literal");
      if (c == '\\') {
        if (i + 1 >= text.size()) throw ParseError(0, "dangling escape in literal");
        switch (text[i + 1]) {
          case '"': lexical += '"'; break;
          case '\\': lexical += '\\'; break;
          case 't': lexical += '\t'; break;
          case 'n': lexical += '\n'; break;
          case 'r': lexical += '\r'; break;
          default:
            throw ParseError(0, std::string("unknown escape \\") + text[i + 1] + " in literal");
        }
        i += 2;
        continue;
      }
      lexical += c;
      ++i;
    }
    pos = i + 1;
    if (pos < text.size() && text[pos] == '@')
      throw ParseError(0, "language-tagged literals are not supported");
    if (text.substr(pos, 2) == "^^") {
      pos += 2;
      if (pos >= text.size() || text[pos] != '<') throw ParseError(0, "expected <datatype> after ^^");
      Term dt = scanTerm(text, pos);
      return Term::literal(std::move(lexical), dt.lexical());
    }
    return Term::literal(std::move(lexical));
  }
  if (text.substr(pos, 2) == "_:") throw ParseError(0, "blank nodes are not supported");
  throw ParseError(0, std::string("unexpected character '") + first + "' where a term was expected");
}

}  // namespace detail

/// Inverse of serializeTerm; the whole input must be one term.
inline Term parseTerm(std::string_view text) {
  std::size_t pos = 0;
  Term t = detail::scanTerm(text, pos);
  if (pos != text.size())
    throw ParseError(0, "trailing characters after term: " + std::string(text.substr(pos)));
  return t;
}

}  // namespace tripled
