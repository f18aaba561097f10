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

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tripled/pattern.hpp"
#include "tripled/term.hpp"

namespace tripled {

namespace detail {

inline bool isBlank(char c) noexcept { return c == ' ' || c == '\t'; }

inline bool isIdentStart(char c) noexcept {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

inline bool isIdentChar(char c) noexcept { return isIdentStart(c) || (c >= '0' && c <= '9'); }

// Re-throws a line-less ParseError from scanTerm with a line number attached.
template <typename F>
auto withLine(std::size_t line, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    if (e.line() != 0) throw;
    throw ParseError(line, e.what());
  }
}

}  // namespace detail

/// Parses the line-oriented triple format:
///
///     <s> <p> <o> .
///     <s> <p> "literal"^^<datatype> .
///     # comment
///
/// Duplicate lines produce duplicate entries; order is preserved.
inline std::vector<Triple> parseTriples(std::string_view text) {
  std::vector<Triple> out;
  std::size_t lineNo = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::size_t pos = 0;
    auto skipBlanks = [&] {
      while (pos < line.size() && detail::isBlank(line[pos])) ++pos;
    };
    skipBlanks();
    if (pos < line.size() && line[pos] != '#') {
      detail::withLine(lineNo, [&] {
        Term terms[3];
        for (int i = 0; i < 3; ++i) {
          if (i > 0) {
            if (pos >= line.size() || !detail::isBlank(line[pos]))
              throw ParseError(0, "expected whitespace between terms");
            skipBlanks();
          }
          terms[i] = detail::scanTerm(line, pos);
        }
        skipBlanks();
        if (pos >= line.size() || line[pos] != '.') throw ParseError(0, "expected '.' after object");
        ++pos;
        skipBlanks();
        if (pos < line.size() && line[pos] != '#')
          throw ParseError(0, "unexpected text after '.': " + std::string(line.substr(pos)));
        if (!terms[0].isIri()) throw ParseError(0, "subject must be IRI");
        if (!terms[1].isIri()) throw ParseError(0, "predicate must be IRI");
        out.push_back(Triple{std::move(terms[0]), std::move(terms[1]), std::move(terms[2])});
        return 0;
      });
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

namespace detail {

class QueryCursor {
 public:
  explicit QueryCursor(std::string_view text) : text_(text) {}

  // Skips whitespace, `#` comments, and `//` comments.
  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#' || text_.substr(pos_, 2) == "//") {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool atEnd() {
    skip();
    return pos_ >= text_.size();
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  // Case-insensitive keyword followed by a non-identifier character.
  bool consumeKeyword(std::string_view kw) {
    skip();
    if (text_.size() - pos_ < kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i)
      if (std::toupper(static_cast<unsigned char>(text_[pos_ + i])) != kw[i]) return false;
    const std::size_t after = pos_ + kw.size();
    if (after < text_.size() && isIdentChar(text_[after])) return false;
    pos_ = after;
    return true;
  }

  // `tp1:` style label before a pattern.
  void skipLabel() {
    skip();
    std::size_t i = pos_;
    if (i >= text_.size() || !isIdentStart(text_[i])) return;
    while (i < text_.size() && isIdentChar(text_[i])) ++i;
    if (i < text_.size() && text_[i] == ':') pos_ = i + 1;
  }

  PatternPos position() {
    skip();
    if (pos_ >= text_.size()) fail("expected term or variable, found end of input");
    if (text_[pos_] == '?') {
      std::size_t i = pos_ + 1;
      while (i < text_.size() && isIdentChar(text_[i])) ++i;
      std::string name(text_.substr(pos_ + 1, i - pos_ - 1));
      if (!Variable::isValidName(name)) fail("invalid variable name '?" + name + "'");
      pos_ = i;
      return PatternPos::var(std::move(name));
    }
    return withLine(line_, [&] { return PatternPos(scanTerm(text_, pos_)); });
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

  std::size_t line() const noexcept { return line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace detail

/// Parses a basic graph pattern: one `s p o .` statement per pattern, where
/// each position is a term or `?name`. An enclosing `SELECT * WHERE { ... }`
/// is accepted and ignored.
inline Bgp parseBgpQuery(std::string_view text) {
  detail::QueryCursor cur(text);
  bool braced = false;
  if (cur.consumeKeyword("SELECT")) {
    if (!cur.consume('*')) cur.fail("only SELECT * is supported");
    cur.consumeKeyword("WHERE");
    if (!cur.consume('{')) cur.fail("expected '{' after SELECT * WHERE");
    braced = true;
  } else if (cur.consume('{')) {
    braced = true;
  }

  std::vector<TriplePattern> patterns;
  for (;;) {
    if (braced && cur.consume('}')) {
      if (!cur.atEnd()) cur.fail("unexpected text after '}'");
      braced = false;
      break;
    }
    if (cur.atEnd()) break;
    cur.skipLabel();
    const std::size_t line = cur.line();
    TriplePattern tp{cur.position(), cur.position(), cur.position()};
    detail::withLine(line, [&] {
      tp.validate();
      return 0;
    });
    patterns.push_back(std::move(tp));
    if (!cur.consume('.')) {
      if (!(braced && cur.peek() == '}')) cur.fail("expected '.' after triple pattern");
    }
  }
  if (braced) cur.fail("missing closing '}'");
  if (patterns.empty()) throw ParseError(0, "empty query: at least one triple pattern is required");
  return Bgp(std::move(patterns));
}

}  // namespace tripled
