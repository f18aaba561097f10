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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tripled {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed triple file, query text, or term. `line` is 1-based, 0 if unknown.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Persisted table image is unreadable or inconsistent.
class LoadError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// An intermediate solution bag grew past the configured cap.
class ResourceLimitError : public Error {
 public:
  ResourceLimitError(std::size_t cap, std::size_t requested)
      : Error("intermediate result of " + std::to_string(requested) +
              " tuples exceeds cap of " + std::to_string(cap)),
        cap_(cap) {}

  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

class TranslateError : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

// Engines disagreed on an answer; no timings are reported for wrong results.
class CorrectnessError : public Error {
 public:
  using Error::Error;
};

}  // namespace tripled
