// Copyright 2026 The setsyl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file
/// Exception hierarchy shared by every setsyl module.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace setsyl {

/// Root of all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed script text. Carries a 1-based position and the tokens that
/// would have been accepted there.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
             const std::string& found)
      : Error(format(line, column, expected, found)),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string format(std::size_t line, std::size_t column,
                            const std::vector<std::string>& expected, const std::string& found) {
    std::string msg = "parse error at " + std::to_string(line) + ":" + std::to_string(column) +
                      ": found " + found + ", expected one of {";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += ", ";
      msg += expected[i];
    }
    return msg + "}";
  }

  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

class ArityError : public Error {
 public:
  ArityError(const std::string& op, std::size_t expected, std::size_t got)
      : Error("operator '" + op + "' expects " + std::to_string(expected) + " argument(s), got " +
              std::to_string(got)) {}
};

/// An atom combines operators from two theory signatures.
class MixedAtomError : public Error {
 public:
  MixedAtomError(std::string first, std::string second)
      : Error("atom mixes signatures " + first + " and " + second + "; purify it first"),
        first_(std::move(first)),
        second_(std::move(second)) {}
  const std::string& first() const { return first_; }
  const std::string& second() const { return second_; }

 private:
  std::string first_;
  std::string second_;
};

class UnsupportedAtomError : public Error {
 public:
  using Error::Error;
};

class UnboundVariableError : public Error {
 public:
  explicit UnboundVariableError(const std::string& name)
      : Error("variable '" + name + "' is not bound by the assignment") {}
};

class BoundTooLargeError : public Error {
 public:
  using Error::Error;
};

class SearchSpaceTooLargeError : public Error {
 public:
  using Error::Error;
};

class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NonConvexPluginError : public Error {
 public:
  using Error::Error;
};

class NonlinearTermError : public Error {
 public:
  using Error::Error;
};

}  // namespace setsyl
