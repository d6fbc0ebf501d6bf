// Copyright 2026 The finslerkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace finsler {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested jet order is outside the supported range.
class JetOrderError : public Error {
 public:
  using Error::Error;
};

/// A derivative was requested from a jet that no longer carries enough
/// Taylor coefficients.
class JetDepthError : public Error {
 public:
  JetDepthError(int required, int available)
      : Error("jet depth underflow: required order " + std::to_string(required) +
              ", available " + std::to_string(available)),
        required_(required),
        available_(available) {}

  int required() const noexcept { return required_; }
  int available() const noexcept { return available_; }

 private:
  int required_;
  int available_;
};

/// Non-smooth or undefined evaluation (log/sqrt of non-positive value,
/// division by zero, abs at a kink in jet mode).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Text could not be parsed. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const noexcept { return message_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

/// A matrix that must be invertible was singular to tolerance.
class SingularMatrixError : public Error {
 public:
  SingularMatrixError(const std::string& what, std::vector<double> point, double condition)
      : Error(what), point_(std::move(point)), condition_(condition) {}

  const std::vector<double>& point() const noexcept { return point_; }
  double condition() const noexcept { return condition_; }

 private:
  std::vector<double> point_;
  double condition_;
};

/// Invalid configuration, metric specification or point.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace finsler
