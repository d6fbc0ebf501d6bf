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

#include <string>
#include <string_view>
#include <vector>

#include "finsler/jet.hpp"

namespace finsler {

/// A point (x, y) of the slit tangent bundle: y must be nonzero.
class TMPoint {
 public:
  /// Throws ConfigError if the blocks differ in size, are empty, or y = 0.
  TMPoint(std::vector<double> x, std::vector<double> y);

  int dim() const noexcept { return static_cast<int>(x_.size()); }
  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<double>& y() const noexcept { return y_; }
  /// Concatenated coordinates (x^1..x^n, y^1..y^n).
  std::vector<double> coordinates() const;

  /// "x=(..);y=(..)" with round-trip precision.
  std::string to_string() const;

  friend bool operator==(const TMPoint&, const TMPoint&) = default;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

/// Parses "x=a,b;y=c,d"; each block may be wrapped in parentheses, which is
/// the form to_string() emits. Throws ConfigError on malformed input or
/// y = 0.
TMPoint parse_point(std::string_view text);

/// Jet of coordinate `var_index` (x-block first, then y-block) at the point.
Jet seed(const TMPoint& point, int var_index, int order);

/// Jets of all 2n coordinates at the point.
std::vector<Jet> seed_all(const TMPoint& point, int order);

}  // namespace finsler
