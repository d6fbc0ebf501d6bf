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

// Energy expression language.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?            right associative
//   primary := number | x<k> | y<k> | fn '(' expr (',' expr)* ')' | '(' expr ')'
//   fn      := sqrt | exp | log | abs | pow
//
// Variables are 1-based: x1..xn are base coordinates, y1..yn fiber
// coordinates. Whitespace and '#' line comments are ignored.

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "finsler/jet.hpp"
#include "finsler/point.hpp"

namespace finsler::expr {

enum class NodeKind { kLiteral, kVarX, kVarY, kNeg, kAdd, kSub, kMul, kDiv, kPow, kCall };
enum class Function { kSqrt, kExp, kLog, kAbs, kPow };

struct Node {
  NodeKind kind = NodeKind::kLiteral;
  double value = 0.0;          // kLiteral
  int index = 0;               // kVarX / kVarY, 0-based
  Function function = Function::kSqrt;  // kCall
  std::vector<std::shared_ptr<const Node>> args;
  int line = 1;
  int column = 1;
};

bool structurally_equal(const Node& a, const Node& b);

/// An immutable parsed energy function E(x, y) on TM of an n-manifold.
class EnergyExpr {
 public:
  /// Throws ParseError carrying a 1-based line:column.
  static EnergyExpr parse(std::string_view source, int dimension);

  int dimension() const noexcept { return dimension_; }
  const Node& root() const noexcept { return *root_; }
  /// True if the tree contains abs(), which is not smooth at its kink.
  bool uses_abs() const noexcept { return uses_abs_; }

  /// Fully parenthesized source that reparses to a structurally equal tree.
  std::string to_string() const;

  double evaluate(std::span<const double> z) const;
  double evaluate(const TMPoint& point) const;
  /// Jet of E at the point; the constant term equals evaluate(point).
  Jet evaluate_jet(const TMPoint& point, int order) const;
  /// Evaluate on arbitrary coordinate jets (size 2n).
  Jet evaluate_jet(std::span<const Jet> z) const;

 private:
  EnergyExpr(std::shared_ptr<const Node> root, int dimension, bool uses_abs)
      : root_(std::move(root)), dimension_(dimension), uses_abs_(uses_abs) {}

  std::shared_ptr<const Node> root_;
  int dimension_;
  bool uses_abs_;
};

/// Outcome of the sampling-based checks of the energy axioms.
struct GateFailure {
  std::string gate;       // "homogeneity", "positivity", "rank"
  std::string point;      // TMPoint::to_string()
  double value;           // offending quantity
  std::string detail;
};

struct ValidationReport {
  int points_checked = 0;
  double max_homogeneity_residual = 0.0;  // relative |sum y^i dE/dy^i - 2E| / |2E|
  double min_energy = 0.0;
  double worst_condition = 0.0;           // of d^2E/dy dy
  double smallest_singular_value = 0.0;
  std::vector<GateFailure> failures;

  bool ok() const noexcept { return failures.empty(); }
};

struct GateOptions {
  double homogeneity_tolerance = 1e-8;
  /// Singular values below this fraction of the largest count as rank loss.
  double rank_tolerance = 1e-10;
};

/// Homogeneity (Euler relation), positivity and max-rank checks at the
/// given points. Points where evaluation throws are reported as failures.
ValidationReport validate(const EnergyExpr& energy, std::span<const TMPoint> points,
                          const GateOptions& options = {});

}  // namespace finsler::expr
