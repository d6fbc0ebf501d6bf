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

// Truncated multivariate Taylor arithmetic.
//
// A Jet is the Taylor polynomial, truncated at total degree `order`, of a
// smooth function around a fixed base point. Coefficients are stored densely
// in graded order (all monomials of degree 0, then degree 1, ...), so the
// coefficients of degree <= k are always a prefix of the storage and
// truncation is a resize.
//
// Binary operations produce a jet whose order is the minimum of the operand
// orders. Differentiation lowers the order by one. A jet built from a plain
// number (space() == nullptr) is exact: it carries no truncation and
// combines with a jet of any space.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "finsler/errors.hpp"
#include "finsler/simd/kernels.hpp"

namespace finsler {

inline constexpr int kMinJetOrder = 1;
inline constexpr int kMaxJetOrder = 6;
inline constexpr int kMaxJetVars = 16;
/// Order reported by exact (constant) jets.
inline constexpr int kExactOrder = std::numeric_limits<int>::max();

/// Index tables for all monomials in `nvars` variables up to `max_order`.
/// Instances are interned and live for the whole process.
class JetSpace {
 public:
  /// Shared instance for the given shape. Thread-safe.
  static const JetSpace& get(int nvars, int max_order);

  int nvars() const noexcept { return nvars_; }
  int max_order() const noexcept { return max_order_; }

  /// Number of monomials of degree <= order.
  std::size_t size(int order) const noexcept { return prefix_[static_cast<std::size_t>(order)]; }

  std::span<const std::uint8_t> exponents(std::size_t index) const noexcept {
    return {exponents_.data() + index * static_cast<std::size_t>(nvars_),
            static_cast<std::size_t>(nvars_)};
  }
  int degree(std::size_t index) const noexcept { return degree_[index]; }

  /// Storage index of a multi-index, or -1 when its degree exceeds max_order.
  std::ptrdiff_t index_of(std::span<const int> multi_index) const;

  /// Index of monomial(index) * z_var, or -1 when that exceeds max_order.
  std::int32_t raise(std::size_t index, int var) const noexcept {
    return raise_[index * static_cast<std::size_t>(nvars_) + static_cast<std::size_t>(var)];
  }

  /// prod_i (m_i!) for the monomial at `index`.
  double factorial_weight(std::size_t index) const noexcept { return factorial_weight_[index]; }

  simd::ProductPlan product_plan() const noexcept {
    return {offsets_.data(), lhs_.data(), rhs_.data()};
  }

 private:
  JetSpace(int nvars, int max_order);

  int nvars_;
  int max_order_;
  std::vector<std::size_t> prefix_;
  std::vector<std::uint8_t> exponents_;
  std::vector<int> degree_;
  std::vector<std::int32_t> raise_;
  std::vector<double> factorial_weight_;
  std::vector<std::int32_t> offsets_;
  std::vector<std::int32_t> lhs_;
  std::vector<std::int32_t> rhs_;
};

class Jet {
 public:
  /// Exact zero.
  Jet() : c_{0.0} {}
  /// Exact constant.
  Jet(double value) : c_{value} {}  // NOLINT(google-explicit-constructor)

  /// All-zero jet of the given space and order.
  static Jet zero(const JetSpace& space, int order);
  /// Jet of the coordinate function z_var around a base point where
  /// z_var = value.
  static Jet seed(const JetSpace& space, int order, int var, double value);
  /// Jet with explicit coefficients (graded storage order).
  static Jet from_coefficients(const JetSpace& space, int order, std::vector<double> coeffs);

  double value() const noexcept { return c_[0]; }
  int order() const noexcept { return order_; }
  bool is_exact() const noexcept { return space_ == nullptr; }
  const JetSpace* space() const noexcept { return space_; }
  std::span<const double> coefficients() const noexcept { return c_; }

  /// Partial derivative for the given multi-index at the base point
  /// (Taylor coefficient times the multi-index factorial).
  double derivative(std::span<const int> multi_index) const;
  double derivative(std::initializer_list<int> multi_index) const {
    return derivative(std::span<const int>(multi_index.begin(), multi_index.size()));
  }

  /// Copy truncated to a lower order. Exact jets are returned unchanged.
  Jet truncated(int order) const;

  /// Largest absolute coefficient.
  double max_abs() const noexcept;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a);

  friend Jet sqrt(const Jet& a);
  friend Jet exp(const Jet& a);
  friend Jet log(const Jet& a);
  friend Jet pow(const Jet& a, double exponent);
  friend Jet pow(const Jet& a, const Jet& exponent);
  friend Jet powi(const Jet& a, int exponent);
  friend Jet abs(const Jet& a);
  friend Jet reciprocal(const Jet& a);
  friend Jet partial(const Jet& a, int var);

 private:
  Jet(const JetSpace* space, int order, std::vector<double> c)
      : space_(space), order_(order), c_(std::move(c)) {}

  friend Jet compose(const Jet& a, std::span<const double> taylor);
  friend Jet product_with(const Jet& a, double alpha);

  const JetSpace* space_ = nullptr;
  int order_ = kExactOrder;
  std::vector<double> c_;
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator-(const Jet& a);

Jet sqrt(const Jet& a);
Jet exp(const Jet& a);
Jet log(const Jet& a);
/// Real exponent. The base value must be positive unless the exponent is
/// a non-negative integer.
Jet pow(const Jet& a, double exponent);
/// exp(exponent * log(a)); base value must be positive.
Jet pow(const Jet& a, const Jet& exponent);
Jet powi(const Jet& a, int exponent);
/// Throws DomainError at a kink (zero value) when the jet carries
/// derivatives.
Jet abs(const Jet& a);
Jet reciprocal(const Jet& a);
/// d/dz_var; the result order is one less. Throws JetDepthError on an
/// order-0 jet.
Jet partial(const Jet& a, int var);

/// f(a) given the Taylor coefficients f^(m)(a0)/m!, m = 0..order, of the
/// outer function at a0 = a.value().
Jet compose(const Jet& a, std::span<const double> taylor);

/// Jets of all coordinates z_0..z_{m-1} around z. Throws JetOrderError when
/// order is outside [kMinJetOrder, kMaxJetOrder].
std::vector<Jet> seed_coordinates(std::span<const double> z, int order);

}  // namespace finsler
