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

// Vector fields and pointwise linear operators on TM.
//
// Coordinates on TM are z = (x^1..x^n, y^1..y^n). A LocalField is the germ
// of a vector field at a base point: its 2n components as jets around that
// point. Brackets and directional derivatives consume one order of the
// jets involved, so a germ carries exactly as many derivatives as the
// computation downstream of it can still use.

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "finsler/jet.hpp"
#include "finsler/point.hpp"

namespace finsler {

class LocalField {
 public:
  LocalField() = default;
  explicit LocalField(std::vector<Jet> components) : c_(std::move(components)) {}
  /// Exact zero field with `size` components.
  static LocalField zero(std::size_t size) { return LocalField(std::vector<Jet>(size)); }

  std::size_t size() const noexcept { return c_.size(); }
  /// n, the base dimension.
  int dim() const noexcept { return static_cast<int>(c_.size() / 2); }
  const Jet& operator[](std::size_t i) const { return c_[i]; }
  Jet& operator[](std::size_t i) { return c_[i]; }
  const std::vector<Jet>& components() const noexcept { return c_; }

  /// Minimum order over the components.
  int order() const noexcept;
  /// Component values at the base point.
  std::vector<double> values() const;
  /// Max-norm of the values at the base point.
  double norm() const;

  LocalField& operator+=(const LocalField& o);
  LocalField& operator-=(const LocalField& o);

  friend LocalField operator+(LocalField a, const LocalField& b) { return a += b; }
  friend LocalField operator-(LocalField a, const LocalField& b) { return a -= b; }
  friend LocalField operator-(const LocalField& a);
  friend LocalField operator*(const Jet& f, const LocalField& a);
  friend LocalField operator*(double f, const LocalField& a) { return Jet(f) * a; }

 private:
  std::vector<Jet> c_;
};

/// Dense matrix of jets (row-major); used for pointwise operators on TM
/// and for bilinear forms.
class JetMatrix {
 public:
  JetMatrix() = default;
  JetMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static JetMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Jet& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  Jet& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }

  JetMatrix transposed() const;
  /// Matrix of constant terms.
  std::vector<double> values() const;
  int order() const noexcept;

  friend JetMatrix operator*(const JetMatrix& a, const JetMatrix& b);
  friend JetMatrix operator+(const JetMatrix& a, const JetMatrix& b);
  friend JetMatrix operator-(const JetMatrix& a, const JetMatrix& b);
  friend JetMatrix operator*(const Jet& s, const JetMatrix& a);

  /// Operator applied to a field: (M X)^r = M^r_c X^c.
  LocalField apply(const LocalField& x) const;
  /// Bilinear pairing X^T M Y.
  Jet pair(const LocalField& x, const LocalField& y) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Jet> a_;
};

/// LU factorization of a square jet matrix with partial pivoting on the
/// constant terms.
class JetLU {
 public:
  /// Throws SingularMatrixError when a pivot is below `tolerance` times the
  /// largest pivot (constant terms). `where` is attached to the error.
  explicit JetLU(const JetMatrix& a, std::vector<double> where = {}, double tolerance = 1e-10);

  std::vector<Jet> solve(std::span<const Jet> b) const;
  JetMatrix inverse() const;
  /// 1-norm condition number of the constant-term matrix.
  double condition() const noexcept { return condition_; }

 private:
  std::size_t n_;
  JetMatrix lu_;
  std::vector<std::size_t> perm_;
  double condition_ = 0.0;
};

/// 1-norm condition number of a dense double matrix (row-major, n x n);
/// infinity if singular.
double condition_number(std::span<const double> a, std::size_t n);

/// Directional derivative X.f = X^a df/dz^a.
Jet directional(const LocalField& x, const Jet& f);

/// [X,Y]^a = X^b dY^a/dz^b - Y^b dX^a/dz^b.
LocalField lie_bracket(const LocalField& x, const LocalField& y);

/// Coordinate basis field d/dz^index with exact components.
LocalField coordinate_field(int dim, int index);

/// A vector field on TM given by a closure over coordinate jets. Evaluating
/// on seeded jets yields its germ; evaluating on exact jets yields values.
class VectorFieldTM {
 public:
  using Fn = std::function<std::vector<Jet>(std::span<const Jet>)>;

  VectorFieldTM(int dim, Fn fn) : dim_(dim), fn_(std::move(fn)) {}

  int dim() const noexcept { return dim_; }
  LocalField localize(std::span<const Jet> coordinates) const;
  LocalField at(const TMPoint& point, int order) const;
  std::vector<double> evaluate(std::span<const double> z) const;

 private:
  int dim_;
  Fn fn_;
};

/// Scalar function on TM given by a closure over coordinate jets.
class ScalarFieldTM {
 public:
  using Fn = std::function<Jet(std::span<const Jet>)>;

  ScalarFieldTM(int dim, Fn fn) : dim_(dim), fn_(std::move(fn)) {}
  int dim() const noexcept { return dim_; }
  Jet localize(std::span<const Jet> coordinates) const { return fn_(coordinates); }
  double evaluate(std::span<const double> z) const;

 private:
  int dim_;
  Fn fn_;
};

/// Polynomial in the 2n coordinates: sum of coef * prod z_a^e_a.
struct Polynomial {
  struct Term {
    double coefficient;
    std::vector<int> exponents;
  };
  std::vector<Term> terms;

  template <class T>
  T evaluate(std::span<const T> z) const;
};

/// Uniform random polynomial of total degree <= degree in `nvars`
/// variables, coefficients in [-1, 1].
Polynomial random_polynomial(int nvars, int degree, std::mt19937_64& rng);

/// Field whose components are independent random polynomials.
VectorFieldTM random_polynomial_field(int dim, int degree, std::mt19937_64& rng);

/// Positive random scalar field exp(p(z)), p a random polynomial scaled
/// down to keep values of order one near the unit box.
ScalarFieldTM random_scalar_field(int dim, int degree, std::mt19937_64& rng);

/// The Liouville field C = y^i d/dy^i.
VectorFieldTM liouville_field(int dim);

}  // namespace finsler
