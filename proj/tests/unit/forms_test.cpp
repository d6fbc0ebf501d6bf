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

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "finsler/errors.hpp"
#include "finsler/field.hpp"
#include "finsler/forms.hpp"

namespace finsler {
namespace {

constexpr int kDim = 2;
constexpr int kOrder = 5;

const TMPoint& base_point() {
  static const TMPoint p({0.3, -0.4}, {0.8, 1.1});
  return p;
}

LocalField random_field(std::mt19937_64& rng) {
  return random_polynomial_field(kDim, 2, rng).at(base_point(), kOrder);
}

JetMatrix random_endomorphism(std::mt19937_64& rng) {
  const auto z = seed_all(base_point(), kOrder);
  JetMatrix m(2 * kDim, 2 * kDim);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = random_polynomial(2 * kDim, 2, rng).evaluate<Jet>(z);
  }
  return m;
}

void expect_zero(const LocalField& f, double tol = 1e-12) {
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(f[i].value(), 0.0, tol) << "component " << i;
}

void expect_equal(const LocalField& a, const LocalField& b, double tol = 1e-12) { expect_zero(a - b, tol); }

TEST(LieBracket, AntisymmetricAndJacobi) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const LocalField x = random_field(rng), y = random_field(rng), z = random_field(rng);
    expect_equal(lie_bracket(x, y), -lie_bracket(y, x));
    expect_zero(lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) +
                lie_bracket(z, lie_bracket(x, y)));
  }
}

TEST(LieBracket, FunctionLinearity) {
  std::mt19937_64 rng(43);
  const LocalField x = random_field(rng), y = random_field(rng);
  const Jet f = random_scalar_field(kDim, 2, rng).localize(seed_all(base_point(), kOrder));
  // [X, fY] = f[X,Y] + X(f) Y
  expect_equal(lie_bracket(x, f * y), f * lie_bracket(x, y) + directional(x, f) * y);
}

TEST(LieBracket, CoordinateFieldsCommute) {
  const LocalField a = coordinate_field(kDim, 0), b = coordinate_field(kDim, 3);
  expect_zero(lie_bracket(a, b));
}

// Independent expansion of the bracket of two vector 1-forms.
LocalField fn_oracle(const JetMatrix& k, const JetMatrix& l, const LocalField& x, const LocalField& y) {
  const LocalField xy = lie_bracket(x, y);
  return lie_bracket(k.apply(x), l.apply(y)) + lie_bracket(l.apply(x), k.apply(y)) + k.apply(l.apply(xy)) +
         l.apply(k.apply(xy)) - k.apply(lie_bracket(l.apply(x), y)) - k.apply(lie_bracket(x, l.apply(y))) -
         l.apply(lie_bracket(k.apply(x), y)) - l.apply(lie_bracket(x, k.apply(y)));
}

TEST(FrolicherNijenhuis, OneFormsMatchExpansion) {
  std::mt19937_64 rng(47);
  const JetMatrix k = random_endomorphism(rng), l = random_endomorphism(rng);
  const LocalField x = random_field(rng), y = random_field(rng);
  const VectorForm b = fn_bracket(VectorForm::from_matrix(k), VectorForm::from_matrix(l));
  ASSERT_EQ(b.degree(), 2);
  expect_equal(b(x, y), fn_oracle(k, l, x, y), 1e-11);
}

TEST(FrolicherNijenhuis, OneFormBracketIsSymmetricAndAlternating) {
  std::mt19937_64 rng(53);
  const VectorForm k = VectorForm::from_matrix(random_endomorphism(rng));
  const VectorForm l = VectorForm::from_matrix(random_endomorphism(rng));
  const LocalField x = random_field(rng), y = random_field(rng);
  const VectorForm kl = fn_bracket(k, l), lk = fn_bracket(l, k);
  expect_equal(kl(x, y), lk(x, y), 1e-11);
  expect_equal(kl(x, y), -kl(y, x), 1e-11);
  expect_zero(kl(x, x), 1e-11);
}

TEST(FrolicherNijenhuis, IdentityIsCentral) {
  std::mt19937_64 rng(59);
  const VectorForm l = VectorForm::from_matrix(random_endomorphism(rng));
  const LocalField x = random_field(rng), y = random_field(rng);
  expect_zero(fn_bracket(VectorForm::identity(), l)(x, y), 1e-11);
}

TEST(FrolicherNijenhuis, ZeroFormIsLieDerivative) {
  std::mt19937_64 rng(61);
  const JetMatrix m = random_endomorphism(rng);
  const LocalField z = random_field(rng), x = random_field(rng);
  // [Z, L](X) = [Z, LX] - L[Z, X]
  const VectorForm b = fn_bracket(VectorForm::field(z), VectorForm::from_matrix(m));
  ASSERT_EQ(b.degree(), 1);
  expect_equal(b(x), lie_bracket(z, m.apply(x)) - m.apply(lie_bracket(z, x)), 1e-12);
}

TEST(VectorForm, ArityIsChecked) {
  std::mt19937_64 rng(67);
  const VectorForm k = VectorForm::from_matrix(random_endomorphism(rng));
  const LocalField x = random_field(rng);
  EXPECT_THROW(k(x, x), Error);
  EXPECT_THROW(k(), Error);
}

TEST(JetLU, InverseTimesMatrixIsIdentity) {
  std::mt19937_64 rng(71);
  JetMatrix a = random_endomorphism(rng);
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += 4.0;
  const JetMatrix inv = JetLU(a).inverse();
  const JetMatrix prod = a * inv;
  for (std::size_t r = 0; r < prod.rows(); ++r) {
    for (std::size_t c = 0; c < prod.cols(); ++c) {
      const Jet d = prod(r, c) - (r == c ? 1.0 : 0.0);
      EXPECT_LT(d.max_abs(), 1e-12);
    }
  }
}

TEST(JetLU, SingularThrows) {
  JetMatrix a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(1, 0) = 2.0;
  a(1, 1) = 4.0;
  EXPECT_THROW(JetLU{a}, SingularMatrixError);
}

}  // namespace
}  // namespace finsler
