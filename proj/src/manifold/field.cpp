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

#include "finsler/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace finsler {

// ---------------------------------------------------------------------------
// LocalField

int LocalField::order() const noexcept {
  int o = kExactOrder;
  for (const Jet& j : c_) o = std::min(o, j.order());
  return o;
}

std::vector<double> LocalField::values() const {
  std::vector<double> v(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i].value();
  return v;
}

double LocalField::norm() const {
  double m = 0.0;
  for (const Jet& j : c_) m = std::max(m, std::abs(j.value()));
  return m;
}

LocalField& LocalField::operator+=(const LocalField& o) {
  if (o.size() != size()) throw Error("field size mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

LocalField& LocalField::operator-=(const LocalField& o) {
  if (o.size() != size()) throw Error("field size mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

LocalField operator-(const LocalField& a) {
  LocalField r = a;
  for (auto& j : r.c_) j = -j;
  return r;
}

LocalField operator*(const Jet& f, const LocalField& a) {
  LocalField r = a;
  for (auto& j : r.c_) j = f * j;
  return r;
}

// ---------------------------------------------------------------------------
// JetMatrix

JetMatrix JetMatrix::identity(std::size_t n) {
  JetMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Jet(1.0);
  return m;
}

JetMatrix JetMatrix::transposed() const {
  JetMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

std::vector<double> JetMatrix::values() const {
  std::vector<double> v(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) v[i] = a_[i].value();
  return v;
}

int JetMatrix::order() const noexcept {
  int o = kExactOrder;
  for (const Jet& j : a_) o = std::min(o, j.order());
  return o;
}

namespace {

bool is_exact_zero(const Jet& j) { return j.is_exact() && j.value() == 0.0; }

}  // namespace

JetMatrix operator*(const JetMatrix& a, const JetMatrix& b) {
  if (a.cols_ != b.rows_) throw Error("matrix shape mismatch");
  JetMatrix m(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t c = 0; c < b.cols_; ++c) {
      Jet acc;
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (is_exact_zero(a(r, k)) || is_exact_zero(b(k, c))) continue;
        acc += a(r, k) * b(k, c);
      }
      m(r, c) = acc;
    }
  }
  return m;
}

JetMatrix operator+(const JetMatrix& a, const JetMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix shape mismatch");
  JetMatrix m(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.a_.size(); ++i) m.a_[i] = a.a_[i] + b.a_[i];
  return m;
}

JetMatrix operator-(const JetMatrix& a, const JetMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error("matrix shape mismatch");
  JetMatrix m(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.a_.size(); ++i) m.a_[i] = a.a_[i] - b.a_[i];
  return m;
}

JetMatrix operator*(const Jet& s, const JetMatrix& a) {
  JetMatrix m = a;
  for (auto& j : m.a_) j = s * j;
  return m;
}

LocalField JetMatrix::apply(const LocalField& x) const {
  if (x.size() != cols_) throw Error("operator/field size mismatch");
  LocalField out = LocalField::zero(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Jet acc;
    for (std::size_t c = 0; c < cols_; ++c) {
      const Jet& m = (*this)(r, c);
      if (is_exact_zero(m) || is_exact_zero(x[c])) continue;
      acc += m * x[c];
    }
    out[r] = acc;
  }
  return out;
}

Jet JetMatrix::pair(const LocalField& x, const LocalField& y) const {
  return [&] {
    Jet acc;
    const LocalField my = apply(y);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (is_exact_zero(x[r]) || is_exact_zero(my[r])) continue;
      acc += x[r] * my[r];
    }
    return acc;
  }();
}

// ---------------------------------------------------------------------------
// JetLU

double condition_number(std::span<const double> a, std::size_t n) {
  // Explicit inverse by Gauss-Jordan; n is small.
  std::vector<double> m(a.begin(), a.end());
  std::vector<double> inv(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r * n + col]) > std::abs(m[piv * n + col])) piv = r;
    }
    if (m[piv * n + col] == 0.0) return std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n; ++c) {
      std::swap(m[col * n + c], m[piv * n + c]);
      std::swap(inv[col * n + c], inv[piv * n + c]);
    }
    const double d = m[col * n + col];
    for (std::size_t c = 0; c < n; ++c) {
      m[col * n + c] /= d;
      inv[col * n + c] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = m[r * n + col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        m[r * n + c] -= f * m[col * n + c];
        inv[r * n + c] -= f * inv[col * n + c];
      }
    }
  }
  auto norm1 = [n](std::span<const double> x) {
    double best = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      double s = 0.0;
      for (std::size_t r = 0; r < n; ++r) s += std::abs(x[r * n + c]);
      best = std::max(best, s);
    }
    return best;
  };
  return norm1(a) * norm1(inv);
}

JetLU::JetLU(const JetMatrix& a, std::vector<double> where, double tolerance)
    : n_(a.rows()), lu_(a), perm_(a.rows()) {
  if (a.rows() != a.cols()) throw Error("LU of non-square matrix");
  for (std::size_t i = 0; i < n_; ++i) perm_[i] = i;
  const auto values = a.values();
  condition_ = condition_number(values, n_);
  double largest = 0.0;
  for (double v : values) largest = std::max(largest, std::abs(v));

  for (std::size_t k = 0; k < n_; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n_; ++r) {
      if (std::abs(lu_(r, k).value()) > std::abs(lu_(piv, k).value())) piv = r;
    }
    if (!(std::abs(lu_(piv, k).value()) > tolerance * largest)) {
      throw SingularMatrixError("matrix singular to tolerance (condition " +
                                    std::to_string(condition_) + ")",
                                std::move(where), condition_);
    }
    if (piv != k) {
      for (std::size_t c = 0; c < n_; ++c) std::swap(lu_(k, c), lu_(piv, c));
      std::swap(perm_[k], perm_[piv]);
    }
    const Jet inv_pivot = reciprocal(lu_(k, k));
    for (std::size_t r = k + 1; r < n_; ++r) {
      if (is_exact_zero(lu_(r, k))) continue;
      const Jet f = lu_(r, k) * inv_pivot;
      lu_(r, k) = f;
      for (std::size_t c = k + 1; c < n_; ++c) {
        if (is_exact_zero(lu_(k, c))) continue;
        lu_(r, c) -= f * lu_(k, c);
      }
    }
  }
}

std::vector<Jet> JetLU::solve(std::span<const Jet> b) const {
  if (b.size() != n_) throw Error("rhs size mismatch");
  std::vector<Jet> x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      if (is_exact_zero(lu_(i, k)) || is_exact_zero(x[k])) continue;
      x[i] -= lu_(i, k) * x[k];
    }
  }
  for (std::size_t i = n_; i-- > 0;) {
    for (std::size_t k = i + 1; k < n_; ++k) {
      if (is_exact_zero(lu_(i, k)) || is_exact_zero(x[k])) continue;
      x[i] -= lu_(i, k) * x[k];
    }
    x[i] = x[i] / lu_(i, i);
  }
  return x;
}

JetMatrix JetLU::inverse() const {
  JetMatrix inv(n_, n_);
  std::vector<Jet> e(n_);
  for (std::size_t c = 0; c < n_; ++c) {
    for (std::size_t r = 0; r < n_; ++r) e[r] = Jet(r == c ? 1.0 : 0.0);
    const auto col = solve(e);
    for (std::size_t r = 0; r < n_; ++r) inv(r, c) = col[r];
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Calculus

Jet directional(const LocalField& x, const Jet& f) {
  if (f.is_exact()) return Jet(0.0);
  Jet acc;
  for (std::size_t a = 0; a < x.size(); ++a) {
    if (is_exact_zero(x[a])) continue;
    acc += x[a] * partial(f, static_cast<int>(a));
  }
  return acc;
}

LocalField lie_bracket(const LocalField& x, const LocalField& y) {
  if (x.size() != y.size()) throw Error("field size mismatch");
  LocalField out = LocalField::zero(x.size());
  for (std::size_t a = 0; a < x.size(); ++a) out[a] = directional(x, y[a]) - directional(y, x[a]);
  return out;
}

LocalField coordinate_field(int dim, int index) {
  LocalField f = LocalField::zero(static_cast<std::size_t>(2 * dim));
  f[static_cast<std::size_t>(index)] = Jet(1.0);
  return f;
}

LocalField VectorFieldTM::localize(std::span<const Jet> coordinates) const {
  if (static_cast<int>(coordinates.size()) != 2 * dim_) throw Error("coordinate count mismatch");
  auto c = fn_(coordinates);
  if (static_cast<int>(c.size()) != 2 * dim_) throw Error("vector field returned wrong size");
  return LocalField(std::move(c));
}

LocalField VectorFieldTM::at(const TMPoint& point, int order) const {
  const auto z = seed_all(point, order);
  return localize(z);
}

std::vector<double> VectorFieldTM::evaluate(std::span<const double> z) const {
  std::vector<Jet> exact(z.begin(), z.end());
  return localize(exact).values();
}

double ScalarFieldTM::evaluate(std::span<const double> z) const {
  std::vector<Jet> exact(z.begin(), z.end());
  return fn_(exact).value();
}

template <class T>
T Polynomial::evaluate(std::span<const T> z) const {
  T acc(0.0);
  for (const Term& t : terms) {
    T m(t.coefficient);
    for (std::size_t a = 0; a < t.exponents.size(); ++a) {
      for (int e = 0; e < t.exponents[a]; ++e) m = m * z[a];
    }
    acc = acc + m;
  }
  return acc;
}

template double Polynomial::evaluate<double>(std::span<const double>) const;
template Jet Polynomial::evaluate<Jet>(std::span<const Jet>) const;

Polynomial random_polynomial(int nvars, int degree, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  Polynomial p;
  std::vector<int> e(static_cast<std::size_t>(nvars), 0);
  auto rec = [&](auto&& self, int var, int remaining) -> void {
    if (var == nvars) {
      p.terms.push_back({coef(rng), e});
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      e[static_cast<std::size_t>(var)] = k;
      self(self, var + 1, remaining - k);
    }
    e[static_cast<std::size_t>(var)] = 0;
  };
  rec(rec, 0, degree);
  return p;
}

VectorFieldTM random_polynomial_field(int dim, int degree, std::mt19937_64& rng) {
  std::vector<Polynomial> comps;
  for (int a = 0; a < 2 * dim; ++a) comps.push_back(random_polynomial(2 * dim, degree, rng));
  return VectorFieldTM(dim, [comps = std::move(comps)](std::span<const Jet> z) {
    std::vector<Jet> out;
    out.reserve(comps.size());
    for (const auto& p : comps) out.push_back(p.evaluate<Jet>(z));
    return out;
  });
}

ScalarFieldTM random_scalar_field(int dim, int degree, std::mt19937_64& rng) {
  Polynomial p = random_polynomial(2 * dim, degree, rng);
  for (auto& t : p.terms) t.coefficient *= 0.3;
  return ScalarFieldTM(dim, [p = std::move(p)](std::span<const Jet> z) { return exp(p.evaluate<Jet>(z)); });
}

VectorFieldTM liouville_field(int dim) {
  return VectorFieldTM(dim, [dim](std::span<const Jet> z) {
    std::vector<Jet> out(static_cast<std::size_t>(2 * dim));
    for (int i = 0; i < dim; ++i) {
      out[static_cast<std::size_t>(dim + i)] = z[static_cast<std::size_t>(dim + i)];
    }
    return out;
  });
}

}  // namespace finsler
