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

#include "finsler/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>

namespace finsler {
namespace {

std::uint64_t encode(std::span<const int> m, int base) {
  std::uint64_t key = 0;
  for (int e : m) key = key * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(e);
  return key;
}

void check_order(int order) {
  if (order < kMinJetOrder || order > kMaxJetOrder) {
    throw JetOrderError("jet order " + std::to_string(order) + " outside supported range [" +
                        std::to_string(kMinJetOrder) + ", " + std::to_string(kMaxJetOrder) + "]");
  }
}

const JetSpace* common_space(const Jet& a, const Jet& b) {
  if (a.is_exact()) return b.space();
  if (b.is_exact() || a.space() == b.space()) return a.space();
  throw Error("jets from different spaces cannot be combined");
}

}  // namespace

// ---------------------------------------------------------------------------
// JetSpace

JetSpace::JetSpace(int nvars, int max_order) : nvars_(nvars), max_order_(max_order) {
  // Graded enumeration: degree by degree, lexicographic (descending in the
  // first variable) inside a degree.
  std::vector<std::vector<int>> monomials;
  std::vector<int> current(static_cast<std::size_t>(nvars), 0);
  for (int d = 0; d <= max_order; ++d) {
    // compositions of d into nvars parts
    auto rec = [&](auto&& self, int var, int remaining) -> void {
      if (var == nvars - 1) {
        current[static_cast<std::size_t>(var)] = remaining;
        monomials.push_back(current);
        return;
      }
      for (int e = remaining; e >= 0; --e) {
        current[static_cast<std::size_t>(var)] = e;
        self(self, var + 1, remaining - e);
      }
    };
    if (nvars == 0) {
      if (d == 0) monomials.emplace_back();
    } else {
      rec(rec, 0, d);
    }
    prefix_.push_back(monomials.size());
  }

  const std::size_t count = monomials.size();
  const int base = max_order + 1;
  std::unordered_map<std::uint64_t, std::int32_t> lookup;
  lookup.reserve(count * 2);
  exponents_.reserve(count * static_cast<std::size_t>(nvars));
  for (std::size_t i = 0; i < count; ++i) {
    lookup.emplace(encode(monomials[i], base), static_cast<std::int32_t>(i));
    int deg = 0;
    double weight = 1.0;
    for (int e : monomials[i]) {
      exponents_.push_back(static_cast<std::uint8_t>(e));
      deg += e;
      for (int f = 2; f <= e; ++f) weight *= f;
    }
    degree_.push_back(deg);
    factorial_weight_.push_back(weight);
  }

  raise_.assign(count * static_cast<std::size_t>(nvars), -1);
  for (std::size_t i = 0; i < count; ++i) {
    if (degree_[i] >= max_order) continue;
    auto m = monomials[i];
    for (int v = 0; v < nvars; ++v) {
      ++m[static_cast<std::size_t>(v)];
      raise_[i * static_cast<std::size_t>(nvars) + static_cast<std::size_t>(v)] =
          lookup.at(encode(m, base));
      --m[static_cast<std::size_t>(v)];
    }
  }

  // Product plan: for every output monomial enumerate its divisors.
  offsets_.reserve(count + 1);
  offsets_.push_back(0);
  std::vector<int> part(static_cast<std::size_t>(nvars), 0);
  std::vector<int> rest(static_cast<std::size_t>(nvars), 0);
  for (std::size_t k = 0; k < count; ++k) {
    const auto& target = monomials[k];
    auto rec = [&](auto&& self, int var) -> void {
      if (var == nvars) {
        for (int v = 0; v < nvars; ++v) {
          rest[static_cast<std::size_t>(v)] =
              target[static_cast<std::size_t>(v)] - part[static_cast<std::size_t>(v)];
        }
        lhs_.push_back(lookup.at(encode(part, base)));
        rhs_.push_back(lookup.at(encode(rest, base)));
        return;
      }
      for (int e = 0; e <= target[static_cast<std::size_t>(var)]; ++e) {
        part[static_cast<std::size_t>(var)] = e;
        self(self, var + 1);
      }
    };
    rec(rec, 0);
    offsets_.push_back(static_cast<std::int32_t>(lhs_.size()));
  }
}

const JetSpace& JetSpace::get(int nvars, int max_order) {
  if (nvars < 0 || nvars > kMaxJetVars) {
    throw Error("jet variable count " + std::to_string(nvars) + " outside [0, " +
                std::to_string(kMaxJetVars) + "]");
  }
  if (max_order < 0 || max_order > kMaxJetOrder) check_order(max_order);
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<JetSpace>> registry;
  std::lock_guard lock(mutex);
  auto& slot = registry[{nvars, max_order}];
  if (!slot) slot.reset(new JetSpace(nvars, max_order));
  return *slot;
}

std::ptrdiff_t JetSpace::index_of(std::span<const int> multi_index) const {
  if (static_cast<int>(multi_index.size()) != nvars_) {
    throw Error("multi-index has " + std::to_string(multi_index.size()) + " entries, expected " +
                std::to_string(nvars_));
  }
  int deg = 0;
  for (int e : multi_index) {
    if (e < 0) throw Error("negative entry in multi-index");
    deg += e;
  }
  if (deg > max_order_) return -1;
  // Walk from the constant monomial using the raise table.
  std::size_t idx = 0;
  for (int v = 0; v < nvars_; ++v) {
    for (int e = 0; e < multi_index[static_cast<std::size_t>(v)]; ++e) {
      idx = static_cast<std::size_t>(raise(idx, v));
    }
  }
  return static_cast<std::ptrdiff_t>(idx);
}

// ---------------------------------------------------------------------------
// Jet

Jet Jet::zero(const JetSpace& space, int order) {
  if (order < 0 || order > space.max_order()) {
    throw JetOrderError("jet order " + std::to_string(order) + " exceeds space order " +
                        std::to_string(space.max_order()));
  }
  return Jet(&space, order, std::vector<double>(space.size(order), 0.0));
}

Jet Jet::seed(const JetSpace& space, int order, int var, double value) {
  check_order(order);
  if (var < 0 || var >= space.nvars()) {
    throw Error("seed variable " + std::to_string(var) + " outside [0, " +
                std::to_string(space.nvars()) + ")");
  }
  Jet j = zero(space, order);
  j.c_[0] = value;
  j.c_[static_cast<std::size_t>(space.raise(0, var))] = 1.0;
  return j;
}

Jet Jet::from_coefficients(const JetSpace& space, int order, std::vector<double> coeffs) {
  if (order < 0 || order > space.max_order() || coeffs.size() != space.size(order)) {
    throw Error("coefficient vector does not match jet shape");
  }
  return Jet(&space, order, std::move(coeffs));
}

double Jet::derivative(std::span<const int> multi_index) const {
  int deg = 0;
  for (int e : multi_index) deg += e;
  if (deg > order_) throw JetDepthError(deg, order_);
  if (is_exact()) return deg == 0 ? c_[0] : 0.0;
  const std::ptrdiff_t idx = space_->index_of(multi_index);
  const auto i = static_cast<std::size_t>(idx);
  return c_[i] * space_->factorial_weight(i);
}

Jet Jet::truncated(int order) const {
  if (is_exact() || order >= order_) return *this;
  if (order < 0) throw JetDepthError(0, order);
  std::vector<double> c(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(space_->size(order)));
  return Jet(space_, order, std::move(c));
}

double Jet::max_abs() const noexcept {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

Jet& Jet::operator+=(const Jet& o) { return *this = *this + o; }
Jet& Jet::operator-=(const Jet& o) { return *this = *this - o; }
Jet& Jet::operator*=(const Jet& o) { return *this = *this * o; }
Jet& Jet::operator/=(const Jet& o) { return *this = *this / o; }

Jet operator+(const Jet& a, const Jet& b) {
  const JetSpace* space = common_space(a, b);
  if (space == nullptr) return Jet(a.c_[0] + b.c_[0]);
  if (a.is_exact()) {
    Jet r = b;
    r.c_[0] += a.c_[0];
    return r;
  }
  if (b.is_exact()) {
    Jet r = a;
    r.c_[0] += b.c_[0];
    return r;
  }
  const int order = std::min(a.order_, b.order_);
  const std::size_t n = space->size(order);
  std::vector<double> c(n);
  simd::active_kernels().add(a.c_.data(), b.c_.data(), c.data(), n);
  return Jet(space, order, std::move(c));
}

Jet operator-(const Jet& a, const Jet& b) {
  const JetSpace* space = common_space(a, b);
  if (space == nullptr) return Jet(a.c_[0] - b.c_[0]);
  if (b.is_exact()) {
    Jet r = a;
    r.c_[0] -= b.c_[0];
    return r;
  }
  if (a.is_exact()) {
    Jet r = -b;
    r.c_[0] += a.c_[0];
    return r;
  }
  const int order = std::min(a.order_, b.order_);
  const std::size_t n = space->size(order);
  std::vector<double> c(n);
  simd::active_kernels().sub(a.c_.data(), b.c_.data(), c.data(), n);
  return Jet(space, order, std::move(c));
}

Jet product_with(const Jet& a, double alpha) {
  std::vector<double> c(a.c_.size());
  simd::active_kernels().scale(alpha, a.c_.data(), c.data(), c.size());
  return Jet(a.space_, a.order_, std::move(c));
}

Jet operator*(const Jet& a, const Jet& b) {
  const JetSpace* space = common_space(a, b);
  if (space == nullptr) return Jet(a.c_[0] * b.c_[0]);
  if (a.is_exact()) return product_with(b, a.c_[0]);
  if (b.is_exact()) return product_with(a, b.c_[0]);
  const int order = std::min(a.order_, b.order_);
  const std::size_t n = space->size(order);
  std::vector<double> c(n);
  simd::active_kernels().product(a.c_.data(), b.c_.data(), c.data(), n, space->product_plan());
  return Jet(space, order, std::move(c));
}

Jet operator/(const Jet& a, const Jet& b) {
  const double b0 = b.value();
  if (b0 == 0.0) throw DomainError("division by zero");
  const JetSpace* space = common_space(a, b);
  if (space == nullptr) return Jet(a.c_[0] / b0);
  if (b.is_exact()) {
    Jet r = a;
    for (double& v : r.c_) v = v / b0;
    return r;
  }
  // q * b = a solved degree by degree; the constant term is a0 / b0.
  const int order = std::min(a.order_, b.order_);
  const std::size_t n = space->size(order);
  const simd::ProductPlan plan = space->product_plan();
  std::vector<double> q(n);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = a.is_exact() ? (k == 0 ? a.c_[0] : 0.0) : a.c_[k];
    for (std::int32_t p = plan.offsets[k]; p < plan.offsets[k + 1]; ++p) {
      if (plan.rhs[p] == 0) continue;
      acc -= q[static_cast<std::size_t>(plan.lhs[p])] * b.c_[static_cast<std::size_t>(plan.rhs[p])];
    }
    q[k] = acc / b0;
  }
  return Jet(space, order, std::move(q));
}

Jet operator-(const Jet& a) { return product_with(a, -1.0); }

Jet compose(const Jet& a, std::span<const double> taylor) {
  if (a.is_exact()) return Jet(taylor[0]);
  const int order = a.order_;
  // Horner in the nilpotent part: sum_m t_m (a - a0)^m.
  Jet nil = a;
  nil.c_[0] = 0.0;
  Jet result = Jet::zero(*a.space_, order);
  result.c_[0] = taylor[static_cast<std::size_t>(order)];
  for (int m = order - 1; m >= 0; --m) {
    result = result * nil;
    result.c_[0] += taylor[static_cast<std::size_t>(m)];
  }
  return result;
}

namespace {

int taylor_length(const Jet& a) { return a.is_exact() ? 1 : a.order() + 1; }

}  // namespace

Jet reciprocal(const Jet& a) { return Jet(1.0) / a; }

Jet sqrt(const Jet& a) {
  const double a0 = a.value();
  if (a.is_exact() || a.order() == 0) {
    if (a0 < 0.0) throw DomainError("sqrt of negative value");
    if (a.is_exact()) return Jet(std::sqrt(a0));
  } else if (a0 <= 0.0) {
    throw DomainError("sqrt requires a positive value to differentiate");
  }
  std::vector<double> t(static_cast<std::size_t>(taylor_length(a)));
  double coeff = std::sqrt(a0);
  for (std::size_t m = 0; m < t.size(); ++m) {
    t[m] = coeff;
    coeff *= (0.5 - static_cast<double>(m)) / (static_cast<double>(m + 1) * a0);
  }
  return compose(a, t);
}

Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  std::vector<double> t(static_cast<std::size_t>(taylor_length(a)));
  double fact = 1.0;
  for (std::size_t m = 0; m < t.size(); ++m) {
    if (m > 0) fact *= static_cast<double>(m);
    t[m] = e / fact;
  }
  return compose(a, t);
}

Jet log(const Jet& a) {
  const double a0 = a.value();
  if (a0 <= 0.0) throw DomainError("log of non-positive value");
  std::vector<double> t(static_cast<std::size_t>(taylor_length(a)));
  t[0] = std::log(a0);
  double p = 1.0;
  for (std::size_t m = 1; m < t.size(); ++m) {
    p /= a0;
    t[m] = ((m % 2 == 1) ? 1.0 : -1.0) * p / static_cast<double>(m);
  }
  return compose(a, t);
}

Jet powi(const Jet& a, int exponent) {
  if (exponent < 0) return reciprocal(powi(a, -exponent));
  Jet result(1.0);
  Jet base = a;
  unsigned e = static_cast<unsigned>(exponent);
  while (e != 0) {
    if ((e & 1U) != 0) result = result * base;
    e >>= 1U;
    if (e != 0) base = base * base;
  }
  return result;
}

Jet pow(const Jet& a, double exponent) {
  const double a0 = a.value();
  const bool integral = std::floor(exponent) == exponent && std::abs(exponent) < 1e9;
  if (integral) return powi(a, static_cast<int>(exponent));
  if (a0 < 0.0) throw DomainError("non-integer power of negative value");
  if (a0 == 0.0) {
    if (a.is_exact() || a.order() == 0) {
      if (exponent < 0.0) throw DomainError("negative power of zero");
      return a.is_exact() ? Jet(0.0) : Jet::zero(*a.space(), 0);
    }
    throw DomainError("non-integer power of zero is not differentiable");
  }
  std::vector<double> t(static_cast<std::size_t>(taylor_length(a)));
  // binom(r, m) a0^(r-m)
  double coeff = std::pow(a0, exponent);
  for (std::size_t m = 0; m < t.size(); ++m) {
    t[m] = coeff;
    coeff *= (exponent - static_cast<double>(m)) / (static_cast<double>(m + 1) * a0);
  }
  return compose(a, t);
}

Jet pow(const Jet& a, const Jet& exponent) {
  if (exponent.is_exact()) return pow(a, exponent.value());
  return exp(exponent * log(a));
}

Jet abs(const Jet& a) {
  const double a0 = a.value();
  if (a0 == 0.0) {
    if (a.is_exact() || a.order() == 0) return a;
    throw DomainError("abs is not differentiable at zero");
  }
  return a0 > 0.0 ? a : -a;
}

Jet partial(const Jet& a, int var) {
  if (a.is_exact()) return Jet(0.0);
  if (a.order_ == 0) throw JetDepthError(1, 0);
  if (var < 0 || var >= a.space_->nvars()) throw Error("partial: variable index out of range");
  const int order = a.order_ - 1;
  const std::size_t n = a.space_->size(order);
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto up = static_cast<std::size_t>(a.space_->raise(i, var));
    const double factor = static_cast<double>(a.space_->exponents(i)[static_cast<std::size_t>(var)]) + 1.0;
    c[i] = factor * a.c_[up];
  }
  return Jet(a.space_, order, std::move(c));
}

std::vector<Jet> seed_coordinates(std::span<const double> z, int order) {
  check_order(order);
  const JetSpace& space = JetSpace::get(static_cast<int>(z.size()), order);
  std::vector<Jet> out;
  out.reserve(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    out.push_back(Jet::seed(space, order, static_cast<int>(i), z[i]));
  }
  return out;
}

}  // namespace finsler
