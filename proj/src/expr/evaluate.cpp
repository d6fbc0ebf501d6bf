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

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "finsler/expr.hpp"

namespace finsler::expr {
namespace {

// The double overloads mirror the jet kernels operation for operation so
// that a jet's constant term reproduces the scalar result bit for bit.

double integer_power(double a, int e) {
  if (e < 0) return 1.0 / integer_power(a, -e);
  double result = 1.0;
  double base = a;
  auto u = static_cast<unsigned>(e);
  bool first = true;
  while (u != 0) {
    if ((u & 1U) != 0) {
      result = first ? base : result * base;
      first = false;
    }
    u >>= 1U;
    if (u != 0) base = base * base;
  }
  return result;
}

bool integral_exponent(double r) { return std::floor(r) == r && std::abs(r) < 1e9; }

double do_sqrt(double a) {
  if (a < 0.0) throw DomainError("sqrt of negative value");
  return std::sqrt(a);
}
double do_exp(double a) { return std::exp(a); }
double do_log(double a) {
  if (a <= 0.0) throw DomainError("log of non-positive value");
  return std::log(a);
}
double do_abs(double a) { return std::abs(a); }
double do_div(double a, double b) {
  if (b == 0.0) throw DomainError("division by zero");
  return a / b;
}
double do_pow_const(double a, double r) {
  if (integral_exponent(r)) {
    if (a == 0.0 && r < 0.0) throw DomainError("division by zero");
    return integer_power(a, static_cast<int>(r));
  }
  if (a < 0.0) throw DomainError("non-integer power of negative value");
  if (a == 0.0 && r < 0.0) throw DomainError("negative power of zero");
  return std::pow(a, r);
}
double do_pow_general(double a, double b) { return do_exp(b * do_log(a)); }

Jet do_sqrt(const Jet& a) { return sqrt(a); }
Jet do_exp(const Jet& a) { return exp(a); }
Jet do_log(const Jet& a) { return log(a); }
Jet do_abs(const Jet& a) { return abs(a); }
Jet do_div(const Jet& a, const Jet& b) { return a / b; }
Jet do_pow_const(const Jet& a, double r) { return pow(a, r); }
Jet do_pow_general(const Jet& a, const Jet& b) { return exp(b * log(a)); }

bool is_constant(const Node& n) {
  if (n.kind == NodeKind::kVarX || n.kind == NodeKind::kVarY) return false;
  return std::all_of(n.args.begin(), n.args.end(), [](const auto& c) { return is_constant(*c); });
}

template <class T>
T eval(const Node& n, std::span<const T> z, int dim);

double eval_constant(const Node& n) { return eval<double>(n, std::span<const double>(), 0); }

template <class T>
T power(const Node& base_node, const Node& exponent_node, std::span<const T> z, int dim) {
  T base = eval<T>(base_node, z, dim);
  if (is_constant(exponent_node)) return do_pow_const(base, eval_constant(exponent_node));
  return do_pow_general(base, eval<T>(exponent_node, z, dim));
}

template <class T>
T eval(const Node& n, std::span<const T> z, int dim) {
  switch (n.kind) {
    case NodeKind::kLiteral:
      return T(n.value);
    case NodeKind::kVarX:
      return z[static_cast<std::size_t>(n.index)];
    case NodeKind::kVarY:
      return z[static_cast<std::size_t>(dim + n.index)];
    case NodeKind::kNeg:
      return -eval<T>(*n.args[0], z, dim);
    case NodeKind::kAdd:
      return eval<T>(*n.args[0], z, dim) + eval<T>(*n.args[1], z, dim);
    case NodeKind::kSub:
      return eval<T>(*n.args[0], z, dim) - eval<T>(*n.args[1], z, dim);
    case NodeKind::kMul:
      return eval<T>(*n.args[0], z, dim) * eval<T>(*n.args[1], z, dim);
    case NodeKind::kDiv:
      return do_div(eval<T>(*n.args[0], z, dim), eval<T>(*n.args[1], z, dim));
    case NodeKind::kPow:
      return power<T>(*n.args[0], *n.args[1], z, dim);
    case NodeKind::kCall:
      switch (n.function) {
        case Function::kSqrt: return do_sqrt(eval<T>(*n.args[0], z, dim));
        case Function::kExp: return do_exp(eval<T>(*n.args[0], z, dim));
        case Function::kLog: return do_log(eval<T>(*n.args[0], z, dim));
        case Function::kAbs: return do_abs(eval<T>(*n.args[0], z, dim));
        case Function::kPow: return power<T>(*n.args[0], *n.args[1], z, dim);
      }
  }
  throw Error("corrupt expression tree");
}

}  // namespace

double EnergyExpr::evaluate(std::span<const double> z) const {
  if (static_cast<int>(z.size()) != 2 * dimension_) throw Error("coordinate count mismatch");
  return eval<double>(*root_, z, dimension_);
}

double EnergyExpr::evaluate(const TMPoint& point) const {
  if (point.dim() != dimension_) throw ConfigError("point dimension does not match energy");
  const auto z = point.coordinates();
  return evaluate(z);
}

Jet EnergyExpr::evaluate_jet(std::span<const Jet> z) const {
  if (static_cast<int>(z.size()) != 2 * dimension_) throw Error("coordinate count mismatch");
  return eval<Jet>(*root_, z, dimension_);
}

Jet EnergyExpr::evaluate_jet(const TMPoint& point, int order) const {
  if (point.dim() != dimension_) throw ConfigError("point dimension does not match energy");
  const auto z = seed_all(point, order);
  return evaluate_jet(z);
}

ValidationReport validate(const EnergyExpr& energy, std::span<const TMPoint> points,
                          const GateOptions& options) {
  ValidationReport report;
  report.min_energy = std::numeric_limits<double>::infinity();
  report.smallest_singular_value = std::numeric_limits<double>::infinity();
  const int n = energy.dimension();
  for (const TMPoint& p : points) {
    ++report.points_checked;
    const std::string where = p.to_string();
    Jet e;
    try {
      e = energy.evaluate_jet(p, 2);
    } catch (const Error& err) {
      report.failures.push_back({"evaluation", where, 0.0, err.what()});
      continue;
    }
    const double value = e.value();
    report.min_energy = std::min(report.min_energy, value);
    if (!(value > 0.0)) {
      report.failures.push_back({"positivity", where, value, "E <= 0"});
    }

    std::vector<int> mi(static_cast<std::size_t>(2 * n), 0);
    double euler = 0.0;
    for (int i = 0; i < n; ++i) {
      mi[static_cast<std::size_t>(n + i)] = 1;
      euler += p.y()[static_cast<std::size_t>(i)] * e.derivative(mi);
      mi[static_cast<std::size_t>(n + i)] = 0;
    }
    const double scale = std::max(std::abs(2.0 * value), std::numeric_limits<double>::min());
    const double hom = std::abs(euler - 2.0 * value) / scale;
    report.max_homogeneity_residual = std::max(report.max_homogeneity_residual, hom);
    if (!(hom <= options.homogeneity_tolerance)) {
      report.failures.push_back({"homogeneity", where, hom, "sum y^i dE/dy^i != 2E"});
    }

    Eigen::MatrixXd hess(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        mi[static_cast<std::size_t>(n + i)] += 1;
        mi[static_cast<std::size_t>(n + j)] += 1;
        hess(i, j) = e.derivative(mi);
        mi[static_cast<std::size_t>(n + i)] = 0;
        mi[static_cast<std::size_t>(n + j)] = 0;
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(hess);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(n - 1);
    report.smallest_singular_value = std::min(report.smallest_singular_value, smin);
    const double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
    report.worst_condition = std::max(report.worst_condition, cond);
    if (!(smin > options.rank_tolerance * smax)) {
      report.failures.push_back({"rank", where, smin,
                                 "fundamental tensor singular, condition " + std::to_string(cond)});
    }
  }
  return report;
}

}  // namespace finsler::expr
