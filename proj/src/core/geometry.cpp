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

#include "finsler/geometry.hpp"

#include <cmath>

namespace finsler {
namespace {

std::size_t idx3(int n, int a, int b, int c) {
  return static_cast<std::size_t>((a * n + b) * n + c);
}

bool exact_zero(const Jet& j) { return j.is_exact() && j.value() == 0.0; }

double convention_sign(CurvatureConvention c) { return c == CurvatureConvention::kMinusHalf ? 1.0 : -1.0; }

}  // namespace

PointGeometry::PointGeometry(const EnergyFn& energy, const TMPoint& point, int order, GeometryOptions options)
    : n_(point.dim()), order_(order), point_(point), options_(options) {
  if (order < kMinGeometryOrder || order > kMaxJetOrder) {
    throw JetOrderError("geometry order " + std::to_string(order) + " outside [" +
                        std::to_string(kMinGeometryOrder) + ", " + std::to_string(kMaxJetOrder) + "]");
  }
  const int n = n_;
  const auto nn = static_cast<std::size_t>(n);
  z_ = seed_all(point, order);
  energy_ = energy(z_);

  std::vector<Jet> e_y(nn), e_x(nn);
  for (int i = 0; i < n; ++i) {
    e_x[static_cast<std::size_t>(i)] = partial(energy_, i);
    e_y[static_cast<std::size_t>(i)] = partial(energy_, n + i);
  }
  g_ = JetMatrix(nn, nn);
  JetMatrix mixed(nn, nn);  // mixed(k, i) = d^2E / dx^k dy^i
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      g_(ui, uj) = j <= i ? partial(e_y[ui], n + j) : Jet();
      mixed(uj, ui) = partial(e_y[ui], j);
    }
  }
  for (std::size_t i = 0; i < nn; ++i) {
    for (std::size_t j = i + 1; j < nn; ++j) g_(i, j) = g_(j, i);
  }

  const auto where = point.coordinates();
  JetLU g_lu(g_, where, options_.singular_tolerance);
  condition_ = g_lu.condition();
  g_inv_ = g_lu.inverse();

  std::vector<Jet> rhs(nn);
  for (int i = 0; i < n; ++i) {
    Jet acc = -e_x[static_cast<std::size_t>(i)];
    for (int k = 0; k < n; ++k) acc += z_[static_cast<std::size_t>(n + k)] * mixed(static_cast<std::size_t>(k), static_cast<std::size_t>(i));
    rhs[static_cast<std::size_t>(i)] = acc;
  }
  auto two_g = g_lu.solve(rhs);
  spray_g_.resize(nn);
  for (std::size_t i = 0; i < nn; ++i) spray_g_[i] = 0.5 * two_g[i];

  n_conn_ = JetMatrix(nn, nn);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      n_conn_(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = partial(spray_g_[static_cast<std::size_t>(i)], n + j);
    }
  }

  const std::size_t m = 2 * nn;
  j_ = JetMatrix(m, m);
  h_ = JetMatrix(m, m);
  f_ = JetMatrix(m, m);
  omega_ = JetMatrix(m, m);
  JetMatrix n_sq = n_conn_ * n_conn_;
  for (std::size_t i = 0; i < nn; ++i) {
    j_(nn + i, i) = Jet(1.0);
    h_(i, i) = Jet(1.0);
    f_(i, nn + i) = Jet(1.0);
    f_(nn + i, i) = Jet(-1.0);
    for (std::size_t k = 0; k < nn; ++k) {
      h_(nn + i, k) = -n_conn_(i, k);
      f_(i, k) = n_conn_(i, k);
      f_(nn + i, nn + k) = -n_conn_(i, k);
      f_(nn + i, k) = f_(nn + i, k) - n_sq(i, k);
      omega_(k, i) = mixed(k, i) - mixed(i, k);
      omega_(i, nn + k) = -g_(i, k);
      omega_(nn + k, i) = g_(k, i);
    }
  }
  v_ = JetMatrix::identity(m) - h_;
  gamma_ = Jet(2.0) * h_ - JetMatrix::identity(m);
  sasaki_ = omega_ * f_;

  spray_ = LocalField::zero(m);
  liouville_ = LocalField::zero(m);
  for (std::size_t i = 0; i < nn; ++i) {
    spray_[i] = z_[nn + i];
    spray_[nn + i] = -2.0 * spray_g_[i];
    liouville_[nn + i] = z_[nn + i];
  }

  try {
    omega_t_lu_.emplace(omega_.transposed(), where, options_.singular_tolerance);
  } catch (const SingularMatrixError&) {
    // Omega is nonsingular whenever g is; keep the geometry usable for the
    // coordinate paths if rounding says otherwise.
  }

  // C_ijk = 1/2 dg_ij/dy^k.
  cartan_.resize(nn * nn * nn);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        cartan_[idx3(n, i, j, k)] =
            0.5 * partial(g_(static_cast<std::size_t>(i), static_cast<std::size_t>(j)), n + k);
      }
    }
  }
  if (order_ >= 4) {
    berwald_.resize(nn * nn * nn);
    for (int m2 = 0; m2 < n; ++m2) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          berwald_[idx3(n, m2, j, k)] =
              partial(n_conn_(static_cast<std::size_t>(m2), static_cast<std::size_t>(j)), n + k);
        }
      }
    }
    cartan2_.resize(nn * nn * nn);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          Jet acc = horizontal_partial(g_(static_cast<std::size_t>(k), static_cast<std::size_t>(l)), j);
          for (int q = 0; q < n; ++q) {
            acc -= g_(static_cast<std::size_t>(q), static_cast<std::size_t>(l)) * berwald_[idx3(n, q, j, k)];
            acc -= g_(static_cast<std::size_t>(k), static_cast<std::size_t>(q)) * berwald_[idx3(n, q, j, l)];
          }
          cartan2_[idx3(n, j, k, l)] = 0.5 * acc;
        }
      }
    }
    curv_.resize(nn * nn * nn);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          const auto ui = static_cast<std::size_t>(i);
          curv_[idx3(n, i, j, k)] = horizontal_partial(n_conn_(ui, static_cast<std::size_t>(j)), k) -
                                    horizontal_partial(n_conn_(ui, static_cast<std::size_t>(k)), j);
        }
      }
    }
  }
}

const JetMatrix& PointGeometry::matrix(Structure s) const {
  switch (s) {
    case Structure::kJ: return j_;
    case Structure::kH: return h_;
    case Structure::kV: return v_;
    case Structure::kGamma: return gamma_;
    case Structure::kF: return f_;
    case Structure::kOmega: return omega_;
    case Structure::kSasaki: return sasaki_;
  }
  throw Error("unknown structure");
}

LocalField PointGeometry::horizontal_basis(int k) const {
  LocalField e = coordinate_field(n_, k);
  for (int l = 0; l < n_; ++l) {
    e[static_cast<std::size_t>(n_ + l)] = -n_conn_(static_cast<std::size_t>(l), static_cast<std::size_t>(k));
  }
  return e;
}

LocalField PointGeometry::vertical_basis(int k) const { return coordinate_field(n_, n_ + k); }

Jet PointGeometry::horizontal_partial(const Jet& f, int k) const {
  Jet acc = partial(f, k);
  for (int l = 0; l < n_; ++l) {
    acc -= n_conn_(static_cast<std::size_t>(l), static_cast<std::size_t>(k)) * partial(f, n_ + l);
  }
  return acc;
}

const std::vector<Jet>& PointGeometry::require(const std::vector<Jet>& a, int needed) const {
  if (a.empty()) throw JetDepthError(needed, order_);
  return a;
}

const std::vector<Jet>& PointGeometry::cartan_lowered() const { return cartan_; }
const std::vector<Jet>& PointGeometry::cartan_second_lowered() const { return require(cartan2_, 4); }
const std::vector<Jet>& PointGeometry::curvature_coefficients() const { return require(curv_, 4); }
const std::vector<Jet>& PointGeometry::berwald_coefficients() const { return require(berwald_, 4); }

LocalField PointGeometry::raise_vertical(const std::vector<Jet>& lowered, const LocalField& x,
                                         const LocalField& y) const {
  const int n = n_;
  const auto nn = static_cast<std::size_t>(n);
  // w_l = T_jkl x^j y^k, then raise with g^{-1}.
  std::vector<Jet> w(nn);
  for (int j = 0; j < n; ++j) {
    const Jet& xj = x[static_cast<std::size_t>(j)];
    if (exact_zero(xj)) continue;
    for (int k = 0; k < n; ++k) {
      const Jet& yk = y[static_cast<std::size_t>(k)];
      if (exact_zero(yk)) continue;
      const Jet xy = xj * yk;
      for (int l = 0; l < n; ++l) w[static_cast<std::size_t>(l)] += lowered[idx3(n, j, k, l)] * xy;
    }
  }
  LocalField out = LocalField::zero(2 * nn);
  for (std::size_t m = 0; m < nn; ++m) {
    Jet acc;
    for (std::size_t l = 0; l < nn; ++l) acc += g_inv_(m, l) * w[l];
    out[nn + m] = acc;
  }
  return out;
}

LocalField PointGeometry::curvature(const LocalField& x, const LocalField& y) const {
  const auto& r = curvature_coefficients();
  const int n = n_;
  const auto nn = static_cast<std::size_t>(n);
  const double s = -convention_sign(options_.convention);
  LocalField out = LocalField::zero(2 * nn);
  for (int i = 0; i < n; ++i) {
    Jet acc;
    for (int j = 0; j < n; ++j) {
      const Jet& xj = x[static_cast<std::size_t>(j)];
      if (exact_zero(xj)) continue;
      for (int k = 0; k < n; ++k) {
        const Jet& yk = y[static_cast<std::size_t>(k)];
        if (exact_zero(yk)) continue;
        acc += r[idx3(n, i, j, k)] * xj * yk;
      }
    }
    out[nn + static_cast<std::size_t>(i)] = s * acc;
  }
  return out;
}

LocalField PointGeometry::curvature_fn(const LocalField& x, const LocalField& y) const {
  const VectorForm hh = VectorForm::from_matrix(h_);
  const double s = options_.convention == CurvatureConvention::kMinusHalf ? -0.5 : 0.5;
  return s * fn_bracket_11(hh, hh)(x, y);
}

LocalField PointGeometry::curvature_bracket(const LocalField& x, const LocalField& y) const {
  return -convention_sign(options_.convention) * v(lie_bracket(h(x), h(y)));
}

LocalField PointGeometry::cartan(const LocalField& x, const LocalField& y) const {
  // C_mjl x^m y^j, raised on the last slot; C is totally symmetric.
  return raise_vertical(cartan_, x, y);
}

LocalField PointGeometry::cartan_second(const LocalField& x, const LocalField& y) const {
  return raise_vertical(cartan_second_lowered(), x, y);
}

LocalField PointGeometry::solve_omega_transposed(std::vector<Jet> rhs) const {
  if (!omega_t_lu_) {
    throw SingularMatrixError("fundamental form singular", point_.coordinates(), 0.0);
  }
  return LocalField(omega_t_lu_->solve(rhs));
}

LocalField PointGeometry::cartan_intrinsic(const LocalField& x, const LocalField& y) const {
  const auto m = static_cast<std::size_t>(2 * n_);
  const JetMatrix pulled = j_.transposed() * sasaki_ * j_;
  const LocalField jx = J(x);
  std::vector<Jet> b(m);
  for (int l = 0; l < n_; ++l) {
    b[static_cast<std::size_t>(l)] = 0.5 * lie_derivative_metric(jx, pulled, y, coordinate_field(n_, l));
  }
  return solve_omega_transposed(std::move(b));
}

LocalField PointGeometry::cartan_second_intrinsic(const LocalField& x, const LocalField& y) const {
  const auto m = static_cast<std::size_t>(2 * n_);
  const LocalField hx = h(x);
  const LocalField jy = J(y);
  std::vector<Jet> b(m);
  for (int l = 0; l < n_; ++l) {
    b[static_cast<std::size_t>(l)] = 0.5 * lie_derivative_metric(hx, sasaki_, jy, J(coordinate_field(n_, l)));
  }
  return solve_omega_transposed(std::move(b));
}

FinslerStructure::FinslerStructure(std::string id, int dimension, EnergyFn energy, GeometryOptions options)
    : id_(std::move(id)), dim_(dimension), energy_(std::move(energy)), options_(options) {
  if (dimension < 1) throw ConfigError("dimension must be at least 1");
}

FinslerStructure::FinslerStructure(std::string id, const expr::EnergyExpr& energy, GeometryOptions options)
    : FinslerStructure(std::move(id), energy.dimension(),
                       [energy](std::span<const Jet> z) { return energy.evaluate_jet(z); }, options) {}

std::shared_ptr<const PointGeometry> FinslerStructure::at(const TMPoint& point, int order) const {
  if (point.dim() != dim_) throw ConfigError("point dimension does not match metric dimension");
  Key key{point.coordinates(), order};
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  // Built outside the lock; a concurrent duplicate is discarded.
  auto geo = std::make_shared<const PointGeometry>(energy_, point, order, options_);
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = cache_.emplace(std::move(key), geo);
  return it->second;
}

void FinslerStructure::clear_cache() const {
  std::lock_guard<std::mutex> lock(mutex_);
  cache_.clear();
}

}  // namespace finsler
