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

// Canonical geometry of a Finsler energy at a point of TM.
//
// Everything is a germ: jets around the base point in all 2n coordinates.
// If E is carried to order K, then the fundamental tensor and spray
// coefficients carry K-2 orders, the nonlinear connection and everything
// built from it (projectors, almost-complex structure, Sasaki metric)
// K-3, and the Cartan tensor of the second kind and the curvature of the
// nonlinear connection K-4.
//
// Block layout of 2n-vectors: x-components first, then y-components. In
// that layout
//   J = [[0, 0], [I, 0]]     h = [[I, 0], [-N, 0]]     v = I - h
//   F = [[N, I], [-I - N^2, -N]]
// with N^i_j = dG^i/dy^j, so that F J = h and F h = -J.

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "finsler/expr.hpp"
#include "finsler/field.hpp"
#include "finsler/forms.hpp"

namespace finsler {

/// Energy given on coordinate jets z = (x, y).
using EnergyFn = std::function<Jet(std::span<const Jet>)>;

struct GeometryOptions {
  CurvatureConvention convention = CurvatureConvention::kMinusHalf;
  /// Relative pivot threshold below which g (or the fundamental form) is
  /// treated as singular.
  double singular_tolerance = 1e-10;
};

/// Smallest energy order the geometry can be built from (N needs three
/// derivatives of E).
inline constexpr int kMinGeometryOrder = 3;

enum class Structure { kJ, kH, kV, kGamma, kF, kOmega, kSasaki };

class PointGeometry {
 public:
  /// Throws JetOrderError for order outside [kMinGeometryOrder,
  /// kMaxJetOrder] and SingularMatrixError when g is singular at the point.
  PointGeometry(const EnergyFn& energy, const TMPoint& point, int order, GeometryOptions options = {});

  int dim() const noexcept { return n_; }
  int order() const noexcept { return order_; }
  const TMPoint& point() const noexcept { return point_; }
  const GeometryOptions& options() const noexcept { return options_; }
  /// Seeded coordinate jets at the base point, order K.
  const std::vector<Jet>& coordinates() const noexcept { return z_; }

  const Jet& energy() const noexcept { return energy_; }
  /// g_ij = d^2E/dy^i dy^j.
  const JetMatrix& fundamental_tensor() const noexcept { return g_; }
  const JetMatrix& fundamental_tensor_inverse() const noexcept { return g_inv_; }
  /// 1-norm condition number of g at the base point.
  double condition() const noexcept { return condition_; }
  /// G^i, with the spray S = y^i d/dx^i - 2 G^i d/dy^i.
  const std::vector<Jet>& spray_coefficients() const noexcept { return spray_g_; }
  /// N^i_j = dG^i/dy^j, stored as N(i, j).
  const JetMatrix& nonlinear_connection() const noexcept { return n_conn_; }
  const JetMatrix& matrix(Structure s) const;

  const LocalField& spray() const noexcept { return spray_; }
  const LocalField& liouville() const noexcept { return liouville_; }

  LocalField J(const LocalField& x) const { return j_.apply(x); }
  LocalField h(const LocalField& x) const { return h_.apply(x); }
  LocalField v(const LocalField& x) const { return v_.apply(x); }
  LocalField F(const LocalField& x) const { return f_.apply(x); }
  LocalField gamma(const LocalField& x) const { return gamma_.apply(x); }

  /// Fundamental form Omega(X, Y) = dd_J E (X, Y).
  Jet omega(const LocalField& x, const LocalField& y) const { return omega_.pair(x, y); }
  /// Sasaki-type metric g(X, Y) = Omega(X, F Y).
  Jet metric(const LocalField& x, const LocalField& y) const { return sasaki_.pair(x, y); }

  /// Horizontal lift delta_k = d/dx^k - N^l_k d/dy^l and vertical d/dy^k.
  LocalField horizontal_basis(int k) const;
  LocalField vertical_basis(int k) const;
  /// delta_k f.
  Jet horizontal_partial(const Jet& f, int k) const;

  /// Curvature of the nonlinear connection from the coordinate formula
  ///   Re(X,Y)^{y_i} = -R^i_jk X^j Y^k,   R^i_jk = delta_k N^i_j - delta_j N^i_k
  /// (sign flipped under the +1/2 convention).
  LocalField curvature(const LocalField& x, const LocalField& y) const;
  /// The same curvature from the bracket of vector forms, s [h,h](X,Y).
  LocalField curvature_fn(const LocalField& x, const LocalField& y) const;
  /// The same curvature as -v[hX, hY] (sign flipped under +1/2).
  LocalField curvature_bracket(const LocalField& x, const LocalField& y) const;

  /// First Cartan tensor, coordinate path:
  ///   C(X,Y)^{y_k} = g^{ki} C_mji X^m Y^j,   C_ijk = 1/2 dg_ij/dy^k.
  LocalField cartan(const LocalField& x, const LocalField& y) const;
  /// Solution of Omega(C(X,Y), Z) = 1/2 (L_{JX} J*g)(Y, Z).
  LocalField cartan_intrinsic(const LocalField& x, const LocalField& y) const;
  /// Second Cartan tensor, coordinate path:
  ///   C'(X,Y)^{y_m} = g^{ml} C'_jkl X^j Y^k,
  ///   C'_jkl = 1/2 (delta_j g_kl - g_ml G^m_jk - g_km G^m_jl),  G^m_jk = dN^m_j/dy^k.
  LocalField cartan_second(const LocalField& x, const LocalField& y) const;
  /// Solution of Omega(C'(X,Y), Z) = 1/2 (L_{hX} g)(JY, JZ).
  LocalField cartan_second_intrinsic(const LocalField& x, const LocalField& y) const;

  /// Index arrays (row-major over the listed indices).
  const std::vector<Jet>& cartan_lowered() const;         // C_ijk
  const std::vector<Jet>& cartan_second_lowered() const;  // C'_jkl
  const std::vector<Jet>& curvature_coefficients() const; // R^i_jk
  const std::vector<Jet>& berwald_coefficients() const;   // G^i_jk

 private:
  const std::vector<Jet>& require(const std::vector<Jet>& a, int needed) const;
  LocalField solve_omega_transposed(std::vector<Jet> rhs) const;
  LocalField raise_vertical(const std::vector<Jet>& lowered, const LocalField& x, const LocalField& y) const;

  int n_;
  int order_;
  TMPoint point_;
  GeometryOptions options_;
  std::vector<Jet> z_;
  Jet energy_;
  JetMatrix g_, g_inv_;
  double condition_ = 0.0;
  std::vector<Jet> spray_g_;
  JetMatrix n_conn_;
  JetMatrix j_, h_, v_, gamma_, f_, omega_, sasaki_;
  std::optional<JetLU> omega_t_lu_;
  LocalField spray_, liouville_;
  std::vector<Jet> cartan_, cartan2_, curv_, berwald_;
};

/// A Finsler structure: an energy plus per-point memoized geometry.
class FinslerStructure {
 public:
  FinslerStructure(std::string id, int dimension, EnergyFn energy, GeometryOptions options = {});
  /// Convenience for parsed energies.
  FinslerStructure(std::string id, const expr::EnergyExpr& energy, GeometryOptions options = {});

  const std::string& id() const noexcept { return id_; }
  int dim() const noexcept { return dim_; }
  const EnergyFn& energy() const noexcept { return energy_; }
  const GeometryOptions& options() const noexcept { return options_; }

  /// Geometry at the point with E carried to `order`. Results are cached
  /// by exact point coordinates and order; safe to call concurrently.
  std::shared_ptr<const PointGeometry> at(const TMPoint& point, int order) const;

  void clear_cache() const;

 private:
  using Key = std::pair<std::vector<double>, int>;

  std::string id_;
  int dim_;
  EnergyFn energy_;
  GeometryOptions options_;
  mutable std::mutex mutex_;
  mutable std::map<Key, std::shared_ptr<const PointGeometry>> cache_;
};

}  // namespace finsler
