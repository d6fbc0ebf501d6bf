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

// Berwald, Cartan and Chern connections as covariant-derivative operators
// on germs.
//
// Each connection is fixed by its value on vertical targets,
//   A(X, W) := nabla_X JW = v[hX, JW] + J[vX, W] + correction(X, W),
// with corrections
//   Berwald  0
//   Cartan   C'(X, W) + C(FX, W)
//   Chern    C'(X, W)
// and extended to arbitrary targets through nabla F = 0. Since vY = J(FY)
// and hY = F(JY),
//   nabla_X Y = A(X, FY) + F A(X, Y).

#include <functional>
#include <memory>
#include <string_view>
#include <vector>

#include "finsler/geometry.hpp"

namespace finsler {

enum class ConnectionKind { kBerwald, kCartan, kChern };

std::string_view to_string(ConnectionKind kind);

struct ConnectionOptions {
  /// Multiplier on the C' correction. Anything but 1 breaks the connection;
  /// used to check that the verification suite notices.
  double cprime_sign = 1.0;
  /// Use the Lie-derivative realizations of C and C' instead of the
  /// coordinate formulas.
  bool intrinsic_tensors = false;
};

using Tensor2 = std::function<LocalField(const LocalField&, const LocalField&)>;
using Tensor3 = std::function<LocalField(const LocalField&, const LocalField&, const LocalField&)>;

class LinearConnection {
 public:
  LinearConnection(std::shared_ptr<const PointGeometry> geometry, ConnectionKind kind,
                   ConnectionOptions options = {});

  ConnectionKind kind() const noexcept { return kind_; }
  const PointGeometry& geometry() const noexcept { return *geo_; }

  /// nabla_X Y. The result carries one order less than the lower of the
  /// inputs and the connection data.
  LocalField covariant(const LocalField& x, const LocalField& y) const;
  /// nabla_X JW.
  LocalField vertical_rule(const LocalField& x, const LocalField& w) const;

  /// T(X,Y) = nabla_X Y - nabla_Y X - [X,Y].
  LocalField torsion(const LocalField& x, const LocalField& y) const;
  /// K(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
  LocalField curvature(const LocalField& x, const LocalField& y, const LocalField& z) const;
  /// K(hX,hY)JZ, K(hX,JY)JZ and K(JX,JY)JZ.
  LocalField h_curvature(const LocalField& x, const LocalField& y, const LocalField& z) const;
  LocalField hv_curvature(const LocalField& x, const LocalField& y, const LocalField& z) const;
  LocalField v_curvature(const LocalField& x, const LocalField& y, const LocalField& z) const;

  /// (nabla_X g)(Y,Z) for the Sasaki-type metric.
  Jet metric_derivative(const LocalField& x, const LocalField& y, const LocalField& z) const;

  /// (nabla_W T)(X,Y) = nabla_W(T(X,Y)) - T(nabla_W X, Y) - T(X, nabla_W Y).
  LocalField derivative(const LocalField& w, const Tensor2& t, const LocalField& x, const LocalField& y) const;
  /// Three-slot version of the same Leibniz extension.
  LocalField derivative(const LocalField& w, const Tensor3& t, const LocalField& x, const LocalField& y,
                        const LocalField& z) const;

  /// Coefficients at the base point, row-major over (i, j, k):
  ///   nabla_{delta_j} d/dy^k = H^i_jk d/dy^i
  ///   nabla_{d/dy^j} d/dy^k = V^i_jk d/dy^i
  std::vector<double> horizontal_coefficients() const;
  std::vector<double> vertical_coefficients() const;

 private:
  LocalField cartan(const LocalField& x, const LocalField& y) const;
  LocalField cartan_second(const LocalField& x, const LocalField& y) const;

  std::shared_ptr<const PointGeometry> geo_;
  ConnectionKind kind_;
  ConnectionOptions options_;
};

}  // namespace finsler
