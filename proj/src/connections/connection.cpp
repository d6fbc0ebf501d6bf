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

#include "finsler/connection.hpp"

namespace finsler {

std::string_view to_string(ConnectionKind kind) {
  switch (kind) {
    case ConnectionKind::kBerwald: return "berwald";
    case ConnectionKind::kCartan: return "cartan";
    case ConnectionKind::kChern: return "chern";
  }
  return "unknown";
}

LinearConnection::LinearConnection(std::shared_ptr<const PointGeometry> geometry, ConnectionKind kind,
                                   ConnectionOptions options)
    : geo_(std::move(geometry)), kind_(kind), options_(options) {
  if (!geo_) throw Error("connection needs geometry");
}

LocalField LinearConnection::cartan(const LocalField& x, const LocalField& y) const {
  return options_.intrinsic_tensors ? geo_->cartan_intrinsic(x, y) : geo_->cartan(x, y);
}

LocalField LinearConnection::cartan_second(const LocalField& x, const LocalField& y) const {
  return options_.intrinsic_tensors ? geo_->cartan_second_intrinsic(x, y) : geo_->cartan_second(x, y);
}

LocalField LinearConnection::vertical_rule(const LocalField& x, const LocalField& w) const {
  const PointGeometry& g = *geo_;
  LocalField out = g.v(lie_bracket(g.h(x), g.J(w))) + g.J(lie_bracket(g.v(x), w));
  switch (kind_) {
    case ConnectionKind::kBerwald:
      break;
    case ConnectionKind::kCartan:
      out += options_.cprime_sign * cartan_second(x, w);
      out += cartan(g.F(x), w);
      break;
    case ConnectionKind::kChern:
      out += options_.cprime_sign * cartan_second(x, w);
      break;
  }
  return out;
}

LocalField LinearConnection::covariant(const LocalField& x, const LocalField& y) const {
  return vertical_rule(x, geo_->F(y)) + geo_->F(vertical_rule(x, y));
}

LocalField LinearConnection::torsion(const LocalField& x, const LocalField& y) const {
  return covariant(x, y) - covariant(y, x) - lie_bracket(x, y);
}

LocalField LinearConnection::curvature(const LocalField& x, const LocalField& y, const LocalField& z) const {
  return covariant(x, covariant(y, z)) - covariant(y, covariant(x, z)) - covariant(lie_bracket(x, y), z);
}

LocalField LinearConnection::h_curvature(const LocalField& x, const LocalField& y, const LocalField& z) const {
  return curvature(geo_->h(x), geo_->h(y), geo_->J(z));
}

LocalField LinearConnection::hv_curvature(const LocalField& x, const LocalField& y, const LocalField& z) const {
  return curvature(geo_->h(x), geo_->J(y), geo_->J(z));
}

LocalField LinearConnection::v_curvature(const LocalField& x, const LocalField& y, const LocalField& z) const {
  return curvature(geo_->J(x), geo_->J(y), geo_->J(z));
}

Jet LinearConnection::metric_derivative(const LocalField& x, const LocalField& y, const LocalField& z) const {
  const PointGeometry& g = *geo_;
  return directional(x, g.metric(y, z)) - g.metric(covariant(x, y), z) - g.metric(y, covariant(x, z));
}

LocalField LinearConnection::derivative(const LocalField& w, const Tensor2& t, const LocalField& x,
                                        const LocalField& y) const {
  return covariant(w, t(x, y)) - t(covariant(w, x), y) - t(x, covariant(w, y));
}

LocalField LinearConnection::derivative(const LocalField& w, const Tensor3& t, const LocalField& x,
                                        const LocalField& y, const LocalField& z) const {
  return covariant(w, t(x, y, z)) - t(covariant(w, x), y, z) - t(x, covariant(w, y), z) -
         t(x, y, covariant(w, z));
}

std::vector<double> LinearConnection::horizontal_coefficients() const {
  const int n = geo_->dim();
  const auto nn = static_cast<std::size_t>(n);
  std::vector<double> out(nn * nn * nn);
  for (int j = 0; j < n; ++j) {
    const LocalField dj = geo_->horizontal_basis(j);
    for (int k = 0; k < n; ++k) {
      const LocalField r = covariant(dj, geo_->vertical_basis(k));
      for (int i = 0; i < n; ++i) {
        out[(static_cast<std::size_t>(i) * nn + static_cast<std::size_t>(j)) * nn + static_cast<std::size_t>(k)] =
            r[nn + static_cast<std::size_t>(i)].value();
      }
    }
  }
  return out;
}

std::vector<double> LinearConnection::vertical_coefficients() const {
  const int n = geo_->dim();
  const auto nn = static_cast<std::size_t>(n);
  std::vector<double> out(nn * nn * nn);
  for (int j = 0; j < n; ++j) {
    const LocalField dj = geo_->vertical_basis(j);
    for (int k = 0; k < n; ++k) {
      const LocalField r = covariant(dj, geo_->vertical_basis(k));
      for (int i = 0; i < n; ++i) {
        out[(static_cast<std::size_t>(i) * nn + static_cast<std::size_t>(j)) * nn + static_cast<std::size_t>(k)] =
            r[nn + static_cast<std::size_t>(i)].value();
      }
    }
  }
  return out;
}

}  // namespace finsler
