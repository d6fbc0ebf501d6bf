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

#include "finsler/compute.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <string>

#include "finsler/errors.hpp"
#include "finsler/verify.hpp"

namespace finsler {

namespace {

constexpr int kComponentOrder = 5;

std::vector<double> values_of(const std::vector<Jet>& a) {
  std::vector<double> out;
  out.reserve(a.size());
  for (const Jet& j : a) out.push_back(j.value());
  return out;
}

void check_domain(const MetricSpec& spec, const TMPoint& point) {
  if (point.dim() != spec.dimension) {
    throw ConfigError("point has dimension " + std::to_string(point.dim()) + ", metric `" + spec.id + "` has " +
                      std::to_string(spec.dimension));
  }
  for (int i = 0; i < spec.dimension; ++i) {
    const auto [lo, hi] = spec.domain[static_cast<std::size_t>(i)];
    const double x = point.x()[static_cast<std::size_t>(i)];
    if (x < lo || x > hi) {
      throw DomainError("point " + point.to_string() + " outside the metric domain in x" + std::to_string(i + 1));
    }
  }
}

// y-components of K(a, b) c over basis triples.
template <typename First, typename Second>
std::vector<double> curvature_block(const LinearConnection& d, const First& first, const Second& second, int n) {
  const auto nn = static_cast<std::size_t>(n);
  std::vector<double> out(nn * nn * nn * nn);
  const PointGeometry& g = d.geometry();
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        const LocalField r = d.curvature(first(j), second(k), g.vertical_basis(l));
        for (int i = 0; i < n; ++i) {
          out[((static_cast<std::size_t>(i) * nn + static_cast<std::size_t>(j)) * nn + static_cast<std::size_t>(k)) *
                  nn +
              static_cast<std::size_t>(l)] = r[nn + static_cast<std::size_t>(i)].value();
        }
      }
    }
  }
  return out;
}

void record(SampleMax& m, double value, int point, const std::vector<TMPoint>& points, std::uint64_t seed) {
  if (m.point < 0 || value > m.value) {
    m.value = value;
    m.point = point;
    m.point_text = points[static_cast<std::size_t>(point)].to_string();
    m.seed = seed;
  }
}

double residual_of(const std::string& label, const std::shared_ptr<const PointGeometry>& geo, std::uint64_t seed) {
  return verify::evaluate_identity(verify::find_identity(label), geo, seed).normalized;
}

}  // namespace

PointComputation compute_at(const MetricSpec& spec, const TMPoint& point) {
  check_domain(spec, point);
  const FinslerStructure structure = spec.structure();
  const auto geo = std::make_shared<const PointGeometry>(structure.energy(), point, kComponentOrder,
                                                         structure.options());
  const int n = geo->dim();
  PointComputation out(point);
  out.dim = n;
  out.energy = geo->energy().value();
  out.condition = geo->condition();
  out.g = geo->fundamental_tensor().values();
  out.g_inv = geo->fundamental_tensor_inverse().values();
  out.spray = values_of(geo->spray_coefficients());
  out.nonlinear = geo->nonlinear_connection().values();
  out.cartan = values_of(geo->cartan_lowered());
  out.cartan_second = values_of(geo->cartan_second_lowered());
  out.curvature = values_of(geo->curvature_coefficients());
  out.berwald = values_of(geo->berwald_coefficients());

  const auto horizontal = [&](int k) { return geo->horizontal_basis(k); };
  const auto vertical = [&](int k) { return geo->vertical_basis(k); };
  for (ConnectionKind kind : {ConnectionKind::kBerwald, ConnectionKind::kCartan, ConnectionKind::kChern}) {
    const LinearConnection d(geo, kind);
    ConnectionComponents c;
    c.kind = kind;
    c.horizontal = d.horizontal_coefficients();
    c.vertical = d.vertical_coefficients();
    const auto nn = static_cast<std::size_t>(n);
    c.hv_torsion.assign(2 * nn * nn * nn, 0.0);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const LocalField t = d.torsion(horizontal(j), vertical(k));
        for (std::size_t a = 0; a < 2 * nn; ++a) {
          c.hv_torsion[(a * nn + static_cast<std::size_t>(j)) * nn + static_cast<std::size_t>(k)] = t[a].value();
        }
      }
    }
    c.h_curvature = curvature_block(d, horizontal, horizontal, n);
    c.hv_curvature = curvature_block(d, horizontal, vertical, n);
    c.v_curvature = curvature_block(d, vertical, vertical, n);
    out.connections.push_back(std::move(c));
  }
  return out;
}

CompareResult compare_connections(const MetricSpec& spec, int samples, std::uint64_t seed,
                                  double metricity_tolerance) {
  if (samples < 1) throw ConfigError("sample count must be at least 1");
  CompareResult out;
  out.metric_id = spec.id;
  out.metricity_tolerance = metricity_tolerance;
  out.points = sample_points(spec, samples, seed);
  const FinslerStructure structure = spec.structure();
  const ConnectionKind kinds[] = {ConnectionKind::kBerwald, ConnectionKind::kCartan, ConnectionKind::kChern};
  // h, hv and v curvature rows of the comparison table, per connection.
  const std::array<std::array<std::string, 3>, 3> curvature_rows = {{
      {"berwald.h_curvature_table", "berwald.hv_curvature_table", "berwald.v_curvature"},
      {"cartan.h_curvature_table", "cartan.hv_curvature_table", "cartan.v_curvature_table"},
      {"chern.h_curvature_relation", "chern.hv_curvature_relation", "chern.v_curvature"},
  }};
  for (ConnectionKind k : kinds) {
    ConnectionColumn c;
    c.kind = k;
    out.columns.push_back(c);
  }

  for (int p = 0; p < samples; ++p) {
    const auto geo = std::make_shared<const PointGeometry>(structure.energy(), out.points[static_cast<std::size_t>(p)],
                                                           kComponentOrder, structure.options());
    const std::uint64_t s = verify::field_seed(seed, p, "compare");
    const verify::ArgumentFields a = verify::argument_fields(*geo, s);
    const PointGeometry& g = *geo;
    record(out.h_torsion_norm, g.curvature(a.X, a.Y).norm(), p, out.points, s);

    std::vector<LocalField> nablas;
    for (std::size_t i = 0; i < 3; ++i) {
      const LinearConnection d(geo, kinds[i]);
      const std::string name(to_string(kinds[i]));
      ConnectionColumn& c = out.columns[i];
      nablas.push_back(d.covariant(a.X, a.Y));
      record(c.h_torsion_residual, residual_of(name + ".torsion_hh", geo, s), p, out.points, s);
      record(c.hv_torsion_norm, d.torsion(g.h(a.X), g.J(a.Y)).norm(), p, out.points, s);
      record(c.hv_torsion_residual, residual_of(name + ".torsion_hv", geo, s), p, out.points, s);
      record(c.v_torsion_norm, d.torsion(g.J(a.X), g.J(a.Y)).norm(), p, out.points, s);
      const auto& rows = curvature_rows[i];
      record(c.h_curvature_residual, residual_of(rows[0], geo, s), p, out.points, s);
      record(c.hv_curvature_residual, residual_of(rows[1], geo, s), p, out.points, s);
      record(c.v_curvature_norm, d.v_curvature(a.X, a.Y, a.Z).norm(), p, out.points, s);
      record(c.v_curvature_residual, residual_of(rows[2], geo, s), p, out.points, s);
      record(c.h_metricity, std::abs(d.metric_derivative(g.h(a.X), a.Y, a.Z).value()), p, out.points, s);
      record(c.v_metricity, std::abs(d.metric_derivative(g.J(a.X), a.Y, a.Z).value()), p, out.points, s);
    }
    double spread = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = i + 1; j < 3; ++j) spread = std::max(spread, (nablas[i] - nablas[j]).norm());
    }
    record(out.connection_spread, spread, p, out.points, s);
  }
  return out;
}

}  // namespace finsler
