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

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "finsler/compute.hpp"
#include "finsler/connection.hpp"
#include "finsler/metrics.hpp"
#include "finsler/verify.hpp"

namespace finsler {
namespace {

std::size_t at3(int i, int j, int k) { return static_cast<std::size_t>((i * 2 + j) * 2 + k); }

const ConnectionComponents& component(const PointComputation& c, ConnectionKind kind) {
  return *std::find_if(c.connections.begin(), c.connections.end(),
                       [&](const ConnectionComponents& x) { return x.kind == kind; });
}

struct Fixture {
  MetricSpec spec = builtin_metric("randers-curved");
  FinslerStructure structure = spec.structure();
  std::vector<TMPoint> points = sample_points(spec, 6, 21);
};

TEST(Connections, CoordinateCoefficients) {
  Fixture f;
  for (const TMPoint& p : f.points) {
    const PointComputation c = compute_at(f.spec, p);
    const auto& berwald = component(c, ConnectionKind::kBerwald);
    const auto& cartan = component(c, ConnectionKind::kCartan);
    const auto& chern = component(c, ConnectionKind::kChern);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
          // Berwald horizontal part is G^i_jk; Chern shares Cartan's horizontal part.
          EXPECT_NEAR(berwald.horizontal[at3(i, j, k)], c.berwald[at3(i, j, k)], 1e-12);
          EXPECT_NEAR(chern.horizontal[at3(i, j, k)], cartan.horizontal[at3(i, j, k)], 1e-12);
          EXPECT_NEAR(chern.horizontal[at3(i, j, k)], chern.horizontal[at3(i, k, j)], 1e-12);
          // Berwald and Chern are flat along fibers; Cartan's vertical part is C^i_jk.
          EXPECT_NEAR(berwald.vertical[at3(i, j, k)], 0.0, 1e-12);
          EXPECT_NEAR(chern.vertical[at3(i, j, k)], 0.0, 1e-12);
          double cup = 0.0;
          for (int l = 0; l < 2; ++l) {
            cup += c.g_inv[static_cast<std::size_t>(i * 2 + l)] * c.cartan[at3(l, j, k)];
          }
          EXPECT_NEAR(cartan.vertical[at3(i, j, k)], cup, 1e-12);
          // H^i_jk of Chern minus G^i_jk is the raised C'_jk^i.
          double cprime = 0.0;
          for (int l = 0; l < 2; ++l) {
            cprime += c.g_inv[static_cast<std::size_t>(i * 2 + l)] * c.cartan_second[at3(j, k, l)];
          }
          EXPECT_NEAR(chern.horizontal[at3(i, j, k)] - c.berwald[at3(i, j, k)], cprime, 1e-11);
        }
      }
    }
  }
}

TEST(Connections, Metricity) {
  Fixture f;
  double berwald_h = 0.0;
  for (std::size_t p = 0; p < f.points.size(); ++p) {
    const auto geo = f.structure.at(f.points[p], 4);
    const auto a = verify::argument_fields(*geo, 100 + p);
    const LinearConnection berwald(geo, ConnectionKind::kBerwald);
    const LinearConnection cartan(geo, ConnectionKind::kCartan);
    const LinearConnection chern(geo, ConnectionKind::kChern);
    EXPECT_NEAR(cartan.metric_derivative(a.X, a.Y, a.Z).value(), 0.0, 1e-10);
    EXPECT_NEAR(chern.metric_derivative(geo->h(a.X), a.Y, a.Z).value(), 0.0, 1e-10);
    berwald_h = std::max(berwald_h, std::abs(berwald.metric_derivative(geo->h(a.X), a.Y, a.Z).value()));
  }
  EXPECT_GT(berwald_h, 1e-4);
}

TEST(Connections, TorsionRows) {
  Fixture f;
  for (std::size_t p = 0; p < f.points.size(); ++p) {
    const auto geo = f.structure.at(f.points[p], 4);
    const auto a = verify::argument_fields(*geo, 200 + p);
    for (ConnectionKind k : {ConnectionKind::kBerwald, ConnectionKind::kCartan, ConnectionKind::kChern}) {
      const LinearConnection d(geo, k);
      EXPECT_LT(d.torsion(geo->J(a.X), geo->J(a.Y)).norm(), 1e-10) << to_string(k);
      EXPECT_LT((d.torsion(geo->h(a.X), geo->h(a.Y)) - geo->curvature(a.X, a.Y)).norm(), 1e-9) << to_string(k);
    }
    const LinearConnection chern(geo, ConnectionKind::kChern);
    EXPECT_LT((chern.torsion(geo->h(a.X), geo->J(a.Y)) - geo->cartan_second(a.X, a.Y)).norm(), 1e-9);
  }
}

TEST(Connections, CovariantDerivativeIsFunctionLinearInDirection) {
  Fixture f;
  const auto geo = f.structure.at(f.points.front(), 4);
  const auto a = verify::argument_fields(*geo, 7);
  const LinearConnection d(geo, ConnectionKind::kChern);
  EXPECT_LT((d.covariant(a.f * a.X, a.Y) - a.f * d.covariant(a.X, a.Y)).norm(), 1e-10);
  // Leibniz in the target.
  EXPECT_LT((d.covariant(a.X, a.f * a.Y) - (a.f * d.covariant(a.X, a.Y) + directional(a.X, a.f) * a.Y)).norm(),
            1e-10);
}

TEST(Connections, CorruptedCprimeBreaksChernHMetricity) {
  Fixture f;
  ConnectionOptions corrupt;
  corrupt.cprime_sign = -1.0;
  const auto& def = verify::find_identity("chern.h_metric");
  double clean = 0.0, broken = 0.0;
  for (std::size_t p = 0; p < f.points.size(); ++p) {
    clean = std::max(clean, verify::evaluate_identity(def, f.structure, f.points[p], p).normalized);
    broken = std::max(broken, verify::evaluate_identity(def, f.structure, f.points[p], p, corrupt).normalized);
  }
  EXPECT_LT(clean, def.tolerance);
  EXPECT_GT(broken, 1e-3);
}

TEST(Connections, IntrinsicTensorsAgreeWithCoordinatePaths) {
  Fixture f;
  ConnectionOptions intrinsic;
  intrinsic.intrinsic_tensors = true;
  for (std::size_t p = 0; p < 3; ++p) {
    const auto geo = f.structure.at(f.points[p], 4);
    const auto a = verify::argument_fields(*geo, 300 + p);
    const LinearConnection plain(geo, ConnectionKind::kCartan);
    const LinearConnection alt(geo, ConnectionKind::kCartan, intrinsic);
    EXPECT_LT((plain.covariant(a.X, a.Y) - alt.covariant(a.X, a.Y)).norm(), 1e-9);
  }
}

TEST(Connections, RiemannianConnectionsCoincide) {
  const MetricSpec spec = builtin_metric("riemannian-sphere2");
  const FinslerStructure s = spec.structure();
  for (const TMPoint& p : sample_points(spec, 4, 5)) {
    const auto geo = s.at(p, 4);
    const auto a = verify::argument_fields(*geo, 11);
    const LocalField b = LinearConnection(geo, ConnectionKind::kBerwald).covariant(a.X, a.Y);
    const LocalField c = LinearConnection(geo, ConnectionKind::kCartan).covariant(a.X, a.Y);
    const LocalField d = LinearConnection(geo, ConnectionKind::kChern).covariant(a.X, a.Y);
    EXPECT_LT((b - c).norm(), 1e-10);
    EXPECT_LT((b - d).norm(), 1e-10);
  }
}

TEST(Compare, TableVerdicts) {
  const CompareResult r = compare_connections(builtin_metric("randers-curved"), 6, 1);
  ASSERT_EQ(r.columns.size(), 3u);
  const auto& berwald = r.columns[0];
  const auto& cartan = r.columns[1];
  const auto& chern = r.columns[2];
  EXPECT_GT(berwald.h_metricity.value, 1e-4);
  EXPECT_LT(cartan.h_metricity.value, r.metricity_tolerance);
  EXPECT_LT(cartan.v_metricity.value, r.metricity_tolerance);
  EXPECT_LT(chern.h_metricity.value, r.metricity_tolerance);
  EXPECT_GT(chern.v_metricity.value, 1e-4);
  for (const auto& c : r.columns) {
    EXPECT_LT(c.h_torsion_residual.value, 1e-7);
    EXPECT_LT(c.hv_torsion_residual.value, 1e-7);
    EXPECT_LT(c.v_torsion_norm.value, 1e-9);
    EXPECT_LT(c.h_curvature_residual.value, 1e-6);
    EXPECT_LT(c.hv_curvature_residual.value, 1e-6);
    EXPECT_LT(c.v_curvature_residual.value, 1e-6);
  }
  EXPECT_LT(chern.v_curvature_norm.value, 1e-9);
  EXPECT_GT(chern.hv_torsion_norm.value, 1e-4);
}

TEST(Compare, SphereColumnsCoincide) {
  const CompareResult r = compare_connections(builtin_metric("riemannian-sphere2"), 5, 2);
  EXPECT_LT(r.connection_spread.value, 1e-10);
}

TEST(Compare, MinkowskiHasNoNonlinearCurvature) {
  const CompareResult r = compare_connections(builtin_metric("minkowski-quartic"), 5, 3);
  EXPECT_LT(r.h_torsion_norm.value, 1e-10);
}

}  // namespace
}  // namespace finsler
