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

#include <cmath>
#include <thread>
#include <vector>

#include "finsler/compute.hpp"
#include "finsler/errors.hpp"
#include "finsler/geometry.hpp"
#include "finsler/metrics.hpp"
#include "levi_civita.hpp"

namespace finsler {
namespace {

std::size_t at3(int n, int i, int j, int k) {
  return (static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)) *
             static_cast<std::size_t>(n) +
         static_cast<std::size_t>(k);
}
std::size_t at4(int n, int i, int j, int k, int l) {
  return at3(n, i, j, k) * static_cast<std::size_t>(n) + static_cast<std::size_t>(l);
}

// Stereographic round sphere a = 4/(1+|x|^2)^2 delta, a conformal metric
// e^{2 phi} delta with d_k phi = -2 x_k / (1 + |x|^2).
double sphere_christoffel(const std::vector<double>& x, int i, int j, int k) {
  const double s = 1.0 + x[0] * x[0] + x[1] * x[1];
  auto dphi = [&](int m) { return -2.0 * x[static_cast<std::size_t>(m)] / s; };
  return (i == j ? dphi(k) : 0.0) + (i == k ? dphi(j) : 0.0) - (j == k ? dphi(i) : 0.0);
}

TEST(Geometry, EuclideanIsTrivial) {
  const PointComputation c = compute_at(builtin_metric("euclidean-2"), TMPoint({0.0, 0.0}, {1.0, 0.0}));
  EXPECT_EQ(c.g, (std::vector<double>{1.0, 0.0, 0.0, 1.0}));
  for (double v : c.spray) EXPECT_EQ(v, 0.0);
  for (double v : c.nonlinear) EXPECT_EQ(v, 0.0);
  for (double v : c.cartan) EXPECT_EQ(v, 0.0);
  for (double v : c.curvature) EXPECT_EQ(v, 0.0);
}

TEST(Geometry, SphereMatchesChristoffelOracle) {
  const MetricSpec spec = builtin_metric("riemannian-sphere2");
  for (const TMPoint& p : sample_points(spec, 8, 3)) {
    const PointComputation c = compute_at(spec, p);
    const auto& x = p.x();
    const auto& y = p.y();
    for (int i = 0; i < 2; ++i) {
      double g = 0.0;
      for (int j = 0; j < 2; ++j) {
        double n = 0.0;
        for (int k = 0; k < 2; ++k) {
          n += sphere_christoffel(x, i, j, k) * y[static_cast<std::size_t>(k)];
          g += 0.5 * sphere_christoffel(x, i, j, k) * y[static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(k)];
          EXPECT_NEAR(c.berwald[at3(2, i, j, k)], sphere_christoffel(x, i, j, k), 1e-12);
        }
        EXPECT_NEAR(c.nonlinear[static_cast<std::size_t>(i * 2 + j)], n, 1e-12);
      }
      EXPECT_NEAR(c.spray[static_cast<std::size_t>(i)], g, 1e-12);
    }
  }
}

TEST(Geometry, SphereHasConstantCurvatureOne) {
  const MetricSpec spec = builtin_metric("riemannian-sphere2");
  for (const TMPoint& p : sample_points(spec, 5, 4)) {
    const PointComputation c = compute_at(spec, p);
    // Riem^i_ljk = K (delta^i_j a_lk - delta^i_k a_lj) with K = 1.
    const double a = c.g[0];
    for (const auto& conn : c.connections) {
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          for (int k = 0; k < 2; ++k) {
            for (int l = 0; l < 2; ++l) {
              const double expected = ((i == j) * (l == k) - (i == k) * (l == j)) * a;
              EXPECT_NEAR(conn.h_curvature[at4(2, i, j, k, l)], expected, 1e-10);
            }
          }
        }
      }
    }
  }
}

class RiemannianGeneral : public ::testing::TestWithParam<int> {};

TEST_P(RiemannianGeneral, ConnectionsMatchLeviCivita) {
  const int n = GetParam();
  const std::uint64_t seed = 5;
  const MetricSpec spec = builtin_metric("riemannian-general:5:" + std::to_string(n));
  const PolynomialMetric a = riemannian_general_coefficients(seed, n);
  for (const TMPoint& p : sample_points(spec, 4, 9)) {
    const testing::LeviCivita lc(a, p.x());
    const PointComputation c = compute_at(spec, p);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          for (const auto& conn : c.connections) {
            EXPECT_NEAR(conn.horizontal[at3(n, i, j, k)], lc.christoffel(i, j, k), 1e-10);
            EXPECT_NEAR(conn.vertical[at3(n, i, j, k)], 0.0, 1e-10);
          }
          double r = 0.0;
          for (int l = 0; l < n; ++l) r += lc.riemann(i, l, k, j) * p.y()[static_cast<std::size_t>(l)];
          EXPECT_NEAR(c.curvature[at3(n, i, j, k)], r, 1e-9);
          for (int l = 0; l < n; ++l) {
            for (const auto& conn : c.connections) {
              EXPECT_NEAR(conn.h_curvature[at4(n, i, j, k, l)], lc.riemann(i, l, j, k), 1e-9);
            }
          }
        }
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Dimensions, RiemannianGeneral, ::testing::Values(2, 3));

TEST(Geometry, RandersFundamentalTensorIsHomogeneousAndSymmetric) {
  const MetricSpec spec = builtin_metric("randers-curved");
  const FinslerStructure s = spec.structure();
  for (const TMPoint& p : sample_points(spec, 5, 12)) {
    const auto geo = s.at(p, 4);
    const auto g = geo->fundamental_tensor().values();
    EXPECT_NEAR(g[1], g[2], 1e-14);
    // E = 1/2 g_ij y^i y^j
    double e = 0.0;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        e += 0.5 * g[static_cast<std::size_t>(i * 2 + j)] * p.y()[static_cast<std::size_t>(i)] *
             p.y()[static_cast<std::size_t>(j)];
      }
    }
    EXPECT_NEAR(e, geo->energy().value(), 1e-12);
    // C_ijk y^k = 0
    const auto& cl = geo->cartan_lowered();
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double sum = 0.0;
        for (int k = 0; k < 2; ++k) sum += cl[at3(2, i, j, k)].value() * p.y()[static_cast<std::size_t>(k)];
        EXPECT_NEAR(sum, 0.0, 1e-12);
      }
    }
  }
}

TEST(Geometry, OrderBudgetIsEnforced) {
  const MetricSpec spec = builtin_metric("randers-curved");
  const TMPoint p = sample_points(spec, 1, 1).front();
  EXPECT_THROW(PointGeometry(spec.structure().energy(), p, 2), JetOrderError);
  EXPECT_THROW(PointGeometry(spec.structure().energy(), p, kMaxJetOrder + 1), JetOrderError);
  const PointGeometry g3(spec.structure().energy(), p, 3);
  EXPECT_THROW(g3.curvature_coefficients(), JetDepthError);
  EXPECT_NO_THROW(g3.cartan_lowered());
}

TEST(Geometry, SingularEnergyThrows) {
  const expr::EnergyExpr e = expr::EnergyExpr::parse("(y1 + y2)^2/2", 2);
  const FinslerStructure s("degenerate", e);
  EXPECT_THROW(s.at(TMPoint({0.0, 0.0}, {1.0, 0.5}), 3), SingularMatrixError);
}

TEST(Geometry, StructureCacheIsSharedAcrossThreads) {
  const MetricSpec spec = builtin_metric("minkowski-quartic");
  const FinslerStructure s = spec.structure();
  const TMPoint p = sample_points(spec, 1, 2).front();
  std::vector<std::shared_ptr<const PointGeometry>> seen(8);
  std::vector<std::thread> workers;
  for (std::size_t i = 0; i < seen.size(); ++i) workers.emplace_back([&, i] { seen[i] = s.at(p, 4); });
  for (auto& w : workers) w.join();
  for (const auto& g : seen) EXPECT_EQ(g.get(), seen.front().get());
  EXPECT_NE(s.at(p, 5).get(), seen.front().get());
}

TEST(Compute, RejectsPointsOutsideTheDomain) {
  const MetricSpec spec = builtin_metric("euclidean-2");
  EXPECT_THROW(compute_at(spec, TMPoint({2.0, 0.0}, {1.0, 0.0})), DomainError);
  EXPECT_THROW(compute_at(spec, TMPoint({0.0, 0.0, 0.0}, {1.0, 0.0, 0.0})), ConfigError);
}

}  // namespace
}  // namespace finsler
