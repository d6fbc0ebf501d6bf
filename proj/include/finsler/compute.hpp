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

// Pointwise component dumps and the side-by-side comparison of the three
// connections.
//
// Index conventions (all arrays row-major, base point values):
//   g, g_inv        (i, j)
//   spray           G^i
//   nonlinear       N^i_j
//   cartan          C_ijk
//   cartan_second   C'_jkl
//   curvature       R^i_jk
//   berwald         G^i_jk = dN^i_j/dy^k
// Per connection, with delta_j the horizontal lift and d_j = d/dy^j:
//   horizontal      nabla_{delta_j} d_k = H^i_jk d_i           (i, j, k)
//   vertical        nabla_{d_j} d_k = V^i_jk d_i               (i, j, k)
//   hv_torsion      T(delta_j, d_k), all 2n components          (a, j, k)
//   h_curvature     K(delta_j, delta_k) d_l, y-component i      (i, j, k, l)
//   hv_curvature    K(delta_j, d_k) d_l                         (i, j, k, l)
//   v_curvature     K(d_j, d_k) d_l                             (i, j, k, l)

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "finsler/connection.hpp"
#include "finsler/metrics.hpp"

namespace finsler {

struct ConnectionComponents {
  ConnectionKind kind = ConnectionKind::kChern;
  std::vector<double> horizontal, vertical, hv_torsion, h_curvature, hv_curvature, v_curvature;
};

struct PointComputation {
  explicit PointComputation(TMPoint p) : point(std::move(p)) {}

  TMPoint point;
  int dim = 0;
  double energy = 0.0;
  double condition = 0.0;
  std::vector<double> g, g_inv, spray, nonlinear, cartan, cartan_second, curvature, berwald;
  std::vector<ConnectionComponents> connections;
};

/// Throws DomainError when the point lies outside the metric's domain box
/// and SingularMatrixError when g is singular there.
PointComputation compute_at(const MetricSpec& spec, const TMPoint& point);

/// Largest value of one quantity over the samples, with where it occurred.
struct SampleMax {
  double value = 0.0;
  int point = -1;
  std::string point_text;
  std::uint64_t seed = 0;
};

/// One connection's column of the comparison table. Norms are max-norms of
/// the tensor on random arguments; residuals are those of the table entry.
struct ConnectionColumn {
  ConnectionKind kind = ConnectionKind::kChern;
  SampleMax h_torsion_residual;   // T(hX,hY) - Re(X,Y)
  SampleMax hv_torsion_norm;
  SampleMax hv_torsion_residual;  // against 0, C' - F C, C'
  SampleMax v_torsion_norm;
  SampleMax h_curvature_residual;
  SampleMax hv_curvature_residual;
  SampleMax v_curvature_norm;
  SampleMax v_curvature_residual;
  SampleMax h_metricity;          // |(nabla_hX g)(Y,Z)|
  SampleMax v_metricity;          // |(nabla_JX g)(Y,Z)|
};

struct CompareResult {
  std::string metric_id;
  std::vector<TMPoint> points;
  double metricity_tolerance = 1e-7;
  SampleMax h_torsion_norm;       // |Re(X,Y)|, shared by all columns
  /// Largest difference between any two connections' nabla_X Y.
  SampleMax connection_spread;
  std::vector<ConnectionColumn> columns;
};

CompareResult compare_connections(const MetricSpec& spec, int samples, std::uint64_t seed,
                                  double metricity_tolerance = 1e-7);

}  // namespace finsler
