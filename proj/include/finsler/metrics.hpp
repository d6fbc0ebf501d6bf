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

// Built-in energy families and metric definition files.
//
// Metric file format (UTF-8, one `key = value` per line, '#' comments):
//
//   id = randers-demo
//   dimension = 2
//   energy = "((sqrt(y1^2 + y2^2) + 0.3*y1)^2)/2"
//   domain.x1 = [-1, 1]        # optional, default [-1, 1]
//   flags = [locally_minkowski]  # optional: riemannian, locally_minkowski
//
// id, dimension and energy are required; any other key is an error, as is
// a repeated key.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "finsler/expr.hpp"
#include "finsler/field.hpp"
#include "finsler/geometry.hpp"

namespace finsler {

struct MetricSpec {
  std::string id;
  int dimension = 0;
  /// Energy in the expression language.
  std::string source;
  /// "builtin" or the file path it was loaded from.
  std::string origin;
  /// Coordinate box for x, one [lo, hi] per base coordinate.
  std::vector<std::pair<double, double>> domain;
  /// Declared structure; confirmed by the verification suite, never trusted.
  bool riemannian = false;
  bool locally_minkowski = false;

  expr::EnergyExpr energy() const;
  FinslerStructure structure(GeometryOptions options = {}) const;
  std::vector<std::string> flags() const;
};

/// Names accepted by builtin_metric, with their parameter syntax.
std::vector<std::string> builtin_metric_names();

/// Builtin family by id:
///   euclidean | euclidean-<n>
///   riemannian-sphere2               round sphere, stereographic chart
///   riemannian-general[:seed[:n]]    random polynomial a_ij(x)
///   minkowski-quartic                x-independent quartic
///   randers-flat[:b1,b2,...]         constant drift, |b| < 1 (default b = (0.3, 0))
///   randers-curved                   x-dependent Randers energy
/// Throws ConfigError for unknown ids or invalid parameters.
MetricSpec builtin_metric(std::string_view id);

/// Symmetric positive definite a_ij(x) with polynomial entries, as used by
/// riemannian-general. Entries are row-major n*n polynomials in the n base
/// coordinates.
struct PolynomialMetric {
  int dimension = 0;
  std::vector<Polynomial> entries;
};
PolynomialMetric riemannian_general_coefficients(std::uint64_t seed, int dimension);

/// Parses the metric file format. `origin` labels diagnostics. Throws
/// ParseError (with line:column in the text) or ConfigError.
MetricSpec parse_metric_text(std::string_view text, const std::string& origin);

/// Reads, parses and validates a metric file: the homogeneity, positivity
/// and rank gates run at sampled domain points, and a failing gate throws
/// ConfigError naming the gate and the witness point.
MetricSpec load_metric_file(const std::filesystem::path& path);

/// A builtin id, or a path when the argument names an existing file or
/// ends in ".metric".
MetricSpec resolve_metric(std::string_view id_or_path);

/// Points with x uniform in the domain box and y uniform in direction with
/// 0.5 <= |y| <= 2.
std::vector<TMPoint> sample_points(const MetricSpec& spec, int count, std::uint64_t seed);

/// Gate checks on `count` sampled points.
expr::ValidationReport validate_metric(const MetricSpec& spec, int count = 50, std::uint64_t seed = 7);

}  // namespace finsler
