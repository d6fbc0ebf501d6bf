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

// The identity suite: every structural, torsion, curvature and Bianchi
// relation among the canonical objects, evaluated as residuals on random
// polynomial argument fields at sampled points.
//
// A residual is the max-norm of the sum of an identity's terms. It is
// normalized by the largest term when that term exceeds 1 and used as is
// otherwise; an identity passes at a point when the normalized residual is
// within its tolerance. Witness checks invert this: they pass when some
// sample shows a magnitude above the threshold.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "finsler/connection.hpp"
#include "finsler/metrics.hpp"

namespace finsler::verify {

struct Residual {
  double absolute = 0.0;
  double scale = 0.0;
  double normalized = 0.0;
};

/// Signed terms of an identity that should sum to zero.
class Terms {
 public:
  Terms& plus(const LocalField& f);
  Terms& minus(const LocalField& f);
  Terms& plus(const Jet& s);
  Terms& minus(const Jet& s);

  Residual residual() const;
  bool empty() const noexcept { return terms_.empty(); }

 private:
  std::vector<std::vector<double>> terms_;
};

/// Everything one evaluation sees: the geometry, the three connections and
/// random argument germs.
struct Context {
  const PointGeometry& g;
  const LinearConnection& berwald;
  const LinearConnection& cartan;
  const LinearConnection& chern;
  LocalField X, Y, Z, W;
  Jet f;  // positive random scalar germ

  const LinearConnection& connection(ConnectionKind kind) const;
};

/// Which families an identity applies to. Family traits come from a sweep
/// over the sample points, declared flags from the metric specification.
enum class Requirement {
  kAlways,
  kFlatCurvature,          // curvature of the nonlinear connection vanishes
  kCurvedFamily,           // it does not
  kCprimeParallel,         // vertical Chern derivative of C' vanishes
  kDeclaredRiemannian,
  kDeclaredMinkowski,
  kDeclaredNonRiemannian,
  kCartanNonzero,          // C does not vanish
  kCartanSecondNonzero,    // C' does not vanish
};

enum class CheckKind { kIdentity, kWitness };

struct IdentityDef {
  std::string label;
  std::string group;
  std::string statement;
  int order = kMinGeometryOrder;
  double tolerance = 1e-8;  // threshold for witnesses
  Requirement requirement = Requirement::kAlways;
  CheckKind kind = CheckKind::kIdentity;
  /// Reported, but does not decide the run verdict.
  bool informational = false;
  std::function<std::vector<Terms>(const Context&)> evaluate;
};

/// All registered identities, in report order.
const std::vector<IdentityDef>& registry();
const IdentityDef& find_identity(const std::string& label);

/// Labels the suite must cover; any of them missing from the registry is
/// a coverage failure.
const std::vector<std::string>& required_labels();
std::vector<std::string> coverage_gaps();

struct FamilyTraits {
  double max_curvature = 0.0;        // max |R^i_jk|
  double max_cartan = 0.0;           // max |C_ijk|
  double max_cartan_second = 0.0;    // max |C'_jkl|
  double max_cprime_derivative = 0.0;
  int points = 0;

  bool flat_curvature() const noexcept { return max_curvature < 1e-9; }
  bool cprime_parallel() const noexcept { return max_cprime_derivative < 1e-8; }
  bool cartan_nonzero() const noexcept { return max_cartan > 1e-6; }
  bool cartan_second_nonzero() const noexcept { return max_cartan_second > 1e-6; }
};

FamilyTraits sweep_traits(const FinslerStructure& structure, const std::vector<TMPoint>& points,
                          unsigned threads = 0);

enum class Verdict { kPass, kFail, kSkipped };

struct IdentityResult {
  std::string label;
  std::string group;
  std::string statement;
  CheckKind kind = CheckKind::kIdentity;
  bool informational = false;
  double tolerance = 0.0;
  Verdict verdict = Verdict::kSkipped;
  std::string reason;  // why skipped, or the first evaluation error
  int count = 0;
  double max = 0.0;    // normalized residual (identities) or magnitude (witnesses)
  double mean = 0.0;
  double max_absolute = 0.0;
  int worst_point = -1;
  std::string worst_point_text;
  std::uint64_t worst_seed = 0;
};

struct SuiteOptions {
  int samples = 20;
  std::uint64_t seed = 1;
  /// Overrides keyed by identity label or group.
  std::map<std::string, double> tolerances;
  /// Restrict to these labels or groups; empty means all.
  std::vector<std::string> only;
  /// Evaluate at these points instead of sampling.
  std::vector<TMPoint> points;
  /// Use this argument-field seed for every evaluation (replay).
  std::optional<std::uint64_t> field_seed;
  /// 0 means FINSLERKIT_THREADS or the hardware concurrency.
  unsigned threads = 0;
  ConnectionOptions connection;
};

struct SuiteResult {
  std::string metric_id;
  int dimension = 0;
  std::vector<TMPoint> points;
  FamilyTraits traits;
  std::vector<IdentityResult> results;
  std::vector<std::string> coverage_missing;

  /// No failing non-informational result and full coverage.
  bool all_pass() const;
  const IdentityResult* find(const std::string& label) const;
};

/// Throws ConfigError for unknown tolerance or selection names.
SuiteResult run_suite(const MetricSpec& spec, const SuiteOptions& options);

/// Seed of the argument fields for a given run seed, point index and
/// identity label.
std::uint64_t field_seed(std::uint64_t run_seed, int point_index, const std::string& label);

/// Random argument germs drawn from `seed`: polynomial vector fields of
/// degree 2 and a positive scalar field, localized at the base point.
struct ArgumentFields {
  LocalField X, Y, Z, W;
  Jet f;
};
ArgumentFields argument_fields(const PointGeometry& geometry, std::uint64_t seed);

/// One evaluation; the worst result of its term groups.
Residual evaluate_identity(const IdentityDef& def, const FinslerStructure& structure, const TMPoint& point,
                           std::uint64_t seed, ConnectionOptions connection = {});
/// The same on prepared geometry of at least the identity's order.
Residual evaluate_identity(const IdentityDef& def, const std::shared_ptr<const PointGeometry>& geometry,
                           std::uint64_t seed, ConnectionOptions connection = {});

/// Number of worker threads: FINSLERKIT_THREADS when set (>= 1), capped by
/// `requested` when nonzero, else the hardware concurrency.
unsigned worker_count(unsigned requested);

}  // namespace finsler::verify
