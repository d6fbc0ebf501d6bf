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

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

#include "finsler/errors.hpp"
#include "finsler/metrics.hpp"
#include "finsler/report.hpp"
#include "finsler/verify.hpp"

namespace finsler::verify {
namespace {

SuiteOptions quick(int samples = 3) {
  SuiteOptions o;
  o.samples = samples;
  o.seed = 4;
  return o;
}

TEST(Registry, LabelsAreUniqueAndRequiredLabelsAreCovered) {
  std::set<std::string> seen;
  for (const auto& def : registry()) {
    EXPECT_TRUE(seen.insert(def.label).second) << "duplicate label " << def.label;
    EXPECT_FALSE(def.group.empty()) << def.label;
    EXPECT_FALSE(def.statement.empty()) << def.label;
    EXPECT_GE(def.order, kMinGeometryOrder) << def.label;
    EXPECT_LE(def.order, kMaxJetOrder) << def.label;
    EXPECT_GT(def.tolerance, 0.0) << def.label;
  }
  for (const auto& label : required_labels()) EXPECT_TRUE(seen.count(label)) << "missing " << label;
  EXPECT_TRUE(coverage_gaps().empty());
  EXPECT_THROW(find_identity("no.such.identity"), ConfigError);
}

TEST(Suite, EuclideanPassesWithTinyResiduals) {
  const SuiteResult r = run_suite(builtin_metric("euclidean-2"), quick(5));
  EXPECT_TRUE(r.all_pass());
  for (const auto& x : r.results) {
    if (x.verdict == Verdict::kPass && x.kind == CheckKind::kIdentity) {
      EXPECT_LT(x.max, 1e-10) << x.label;
    }
  }
}

TEST(Suite, ResultsAreSortedByLabel) {
  const SuiteResult r = run_suite(builtin_metric("minkowski-quartic"), quick(2));
  EXPECT_TRUE(std::is_sorted(r.results.begin(), r.results.end(),
                             [](const auto& a, const auto& b) { return a.label < b.label; }));
  EXPECT_EQ(r.results.size(), registry().size());
}

TEST(Suite, FamilyTraitsGateTheConditionalChecks) {
  const SuiteResult flat = run_suite(builtin_metric("minkowski-quartic"), quick(3));
  EXPECT_TRUE(flat.traits.flat_curvature());
  EXPECT_TRUE(flat.traits.cartan_nonzero());
  EXPECT_EQ(flat.find("chern.h_curvature_skew_last")->verdict, Verdict::kPass);
  EXPECT_EQ(flat.find("chern.h_curvature_skew_last_witness")->verdict, Verdict::kSkipped);
  EXPECT_EQ(flat.find("flags.riemannian")->verdict, Verdict::kSkipped);

  const SuiteResult sphere = run_suite(builtin_metric("riemannian-sphere2"), quick(3));
  EXPECT_FALSE(sphere.traits.flat_curvature());
  EXPECT_EQ(sphere.find("chern.h_curvature_skew_last")->verdict, Verdict::kSkipped);
  EXPECT_EQ(sphere.find("flags.riemannian")->verdict, Verdict::kPass);
  EXPECT_EQ(sphere.find("berwald.v_metric_witness")->verdict, Verdict::kSkipped);
}

TEST(Suite, ThreadCountDoesNotChangeResults) {
  SuiteOptions one = quick(4), many = quick(4);
  one.threads = 1;
  many.threads = 4;
  const MetricSpec spec = builtin_metric("randers-flat");
  const auto a = run_suite(spec, one);
  const auto b = run_suite(spec, many);
  ASSERT_EQ(a.results.size(), b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    EXPECT_EQ(a.results[i].max, b.results[i].max) << a.results[i].label;
    EXPECT_EQ(a.results[i].mean, b.results[i].mean) << a.results[i].label;
    EXPECT_EQ(a.results[i].worst_seed, b.results[i].worst_seed) << a.results[i].label;
  }
}

TEST(Suite, ReplayReproducesTheWorstResidual) {
  const MetricSpec spec = builtin_metric("randers-curved");
  const SuiteResult r = run_suite(spec, quick(4));
  const FinslerStructure structure = spec.structure();
  for (const char* label : {"chern.h_metric", "chern.bianchi_h_cyclic", "berwald.h_metric_witness"}) {
    const IdentityResult* x = r.find(label);
    ASSERT_NE(x, nullptr);
    ASSERT_GE(x->worst_point, 0);
    const TMPoint p = parse_point(x->worst_point_text);
    EXPECT_EQ(p, r.points[static_cast<std::size_t>(x->worst_point)]);
    EXPECT_EQ(x->worst_seed, field_seed(4, x->worst_point, label));
    const Residual again = evaluate_identity(find_identity(label), structure, p, x->worst_seed);
    const double replayed = x->kind == CheckKind::kWitness ? again.absolute : again.normalized;
    EXPECT_EQ(replayed, x->max) << label;
  }
}

TEST(Suite, FieldSeedOverrideAndExplicitPoints) {
  const MetricSpec spec = builtin_metric("randers-curved");
  SuiteOptions o = quick();
  o.points = {parse_point("x=0.1,0.2;y=1,-0.5")};
  o.field_seed = 99;
  o.only = {"chern.h_metric"};
  const SuiteResult r = run_suite(spec, o);
  ASSERT_EQ(r.points.size(), 1u);
  const IdentityResult* x = r.find("chern.h_metric");
  EXPECT_EQ(x->worst_seed, 99u);
  EXPECT_EQ(x->count, 1);
  EXPECT_EQ(r.find("chern.koszul"), nullptr);
  EXPECT_EQ(r.results.size(), 1u);
}

TEST(Suite, ConfigurationErrors) {
  const MetricSpec spec = builtin_metric("euclidean-2");
  SuiteOptions o = quick();
  o.tolerances = {{"no.such.identity", 1e-3}};
  EXPECT_THROW(run_suite(spec, o), ConfigError);
  o = quick();
  o.only = {"nothing"};
  EXPECT_THROW(run_suite(spec, o), ConfigError);
  o = quick(0);
  EXPECT_THROW(run_suite(spec, o), ConfigError);
  o = quick();
  o.points = {parse_point("x=0,0,0;y=1,0,0")};
  EXPECT_THROW(run_suite(spec, o), ConfigError);
}

TEST(Suite, GroupToleranceOverrideApplies) {
  SuiteOptions o = quick(2);
  o.tolerances = {{"convention", 1e-30}};
  o.only = {"convention"};
  const SuiteResult r = run_suite(builtin_metric("randers-curved"), o);
  EXPECT_EQ(r.find("convention.jj_bracket")->tolerance, 1e-30);
  EXPECT_FALSE(r.all_pass());
}

TEST(Suite, MutationIsDetected) {
  SuiteOptions o = quick(3);
  o.connection.cprime_sign = -1.0;
  o.only = {"axioms.chern"};
  const SuiteResult r = run_suite(builtin_metric("randers-curved"), o);
  EXPECT_FALSE(r.all_pass());
  EXPECT_EQ(r.find("chern.h_metric")->verdict, Verdict::kFail);
  EXPECT_GT(r.find("chern.h_metric")->max, 1e-3);
}

TEST(Suite, ThreadCapFromEnvironment) {
  ::setenv("FINSLERKIT_THREADS", "2", 1);
  EXPECT_LE(worker_count(8), 2u);
  EXPECT_GE(worker_count(8), 1u);
  ::unsetenv("FINSLERKIT_THREADS");
  EXPECT_EQ(worker_count(3), 3u);
}

TEST(Report, SchemaHeaderAndDeterministicBody) {
  const MetricSpec spec = builtin_metric("euclidean-2");
  const SuiteResult r = run_suite(spec, quick(2));
  const report::RunInfo run{"verify", 2, 4, {}};
  const std::string text1 = report::verify_report(spec, r, run, report::Format::kText, 0.5);
  const std::string text2 = report::verify_report(spec, r, run, report::Format::kText, 2.5);
  EXPECT_EQ(text1.rfind("schema = 1\n", 0), 0u);
  EXPECT_NE(text1, text2);
  EXPECT_EQ(report::report_body(text1, report::Format::kText), report::report_body(text2, report::Format::kText));

  const std::string json = report::verify_report(spec, r, run, report::Format::kJson, 0.5);
  const auto doc = nlohmann::json::parse(json);
  EXPECT_EQ(doc["schema"], 1);
  EXPECT_EQ(doc["summary"]["verdict"], "pass");
  EXPECT_EQ(doc["identity"].size(), registry().size());
  EXPECT_EQ(nlohmann::json::parse(report::report_body(json, report::Format::kJson)).count("wall_clock_seconds"), 0u);
  EXPECT_THROW(report::parse_format("yaml"), ConfigError);
}

}  // namespace
}  // namespace finsler::verify
