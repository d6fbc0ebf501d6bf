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
#include <string>

#include "finsler/compute.hpp"
#include "finsler/errors.hpp"
#include "finsler/metrics.hpp"

namespace finsler {
namespace {

const std::string kData = FINSLERKIT_TEST_DATA;

std::string config_error_of(const std::string& file) {
  try {
    load_metric_file(kData + "/" + file);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

TEST(Builtins, EveryFamilyPassesTheGates) {
  for (const char* id : {"euclidean-2", "euclidean-3", "riemannian-sphere2", "riemannian-general",
                         "riemannian-general:3:3", "minkowski-quartic", "randers-flat", "randers-flat:0.1,-0.4",
                         "randers-curved"}) {
    const MetricSpec spec = builtin_metric(id);
    EXPECT_TRUE(validate_metric(spec).ok()) << id;
    EXPECT_EQ(spec.origin, "builtin");
  }
}

TEST(Builtins, IdsAndFlags) {
  EXPECT_EQ(builtin_metric("euclidean").id, "euclidean-2");
  EXPECT_EQ(builtin_metric("euclidean-4").dimension, 4);
  const MetricSpec e = builtin_metric("euclidean-2");
  EXPECT_TRUE(e.riemannian);
  EXPECT_TRUE(e.locally_minkowski);
  EXPECT_TRUE(builtin_metric("riemannian-sphere2").riemannian);
  EXPECT_FALSE(builtin_metric("riemannian-sphere2").locally_minkowski);
  EXPECT_TRUE(builtin_metric("minkowski-quartic").locally_minkowski);
  EXPECT_FALSE(builtin_metric("randers-curved").riemannian);
  EXPECT_EQ(builtin_metric("riemannian-general:4:3").id, "riemannian-general:4:3");
}

TEST(Builtins, InvalidIdsThrow) {
  EXPECT_THROW(builtin_metric("hyperbolic"), ConfigError);
  EXPECT_THROW(builtin_metric("randers-flat:0.9,0.9"), ConfigError);
  EXPECT_THROW(builtin_metric("euclidean-0"), ConfigError);
  EXPECT_THROW(builtin_metric("riemannian-sphere2:1"), ConfigError);
}

TEST(Builtins, SamplesStayInTheBoxWithBoundedFiber) {
  const MetricSpec spec = builtin_metric("randers-curved");
  const auto points = sample_points(spec, 200, 8);
  for (const auto& p : points) {
    for (int i = 0; i < 2; ++i) {
      EXPECT_GE(p.x()[static_cast<std::size_t>(i)], spec.domain[static_cast<std::size_t>(i)].first);
      EXPECT_LE(p.x()[static_cast<std::size_t>(i)], spec.domain[static_cast<std::size_t>(i)].second);
    }
    const double r = std::hypot(p.y()[0], p.y()[1]);
    EXPECT_GE(r, 0.5 - 1e-12);
    EXPECT_LE(r, 2.0 + 1e-12);
  }
  EXPECT_EQ(points, sample_points(spec, 200, 8));
  EXPECT_NE(points, sample_points(spec, 200, 9));
}

TEST(MetricFile, RandersFileLoads) {
  const MetricSpec spec = load_metric_file(kData + "/randers_demo.metric");
  EXPECT_EQ(spec.id, "randers-demo");
  EXPECT_EQ(spec.dimension, 2);
  EXPECT_TRUE(spec.locally_minkowski);
  EXPECT_FALSE(spec.riemannian);
  EXPECT_EQ(spec.origin, kData + "/randers_demo.metric");
}

TEST(MetricFile, EuclideanFileMatchesBuiltin) {
  const MetricSpec file = resolve_metric(kData + "/euclidean.metric");
  const MetricSpec builtin = resolve_metric("euclidean-2");
  for (const TMPoint& p : sample_points(builtin, 5, 2)) {
    const PointComputation a = compute_at(file, p);
    const PointComputation b = compute_at(builtin, p);
    EXPECT_EQ(a.g, b.g);
    EXPECT_EQ(a.spray, b.spray);
    EXPECT_EQ(a.nonlinear, b.nonlinear);
    EXPECT_EQ(a.cartan, b.cartan);
  }
}

TEST(MetricFile, RankDeficientEnergyIsRejected) {
  const std::string msg = config_error_of("rank_deficient.metric");
  EXPECT_TRUE(msg.find("rank") != std::string::npos || msg.find("positivity") != std::string::npos) << msg;
}

TEST(MetricFile, NonHomogeneousEnergyIsRejected) {
  EXPECT_NE(config_error_of("not_homogeneous.metric").find("homogeneity"), std::string::npos);
}

TEST(MetricFile, UnknownKeyIsAParseError) {
  try {
    load_metric_file(kData + "/unknown_key.metric");
    FAIL() << "loaded a file with an unknown key";
  } catch (const ParseError& e) {
    EXPECT_NE(e.message().find("unknown key `colour`"), std::string::npos);
    EXPECT_EQ(e.line(), 18);
  }
}

TEST(MetricFile, TextDiagnostics) {
  EXPECT_THROW(parse_metric_text("id = a\ndimension = 2\n", "inline"), ConfigError);
  EXPECT_THROW(parse_metric_text("id = a\nid = b\ndimension = 2\nenergy = \"y1^2+y2^2\"\n", "inline"), ParseError);
  EXPECT_THROW(parse_metric_text("id = a\ndimension = 2\nenergy = y1^2\n", "inline"), ParseError);
  EXPECT_THROW(parse_metric_text("id = a\ndimension = 2\nenergy = \"y1^2\"\ndomain.x3 = [0, 1]\n", "inline"),
               ConfigError);
  EXPECT_THROW(parse_metric_text("id = a\ndimension = 2\nenergy = \"y1^2\"\nflags = [round]\n", "inline"),
               ParseError);
  try {
    parse_metric_text("id = a\ndimension = 2\nenergy = \"y1 + z3\"\n", "inline");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 16);
  }
}

TEST(MetricFile, MissingFileIsAConfigError) {
  EXPECT_THROW(resolve_metric(kData + "/absent.metric"), ConfigError);
}

TEST(Point, ParseAndRoundTrip) {
  const TMPoint p = parse_point("x=0.25,-1;y=1,2e-1");
  EXPECT_EQ(p.x(), (std::vector<double>{0.25, -1.0}));
  EXPECT_EQ(p.y(), (std::vector<double>{1.0, 0.2}));
  const TMPoint q({0.1, 1.0 / 3.0}, {-2.5e-7, 7.0});
  EXPECT_EQ(parse_point(q.to_string()), q);
  EXPECT_EQ(parse_point(" y = (1, 0) ; x = (0, 0) "), TMPoint({0.0, 0.0}, {1.0, 0.0}));
}

TEST(Point, Errors) {
  EXPECT_THROW(parse_point("x=0,0;y=0,0"), ConfigError);
  EXPECT_THROW(parse_point("x=0,0"), ConfigError);
  EXPECT_THROW(parse_point("x=0,0;y=1"), ConfigError);
  EXPECT_THROW(parse_point("x=0,a;y=1,0"), ConfigError);
  EXPECT_THROW(parse_point("x=0,0;x=1,0;y=1,0"), ConfigError);
  EXPECT_THROW(parse_point("x=0,0;z=1,0"), ConfigError);
}

}  // namespace
}  // namespace finsler
