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

// Run reports. Each report is one ordered record tree rendered either as
// text (`key = value` lines, repeated records under `[name]` headers) or as
// a single JSON document. Both start with `schema = 1` and end with the
// wall-clock record, the only field that differs between identical runs.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "finsler/compute.hpp"
#include "finsler/verify.hpp"

namespace finsler::report {

inline constexpr int kSchemaVersion = 1;

std::string_view tool_version();

enum class Format { kText, kJson };

/// "text" or "json"; throws ConfigError otherwise.
Format parse_format(std::string_view name);

struct RunInfo {
  std::string command;
  int samples = 0;
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;
};

std::string verify_report(const MetricSpec& spec, const verify::SuiteResult& result, const RunInfo& run,
                          Format format, double wall_clock_seconds);
std::string compute_report(const MetricSpec& spec, const std::vector<PointComputation>& points, const RunInfo& run,
                           Format format, double wall_clock_seconds);
std::string compare_report(const MetricSpec& spec, const CompareResult& result, const RunInfo& run, Format format,
                           double wall_clock_seconds);

/// The report without its wall-clock record.
std::string report_body(std::string_view report, Format format);

}  // namespace finsler::report
