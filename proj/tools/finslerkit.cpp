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

// finslerkit: compute geometric objects, run the identity suite and compare
// the Berwald, Cartan and Chern connections.
//
// Exit codes: 0 all checks pass, 1 an identity failed, 2 configuration or
// metric error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "finsler/compute.hpp"
#include "finsler/errors.hpp"
#include "finsler/metrics.hpp"
#include "finsler/report.hpp"
#include "finsler/verify.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitIdentityFailure = 1;
constexpr int kExitConfigError = 2;

struct Options {
  std::string metric;
  std::optional<int> samples;
  std::uint64_t seed = 1;
  std::vector<std::string> tolerances;
  std::vector<std::string> points;
  std::string out;
  std::string format = "text";
  std::vector<std::string> only;
  std::optional<std::uint64_t> field_seed;
  unsigned threads = 0;
  double cprime_sign = 1.0;
};

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw finsler::ConfigError("tolerance `" + item + "` is not name=value");
    const std::string name = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw finsler::ConfigError("tolerance `" + item + "` has a malformed value");
    }
    if (!(value > 0.0)) throw finsler::ConfigError("tolerance `" + name + "` must be positive");
    out[name] = value;
  }
  return out;
}

std::vector<finsler::TMPoint> parse_points(const std::vector<std::string>& items) {
  std::vector<finsler::TMPoint> out;
  for (const auto& item : items) out.push_back(finsler::parse_point(item));
  return out;
}

void write_report(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw finsler::ConfigError("cannot open `" + path + "` for writing");
  f << text;
  if (!f) throw finsler::ConfigError("failed writing `" + path + "`");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int run_compute(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  const finsler::MetricSpec spec = finsler::resolve_metric(o.metric);
  if (!o.tolerances.empty()) throw finsler::ConfigError("compute takes no tolerances");
  std::vector<finsler::TMPoint> points = parse_points(o.points);
  const int samples = o.samples.value_or(1);
  if (samples < 1) throw finsler::ConfigError("sample count must be at least 1");
  if (points.empty()) points = finsler::sample_points(spec, samples, o.seed);
  std::vector<finsler::PointComputation> results;
  for (const auto& p : points) results.push_back(finsler::compute_at(spec, p));
  const auto format = finsler::report::parse_format(o.format);
  const finsler::report::RunInfo run{"compute", static_cast<int>(points.size()), o.seed, {}};
  write_report(finsler::report::compute_report(spec, results, run, format, seconds_since(start)), o.out);
  return kExitPass;
}

int run_verify(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  const finsler::MetricSpec spec = finsler::resolve_metric(o.metric);
  const auto format = finsler::report::parse_format(o.format);
  finsler::verify::SuiteOptions so;
  so.samples = o.samples.value_or(20);
  so.seed = o.seed;
  so.tolerances = parse_tolerances(o.tolerances);
  so.only = o.only;
  so.points = parse_points(o.points);
  so.field_seed = o.field_seed;
  so.threads = o.threads;
  so.connection.cprime_sign = o.cprime_sign;
  const finsler::verify::SuiteResult result = finsler::verify::run_suite(spec, so);
  const finsler::report::RunInfo run{"verify", static_cast<int>(result.points.size()), o.seed, so.tolerances};
  write_report(finsler::report::verify_report(spec, result, run, format, seconds_since(start)), o.out);
  if (result.all_pass()) return kExitPass;
  for (const auto& missing : result.coverage_missing) std::cerr << "verify: identity not covered: " << missing << "\n";
  for (const auto& r : result.results) {
    if (r.informational || r.verdict != finsler::verify::Verdict::kFail) continue;
    std::cerr << "verify: first failure " << r.label << ": ";
    if (!r.reason.empty()) {
      std::cerr << r.reason << "\n";
    } else if (r.kind == finsler::verify::CheckKind::kWitness) {
      std::cerr << "no witness above " << r.tolerance << " (largest " << r.max << ")\n";
    } else {
      std::cerr << "residual " << r.max << " > " << r.tolerance << " at " << r.worst_point_text << " seed "
                << r.worst_seed << "\n";
    }
    break;
  }
  return kExitIdentityFailure;
}

int run_compare(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  const finsler::MetricSpec spec = finsler::resolve_metric(o.metric);
  const auto format = finsler::report::parse_format(o.format);
  const auto tolerances = parse_tolerances(o.tolerances);
  double metricity = 1e-7;
  for (const auto& [name, value] : tolerances) {
    if (name != "metricity") throw finsler::ConfigError("compare only accepts --tol metricity=<value>");
    metricity = value;
  }
  if (!o.points.empty()) throw finsler::ConfigError("compare samples its own points; use --samples and --seed");
  const int samples = o.samples.value_or(20);
  const finsler::CompareResult result = finsler::compare_connections(spec, samples, o.seed, metricity);
  const finsler::report::RunInfo run{"compare", samples, o.seed, tolerances};
  write_report(finsler::report::compare_report(spec, result, run, format, seconds_since(start)), o.out);
  return kExitPass;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--metric", o.metric, "Builtin metric id or metric file path")->required();
  cmd->add_option("--samples", o.samples, "Number of sampled points");
  cmd->add_option("--seed", o.seed, "Seed for point sampling and argument fields");
  cmd->add_option("--tol", o.tolerances, "Tolerance override name=value (repeatable)");
  cmd->add_option("--point", o.points, "Evaluation point \"x=..;y=..\" (repeatable)");
  cmd->add_option("--out", o.out, "Write the report to this path");
  cmd->add_option("--format", o.format, "Report format: text or json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finsler geometry engine: canonical connections and their identities"};
  app.set_version_flag("--version", std::string(finsler::report::tool_version()));
  app.require_subcommand(1);
  Options o;

  CLI::App* compute = app.add_subcommand("compute", "Print g, G, N, C, C', connection coefficients and curvature");
  add_common(compute, o);

  CLI::App* verify = app.add_subcommand("verify", "Run the identity suite; exit 1 on any failure");
  add_common(verify, o);
  verify->add_option("--only", o.only, "Restrict to identity labels or groups (repeatable)");
  verify->add_option("--field-seed", o.field_seed, "Argument-field seed for every evaluation (replay)");
  verify->add_option("--threads", o.threads, "Worker threads (FINSLERKIT_THREADS caps this)");
  verify->add_option("--cprime-sign", o.cprime_sign, "Multiplier on the C' correction (test hook)")->group("");

  CLI::App* compare = app.add_subcommand("compare", "Tabulate torsion, curvature and metricity per connection");
  add_common(compare, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  try {
    if (compute->parsed()) return run_compute(o);
    if (verify->parsed()) return run_verify(o);
    return run_compare(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
}
