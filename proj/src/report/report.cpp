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

#include "finsler/report.hpp"

#include <json.hpp>

#include "finsler/errors.hpp"

namespace finsler::report {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kWallClockKey = "wall_clock_seconds";
constexpr std::string_view kTimingHeader = "[timing]";

std::string_view verdict_name(verify::Verdict v) {
  switch (v) {
    case verify::Verdict::kPass: return "pass";
    case verify::Verdict::kFail: return "fail";
    case verify::Verdict::kSkipped: return "skipped";
  }
  return "unknown";
}

Json header(const MetricSpec& spec, const RunInfo& run) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["tool"] = "finslerkit " + std::string(tool_version());
  j["command"] = run.command;
  j["metric"] = {{"id", spec.id},
                 {"origin", spec.origin},
                 {"dimension", spec.dimension},
                 {"energy", spec.source},
                 {"flags", spec.flags()}};
  Json r;
  r["samples"] = run.samples;
  r["seed"] = run.seed;
  Json tol = Json::object();
  for (const auto& [name, value] : run.tolerances) tol[name] = value;
  r["tolerance_overrides"] = tol;
  j["run"] = r;
  return j;
}

Json sample_max(const SampleMax& m) {
  return {{"max", m.value}, {"point", m.point_text}, {"seed", m.seed}};
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) s += ", ";
      s += scalar_text(v[i]);
    }
    return s + "]";
  }
  if (v.is_object()) return "{}";
  return v.dump();
}

bool is_record_list(const Json& v) { return v.is_array() && !v.empty() && v.front().is_object(); }

void emit_fields(std::string& out, const Json& j, const std::string& prefix) {
  for (const auto& [key, value] : j.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object() && !value.empty()) {
      emit_fields(out, value, path);
    } else if (!is_record_list(value)) {
      out += path + " = " + scalar_text(value) + "\n";
    }
  }
}

void emit_records(std::string& out, const Json& j) {
  for (const auto& [key, value] : j.items()) {
    if (!is_record_list(value)) continue;
    for (const auto& record : value) {
      out += "\n[" + key + "]\n";
      emit_fields(out, record, "");
    }
  }
}

// Scalars first, then repeated records, then the timing record.
std::string render(Json doc, Format format, double wall_clock_seconds) {
  if (format == Format::kJson) {
    doc[std::string(kWallClockKey)] = wall_clock_seconds;
    return doc.dump(2) + "\n";
  }
  std::string out;
  emit_fields(out, doc, "");
  emit_records(out, doc);
  out += "\n" + std::string(kTimingHeader) + "\n" + std::string(kWallClockKey) + " = " +
         Json(wall_clock_seconds).dump() + "\n";
  return out;
}

}  // namespace

std::string_view tool_version() { return FINSLERKIT_VERSION; }

Format parse_format(std::string_view name) {
  if (name == "text") return Format::kText;
  if (name == "json") return Format::kJson;
  throw ConfigError("unknown format `" + std::string(name) + "` (expected text or json)");
}

std::string verify_report(const MetricSpec& spec, const verify::SuiteResult& result, const RunInfo& run,
                          Format format, double wall_clock_seconds) {
  Json doc = header(spec, run);
  doc["traits"] = {{"points", result.traits.points},
                   {"max_curvature", result.traits.max_curvature},
                   {"max_cartan", result.traits.max_cartan},
                   {"max_cartan_second", result.traits.max_cartan_second},
                   {"max_cprime_vertical_derivative", result.traits.max_cprime_derivative},
                   {"flat_curvature", result.traits.flat_curvature()},
                   {"cprime_vertically_parallel", result.traits.cprime_parallel()}};
  int passed = 0, failed = 0, skipped = 0, informational_failed = 0;
  std::string first_failure = "none";
  for (const auto& r : result.results) {
    if (r.verdict == verify::Verdict::kPass) ++passed;
    if (r.verdict == verify::Verdict::kSkipped) ++skipped;
    if (r.verdict == verify::Verdict::kFail) {
      if (r.informational) {
        ++informational_failed;
      } else {
        ++failed;
        if (first_failure == "none") first_failure = r.label;
      }
    }
  }
  doc["summary"] = {{"verdict", result.all_pass() ? "pass" : "fail"},
                    {"identities", static_cast<int>(result.results.size())},
                    {"passed", passed},
                    {"failed", failed},
                    {"skipped", skipped},
                    {"informational_failed", informational_failed},
                    {"first_failure", first_failure}};
  doc["coverage"] = {{"missing", result.coverage_missing}};
  Json list = Json::array();
  for (const auto& r : result.results) {
    Json e;
    e["label"] = r.label;
    e["group"] = r.group;
    e["statement"] = r.statement;
    e["kind"] = r.kind == verify::CheckKind::kWitness ? "witness" : "identity";
    e["informational"] = r.informational;
    e["verdict"] = verdict_name(r.verdict);
    e["tolerance"] = r.tolerance;
    if (r.verdict == verify::Verdict::kSkipped) {
      e["reason"] = r.reason;
      list.push_back(e);
      continue;
    }
    e["count"] = r.count;
    e["max"] = r.max;
    e["mean"] = r.mean;
    e["max_absolute"] = r.max_absolute;
    e["worst"] = {{"point_index", r.worst_point}, {"point", r.worst_point_text}, {"seed", r.worst_seed}};
    if (!r.reason.empty()) e["reason"] = r.reason;
    list.push_back(e);
  }
  doc["identity"] = list;
  return render(std::move(doc), format, wall_clock_seconds);
}

std::string compute_report(const MetricSpec& spec, const std::vector<PointComputation>& points, const RunInfo& run,
                           Format format, double wall_clock_seconds) {
  Json doc = header(spec, run);
  Json list = Json::array();
  for (const auto& p : points) {
    Json e;
    e["point"] = p.point.to_string();
    e["energy"] = p.energy;
    e["condition"] = p.condition;
    e["g"] = p.g;
    e["g_inv"] = p.g_inv;
    e["spray"] = p.spray;
    e["nonlinear"] = p.nonlinear;
    e["cartan"] = p.cartan;
    e["cartan_second"] = p.cartan_second;
    e["curvature"] = p.curvature;
    e["berwald_coefficients"] = p.berwald;
    Json conns;
    for (const auto& c : p.connections) {
      conns[std::string(to_string(c.kind))] = {{"horizontal", c.horizontal},     {"vertical", c.vertical},
                                           {"hv_torsion", c.hv_torsion},     {"h_curvature", c.h_curvature},
                                           {"hv_curvature", c.hv_curvature}, {"v_curvature", c.v_curvature}};
    }
    e["connection"] = conns;
    list.push_back(e);
  }
  doc["point"] = list;
  return render(std::move(doc), format, wall_clock_seconds);
}

std::string compare_report(const MetricSpec& spec, const CompareResult& result, const RunInfo& run, Format format,
                           double wall_clock_seconds) {
  Json doc = header(spec, run);
  doc["metricity_tolerance"] = result.metricity_tolerance;
  doc["nonlinear_curvature_norm"] = sample_max(result.h_torsion_norm);
  doc["connection_spread"] = sample_max(result.connection_spread);
  Json list = Json::array();
  for (const auto& c : result.columns) {
    const bool berwald = c.kind == ConnectionKind::kBerwald;
    const bool cartan = c.kind == ConnectionKind::kCartan;
    Json e;
    e["name"] = to_string(c.kind);
    e["h_torsion"] = {{"expected", "Re"}, {"residual", sample_max(c.h_torsion_residual)}};
    e["hv_torsion"] = {{"expected", berwald ? "0" : cartan ? "C' - F C" : "C'"},
                       {"norm", sample_max(c.hv_torsion_norm)},
                       {"residual", sample_max(c.hv_torsion_residual)}};
    e["v_torsion"] = {{"expected", "0"}, {"norm", sample_max(c.v_torsion_norm)}};
    e["h_curvature"] = {{"expected", berwald  ? "(D_JZ Re)(X,Y)"
                                     : cartan ? "R_berwald + (D_hX C')(Y,Z) - (D_hY C')(X,Z) + C'(F C'(X,Z),Y) "
                                                "- C'(F C'(Y,Z),X) + C(F Re(X,Y),Z)"
                                              : "R(X,Y)Z - C(F Re(X,Y),Z)"},
                        {"residual", sample_max(c.h_curvature_residual)}};
    e["hv_curvature"] = {{"expected", berwald  ? "v[hX,J[JY,Z]] - J[JY,F[hX,JZ]] - v[h[hX,JY],JZ] - J[v[hX,JY],Z]"
                                      : cartan ? "P_berwald + (D_hX C)(Y,Z) - (D_JY C')(X,Z) + C(F C'(X,Z),Y) "
                                                 "+ C(F C'(X,Y),Z) - C'(F C(Y,Z),X) - C'(F C(X,Y),Z)"
                                               : "P_berwald(X,Y)Z - (D*_JY C')(X,Z)"},
                         {"residual", sample_max(c.hv_curvature_residual)}};
    e["v_curvature"] = {{"expected", cartan ? "C(F C(X,Z),Y) - C(F C(Y,Z),X)" : "0"},
                        {"norm", sample_max(c.v_curvature_norm)},
                        {"residual", sample_max(c.v_curvature_residual)}};
    e["h_metrical"] = c.h_metricity.value <= result.metricity_tolerance ? "yes" : "no";
    e["h_metricity"] = sample_max(c.h_metricity);
    e["v_metrical"] = c.v_metricity.value <= result.metricity_tolerance ? "yes" : "no";
    e["v_metricity"] = sample_max(c.v_metricity);
    list.push_back(e);
  }
  doc["connection"] = list;
  return render(std::move(doc), format, wall_clock_seconds);
}

std::string report_body(std::string_view report, Format format) {
  if (format == Format::kJson) {
    Json doc = Json::parse(report);
    doc.erase(std::string(kWallClockKey));
    return doc.dump(2) + "\n";
  }
  const std::string marker = "\n" + std::string(kTimingHeader) + "\n";
  const auto at = report.rfind(marker);
  return std::string(at == std::string_view::npos ? report : report.substr(0, at));
}

}  // namespace finsler::report
