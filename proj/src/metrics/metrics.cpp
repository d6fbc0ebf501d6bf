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

#include "finsler/metrics.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace finsler {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string polynomial_source(const Polynomial& p, char var) {
  std::string out = "(";
  bool first = true;
  for (const auto& t : p.terms) {
    if (!first) out += " + ";
    first = false;
    out += "(" + num(t.coefficient) + ")";
    for (std::size_t a = 0; a < t.exponents.size(); ++a) {
      for (int e = 0; e < t.exponents[a]; ++e) out += "*" + std::string(1, var) + std::to_string(a + 1);
    }
  }
  if (first) out += "0";
  return out + ")";
}

std::vector<std::pair<double, double>> unit_box(int n) {
  return std::vector<std::pair<double, double>>(static_cast<std::size_t>(n), {-1.0, 1.0});
}

MetricSpec make(std::string id, int n, std::string source, bool riemannian, bool minkowski) {
  MetricSpec s;
  s.id = std::move(id);
  s.dimension = n;
  s.source = std::move(source);
  s.origin = "builtin";
  s.domain = unit_box(n);
  s.riemannian = riemannian;
  s.locally_minkowski = minkowski;
  return s;
}

std::string sum_of_squares(int n) {
  std::string out;
  for (int i = 1; i <= n; ++i) {
    if (i > 1) out += " + ";
    out += "y" + std::to_string(i) + "^2";
  }
  return out;
}

int parse_int(std::string_view s, const std::string& what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError("invalid " + what + " `" + std::string(s) + "`");
  return v;
}

double parse_double(std::string_view s, const std::string& what) {
  std::string text(s);
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw ConfigError("invalid " + what + " `" + text + "`");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

MetricSpec randers_flat(const std::vector<double>& b) {
  double norm2 = 0.0;
  for (double c : b) norm2 += c * c;
  if (!(norm2 < 1.0)) throw ConfigError("randers-flat needs |b| < 1, got |b| = " + num(std::sqrt(norm2)));
  const int n = static_cast<int>(b.size());
  std::string drift;
  for (int i = 0; i < n; ++i) {
    if (b[static_cast<std::size_t>(i)] == 0.0) continue;
    drift += " + (" + num(b[static_cast<std::size_t>(i)]) + ")*y" + std::to_string(i + 1);
  }
  std::string id = "randers-flat";
  if (!(n == 2 && b[0] == 0.3 && b[1] == 0.0)) {
    id += ":";
    for (int i = 0; i < n; ++i) id += (i ? "," : "") + num(b[static_cast<std::size_t>(i)]);
  }
  return make(id, n, "0.5*(sqrt(" + sum_of_squares(n) + ")" + drift + ")^2", false, true);
}

}  // namespace

expr::EnergyExpr MetricSpec::energy() const { return expr::EnergyExpr::parse(source, dimension); }

FinslerStructure MetricSpec::structure(GeometryOptions options) const {
  return FinslerStructure(id, energy(), options);
}

std::vector<std::string> MetricSpec::flags() const {
  std::vector<std::string> out;
  if (riemannian) out.emplace_back("riemannian");
  if (locally_minkowski) out.emplace_back("locally_minkowski");
  return out;
}

std::vector<std::string> builtin_metric_names() {
  return {"euclidean-<n>", "riemannian-sphere2", "riemannian-general[:seed[:n]]", "minkowski-quartic",
          "randers-flat[:b1,..,bn]", "randers-curved"};
}

PolynomialMetric riemannian_general_coefficients(std::uint64_t seed, int dimension) {
  if (dimension < 1 || dimension > kMaxJetVars / 2) throw ConfigError("riemannian-general dimension out of range");
  std::mt19937_64 rng(seed);
  PolynomialMetric m;
  m.dimension = dimension;
  const auto n = static_cast<std::size_t>(dimension);
  m.entries.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Polynomial p = random_polynomial(dimension, 2, rng);
      // Entries stay below 0.5/n in the unit box, so rows are diagonally
      // dominant around the constant 1.5 on the diagonal.
      const double scale = 0.5 / (static_cast<double>(n) * static_cast<double>(p.terms.size()));
      for (auto& t : p.terms) t.coefficient *= scale;
      if (i == j) p.terms.front().coefficient += 1.5;  // front() is the constant monomial
      m.entries[i * n + j] = p;
      m.entries[j * n + i] = p;
    }
  }
  return m;
}

MetricSpec builtin_metric(std::string_view id) {
  const auto parts = split(id, ':');
  const std::string_view family = parts[0];

  if (family == "euclidean" || family.starts_with("euclidean-")) {
    if (parts.size() != 1) throw ConfigError("euclidean takes no parameters");
    const int n = family == "euclidean" ? 2 : parse_int(family.substr(10), "dimension");
    if (n < 1 || n > kMaxJetVars / 2) throw ConfigError("euclidean dimension out of range");
    return make("euclidean-" + std::to_string(n), n, "(" + sum_of_squares(n) + ")/2", true, true);
  }
  if (family == "riemannian-sphere2") {
    if (parts.size() != 1) throw ConfigError("riemannian-sphere2 takes no parameters");
    return make("riemannian-sphere2", 2, "2*(y1^2 + y2^2)/(1 + x1^2 + x2^2)^2", true, false);
  }
  if (family == "riemannian-general") {
    if (parts.size() > 3) throw ConfigError("riemannian-general[:seed[:n]]");
    const std::uint64_t seed = parts.size() > 1 ? static_cast<std::uint64_t>(parse_int(parts[1], "seed")) : 1;
    const int n = parts.size() > 2 ? parse_int(parts[2], "dimension") : 2;
    const PolynomialMetric a = riemannian_general_coefficients(seed, n);
    std::string src = "0.5*(";
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i || j) src += " + ";
        src += polynomial_source(a.entries[static_cast<std::size_t>(i * n + j)], 'x') + "*y" +
               std::to_string(i + 1) + "*y" + std::to_string(j + 1);
      }
    }
    src += ")";
    std::string full_id = "riemannian-general:" + std::to_string(seed);
    if (n != 2) full_id += ":" + std::to_string(n);
    return make(full_id, n, src, true, false);
  }
  if (family == "minkowski-quartic") {
    if (parts.size() != 1) throw ConfigError("minkowski-quartic takes no parameters");
    return make("minkowski-quartic", 2, "0.5*sqrt(y1^4 + y2^4 + (y1^2 + y2^2)^2)", false, true);
  }
  if (family == "randers-flat") {
    if (parts.size() > 2) throw ConfigError("randers-flat[:b1,..,bn]");
    std::vector<double> b{0.3, 0.0};
    if (parts.size() == 2) {
      b.clear();
      for (auto c : split(parts[1], ',')) b.push_back(parse_double(trim(c), "drift component"));
      if (b.size() == 1) b.push_back(0.0);
    }
    return randers_flat(b);
  }
  if (family == "randers-curved") {
    if (parts.size() != 1) throw ConfigError("randers-curved takes no parameters");
    return make("randers-curved", 2,
                "0.5*(sqrt((1 + 0.2*x2^2)*y1^2 + (1 + 0.1*x1^2)*y2^2 + 0.3*x1*y1*y2)"
                " + 0.3*(1 + 0.5*x2)*y1 - 0.2*x1*y2)^2",
                false, false);
  }
  throw ConfigError("unknown metric `" + std::string(id) + "`");
}

MetricSpec parse_metric_text(std::string_view text, const std::string& origin) {
  MetricSpec spec;
  spec.origin = origin;
  std::map<std::string, int> seen;
  std::map<int, std::pair<double, double>> domain;
  std::string energy_text;
  int energy_line = 0, energy_column = 0;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    // Strip a trailing comment unless it sits inside the quoted energy.
    bool in_quote = false;
    std::size_t cut = raw.size();
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') in_quote = !in_quote;
      if (raw[i] == '#' && !in_quote) {
        cut = i;
        break;
      }
    }
    const std::string_view line = trim(raw.substr(0, cut));
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected `key = value`", line_no, 1);
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    const int value_column = static_cast<int>(value.data() - raw.data()) + 1;
    if (seen.count(key)) {
      throw ParseError("duplicate key `" + key + "` (first on line " + std::to_string(seen[key]) + ")", line_no, 1);
    }
    seen[key] = line_no;

    if (key == "id") {
      if (value.empty()) throw ParseError("empty id", line_no, value_column);
      spec.id = std::string(value);
    } else if (key == "dimension") {
      try {
        spec.dimension = parse_int(value, "dimension");
      } catch (const ConfigError& e) {
        throw ParseError(e.what(), line_no, value_column);
      }
      if (spec.dimension < 1 || spec.dimension > kMaxJetVars / 2) {
        throw ParseError("dimension out of range 1.." + std::to_string(kMaxJetVars / 2), line_no, value_column);
      }
    } else if (key == "energy") {
      if (value.size() < 2 || value.front() != '"' || value.back() != '"') {
        throw ParseError("energy must be a double-quoted expression", line_no, value_column);
      }
      energy_text = std::string(value.substr(1, value.size() - 2));
      energy_line = line_no;
      energy_column = value_column + 1;
    } else if (key.starts_with("domain.x")) {
      int k = 0;
      try {
        k = parse_int(std::string_view(key).substr(8), "domain coordinate");
      } catch (const ConfigError&) {
        throw ParseError("unknown key `" + key + "`", line_no, 1);
      }
      if (value.size() < 2 || value.front() != '[' || value.back() != ']') {
        throw ParseError("domain must be `[lo, hi]`", line_no, value_column);
      }
      const auto items = split(value.substr(1, value.size() - 2), ',');
      if (items.size() != 2) throw ParseError("domain must be `[lo, hi]`", line_no, value_column);
      double lo = 0.0, hi = 0.0;
      try {
        lo = parse_double(trim(items[0]), "domain bound");
        hi = parse_double(trim(items[1]), "domain bound");
      } catch (const ConfigError& e) {
        throw ParseError(e.what(), line_no, value_column);
      }
      if (!(lo <= hi)) throw ParseError("domain needs lo <= hi", line_no, value_column);
      domain[k] = {lo, hi};
    } else if (key == "flags") {
      if (value.size() < 2 || value.front() != '[' || value.back() != ']') {
        throw ParseError("flags must be `[flag, ...]`", line_no, value_column);
      }
      const std::string_view inner = trim(value.substr(1, value.size() - 2));
      if (!inner.empty()) {
        for (auto f : split(inner, ',')) {
          const std::string_view flag = trim(f);
          if (flag == "riemannian") {
            spec.riemannian = true;
          } else if (flag == "locally_minkowski") {
            spec.locally_minkowski = true;
          } else {
            throw ParseError("unknown flag `" + std::string(flag) + "`", line_no, value_column);
          }
        }
      }
    } else {
      throw ParseError("unknown key `" + key + "`", line_no, 1);
    }
  }

  for (const char* required : {"id", "dimension", "energy"}) {
    if (!seen.count(required)) throw ConfigError(origin + ": missing required key `" + required + "`");
  }
  spec.domain = unit_box(spec.dimension);
  for (const auto& [k, box] : domain) {
    if (k < 1 || k > spec.dimension) {
      throw ConfigError(origin + ": domain.x" + std::to_string(k) + " exceeds dimension " +
                        std::to_string(spec.dimension));
    }
    spec.domain[static_cast<std::size_t>(k - 1)] = box;
  }
  try {
    (void)expr::EnergyExpr::parse(energy_text, spec.dimension);
  } catch (const ParseError& e) {
    // Report the position in the file, not in the quoted string.
    const int column = e.line() == 1 ? energy_column + e.column() - 1 : e.column();
    throw ParseError("energy: " + e.message(), energy_line + e.line() - 1, column);
  }
  spec.source = energy_text;
  return spec;
}

MetricSpec load_metric_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open metric file `" + path.string() + "`");
  std::stringstream buf;
  buf << in.rdbuf();
  MetricSpec spec;
  try {
    spec = parse_metric_text(buf.str(), path.string());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.message(), e.line(), e.column());
  }
  const auto report = validate_metric(spec);
  if (!report.ok()) {
    const auto& f = report.failures.front();
    throw ConfigError(path.string() + ": " + f.gate + " gate failed at " + f.point + " (" + f.detail +
                      ", value " + num(f.value) + ")");
  }
  return spec;
}

MetricSpec resolve_metric(std::string_view id_or_path) {
  const std::filesystem::path p{std::string(id_or_path)};
  std::error_code ec;
  if (std::filesystem::is_regular_file(p, ec) || p.extension() == ".metric") return load_metric_file(p);
  return builtin_metric(id_or_path);
}

std::vector<TMPoint> sample_points(const MetricSpec& spec, int count, std::uint64_t seed) {
  if (count < 0) throw ConfigError("sample count must be non-negative");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = static_cast<std::size_t>(spec.dimension);
  std::vector<TMPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto [lo, hi] = spec.domain[i];
      x[i] = lo + (hi - lo) * unit(rng);
    }
    double r2 = 0.0;
    do {
      r2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        y[i] = normal(rng);
        r2 += y[i] * y[i];
      }
    } while (r2 < 1e-12);
    const double radius = 0.5 + 1.5 * unit(rng);
    const double scale = radius / std::sqrt(r2);
    for (auto& c : y) c *= scale;
    out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

expr::ValidationReport validate_metric(const MetricSpec& spec, int count, std::uint64_t seed) {
  const auto points = sample_points(spec, count, seed);
  return expr::validate(spec.energy(), points);
}

}  // namespace finsler
