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

#include "finsler/point.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <optional>
#include <string_view>

namespace finsler {

TMPoint::TMPoint(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.empty() || x_.size() != y_.size()) {
    throw ConfigError("point needs matching non-empty x and y blocks");
  }
  bool nonzero = false;
  for (double v : y_) nonzero = nonzero || v != 0.0;
  if (!nonzero) throw ConfigError("point outside slit tangent bundle (y = 0)");
}

std::vector<double> TMPoint::coordinates() const {
  std::vector<double> z = x_;
  z.insert(z.end(), y_.begin(), y_.end());
  return z;
}

std::string TMPoint::to_string() const {
  auto block = [](const std::vector<double>& v) {
    std::string s = "(";
    char buf[32];
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", v[i]);
      if (i > 0) s += ",";
      s += buf;
    }
    return s + ")";
  };
  return "x=" + block(x_) + ";y=" + block(y_);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<double> parse_block(std::string_view s, std::string_view name) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = trim(s.substr(1, s.size() - 2));
  std::vector<double> out;
  while (true) {
    const auto comma = s.find(',');
    const std::string_view item = trim(s.substr(0, comma));
    double v = 0.0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size()) {
      throw ConfigError("malformed " + std::string(name) + " component `" + std::string(item) + "` in point");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

TMPoint parse_point(std::string_view text) {
  std::optional<std::vector<double>> x, y;
  std::string_view rest = text;
  while (!trim(rest).empty()) {
    const auto semi = rest.find(';');
    const std::string_view part = trim(rest.substr(0, semi));
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) throw ConfigError("point must look like \"x=..;y=..\"");
    const std::string_view key = trim(part.substr(0, eq));
    auto& slot = key == "x" ? x : key == "y" ? y : throw ConfigError("unknown point block `" + std::string(key) + "`");
    if (slot) throw ConfigError("point block `" + std::string(key) + "` given twice");
    slot = parse_block(part.substr(eq + 1), key);
    if (semi == std::string_view::npos) break;
    rest.remove_prefix(semi + 1);
  }
  if (!x || !y) throw ConfigError("point needs both x and y blocks");
  return TMPoint(std::move(*x), std::move(*y));
}

Jet seed(const TMPoint& point, int var_index, int order) {
  const auto z = point.coordinates();
  if (var_index < 0 || var_index >= static_cast<int>(z.size())) {
    throw Error("seed variable " + std::to_string(var_index) + " outside [0, " +
                std::to_string(z.size()) + ")");
  }
  const JetSpace& space = JetSpace::get(static_cast<int>(z.size()), order);
  return Jet::seed(space, order, var_index, z[static_cast<std::size_t>(var_index)]);
}

std::vector<Jet> seed_all(const TMPoint& point, int order) {
  const auto z = point.coordinates();
  return seed_coordinates(z, order);
}

}  // namespace finsler
