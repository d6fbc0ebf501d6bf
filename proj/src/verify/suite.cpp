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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "finsler/errors.hpp"
#include "finsler/verify.hpp"

namespace finsler::verify {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

template <typename Fn>
void parallel_for(int count, unsigned threads, Fn&& fn) {
  const unsigned workers = std::max(1u, std::min(threads, static_cast<unsigned>(std::max(count, 1))));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::optional<std::string> not_applicable(const IdentityDef& def, const MetricSpec& spec, const FamilyTraits& t) {
  switch (def.requirement) {
    case Requirement::kAlways: return std::nullopt;
    case Requirement::kFlatCurvature:
      if (!t.flat_curvature()) return "family has nonzero curvature of the nonlinear connection";
      return std::nullopt;
    case Requirement::kCurvedFamily:
      if (t.flat_curvature()) return "family has vanishing curvature of the nonlinear connection";
      return std::nullopt;
    case Requirement::kCprimeParallel:
      if (!t.cprime_parallel()) return "condition D*_JZ C' = 0 does not hold on this family";
      return std::nullopt;
    case Requirement::kDeclaredRiemannian:
      if (!spec.riemannian) return "family not declared riemannian";
      return std::nullopt;
    case Requirement::kDeclaredMinkowski:
      if (!spec.locally_minkowski) return "family not declared locally_minkowski";
      return std::nullopt;
    case Requirement::kDeclaredNonRiemannian:
      if (spec.riemannian) return "family declared riemannian";
      return std::nullopt;
    case Requirement::kCartanNonzero:
      if (!t.cartan_nonzero()) return "C vanishes on this family";
      return std::nullopt;
    case Requirement::kCartanSecondNonzero:
      if (!t.cartan_second_nonzero()) return "C' vanishes on this family";
      return std::nullopt;
  }
  return std::nullopt;
}

bool selected(const IdentityDef& def, const std::vector<std::string>& only) {
  if (only.empty()) return true;
  return std::find(only.begin(), only.end(), def.label) != only.end() ||
         std::find(only.begin(), only.end(), def.group) != only.end();
}

bool known_name(const std::string& name) {
  return std::any_of(registry().begin(), registry().end(),
                     [&](const IdentityDef& d) { return d.label == name || d.group == name; });
}

struct Cell {
  Residual residual;
  std::uint64_t seed = 0;
  std::string error;
  bool evaluated = false;
};

}  // namespace

unsigned worker_count(unsigned requested) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FINSLERKIT_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

std::uint64_t field_seed(std::uint64_t run_seed, int point_index, const std::string& label) {
  return mix(mix(run_seed ^ mix(static_cast<std::uint64_t>(point_index) + 1)) ^ fnv1a(label));
}

ArgumentFields argument_fields(const PointGeometry& geometry, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = geometry.dim();
  const auto& z = geometry.coordinates();
  ArgumentFields a;
  a.X = random_polynomial_field(n, 2, rng).localize(z);
  a.Y = random_polynomial_field(n, 2, rng).localize(z);
  a.Z = random_polynomial_field(n, 2, rng).localize(z);
  a.W = random_polynomial_field(n, 2, rng).localize(z);
  a.f = random_scalar_field(n, 2, rng).localize(z);
  return a;
}

Residual evaluate_identity(const IdentityDef& def, const std::shared_ptr<const PointGeometry>& geometry,
                           std::uint64_t seed, ConnectionOptions connection) {
  if (geometry->order() < def.order) throw JetDepthError(def.order, geometry->order());
  const LinearConnection berwald(geometry, ConnectionKind::kBerwald, connection);
  const LinearConnection cartan(geometry, ConnectionKind::kCartan, connection);
  const LinearConnection chern(geometry, ConnectionKind::kChern, connection);
  ArgumentFields a = argument_fields(*geometry, seed);
  const Context ctx{*geometry, berwald, cartan, chern, std::move(a.X), std::move(a.Y), std::move(a.Z), std::move(a.W),
                    std::move(a.f)};
  Residual worst;
  bool first = true;
  for (const Terms& t : def.evaluate(ctx)) {
    const Residual r = t.residual();
    const bool worse = def.kind == CheckKind::kWitness ? r.absolute > worst.absolute : r.normalized > worst.normalized;
    if (first || worse) worst = r;
    first = false;
  }
  return worst;
}

Residual evaluate_identity(const IdentityDef& def, const FinslerStructure& structure, const TMPoint& point,
                           std::uint64_t seed, ConnectionOptions connection) {
  const auto geo = std::make_shared<const PointGeometry>(structure.energy(), point, def.order, structure.options());
  return evaluate_identity(def, geo, seed, connection);
}

FamilyTraits sweep_traits(const FinslerStructure& structure, const std::vector<TMPoint>& points, unsigned threads) {
  struct Local {
    double curvature = 0, cartan = 0, cartan_second = 0, cprime = 0;
  };
  std::vector<Local> per(points.size());
  parallel_for(static_cast<int>(points.size()), worker_count(threads), [&](int p) {
    const auto geo =
        std::make_shared<const PointGeometry>(structure.energy(), points[static_cast<std::size_t>(p)], 5,
                                              structure.options());
    Local& l = per[static_cast<std::size_t>(p)];
    for (const Jet& j : geo->curvature_coefficients()) l.curvature = std::max(l.curvature, std::abs(j.value()));
    for (const Jet& j : geo->cartan_lowered()) l.cartan = std::max(l.cartan, std::abs(j.value()));
    for (const Jet& j : geo->cartan_second_lowered()) l.cartan_second = std::max(l.cartan_second, std::abs(j.value()));
    const LinearConnection chern(geo, ConnectionKind::kChern);
    const Tensor2 cp = [&g = *geo](const LocalField& a, const LocalField& b) { return g.cartan_second(a, b); };
    const int n = geo->dim();
    for (int k = 0; k < n; ++k) {
      const LocalField jz = geo->J(coordinate_field(n, k));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const LocalField d = chern.derivative(jz, cp, coordinate_field(n, i), coordinate_field(n, j));
          for (double v : d.values()) l.cprime = std::max(l.cprime, std::abs(v));
        }
      }
    }
  });
  FamilyTraits t;
  t.points = static_cast<int>(points.size());
  for (const Local& l : per) {
    t.max_curvature = std::max(t.max_curvature, l.curvature);
    t.max_cartan = std::max(t.max_cartan, l.cartan);
    t.max_cartan_second = std::max(t.max_cartan_second, l.cartan_second);
    t.max_cprime_derivative = std::max(t.max_cprime_derivative, l.cprime);
  }
  return t;
}

bool SuiteResult::all_pass() const {
  if (!coverage_missing.empty()) return false;
  return std::none_of(results.begin(), results.end(), [](const IdentityResult& r) {
    return !r.informational && r.verdict == Verdict::kFail;
  });
}

const IdentityResult* SuiteResult::find(const std::string& label) const {
  for (const auto& r : results) {
    if (r.label == label) return &r;
  }
  return nullptr;
}

SuiteResult run_suite(const MetricSpec& spec, const SuiteOptions& options) {
  if (options.samples < 1) throw ConfigError("sample count must be at least 1");
  for (const auto& [name, value] : options.tolerances) {
    if (!known_name(name)) throw ConfigError("unknown tolerance name `" + name + "`");
    if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError("tolerance for `" + name + "` must be positive");
  }
  for (const auto& name : options.only) {
    if (!known_name(name)) throw ConfigError("unknown identity or group `" + name + "`");
  }

  SuiteResult out;
  out.metric_id = spec.id;
  out.dimension = spec.dimension;
  out.coverage_missing = coverage_gaps();
  if (!options.points.empty()) {
    for (const auto& p : options.points) {
      if (p.dim() != spec.dimension) throw ConfigError("point dimension does not match the metric");
    }
    out.points = options.points;
  } else {
    out.points = sample_points(spec, options.samples, options.seed);
  }

  const FinslerStructure structure = spec.structure();
  out.traits = sweep_traits(structure, out.points, options.threads);

  std::vector<const IdentityDef*> active;
  for (const auto& def : registry()) {
    if (!selected(def, options.only)) continue;
    IdentityResult r;
    r.label = def.label;
    r.group = def.group;
    r.statement = def.statement;
    r.kind = def.kind;
    r.informational = def.informational;
    r.tolerance = def.tolerance;
    if (auto it = options.tolerances.find(def.group); it != options.tolerances.end()) r.tolerance = it->second;
    if (auto it = options.tolerances.find(def.label); it != options.tolerances.end()) r.tolerance = it->second;
    if (auto reason = not_applicable(def, spec, out.traits)) {
      r.verdict = Verdict::kSkipped;
      r.reason = *reason;
    } else {
      active.push_back(&def);
    }
    out.results.push_back(std::move(r));
  }

  const std::size_t np = out.points.size();
  const std::size_t nd = active.size();
  std::vector<Cell> cells(np * nd);
  parallel_for(static_cast<int>(np), worker_count(options.threads), [&](int p) {
    const TMPoint& point = out.points[static_cast<std::size_t>(p)];
    std::map<int, std::shared_ptr<const PointGeometry>> geometry;
    std::string geometry_error;
    for (std::size_t d = 0; d < nd; ++d) {
      const IdentityDef& def = *active[d];
      Cell& cell = cells[static_cast<std::size_t>(p) * nd + d];
      cell.seed = options.field_seed ? *options.field_seed : field_seed(options.seed, p, def.label);
      try {
        auto& geo = geometry[def.order];
        if (!geo) geo = std::make_shared<const PointGeometry>(structure.energy(), point, def.order, structure.options());
        cell.residual = evaluate_identity(def, geo, cell.seed, options.connection);
        cell.evaluated = true;
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
    }
  });

  std::size_t d = 0;
  for (auto& r : out.results) {
    if (r.verdict == Verdict::kSkipped && !r.reason.empty()) continue;
    const IdentityDef& def = *active[d];
    double sum = 0.0;
    bool failed_eval = false;
    for (std::size_t p = 0; p < np; ++p) {
      const Cell& cell = cells[p * nd + d];
      if (!cell.evaluated) {
        if (!failed_eval) r.reason = "evaluation failed at " + out.points[p].to_string() + ": " + cell.error;
        failed_eval = true;
        continue;
      }
      const double value = def.kind == CheckKind::kWitness ? cell.residual.absolute : cell.residual.normalized;
      ++r.count;
      sum += value;
      if (r.worst_point < 0 || value > r.max) {
        r.max = value;
        r.worst_point = static_cast<int>(p);
        r.worst_point_text = out.points[p].to_string();
        r.worst_seed = cell.seed;
      }
      r.max_absolute = std::max(r.max_absolute, cell.residual.absolute);
    }
    r.mean = r.count > 0 ? sum / r.count : 0.0;
    if (failed_eval) {
      r.verdict = Verdict::kFail;
    } else if (def.kind == CheckKind::kWitness) {
      r.verdict = r.max > r.tolerance ? Verdict::kPass : Verdict::kFail;
    } else {
      r.verdict = r.max <= r.tolerance ? Verdict::kPass : Verdict::kFail;
    }
    ++d;
  }

  std::stable_sort(out.results.begin(), out.results.end(),
                   [](const IdentityResult& a, const IdentityResult& b) { return a.label < b.label; });
  return out;
}

}  // namespace finsler::verify
