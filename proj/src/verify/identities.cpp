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
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "finsler/errors.hpp"
#include "finsler/verify.hpp"

namespace finsler::verify {

namespace {

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

using Groups = std::vector<Terms>;
using LF = LocalField;

// Common tensors as two-slot callables.
Tensor2 nonlinear_curvature(const Context& c) {
  return [&g = c.g](const LF& a, const LF& b) { return g.curvature(a, b); };
}
Tensor2 cartan_tensor(const Context& c) {
  return [&g = c.g](const LF& a, const LF& b) { return g.cartan(a, b); };
}
Tensor2 cartan_second_tensor(const Context& c) {
  return [&g = c.g](const LF& a, const LF& b) { return g.cartan_second(a, b); };
}
Tensor3 h_curvature_of(const LinearConnection& d) {
  return [&d](const LF& a, const LF& b, const LF& z) { return d.h_curvature(a, b, z); };
}
Tensor3 hv_curvature_of(const LinearConnection& d) {
  return [&d](const LF& a, const LF& b, const LF& z) { return d.hv_curvature(a, b, z); };
}

// g(R*(X,Y)Z, JW).
Jet chern_h_form(const Context& c, const LF& x, const LF& y, const LF& z, const LF& w) {
  return c.g.metric(c.chern.h_curvature(x, y, z), c.g.J(w));
}

Terms difference(const LF& a, const LF& b) {
  Terms t;
  t.plus(a).minus(b);
  return t;
}
Terms difference(const Jet& a, const Jet& b) {
  Terms t;
  t.plus(a).minus(b);
  return t;
}
Terms vanishing(const LF& a) {
  Terms t;
  t.plus(a);
  return t;
}
Terms vanishing(const Jet& a) {
  Terms t;
  t.plus(a);
  return t;
}

// Every entry of a coefficient array as its own term; the residual is the
// largest magnitude.
Terms coefficient_magnitude(const std::vector<Jet>& a) {
  Terms t;
  double worst = 0.0;
  for (const Jet& j : a) worst = std::max(worst, std::abs(j.value()));
  t.plus(Jet(worst));
  return t;
}

struct Builder {
  std::vector<IdentityDef> defs;

  IdentityDef& add(std::string label, std::string group, std::string statement, int order, double tolerance,
                   std::function<Groups(const Context&)> fn) {
    IdentityDef d;
    d.label = std::move(label);
    d.group = std::move(group);
    d.statement = std::move(statement);
    d.order = order;
    d.tolerance = tolerance;
    d.evaluate = std::move(fn);
    defs.push_back(std::move(d));
    return defs.back();
  }
};

void add_conventions(Builder& b) {
  constexpr double tol = 1e-8;
  const std::string grp = "convention";
  b.add("convention.jj_bracket", grp, "[J,J](X,Y) = 0", 3, tol, [](const Context& c) {
    const VectorForm j = VectorForm::from_matrix(c.g.matrix(Structure::kJ));
    return Groups{vanishing(fn_bracket(j, j)(c.X, c.Y))};
  });
  b.add("convention.liouville_j", grp, "[C,J](X) = -JX", 3, tol, [](const Context& c) {
    const VectorForm j = VectorForm::from_matrix(c.g.matrix(Structure::kJ));
    Terms t;
    t.plus(fn_bracket_01(c.g.liouville(), j)(c.X)).plus(c.g.J(c.X));
    return Groups{t};
  });
  b.add("convention.j_nilpotent", grp, "J(JX) = 0", 3, tol,
        [](const Context& c) { return Groups{vanishing(c.g.J(c.g.J(c.X)))}; });
  b.add("convention.connection_torsion", grp, "1/2 [J,Gamma](X,Y) = 0", 4, tol, [](const Context& c) {
    const VectorForm j = VectorForm::from_matrix(c.g.matrix(Structure::kJ));
    const VectorForm gm = VectorForm::from_matrix(c.g.matrix(Structure::kGamma));
    return Groups{vanishing(0.5 * fn_bracket(j, gm)(c.X, c.Y))};
  });
  b.add("convention.connection_homogeneous", grp, "[C,Gamma](X) = 0", 4, tol, [](const Context& c) {
    const VectorForm gm = VectorForm::from_matrix(c.g.matrix(Structure::kGamma));
    return Groups{vanishing(fn_bracket_01(c.g.liouville(), gm)(c.X))};
  });
  b.add("convention.conservative", grp, "d_h E (X) = (hX).E = 0", 3, tol,
        [](const Context& c) { return Groups{vanishing(directional(c.g.h(c.X), c.g.energy()))}; });
  b.add("convention.j_gamma", grp, "J Gamma X = JX", 3, tol,
        [](const Context& c) { return Groups{difference(c.g.J(c.g.gamma(c.X)), c.g.J(c.X))}; });
  b.add("convention.gamma_j", grp, "Gamma J X = -JX", 3, tol, [](const Context& c) {
    Terms t;
    t.plus(c.g.gamma(c.g.J(c.X))).plus(c.g.J(c.X));
    return Groups{t};
  });
}

void add_structure(Builder& b) {
  const std::string grp = "structure";
  b.add("structure.projectors", grp, "h^2 = h, v^2 = v, hv = vh = 0, h + v = I, F^2 = -I, FJ = h, Fh = -J", 3,
        1e-12, [](const Context& c) {
          const auto& g = c.g;
          const LF& x = c.X;
          Groups out;
          out.push_back(difference(g.h(g.h(x)), g.h(x)));
          out.push_back(difference(g.v(g.v(x)), g.v(x)));
          out.push_back(vanishing(g.h(g.v(x))));
          out.push_back(vanishing(g.v(g.h(x))));
          Terms sum;
          sum.plus(g.h(x)).plus(g.v(x)).minus(x);
          out.push_back(sum);
          Terms ff;
          ff.plus(g.F(g.F(x))).plus(x);
          out.push_back(ff);
          out.push_back(difference(g.F(g.J(x)), g.h(x)));
          Terms fh;
          fh.plus(g.F(g.h(x))).plus(g.J(x));
          out.push_back(fh);
          return out;
        });
  b.add("structure.energy_homogeneous", grp, "C.E = 2E", 3, 1e-10, [](const Context& c) {
    return Groups{difference(directional(c.g.liouville(), c.g.energy()), 2.0 * c.g.energy())};
  });
  b.add("structure.spray_equation", grp, "Omega(S,X) + X.E = 0", 3, 1e-8, [](const Context& c) {
    Terms t;
    t.plus(c.g.omega(c.g.spray(), c.X)).plus(directional(c.X, c.g.energy()));
    return Groups{t};
  });
  b.add("structure.spray_vertical", grp, "JS = C", 3, 1e-10,
        [](const Context& c) { return Groups{difference(c.g.J(c.g.spray()), c.g.liouville())}; });
  b.add("structure.spray_homogeneous", grp, "[C,S] = S", 4, 1e-8,
        [](const Context& c) { return Groups{difference(lie_bracket(c.g.liouville(), c.g.spray()), c.g.spray())}; });
  b.add("structure.spray_second_order", grp, "J[JX,S] = JX", 4, 1e-8,
        [](const Context& c) { return Groups{difference(c.g.J(lie_bracket(c.g.J(c.X), c.g.spray())), c.g.J(c.X))}; });
  b.add("structure.spray_coefficients_homogeneous", grp, "y^k dG^i/dy^k = 2 G^i", 4, 1e-8, [](const Context& c) {
    const int n = c.g.dim();
    const auto& G = c.g.spray_coefficients();
    const LF& lv = c.g.liouville();
    Groups out;
    for (int i = 0; i < n; ++i) out.push_back(difference(directional(lv, G[static_cast<std::size_t>(i)]),
                                                         2.0 * G[static_cast<std::size_t>(i)]));
    return out;
  });
  b.add("structure.horizontal_homogeneous", grp, "[C,hX] = h[C,X]", 4, 1e-8, [](const Context& c) {
    return Groups{
        difference(lie_bracket(c.g.liouville(), c.g.h(c.X)), c.g.h(lie_bracket(c.g.liouville(), c.X)))};
  });
  b.add("structure.metric_symmetric", grp, "g(X,Y) = g(Y,X), g(hX,JY) = 0, g(JX,JY) = g(hX,hY)", 3, 1e-10,
        [](const Context& c) {
          const auto& g = c.g;
          return Groups{difference(g.metric(c.X, c.Y), g.metric(c.Y, c.X)),
                        vanishing(g.metric(g.h(c.X), g.J(c.Y))),
                        difference(g.metric(g.J(c.X), g.J(c.Y)), g.metric(g.h(c.X), g.h(c.Y)))};
        });
  b.add("structure.curvature_paths", grp,
        "curvature of the nonlinear connection: coordinate formula = bracket of vector forms = -v[hX,hY]", 4,
        1e-7, [](const Context& c) {
          const LF a = c.g.curvature(c.X, c.Y);
          return Groups{difference(a, c.g.curvature_fn(c.X, c.Y)), difference(a, c.g.curvature_bracket(c.X, c.Y))};
        });
  b.add("structure.curvature_antisymmetric", grp, "Re(X,Y) = -Re(Y,X), Re semibasic and vertical", 4, 1e-8,
        [](const Context& c) {
          Terms t;
          t.plus(c.g.curvature(c.X, c.Y)).plus(c.g.curvature(c.Y, c.X));
          return Groups{t, vanishing(c.g.curvature(c.g.J(c.X), c.Y)), vanishing(c.g.h(c.g.curvature(c.X, c.Y)))};
        });
  b.add("structure.cartan_paths", grp, "C: coordinate formula = Lie-derivative characterization", 4, 1e-7,
        [](const Context& c) { return Groups{difference(c.g.cartan(c.X, c.Y), c.g.cartan_intrinsic(c.X, c.Y))}; });
  b.add("structure.cartan_second_paths", grp, "C': coordinate formula = Lie-derivative characterization", 4,
        1e-7, [](const Context& c) {
          return Groups{difference(c.g.cartan_second(c.X, c.Y), c.g.cartan_second_intrinsic(c.X, c.Y))};
        });
  b.add("structure.cartan_symmetric", grp, "C and C' symmetric, g(C(X,Y),JZ) and g(C'(X,Y),JZ) totally symmetric",
        4, 1e-8, [](const Context& c) {
          const auto& g = c.g;
          const LF jz = g.J(c.Z);
          const LF jx = g.J(c.X);
          const LF jy = g.J(c.Y);
          return Groups{difference(g.cartan(c.X, c.Y), g.cartan(c.Y, c.X)),
                        difference(g.cartan_second(c.X, c.Y), g.cartan_second(c.Y, c.X)),
                        difference(g.metric(g.cartan(c.X, c.Y), jz), g.metric(g.cartan(c.Z, c.Y), jx)),
                        difference(g.metric(g.cartan(c.X, c.Y), jz), g.metric(g.cartan(c.X, c.Z), jy)),
                        difference(g.metric(g.cartan_second(c.X, c.Y), jz), g.metric(g.cartan_second(c.Z, c.Y), jx)),
                        difference(g.metric(g.cartan_second(c.X, c.Y), jz), g.metric(g.cartan_second(c.X, c.Z), jy))};
        });
  b.add("structure.cartan_semibasic", grp, "C, C' vertical-valued and vanish on vertical arguments", 4, 1e-10,
        [](const Context& c) {
          const auto& g = c.g;
          return Groups{vanishing(g.J(g.cartan(c.X, c.Y))), vanishing(g.cartan(g.J(c.X), c.Y)),
                        vanishing(g.J(g.cartan_second(c.X, c.Y))), vanishing(g.cartan_second(g.J(c.X), c.Y))};
        });
  b.add("structure.cartan_spray", grp, "C(X,S) = 0, C'(X,S) = 0", 4, 1e-8, [](const Context& c) {
    return Groups{vanishing(c.g.cartan(c.X, c.g.spray())), vanishing(c.g.cartan_second(c.X, c.g.spray()))};
  });
  b.add("structure.horizontal_integrable", grp, "v[hX,hY] = 0 when Re = 0", 4, 1e-7, [](const Context& c) {
         return Groups{vanishing(c.g.v(lie_bracket(c.g.h(c.X), c.g.h(c.Y))))};
       }).requirement = Requirement::kFlatCurvature;
}

void add_axioms(Builder& b) {
  constexpr double tol = 1e-7;
  for (ConnectionKind kind : {ConnectionKind::kBerwald, ConnectionKind::kCartan, ConnectionKind::kChern}) {
    const std::string k(to_string(kind));
    const std::string grp = "axioms." + k;
    b.add(k + ".parallel_j", grp, "D J = 0: D_X JY = J D_X Y", 4, tol, [kind](const Context& c) {
      const auto& d = c.connection(kind);
      return Groups{difference(d.covariant(c.X, c.g.J(c.Y)), c.g.J(d.covariant(c.X, c.Y)))};
    });
    b.add(k + ".liouville", grp, "D C = v: D_X C = vX", 4, tol, [kind](const Context& c) {
      return Groups{difference(c.connection(kind).covariant(c.X, c.g.liouville()), c.g.v(c.X))};
    });
    b.add(k + ".parallel_gamma", grp, "D Gamma = 0: D_X Gamma Y = Gamma D_X Y", 4, tol, [kind](const Context& c) {
      const auto& d = c.connection(kind);
      return Groups{difference(d.covariant(c.X, c.g.gamma(c.Y)), c.g.gamma(d.covariant(c.X, c.Y)))};
    });
    b.add(k + ".parallel_f", grp, "D F = 0: D_X FY = F D_X Y", 4, tol, [kind](const Context& c) {
      const auto& d = c.connection(kind);
      return Groups{difference(d.covariant(c.X, c.g.F(c.Y)), c.g.F(d.covariant(c.X, c.Y)))};
    });
    const bool cartan = kind == ConnectionKind::kCartan;
    b.add(k + ".vertical_rule", grp, cartan ? "D_JX JY = J[JX,Y] + C(X,Y)" : "D_JX JY = J[JX,Y]", 4, tol,
          [kind, cartan](const Context& c) {
            Terms t;
            t.plus(c.connection(kind).covariant(c.g.J(c.X), c.g.J(c.Y))).minus(c.g.J(lie_bracket(c.g.J(c.X), c.Y)));
            if (cartan) t.minus(c.g.cartan(c.X, c.Y));
            return Groups{t};
          });
    const bool corrected = kind != ConnectionKind::kBerwald;
    b.add(k + ".horizontal_rule", grp, corrected ? "D_hX JY = v[hX,JY] + C'(X,Y)" : "D_hX JY = v[hX,JY]", 4, tol,
          [kind, corrected](const Context& c) {
            Terms t;
            t.plus(c.connection(kind).covariant(c.g.h(c.X), c.g.J(c.Y)))
                .minus(c.g.v(lie_bracket(c.g.h(c.X), c.g.J(c.Y))));
            if (corrected) t.minus(c.g.cartan_second(c.X, c.Y));
            return Groups{t};
          });
  }
  b.add("chern.h_metric", "axioms.chern", "(D_hX g)(Y,Z) = 0", 4, tol, [](const Context& c) {
    return Groups{vanishing(c.chern.metric_derivative(c.g.h(c.X), c.Y, c.Z))};
  });
  b.add("chern.horizontal_torsion_vertical_part", "axioms.chern", "J T(hX,hY) = 0", 4, tol, [](const Context& c) {
    return Groups{vanishing(c.g.J(c.chern.torsion(c.g.h(c.X), c.g.h(c.Y))))};
  });
  b.add("cartan.metric", "axioms.cartan", "(D_X g)(Y,Z) = 0", 4, tol,
        [](const Context& c) { return Groups{vanishing(c.cartan.metric_derivative(c.X, c.Y, c.Z))}; });
  b.add("cartan.horizontal_torsion_vertical_part", "axioms.cartan", "J T(hX,hY) = 0", 4, tol,
        [](const Context& c) { return Groups{vanishing(c.g.J(c.cartan.torsion(c.g.h(c.X), c.g.h(c.Y))))}; });
  b.add("chern.matches_berwald_vertical", "axioms.chern", "chern D_JX Y = berwald D_JX Y", 4, tol,
        [](const Context& c) {
          return Groups{difference(c.chern.covariant(c.g.J(c.X), c.Y), c.berwald.covariant(c.g.J(c.X), c.Y))};
        });
  b.add("chern.matches_cartan_horizontal", "axioms.chern", "chern D_hX Y = cartan D_hX Y", 4, tol,
        [](const Context& c) {
          return Groups{difference(c.chern.covariant(c.g.h(c.X), c.Y), c.cartan.covariant(c.g.h(c.X), c.Y))};
        });
  b.add("chern.koszul", "uniqueness",
        "g(2 D_hX JY, JZ) = hX.g(JY,JZ) + hY.g(JZ,JX) - hZ.g(JX,JY) + g(J[hX,hY],JZ) - g(JY,J[hX,hZ]) "
        "- g(J[hY,hZ],JX)",
        4, tol, [](const Context& c) {
          const auto& g = c.g;
          const LF hx = g.h(c.X), hy = g.h(c.Y), hz = g.h(c.Z);
          const LF jx = g.J(c.X), jy = g.J(c.Y), jz = g.J(c.Z);
          Terms t;
          t.plus(g.metric(2.0 * c.chern.covariant(hx, jy), jz))
              .minus(directional(hx, g.metric(jy, jz)))
              .minus(directional(hy, g.metric(jz, jx)))
              .plus(directional(hz, g.metric(jx, jy)))
              .minus(g.metric(g.J(lie_bracket(hx, hy)), jz))
              .plus(g.metric(jy, g.J(lie_bracket(hx, hz))))
              .plus(g.metric(g.J(lie_bracket(hy, hz)), jx));
          return Groups{t};
        });
}

void add_brackets(Builder& b) {
  constexpr double tol = 1e-7;
  const std::string grp = "brackets";
  b.add("chern.bracket_vv", grp, "[JX,JY] = J(D_JX Y - D_JY X)", 4, tol, [](const Context& c) {
    const auto& g = c.g;
    Terms t;
    t.plus(lie_bracket(g.J(c.X), g.J(c.Y)))
        .minus(g.J(c.chern.covariant(g.J(c.X), c.Y)))
        .plus(g.J(c.chern.covariant(g.J(c.Y), c.X)));
    return Groups{t};
  });
  b.add("chern.bracket_hv", grp, "[hX,JY] = J D_hX Y - h D_JY X - C'(X,Y)", 4, tol, [](const Context& c) {
    const auto& g = c.g;
    Terms t;
    t.plus(lie_bracket(g.h(c.X), g.J(c.Y)))
        .minus(g.J(c.chern.covariant(g.h(c.X), c.Y)))
        .plus(g.h(c.chern.covariant(g.J(c.Y), c.X)))
        .plus(g.cartan_second(c.X, c.Y));
    return Groups{t};
  });
  b.add("chern.bracket_hh", grp, "[hX,hY] = h(D_hX Y - D_hY X) - Re(X,Y)", 4, tol, [](const Context& c) {
    const auto& g = c.g;
    Terms t;
    t.plus(lie_bracket(g.h(c.X), g.h(c.Y)))
        .minus(g.h(c.chern.covariant(g.h(c.X), c.Y)))
        .plus(g.h(c.chern.covariant(g.h(c.Y), c.X)))
        .plus(g.curvature(c.X, c.Y));
    return Groups{t};
  });
}

void add_torsion(Builder& b) {
  constexpr double tol = 1e-7;
  const std::string grp = "torsion";
  for (ConnectionKind kind : {ConnectionKind::kBerwald, ConnectionKind::kCartan, ConnectionKind::kChern}) {
    const std::string k(to_string(kind));
    b.add(k + ".torsion_hh", grp, "T(hX,hY) = Re(X,Y)", 4, tol, [kind](const Context& c) {
      return Groups{difference(c.connection(kind).torsion(c.g.h(c.X), c.g.h(c.Y)), c.g.curvature(c.X, c.Y))};
    });
    std::string hv = "T(hX,JY) = 0";
    if (kind == ConnectionKind::kCartan) hv = "T(hX,JY) = C'(X,Y) - F C(X,Y)";
    if (kind == ConnectionKind::kChern) hv = "T(hX,JY) = C'(X,Y)";
    b.add(k + ".torsion_hv", grp, hv, 4, tol, [kind](const Context& c) {
      Terms t;
      t.plus(c.connection(kind).torsion(c.g.h(c.X), c.g.J(c.Y)));
      if (kind != ConnectionKind::kBerwald) t.minus(c.g.cartan_second(c.X, c.Y));
      if (kind == ConnectionKind::kCartan) t.plus(c.g.F(c.g.cartan(c.X, c.Y)));
      return Groups{t};
    });
    b.add(k + ".torsion_vv", grp, "T(JX,JY) = 0", 4, tol, [kind](const Context& c) {
      return Groups{vanishing(c.connection(kind).torsion(c.g.J(c.X), c.g.J(c.Y)))};
    });
  }
  b.add("berwald.torsion_vertical_slot", grp, "T(JX,Y) = 0 for Y = hW and Y = JW", 4, tol, [](const Context& c) {
    return Groups{vanishing(c.berwald.torsion(c.g.J(c.X), c.g.h(c.W))),
                  vanishing(c.berwald.torsion(c.g.J(c.X), c.g.J(c.W)))};
  });
}

void add_curvature(Builder& b) {
  constexpr double tol = 1e-6;
  const std::string grp = "curvature";
  b.add("chern.v_curvature", grp, "Q*(X,Y)Z = 0", 5, 1e-9,
        [](const Context& c) { return Groups{vanishing(c.chern.v_curvature(c.X, c.Y, c.Z))}; });
  b.add("chern.h_curvature_relation", grp, "R*(X,Y)Z = R(X,Y)Z - C(F Re(X,Y), Z)", 5, tol, [](const Context& c) {
    Terms t;
    t.plus(c.chern.h_curvature(c.X, c.Y, c.Z))
        .minus(c.cartan.h_curvature(c.X, c.Y, c.Z))
        .plus(c.g.cartan(c.g.F(c.g.curvature(c.X, c.Y)), c.Z));
    return Groups{t};
  });
  b.add("chern.hv_curvature_relation", grp, "P*(X,Y)Z = P_berwald(X,Y)Z - (D*_JY C')(X,Z)", 5, tol,
        [](const Context& c) {
          Terms t;
          t.plus(c.chern.hv_curvature(c.X, c.Y, c.Z))
              .minus(c.berwald.hv_curvature(c.X, c.Y, c.Z))
              .plus(c.chern.derivative(c.g.J(c.Y), cartan_second_tensor(c), c.X, c.Z));
          return Groups{t};
        });
  b.add("chern.h_curvature_spray", grp, "R*(X,Y)S = Re(X,Y)", 5, tol, [](const Context& c) {
    return Groups{difference(c.chern.h_curvature(c.X, c.Y, c.g.spray()), c.g.curvature(c.X, c.Y))};
  });
  b.add("chern.hv_curvature_spray", grp, "P*(X,Y)S = P*(S,Y)X = C'(X,Y)", 5, tol, [](const Context& c) {
    const LF cp = c.g.cartan_second(c.X, c.Y);
    return Groups{difference(c.chern.hv_curvature(c.X, c.Y, c.g.spray()), cp),
                  difference(c.chern.hv_curvature(c.g.spray(), c.Y, c.X), cp)};
  });
  b.add("chern.hv_curvature_spray_slot", grp, "P*(X,S)Z = 0", 5, tol,
        [](const Context& c) { return Groups{vanishing(c.chern.hv_curvature(c.X, c.g.spray(), c.Z))}; });
  b.add("cartan.h_curvature_spray", grp, "R(X,Y)S = Re(X,Y)", 5, tol, [](const Context& c) {
    return Groups{difference(c.cartan.h_curvature(c.X, c.Y, c.g.spray()), c.g.curvature(c.X, c.Y))};
  });
  b.add("cartan.hv_curvature_spray", grp, "P(X,Y)S = C'(X,Y)", 5, tol, [](const Context& c) {
    return Groups{difference(c.cartan.hv_curvature(c.X, c.Y, c.g.spray()), c.g.cartan_second(c.X, c.Y))};
  });
  b.add("cartan.hv_curvature_spray_slot", grp, "P(S,X)Y = P(X,S)Y = 0", 5, tol, [](const Context& c) {
    return Groups{vanishing(c.cartan.hv_curvature(c.g.spray(), c.X, c.Y)),
                  vanishing(c.cartan.hv_curvature(c.X, c.g.spray(), c.Y))};
  });
  b.add("berwald.h_curvature_table", grp, "R_berwald(X,Y)Z = (D_JZ Re)(X,Y)", 5, tol, [](const Context& c) {
    return Groups{difference(c.berwald.h_curvature(c.X, c.Y, c.Z),
                             c.berwald.derivative(c.g.J(c.Z), nonlinear_curvature(c), c.X, c.Y))};
  });
  b.add("berwald.hv_curvature_table", grp,
        "P_berwald(X,Y)Z = v[hX,J[JY,Z]] - J[JY,F[hX,JZ]] - v[h[hX,JY],JZ] - J[v[hX,JY],Z]", 5, tol,
        [](const Context& c) {
          const auto& g = c.g;
          const LF hx = g.h(c.X), jy = g.J(c.Y), jz = g.J(c.Z);
          const LF hxjy = lie_bracket(hx, jy);
          Terms t;
          t.plus(c.berwald.hv_curvature(c.X, c.Y, c.Z))
              .minus(g.v(lie_bracket(hx, g.J(lie_bracket(jy, c.Z)))))
              .plus(g.J(lie_bracket(jy, g.F(lie_bracket(hx, jz)))))
              .plus(g.v(lie_bracket(g.h(hxjy), jz)))
              .plus(g.J(lie_bracket(g.v(hxjy), c.Z)));
          return Groups{t};
        });
  b.add("berwald.v_curvature", grp, "Q_berwald(X,Y)Z = 0", 5, tol,
        [](const Context& c) { return Groups{vanishing(c.berwald.v_curvature(c.X, c.Y, c.Z))}; });
  b.add("cartan.h_curvature_table", grp,
        "R(X,Y)Z = R_berwald(X,Y)Z + (D_hX C')(Y,Z) - (D_hY C')(X,Z) + C'(F C'(X,Z),Y) - C'(F C'(Y,Z),X) "
        "+ C(F Re(X,Y),Z)",
        5, tol, [](const Context& c) {
          const auto& g = c.g;
          const Tensor2 cp = cartan_second_tensor(c);
          Terms t;
          t.plus(c.cartan.h_curvature(c.X, c.Y, c.Z))
              .minus(c.berwald.h_curvature(c.X, c.Y, c.Z))
              .minus(c.cartan.derivative(g.h(c.X), cp, c.Y, c.Z))
              .plus(c.cartan.derivative(g.h(c.Y), cp, c.X, c.Z))
              .minus(g.cartan_second(g.F(g.cartan_second(c.X, c.Z)), c.Y))
              .plus(g.cartan_second(g.F(g.cartan_second(c.Y, c.Z)), c.X))
              .minus(g.cartan(g.F(g.curvature(c.X, c.Y)), c.Z));
          return Groups{t};
        });
  b.add("cartan.hv_curvature_table", grp,
        "P(X,Y)Z = P_berwald(X,Y)Z + (D_hX C)(Y,Z) - (D_JY C')(X,Z) + C(F C'(X,Z),Y) + C(F C'(X,Y),Z) "
        "- C'(F C(Y,Z),X) - C'(F C(X,Y),Z)",
        5, tol, [](const Context& c) {
          const auto& g = c.g;
          Terms t;
          t.plus(c.cartan.hv_curvature(c.X, c.Y, c.Z))
              .minus(c.berwald.hv_curvature(c.X, c.Y, c.Z))
              .minus(c.cartan.derivative(g.h(c.X), cartan_tensor(c), c.Y, c.Z))
              .plus(c.cartan.derivative(g.J(c.Y), cartan_second_tensor(c), c.X, c.Z))
              .minus(g.cartan(g.F(g.cartan_second(c.X, c.Z)), c.Y))
              .minus(g.cartan(g.F(g.cartan_second(c.X, c.Y)), c.Z))
              .plus(g.cartan_second(g.F(g.cartan(c.Y, c.Z)), c.X))
              .plus(g.cartan_second(g.F(g.cartan(c.X, c.Y)), c.Z));
          return Groups{t};
        });
  b.add("cartan.v_curvature_table", grp, "Q(X,Y)Z = C(F C(X,Z),Y) - C(F C(Y,Z),X)", 5, tol, [](const Context& c) {
    const auto& g = c.g;
    Terms t;
    t.plus(c.cartan.v_curvature(c.X, c.Y, c.Z))
        .minus(g.cartan(g.F(g.cartan(c.X, c.Z)), c.Y))
        .plus(g.cartan(g.F(g.cartan(c.Y, c.Z)), c.X));
    return Groups{t};
  });
}

void add_bianchi(Builder& b) {
  constexpr double tol = 1e-6;
  const std::string grp = "bianchi";
  b.add("chern.bianchi_h_cyclic", grp, "cyclic sum of R*(X,Y)Z = 0", 5, tol, [](const Context& c) {
    Terms t;
    t.plus(c.chern.h_curvature(c.X, c.Y, c.Z))
        .plus(c.chern.h_curvature(c.Y, c.Z, c.X))
        .plus(c.chern.h_curvature(c.Z, c.X, c.Y));
    return Groups{t};
  });
  b.add("chern.bianchi_curvature_derivative", grp,
        "cyclic sum of (D*_hX Re)(Y,Z) = cyclic sum of C'(F Re(X,Y),Z)", 5, tol, [](const Context& c) {
          const auto& g = c.g;
          const Tensor2 re = nonlinear_curvature(c);
          Terms t;
          const LF* a[3] = {&c.X, &c.Y, &c.Z};
          for (int i = 0; i < 3; ++i) {
            const LF& x = *a[i];
            const LF& y = *a[(i + 1) % 3];
            const LF& z = *a[(i + 2) % 3];
            t.plus(c.chern.derivative(g.h(x), re, y, z));
            t.minus(g.cartan_second(g.F(g.curvature(x, y)), z));
          }
          return Groups{t};
        });
  b.add("chern.bianchi_hv_symmetric", grp, "P*(X,Y)Z = P*(Z,Y)X", 5, tol, [](const Context& c) {
    return Groups{difference(c.chern.hv_curvature(c.X, c.Y, c.Z), c.chern.hv_curvature(c.Z, c.Y, c.X))};
  });
  b.add("chern.bianchi_hv_difference", grp, "P*(X,Y)Z - P*(X,Z)Y = (D*_JZ C')(X,Y) - (D*_JY C')(X,Z)", 5, tol,
        [](const Context& c) {
          const Tensor2 cp = cartan_second_tensor(c);
          Terms t;
          t.plus(c.chern.hv_curvature(c.X, c.Y, c.Z))
              .minus(c.chern.hv_curvature(c.X, c.Z, c.Y))
              .minus(c.chern.derivative(c.g.J(c.Z), cp, c.X, c.Y))
              .plus(c.chern.derivative(c.g.J(c.Y), cp, c.X, c.Z));
          return Groups{t};
        });
  b.add("chern.bianchi_h_derivative", grp,
        "cyclic sum of (D*_hX R*)(Y,Z) = cyclic sum of P*(X, F Re(Y,Z)) (applied to W)", 6, tol,
        [](const Context& c) {
          const auto& g = c.g;
          const Tensor3 rs = h_curvature_of(c.chern);
          Terms t;
          const LF* a[3] = {&c.X, &c.Y, &c.Z};
          for (int i = 0; i < 3; ++i) {
            const LF& x = *a[i];
            const LF& y = *a[(i + 1) % 3];
            const LF& z = *a[(i + 2) % 3];
            t.plus(c.chern.derivative(g.h(x), rs, y, z, c.W));
            t.minus(c.chern.hv_curvature(x, g.F(g.curvature(y, z)), c.W));
          }
          return Groups{t};
        });
  b.add("chern.bianchi_mixed", "bianchi_mixed",
        "(D*_hX P*)(Y,Z) - (D*_hY P*)(X,Z) + (D*_JZ R*)(X,Y) = P*(X, F C'(Y,Z)) - P*(Y, F C'(X,Z)) "
        "(applied to W)",
        6, tol, [](const Context& c) {
          const auto& g = c.g;
          const Tensor3 ps = hv_curvature_of(c.chern);
          const Tensor3 rs = h_curvature_of(c.chern);
          Terms t;
          t.plus(c.chern.derivative(g.h(c.X), ps, c.Y, c.Z, c.W))
              .minus(c.chern.derivative(g.h(c.Y), ps, c.X, c.Z, c.W))
              .plus(c.chern.derivative(g.J(c.Z), rs, c.X, c.Y, c.W))
              .minus(c.chern.hv_curvature(c.X, g.F(g.cartan_second(c.Y, c.Z)), c.W))
              .plus(c.chern.hv_curvature(c.Y, g.F(g.cartan_second(c.X, c.Z)), c.W));
          return Groups{t};
        });
  b.add("chern.bianchi_hv_derivative", grp, "(D*_JY P*)(X,Z) = (D*_JZ P*)(X,Y) (applied to W)", 6, tol,
        [](const Context& c) {
          const Tensor3 ps = hv_curvature_of(c.chern);
          return Groups{difference(c.chern.derivative(c.g.J(c.Y), ps, c.X, c.Z, c.W),
                                   c.chern.derivative(c.g.J(c.Z), ps, c.X, c.Y, c.W))};
        });
  b.add("chern.liouville_h_curvature", grp, "D*_C R* = 0", 6, tol, [](const Context& c) {
    return Groups{vanishing(c.chern.derivative(c.g.liouville(), h_curvature_of(c.chern), c.X, c.Y, c.Z))};
  });
  // Holds only where P* vanishes; P* is homogeneous of degree -1 in y.
  b.add("chern.liouville_hv_curvature", grp, "D*_C P* = 0", 6, tol, [](const Context& c) {
     return Groups{vanishing(c.chern.derivative(c.g.liouville(), hv_curvature_of(c.chern), c.X, c.Y, c.Z))};
   }).informational = true;
  b.add("chern.liouville_hv_curvature_homogeneous", grp, "D*_C P* = -P*", 6, tol, [](const Context& c) {
    Terms t;
    t.plus(c.chern.derivative(c.g.liouville(), hv_curvature_of(c.chern), c.X, c.Y, c.Z))
        .plus(c.chern.hv_curvature(c.X, c.Y, c.Z));
    return Groups{t};
  });
  b.add("chern.hv_curvature_total_symmetry", grp, "P* totally symmetric when D*_JZ C' = 0", 5, tol,
        [](const Context& c) {
          const LF p = c.chern.hv_curvature(c.X, c.Y, c.Z);
          return Groups{difference(p, c.chern.hv_curvature(c.Y, c.X, c.Z)),
                        difference(p, c.chern.hv_curvature(c.X, c.Z, c.Y)),
                        difference(p, c.chern.hv_curvature(c.Z, c.Y, c.X))};
        })
      .requirement = Requirement::kCprimeParallel;
}

void add_symmetry(Builder& b) {
  const std::string grp = "h_curvature_symmetry";
  b.add("chern.h_curvature_antisymmetric", grp, "R*(X,Y,Z,W) = -R*(Y,X,Z,W), R*(X,Y,Z,W) := g(R*(X,Y)Z, JW)",
        5, 1e-8, [](const Context& c) {
          Terms t;
          t.plus(chern_h_form(c, c.X, c.Y, c.Z, c.W)).plus(chern_h_form(c, c.Y, c.X, c.Z, c.W));
          return Groups{t};
        });
  b.add("chern.h_curvature_cyclic_form", grp, "R*(X,Y,Z,W) + R*(Y,Z,X,W) + R*(Z,X,Y,W) = 0", 5, 1e-8,
        [](const Context& c) {
          Terms t;
          t.plus(chern_h_form(c, c.X, c.Y, c.Z, c.W))
              .plus(chern_h_form(c, c.Y, c.Z, c.X, c.W))
              .plus(chern_h_form(c, c.Z, c.X, c.Y, c.W));
          return Groups{t};
        });
  b.add("chern.h_curvature_skew_last", grp, "R*(X,Y,Z,W) = -R*(X,Y,W,Z) when Re = 0", 5, 1e-6,
        [](const Context& c) {
          Terms t;
          t.plus(chern_h_form(c, c.X, c.Y, c.Z, c.W)).plus(chern_h_form(c, c.X, c.Y, c.W, c.Z));
          return Groups{t};
        })
      .requirement = Requirement::kFlatCurvature;
  b.add("chern.h_curvature_pair_symmetric", grp, "R*(X,Y,Z,W) = R*(Z,W,X,Y) when Re = 0", 5, 1e-6,
        [](const Context& c) {
          return Groups{difference(chern_h_form(c, c.X, c.Y, c.Z, c.W), chern_h_form(c, c.Z, c.W, c.X, c.Y))};
        })
      .requirement = Requirement::kFlatCurvature;
  auto& w = b.add("chern.h_curvature_skew_last_witness", grp,
                  "some sample with |R*(X,Y,Z,W) + R*(X,Y,W,Z)| > threshold when Re != 0", 5, 1e-4,
                  [](const Context& c) {
                    Terms t;
                    t.plus(chern_h_form(c, c.X, c.Y, c.Z, c.W)).plus(chern_h_form(c, c.X, c.Y, c.W, c.Z));
                    return Groups{t};
                  });
  w.requirement = Requirement::kCurvedFamily;
  w.kind = CheckKind::kWitness;
  w.informational = true;
}

void add_metricity_witnesses(Builder& b) {
  const std::string grp = "metricity";
  auto& bh = b.add("berwald.h_metric_witness", grp, "some sample with |(D_hX g)(Y,Z)| > threshold", 4, 1e-4,
                   [](const Context& c) { return Groups{vanishing(c.berwald.metric_derivative(c.g.h(c.X), c.Y, c.Z))}; });
  bh.kind = CheckKind::kWitness;
  bh.requirement = Requirement::kCartanSecondNonzero;
  auto& bv = b.add("berwald.v_metric_witness", grp, "some sample with |(D_JX g)(Y,Z)| > threshold", 4, 1e-4,
                   [](const Context& c) { return Groups{vanishing(c.berwald.metric_derivative(c.g.J(c.X), c.Y, c.Z))}; });
  bv.kind = CheckKind::kWitness;
  bv.requirement = Requirement::kCartanNonzero;
  auto& cv = b.add("chern.v_metric_witness", grp, "some sample with |(D*_JX g)(Y,Z)| > threshold", 4, 1e-4,
                   [](const Context& c) { return Groups{vanishing(c.chern.metric_derivative(c.g.J(c.X), c.Y, c.Z))}; });
  cv.kind = CheckKind::kWitness;
  cv.requirement = Requirement::kCartanNonzero;
}

void add_flags(Builder& b) {
  const std::string grp = "flags";
  b.add("flags.riemannian", grp, "declared riemannian: max |C_ijk| and max |C'_jkl| below tolerance", 4, 1e-9,
        [](const Context& c) {
          return Groups{coefficient_magnitude(c.g.cartan_lowered()),
                        coefficient_magnitude(c.g.cartan_second_lowered())};
        })
      .requirement = Requirement::kDeclaredRiemannian;
  b.add("flags.locally_minkowski", grp, "declared locally_minkowski: max |R^i_jk| below tolerance", 4, 1e-9,
        [](const Context& c) { return Groups{coefficient_magnitude(c.g.curvature_coefficients())}; })
      .requirement = Requirement::kDeclaredMinkowski;
  auto& w = b.add("flags.cartan_witness", grp, "non-riemannian: some sample with max |C_ijk| > threshold", 4, 1e-3,
                  [](const Context& c) { return Groups{coefficient_magnitude(c.g.cartan_lowered())}; });
  w.kind = CheckKind::kWitness;
  w.requirement = Requirement::kDeclaredNonRiemannian;
}

void add_calculus(Builder& b) {
  constexpr double tol = 1e-7;
  const std::string grp = "calculus";
  b.add("chern.leibniz", grp, "D_X(fY) = (X.f)Y + f D_X Y", 4, tol, [](const Context& c) {
    Terms t;
    t.plus(c.chern.covariant(c.X, c.f * c.Y))
        .minus(directional(c.X, c.f) * c.Y)
        .minus(c.f * c.chern.covariant(c.X, c.Y));
    return Groups{t};
  });
  b.add("chern.function_linear", grp, "D_fX Y = f D_X Y", 4, tol, [](const Context& c) {
    return Groups{difference(c.chern.covariant(c.f * c.X, c.Y), c.f * c.chern.covariant(c.X, c.Y))};
  });
  for (ConnectionKind kind : {ConnectionKind::kBerwald, ConnectionKind::kCartan, ConnectionKind::kChern}) {
    const std::string k(to_string(kind));
    b.add(k + ".torsion_tensorial", grp, "T(fX,Y) = f T(X,Y), T(X,fY) = f T(X,Y)", 4, tol,
          [kind](const Context& c) {
            const auto& d = c.connection(kind);
            const LF t = c.f * d.torsion(c.X, c.Y);
            return Groups{difference(d.torsion(c.f * c.X, c.Y), t), difference(d.torsion(c.X, c.f * c.Y), t)};
          });
    b.add(k + ".curvature_tensorial", grp, "K(fX,Y)Z = K(X,fY)Z = K(X,Y)fZ = f K(X,Y)Z, K(X,Y)Z = -K(Y,X)Z", 5,
          tol, [kind](const Context& c) {
            const auto& d = c.connection(kind);
            const LF k0 = d.curvature(c.X, c.Y, c.Z);
            const LF fk = c.f * k0;
            Terms anti;
            anti.plus(k0).plus(d.curvature(c.Y, c.X, c.Z));
            return Groups{difference(d.curvature(c.f * c.X, c.Y, c.Z), fk),
                          difference(d.curvature(c.X, c.f * c.Y, c.Z), fk),
                          difference(d.curvature(c.X, c.Y, c.f * c.Z), fk), anti};
          });
  }
  b.add("structure.tensors_tensorial", grp, "Re, C, C' are function-linear in each slot", 4, tol,
        [](const Context& c) {
          Groups out;
          for (const Tensor2& t : {nonlinear_curvature(c), cartan_tensor(c), cartan_second_tensor(c)}) {
            const LF base = c.f * t(c.X, c.Y);
            out.push_back(difference(t(c.f * c.X, c.Y), base));
            out.push_back(difference(t(c.X, c.f * c.Y), base));
          }
          return out;
        });
}

std::vector<IdentityDef> build_registry() {
  Builder b;
  add_conventions(b);
  add_structure(b);
  add_axioms(b);
  add_brackets(b);
  add_torsion(b);
  add_curvature(b);
  add_bianchi(b);
  add_symmetry(b);
  add_metricity_witnesses(b);
  add_flags(b);
  add_calculus(b);
  return std::move(b.defs);
}

}  // namespace

Terms& Terms::plus(const LocalField& f) {
  terms_.push_back(f.values());
  return *this;
}

Terms& Terms::minus(const LocalField& f) {
  std::vector<double> v = f.values();
  for (double& x : v) x = -x;
  terms_.push_back(std::move(v));
  return *this;
}

Terms& Terms::plus(const Jet& s) {
  terms_.push_back({s.value()});
  return *this;
}

Terms& Terms::minus(const Jet& s) {
  terms_.push_back({-s.value()});
  return *this;
}

Residual Terms::residual() const {
  Residual r;
  if (terms_.empty()) return r;
  std::vector<double> sum(terms_.front().size(), 0.0);
  for (const auto& t : terms_) {
    if (t.size() != sum.size()) throw Error("identity terms differ in size");
    for (std::size_t i = 0; i < t.size(); ++i) sum[i] += t[i];
    r.scale = std::max(r.scale, inf_norm(t));
  }
  r.absolute = inf_norm(sum);
  r.normalized = r.scale > 1.0 ? r.absolute / r.scale : r.absolute;
  return r;
}

const LinearConnection& Context::connection(ConnectionKind kind) const {
  switch (kind) {
    case ConnectionKind::kBerwald: return berwald;
    case ConnectionKind::kCartan: return cartan;
    case ConnectionKind::kChern: return chern;
  }
  return chern;
}

const std::vector<IdentityDef>& registry() {
  static const std::vector<IdentityDef> defs = build_registry();
  return defs;
}

const IdentityDef& find_identity(const std::string& label) {
  for (const auto& d : registry()) {
    if (d.label == label) return d;
  }
  throw ConfigError("unknown identity `" + label + "`");
}

const std::vector<std::string>& required_labels() {
  static const std::vector<std::string> labels = {
      "convention.jj_bracket", "convention.liouville_j", "convention.j_nilpotent",
      "convention.connection_torsion", "convention.connection_homogeneous", "convention.conservative",
      "convention.j_gamma", "convention.gamma_j",
      "structure.spray_equation", "structure.spray_vertical", "structure.curvature_paths",
      "structure.cartan_paths", "structure.cartan_second_paths", "structure.cartan_spray",
      "structure.horizontal_integrable",
      "berwald.parallel_j", "berwald.liouville", "berwald.parallel_f", "berwald.vertical_rule",
      "berwald.horizontal_rule", "berwald.torsion_vertical_slot",
      "cartan.parallel_j", "cartan.liouville", "cartan.parallel_f", "cartan.vertical_rule", "cartan.horizontal_rule",
      "cartan.metric", "cartan.horizontal_torsion_vertical_part",
      "chern.parallel_j", "chern.liouville", "chern.parallel_gamma", "chern.parallel_f", "chern.vertical_rule",
      "chern.horizontal_rule", "chern.h_metric", "chern.horizontal_torsion_vertical_part",
      "chern.matches_berwald_vertical", "chern.matches_cartan_horizontal", "chern.koszul",
      "chern.bracket_vv", "chern.bracket_hv", "chern.bracket_hh",
      "berwald.torsion_hh", "berwald.torsion_hv", "berwald.torsion_vv",
      "cartan.torsion_hh", "cartan.torsion_hv", "cartan.torsion_vv",
      "chern.torsion_hh", "chern.torsion_hv", "chern.torsion_vv",
      "chern.v_curvature", "chern.h_curvature_relation", "chern.hv_curvature_relation",
      "chern.h_curvature_spray", "chern.hv_curvature_spray", "chern.hv_curvature_spray_slot",
      "cartan.h_curvature_spray", "cartan.hv_curvature_spray", "cartan.hv_curvature_spray_slot",
      "berwald.h_curvature_table", "berwald.hv_curvature_table", "berwald.v_curvature",
      "cartan.h_curvature_table", "cartan.hv_curvature_table", "cartan.v_curvature_table",
      "chern.bianchi_h_cyclic", "chern.bianchi_curvature_derivative", "chern.bianchi_hv_symmetric",
      "chern.bianchi_hv_difference", "chern.bianchi_h_derivative", "chern.bianchi_mixed",
      "chern.bianchi_hv_derivative", "chern.liouville_h_curvature", "chern.liouville_hv_curvature",
      "chern.liouville_hv_curvature_homogeneous",
      "chern.hv_curvature_total_symmetry",
      "chern.h_curvature_antisymmetric", "chern.h_curvature_cyclic_form", "chern.h_curvature_skew_last",
      "chern.h_curvature_pair_symmetric", "chern.h_curvature_skew_last_witness",
      "berwald.h_metric_witness", "berwald.v_metric_witness", "chern.v_metric_witness",
      "flags.riemannian", "flags.locally_minkowski", "flags.cartan_witness",
      "chern.leibniz", "chern.function_linear", "chern.curvature_tensorial",
  };
  return labels;
}

std::vector<std::string> coverage_gaps() {
  std::vector<std::string> missing;
  for (const auto& label : required_labels()) {
    const bool found = std::any_of(registry().begin(), registry().end(),
                                   [&](const IdentityDef& d) { return d.label == label; });
    if (!found) missing.push_back(label);
  }
  return missing;
}

}  // namespace finsler::verify
