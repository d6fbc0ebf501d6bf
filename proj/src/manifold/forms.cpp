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

#include "finsler/forms.hpp"

namespace finsler {

VectorForm VectorForm::field(LocalField value) {
  VectorForm f;
  f.degree_ = 0;
  f.value_ = std::move(value);
  return f;
}

VectorForm VectorForm::one(Fn1 fn) {
  VectorForm f;
  f.degree_ = 1;
  f.fn1_ = std::move(fn);
  return f;
}

VectorForm VectorForm::two(Fn2 fn) {
  VectorForm f;
  f.degree_ = 2;
  f.fn2_ = std::move(fn);
  return f;
}

VectorForm VectorForm::from_matrix(JetMatrix m) {
  return one([m = std::move(m)](const LocalField& x) { return m.apply(x); });
}

VectorForm VectorForm::identity() {
  return one([](const LocalField& x) { return x; });
}

LocalField VectorForm::operator()() const {
  if (degree_ != 0) throw Error("degree mismatch: form of degree " + std::to_string(degree_) + " given 0 arguments");
  return value_;
}

LocalField VectorForm::operator()(const LocalField& x) const {
  if (degree_ != 1) throw Error("degree mismatch: form of degree " + std::to_string(degree_) + " given 1 argument");
  return fn1_(x);
}

LocalField VectorForm::operator()(const LocalField& x, const LocalField& y) const {
  if (degree_ != 2) throw Error("degree mismatch: form of degree " + std::to_string(degree_) + " given 2 arguments");
  return fn2_(x, y);
}

VectorForm fn_bracket_11(const VectorForm& k, const VectorForm& l) {
  if (k.degree() != 1 || l.degree() != 1) throw Error("degree mismatch: expected two vector 1-forms");
  return VectorForm::two([k, l](const LocalField& x, const LocalField& y) {
    const LocalField kx = k(x), ky = k(y), lx = l(x), ly = l(y);
    const LocalField xy = lie_bracket(x, y);
    LocalField out = lie_bracket(kx, ly) + lie_bracket(lx, ky);
    out -= k(lie_bracket(lx, y) + lie_bracket(x, ly));
    out -= l(lie_bracket(kx, y) + lie_bracket(x, ky));
    out += k(l(xy)) + l(k(xy));
    return out;
  });
}

VectorForm fn_bracket_01(const LocalField& z, const VectorForm& l) {
  if (l.degree() != 1) throw Error("degree mismatch: expected a vector 1-form");
  return VectorForm::one([z, l](const LocalField& x) { return lie_bracket(z, l(x)) - l(lie_bracket(z, x)); });
}

VectorForm fn_bracket(const VectorForm& k, const VectorForm& l) {
  if (k.degree() == 1 && l.degree() == 1) return fn_bracket_11(k, l);
  if (k.degree() == 0 && l.degree() == 1) return fn_bracket_01(k(), l);
  if (k.degree() == 1 && l.degree() == 0) {
    // [L,Z] = -[Z,L] for a 1-form and a 0-form.
    VectorForm zl = fn_bracket_01(l(), k);
    return VectorForm::one([zl](const LocalField& x) { return -zl(x); });
  }
  throw Error("degree mismatch: bracket of forms of degree " + std::to_string(k.degree()) + " and " +
              std::to_string(l.degree()) + " is not supported");
}

Jet lie_derivative_metric(const LocalField& z, const JetMatrix& g, const LocalField& x,
                          const LocalField& y) {
  return directional(z, g.pair(x, y)) - g.pair(lie_bracket(z, x), y) - g.pair(x, lie_bracket(z, y));
}

}  // namespace finsler
