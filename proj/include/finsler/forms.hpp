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

// Vector-valued forms of degree 0, 1 and 2 on TM, evaluated on germs, and
// the Frolicher-Nijenhuis bracket between them.

#include <functional>

#include "finsler/field.hpp"

namespace finsler {

class VectorForm {
 public:
  using Fn1 = std::function<LocalField(const LocalField&)>;
  using Fn2 = std::function<LocalField(const LocalField&, const LocalField&)>;

  /// A vector field viewed as a 0-form.
  static VectorForm field(LocalField value);
  static VectorForm one(Fn1 fn);
  static VectorForm two(Fn2 fn);
  /// Pointwise endomorphism as a 1-form.
  static VectorForm from_matrix(JetMatrix m);
  static VectorForm identity();

  int degree() const noexcept { return degree_; }

  /// Evaluation; throws Error when the argument count differs from the
  /// degree.
  LocalField operator()() const;
  LocalField operator()(const LocalField& x) const;
  LocalField operator()(const LocalField& x, const LocalField& y) const;

 private:
  VectorForm() = default;

  int degree_ = 0;
  LocalField value_;
  Fn1 fn1_;
  Fn2 fn2_;
};

/// Sign convention for the curvature of a nonlinear connection, -1/2 [h,h]
/// or +1/2 [h,h].
enum class CurvatureConvention { kMinusHalf, kPlusHalf };

/// [K,L] for two vector 1-forms:
///   [K,L](X,Y) = [KX,LY] + [LX,KY] - K([LX,Y] + [X,LY]) - L([KX,Y] + [X,KY])
///                + (KL + LK)[X,Y]
/// This is the standard graded bracket; for K = L it reduces to
/// 2([KX,KY] - K[KX,Y] - K[X,KY] + K^2[X,Y]).
VectorForm fn_bracket_11(const VectorForm& k, const VectorForm& l);

/// [Z,L](X) = [Z, LX] - L[Z,X] for a field Z and a vector 1-form L.
VectorForm fn_bracket_01(const LocalField& z, const VectorForm& l);

/// Dispatches on degrees (0,1), (1,0) and (1,1); other combinations throw
/// Error("degree mismatch").
VectorForm fn_bracket(const VectorForm& k, const VectorForm& l);

/// (L_Z g)(X,Y) = Z.g(X,Y) - g([Z,X],Y) - g(X,[Z,Y]) for a bilinear form g
/// given by its matrix germ.
Jet lie_derivative_metric(const LocalField& z, const JetMatrix& g, const LocalField& x,
                          const LocalField& y);

}  // namespace finsler
