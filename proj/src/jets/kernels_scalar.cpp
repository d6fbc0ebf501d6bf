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

#include "finsler/simd/kernels.hpp"

namespace finsler::simd {
namespace {

void add_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void sub_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void scale_scalar(double alpha, const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = alpha * x[i];
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double t = alpha * x[i];
    y[i] = y[i] + t;
  }
}

void product_scalar(const double* a, const double* b, double* out, std::size_t n_out,
                    const ProductPlan& plan) {
  for (std::size_t k = 0; k < n_out; ++k) {
    double acc = 0.0;
    for (std::int32_t p = plan.offsets[k]; p < plan.offsets[k + 1]; ++p) {
      const double t = a[plan.lhs[p]] * b[plan.rhs[p]];
      acc = acc + t;
    }
    out[k] = acc;
  }
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{"scalar", add_scalar, sub_scalar, scale_scalar, axpy_scalar,
                                 product_scalar};
  return table;
}

}  // namespace finsler::simd
