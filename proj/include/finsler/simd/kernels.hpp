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

// Inner loops of jet arithmetic. Every kernel has a portable scalar
// reference version; vectorized variants are compiled in separate
// translation units and selected at runtime from the CPU feature set.
// The elementwise kernels are bitwise identical across variants; the
// truncated-product kernel differs only in summation order.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace finsler::simd {

/// Sparse convolution plan for the truncated product of two jets, stored
/// in CSR form: output coefficient k receives
///   sum over p in [offsets[k], offsets[k+1]) of a[lhs[p]] * b[rhs[p]].
struct ProductPlan {
  const std::int32_t* offsets;
  const std::int32_t* lhs;
  const std::int32_t* rhs;
};

struct KernelTable {
  const char* name;
  void (*add)(const double* a, const double* b, double* out, std::size_t n);
  void (*sub)(const double* a, const double* b, double* out, std::size_t n);
  void (*scale)(double alpha, const double* x, double* out, std::size_t n);
  /// y += alpha * x, computed as a separate multiply and add (no fma).
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  void (*product)(const double* a, const double* b, double* out, std::size_t n_out,
                  const ProductPlan& plan);
};

const KernelTable& scalar_kernels() noexcept;

/// AVX2+FMA variant, or nullptr when not compiled in or not supported by
/// the running CPU.
const KernelTable* avx2_kernels() noexcept;

/// The table used by jet arithmetic. Chosen once per process: the best
/// supported variant, unless FINSLERKIT_SIMD=scalar is set in the
/// environment.
const KernelTable& active_kernels() noexcept;

}  // namespace finsler::simd
