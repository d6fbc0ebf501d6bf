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

// Compiled with -mavx2 -mfma. Nothing here may run before the dispatcher
// has confirmed CPU support.

#include "finsler/simd/kernels.hpp"

#if defined(FINSLER_HAVE_AVX2)
#include <immintrin.h>

#include <cmath>

namespace finsler::simd::detail {
namespace {

void add_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

void sub_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

void scale_avx2(double alpha, const double* x, double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) out[i] = alpha * x[i];
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), t));
  }
  for (; i < n; ++i) {
    const double t = alpha * x[i];
    y[i] = y[i] + t;
  }
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void product_avx2(const double* a, const double* b, double* out, std::size_t n_out,
                  const ProductPlan& plan) {
  for (std::size_t k = 0; k < n_out; ++k) {
    std::int32_t p = plan.offsets[k];
    const std::int32_t end = plan.offsets[k + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; p + 4 <= end; p += 4) {
      const __m128i il = _mm_loadu_si128(reinterpret_cast<const __m128i*>(plan.lhs + p));
      const __m128i ir = _mm_loadu_si128(reinterpret_cast<const __m128i*>(plan.rhs + p));
      const __m256d va = _mm256_i32gather_pd(a, il, 8);
      const __m256d vb = _mm256_i32gather_pd(b, ir, 8);
      acc = _mm256_fmadd_pd(va, vb, acc);
    }
    double tail = 0.0;
    for (; p < end; ++p) tail = std::fma(a[plan.lhs[p]], b[plan.rhs[p]], tail);
    out[k] = hsum(acc) + tail;
  }
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static const KernelTable table{"avx2", add_avx2, sub_avx2, scale_avx2, axpy_avx2, product_avx2};
  return table;
}

}  // namespace finsler::simd::detail

#endif  // FINSLER_HAVE_AVX2
