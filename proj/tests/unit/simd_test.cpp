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

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "finsler/jet.hpp"
#include "finsler/simd/kernels.hpp"

namespace finsler::simd {
namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    vector_ = avx2_kernels();
    if (vector_ == nullptr) GTEST_SKIP() << "AVX2 kernels not available on this CPU or build";
  }
  const KernelTable& scalar_ = scalar_kernels();
  const KernelTable* vector_ = nullptr;
};

// Lengths straddle the 4-lane width and its remainders.
constexpr std::size_t kLengths[] = {0, 1, 3, 4, 5, 7, 8, 15, 16, 17, 33, 210};

TEST_F(KernelEquivalence, ElementwiseKernelsAreBitIdentical) {
  std::mt19937_64 rng(3);
  for (std::size_t n : kLengths) {
    const auto a = random_vector(n, rng);
    const auto b = random_vector(n, rng);
    std::vector<double> s(n), v(n);
    scalar_.add(a.data(), b.data(), s.data(), n);
    vector_->add(a.data(), b.data(), v.data(), n);
    EXPECT_EQ(s, v) << "add n=" << n;
    scalar_.sub(a.data(), b.data(), s.data(), n);
    vector_->sub(a.data(), b.data(), v.data(), n);
    EXPECT_EQ(s, v) << "sub n=" << n;
    scalar_.scale(-1.7, a.data(), s.data(), n);
    vector_->scale(-1.7, a.data(), v.data(), n);
    EXPECT_EQ(s, v) << "scale n=" << n;
    s = b;
    v = b;
    scalar_.axpy(0.3, a.data(), s.data(), n);
    vector_->axpy(0.3, a.data(), v.data(), n);
    EXPECT_EQ(s, v) << "axpy n=" << n;
  }
}

TEST_F(KernelEquivalence, TruncatedProductAgreesToRounding) {
  std::mt19937_64 rng(5);
  for (int nvars : {1, 2, 4, 8}) {
    for (int order : {1, 3, 6}) {
      const JetSpace& space = JetSpace::get(nvars, order);
      const std::size_t n = space.size(order);
      const auto a = random_vector(n, rng);
      const auto b = random_vector(n, rng);
      std::vector<double> s(n), v(n);
      scalar_.product(a.data(), b.data(), s.data(), n, space.product_plan());
      vector_->product(a.data(), b.data(), v.data(), n, space.product_plan());
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(s[i], v[i], 1e-13 * (1.0 + std::abs(s[i]))) << "nvars=" << nvars << " order=" << order;
      }
    }
  }
}

TEST(Kernels, ScalarProductMatchesNaiveMonomialProduct) {
  // (1 + 2z) * (3 - z) in one variable truncated at degree 2: 3 + 5z - 2z^2.
  const JetSpace& space = JetSpace::get(1, 2);
  const std::vector<double> a{1.0, 2.0, 0.0}, b{3.0, -1.0, 0.0};
  std::vector<double> out(3);
  scalar_kernels().product(a.data(), b.data(), out.data(), 3, space.product_plan());
  EXPECT_EQ(out, (std::vector<double>{3.0, 5.0, -2.0}));
}

TEST(Kernels, ActiveTableIsOneOfTheVariants) {
  const KernelTable& active = active_kernels();
  EXPECT_TRUE(&active == &scalar_kernels() || &active == avx2_kernels());
}

}  // namespace
}  // namespace finsler::simd
