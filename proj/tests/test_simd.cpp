// Copyright 2026 The gptlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gptlab/simd.hpp"

using namespace gptlab;

namespace {

std::vector<simd::Isa> compiled_isas() {
  std::vector<simd::Isa> out;
  for (auto isa : {simd::Isa::Scalar, simd::Isa::Avx2, simd::Isa::Neon})
    if (simd::available(isa)) out.push_back(isa);
  return out;
}

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar table is always there and active one is listed") {
  CHECK(simd::available(simd::Isa::Scalar));
  CHECK(simd::table(simd::Isa::Scalar).isa == simd::Isa::Scalar);
  CHECK(simd::available(simd::active().isa));
}

TEST_CASE("vector kernels agree with the scalar reference") {
  std::mt19937_64 rng(7);
  const auto& ref = simd::table(simd::Isa::Scalar);
  for (auto isa : compiled_isas()) {
    const auto& k = simd::table(isa);
    CAPTURE(simd::isa_name(isa));
    // Lengths around the vector width and unaligned starting offsets.
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 100u, 1000u}) {
      for (std::size_t off = 0; off < 3; ++off) {
        auto a = random_vec(rng, n + off);
        auto b = random_vec(rng, n + off);
        const double want = ref.dot(a.data() + off, b.data() + off, n);
        const double got = k.dot(a.data() + off, b.data() + off, n);
        double mag = 0.0;
        for (std::size_t i = 0; i < n; ++i) mag += std::abs(a[off + i] * b[off + i]);
        CHECK(std::abs(got - want) <= 1e-14 * (1.0 + mag));

        auto y1 = b, y2 = b;
        ref.axpy(0.37, a.data() + off, y1.data() + off, n);
        k.axpy(0.37, a.data() + off, y2.data() + off, n);
        for (std::size_t i = 0; i < y1.size(); ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-15);

        auto s1 = a, s2 = a;
        ref.scale(-2.5, s1.data() + off, n);
        k.scale(-2.5, s2.data() + off, n);
        CHECK(s1 == s2);
      }
    }
  }
}

TEST_CASE("axpy leaves memory outside the range untouched") {
  for (auto isa : compiled_isas()) {
    const auto& k = simd::table(isa);
    std::vector<double> x(12, 1.0), y(12, 0.0);
    k.axpy(2.0, x.data() + 1, y.data() + 1, 10);
    CHECK(y.front() == 0.0);
    CHECK(y.back() == 0.0);
    for (std::size_t i = 1; i <= 10; ++i) CHECK(y[i] == 2.0);
  }
}
