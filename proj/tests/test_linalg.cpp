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

#include <random>

#include "gptlab/linalg.hpp"

using namespace gptlab;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::normal_distribution<double> g;
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = g(rng);
  return m;
}

}  // namespace

TEST_CASE("kron index convention") {
  const Vec k = kron(Vec{1, 2}, Vec{3, 4, 5});
  CHECK(k == Vec{3, 4, 5, 6, 8, 10});
  const Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
  const Matrix b = Matrix::identity(2);
  const Matrix ab = kron(a, b);
  CHECK(ab(0, 2) == 2.0);
  CHECK(ab(3, 1) == 3.0);
}

TEST_CASE("mixed product property of kron") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = random_matrix(rng, 3, 2), b = random_matrix(rng, 2, 4);
    std::normal_distribution<double> g;
    Vec x(2), y(4);
    for (auto& v : x) v = g(rng);
    for (auto& v : y) v = g(rng);
    CHECK(max_abs_diff(matvec(kron(a, b), kron(x, y)), kron(matvec(a, x), matvec(b, y))) < 1e-12);
  }
}

TEST_CASE("solve and inverse round trip") {
  std::mt19937_64 rng(2);
  for (std::size_t n = 1; n <= 8; ++n) {
    const Matrix a = random_matrix(rng, n, n);
    auto inv = inverse(a);
    REQUIRE(inv);
    CHECK(max_abs_diff(matmul(a, *inv), Matrix::identity(n)) < 1e-9);
    Vec b(n, 1.0);
    auto x = solve(a, b);
    REQUIRE(x);
    CHECK(max_abs_diff(matvec(a, *x), b) < 1e-9);
  }
  CHECK_FALSE(solve(Matrix::from_rows({{1, 2}, {2, 4}}), Vec{1, 1}).has_value());
}

TEST_CASE("rank, kernel and independent subsets") {
  const std::vector<Vec> v{{1, 0, 0}, {2, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}};
  CHECK(rank(v) == 3);
  CHECK(independent_subset(v) == std::vector<std::size_t>{0, 2, 4});
  const Matrix m = Matrix::from_rows({{1, 1, 0}, {0, 1, 1}});
  const auto ns = null_space(m);
  REQUIRE(ns.size() == 1);
  CHECK(norm_inf(matvec(m, ns[0])) < 1e-12);
  CHECK(norm_inf(ns[0]) > 0.1);
}

TEST_CASE("rank of random products equals min dimension (property)") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const std::size_t k = 1 + rng() % 4;
    const Matrix a = random_matrix(rng, 6, k), b = random_matrix(rng, k, 5);
    CHECK(rank(matmul(a, b)) == k);
  }
}

TEST_CASE("least squares detects inconsistent systems") {
  const Matrix a = Matrix::from_rows({{1, 0}, {0, 1}, {1, 1}});
  auto ok = least_squares(a, Vec{1, 2, 3});
  REQUIRE(ok);
  CHECK(ok->residual < 1e-12);
  CHECK(max_abs_diff(ok->x, Vec{1, 2}) < 1e-12);
  auto bad = least_squares(a, Vec{1, 2, 4});
  REQUIRE(bad);
  CHECK(bad->residual > 0.3);
}
