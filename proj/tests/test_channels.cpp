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

#include "gptlab/channels.hpp"
#include "gptlab/errors.hpp"
#include "gptlab/polygon.hpp"
#include "oracles.hpp"
#include "random_fixtures.hpp"

using namespace gptlab;

TEST_CASE("make_channel examples") {
  const auto d3 = simplex(3);
  CHECK_NOTHROW(identity_channel(d3));
  const auto perm = vertex_permutation_channel(d3, {2, 0, 1});
  CHECK(is_reversible(perm));
  CHECK(induced_permutation(perm) == std::vector<std::size_t>{2, 0, 1});
  const auto d2 = simplex(2);
  Matrix neg = Matrix::identity(2);
  neg(0, 0) = -1.0;
  try {
    make_channel(neg, d2, d2);
    FAIL("expected rejection");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("pure state 0") != std::string::npos);
  }
  CHECK_THROWS_AS(make_channel(Matrix::identity(3), d2, d2), DimensionError);
}

TEST_CASE("composition") {
  const auto pt = polygon_theory(5);
  const auto rot = polygon_rotation(pt, 1);
  const auto inv = inverse_channel(rot);
  REQUIRE(inv);
  CHECK(max_abs_diff(compose_channels(rot, *inv).matrix(), Matrix::identity(3)) < 1e-12);

  const auto d4 = simplex(4);
  const auto p = vertex_permutation_channel(d4, {1, 2, 3, 0});
  const auto q = vertex_permutation_channel(d4, {0, 2, 1, 3});
  // First p then q: i -> q(p(i)).
  CHECK(induced_permutation(compose_channels(p, q)) == std::vector<std::size_t>{2, 1, 3, 0});

  std::mt19937_64 rng(3);
  const auto mp = fixtures::random_channel(rng, pt.space, simplex(2));
  CHECK_NOTHROW(compose_channels(rot, mp));
  CHECK_THROWS_AS(compose_channels(mp, rot), ValidationError);
}

TEST_CASE("reversibility") {
  for (std::size_t m = 3; m <= 9; ++m) {
    const auto pt = polygon_theory(m);
    CHECK(is_reversible(polygon_rotation(pt, 1)));
    CHECK(is_reversible(polygon_reflection(pt)));
    CHECK(induced_permutation(polygon_rotation(pt, 1)).value()[0] == 1);
  }
  const auto sq = square();
  const auto c = measure_and_prepare(sq, validate_observable(sq, {sq.unit_effect()}), sq, {sq.pure_state(0)});
  CHECK_FALSE(is_reversible(c));
  // Square vertices cannot be swapped pairwise-adjacently by a linear map.
  CHECK_THROWS_AS(vertex_permutation_channel(sq, {1, 0, 2, 3}), ValidationError);
}

TEST_CASE("minimal tensor product") {
  const auto t = min_tensor(simplex(2), simplex(3));
  CHECK(t.space.size() == 6);
  CHECK(t.space.dim() == 6);
  // Simplex (x) simplex is a simplex.
  CHECK(rank(t.space.extreme_points()) == 6);
  const auto pt = polygon_theory(5);
  const auto tp = min_tensor(simplex(4), pt.space);
  CHECK(tp.space.size() == 20);
  CHECK(tp.space.dim() == 12);
  CHECK(min_tensor(square(), square()).space.size() == 16);
  CHECK(tp.space.unit() == kron(Vec(4, 1.0), pt.space.unit()));
}

TEST_CASE("maximal tensor product membership") {
  const auto sq = square();
  const auto ts = min_tensor(sq, sq);
  for (const auto& p : ts.space.extreme_points()) CHECK(max_tensor_contains(sq, sq, p));

  // PR-box-like correlation: <e_i (x) e_j, mu> in {0, 1/2}.
  const Matrix m = Matrix::from_rows({{1, -1, 0}, {1, 1, 0}, {0, 0, 1}});
  Vec mu(9);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) mu[i * 3 + j] = m(i, j);
  const auto pt = polygon_theory(4);
  for (const auto& e : pt.effects)
    for (const auto& f : pt.effects) {
      const double v = dot(kron(e, f), mu);
      CHECK((std::abs(v) < 1e-12 || std::abs(v - 0.5) < 1e-12));
    }
  CHECK(max_tensor_contains(sq, sq, mu));
  CHECK_FALSE(min_tensor_contains(ts, mu));
  CHECK_FALSE(max_tensor_contains(sq, sq, scaled(0.9, ts.space.extreme_points()[0])));
}

TEST_CASE("Min and Max coincide for simplex factors (positive direction)") {
  std::mt19937_64 rng(19);
  const auto a = simplex(2), b = simplex(3);
  const auto ts = min_tensor(a, b);
  std::uniform_real_distribution<double> u(-0.1, 0.4);
  int members = 0;
  for (int t = 0; t < 100; ++t) {
    Vec mu(6);
    for (auto& x : mu) x = u(rng);
    const double s = std::accumulate(mu.begin(), mu.end(), 0.0);
    mu = scaled(1.0 / s, mu);
    const bool mx = max_tensor_contains(a, b, mu);
    CHECK(mx == min_tensor_contains(ts, mu));
    members += mx;
  }
  CHECK(members > 10);
}

TEST_CASE("marginals") {
  std::mt19937_64 rng(4);
  const auto x = pentagon(), y = simplex(3);
  const auto ts = min_tensor(x, y);
  for (int t = 0; t < 20; ++t) {
    const auto w = oracle::random_state(rng, x), s = oracle::random_state(rng, y);
    const Vec mu = kron(w.coords, s.coords);
    CHECK(max_abs_diff(marginal(ts, mu, Keep::First).coords, w.coords) < 1e-12);
    CHECK(max_abs_diff(marginal(ts, mu, Keep::Second).coords, s.coords) < 1e-12);
  }
  const auto w1 = x.pure_state(0), w2 = x.pure_state(2);
  const Vec mu = scaled(0.5, add(kron(w1.coords, y.extreme_points()[0]), kron(w2.coords, y.extreme_points()[1])));
  CHECK(max_abs_diff(marginal(ts, mu, Keep::First).coords, scaled(0.5, add(w1.coords, w2.coords))) < 1e-12);
  CHECK_THROWS_AS(marginal(ts, scaled(2.0, mu), Keep::First), ValidationError);
}

TEST_CASE("extend_with_identity") {
  const auto pt = polygon_theory(5);
  const auto d2 = simplex(2);
  const auto id = extend_with_identity(identity_channel(pt.space), d2, Side::Left);
  CHECK(max_abs_diff(id.matrix(), Matrix::identity(6)) < 1e-15);
  const auto rot = extend_with_identity(polygon_rotation(pt, 2), d2, Side::Left);
  CHECK(is_reversible(rot));
  const auto right = extend_with_identity(polygon_rotation(pt, 2), d2, Side::Right);
  CHECK(is_reversible(right));
  CHECK(right.source().dim() == 6);
}

TEST_CASE("measure and prepare") {
  const auto sq = square();
  const auto d2 = simplex(2);
  const auto c = measure_and_prepare(sq, validate_observable(sq, {sq.unit_effect()}), d2, {State{{0.3, 0.7}}});
  for (const auto& p : sq.extreme_points()) CHECK(max_abs_diff(matvec(c.matrix(), p), Vec{0.3, 0.7}) < 1e-12);
  const auto flip = measure_and_prepare(d2, validate_observable(d2, {Effect{{1, 0}}, Effect{{0, 1}}}), d2,
                                        {d2.pure_state(1), d2.pure_state(0)});
  CHECK(induced_permutation(flip) == std::vector<std::size_t>{1, 0});
  const auto pt = polygon_theory(4);
  const auto obs = validate_observable(sq, {Effect{pt.effects[0]}, Effect{sub(sq.unit(), pt.effects[0])}});
  CHECK_NOTHROW(measure_and_prepare(sq, obs, d2, {d2.pure_state(0), d2.pure_state(1)}));
  CHECK_THROWS_AS(measure_and_prepare(sq, obs, d2, {d2.pure_state(0)}), DimensionError);
}

TEST_CASE("channel validation agrees with dense sampling (property)") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> sigma(0.0, 0.6);
  const auto src = pentagon();
  const auto dst = square();
  int accepted = 0, rejected = 0;
  for (int t = 0; t < 100; ++t) {
    Matrix m = fixtures::random_channel(rng, src, dst).matrix();
    // Perturb, keeping normalization so only positivity is in question.
    const double sd = sigma(rng);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 3; ++c) m(r, c) += sd * g(rng);
    bool valid = true;
    try {
      make_channel(m, src, dst);
    } catch (const ValidationError&) {
      valid = false;
    }
    bool sampled = true;
    for (int k = 0; k < 1000 && sampled; ++k) {
      // Sample pure states too so that the extreme images are covered.
      const auto s = k < 5 ? src.pure_state(k) : oracle::random_state(rng, src);
      sampled = oracle::in_hull(dst.extreme_points(), matvec(m, s.coords), dst.unit(), 1e-9);
    }
    CHECK(valid == sampled);
    (valid ? accepted : rejected)++;
  }
  CHECK(accepted > 5);
  CHECK(rejected > 5);
}
