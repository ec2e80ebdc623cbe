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
#include <numbers>
#include <random>

#include "gptlab/errors.hpp"
#include "gptlab/polygon.hpp"
#include "oracles.hpp"

using namespace gptlab;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<State> vertices(const PolygonTheory& pt) {
  std::vector<State> out;
  for (std::size_t i = 0; i < pt.sides; ++i) out.push_back(pt.space.pure_state(i));
  return out;
}
}  // namespace

TEST_CASE("polygon coordinates") {
  const auto sq = polygon_theory(4);
  CHECK(sq.r_squared == doctest::Approx(std::sqrt(2.0)));
  CHECK(polygon_theory(3).r_squared == doctest::Approx(2.0));
  const auto& w = sq.space.extreme_points();
  CHECK(w[1][0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(w[1][1] == doctest::Approx(std::sqrt(2.0)));
  CHECK(w[2][2] == 1.0);
  CHECK_THROWS_AS(polygon_theory(2), ValidationError);

  // Every vertex sits at distance r^2 from the axis; every edge midpoint at 1.
  for (std::size_t m = 3; m <= 12; ++m) {
    const auto pt = polygon_theory(m);
    const auto& p = pt.space.extreme_points();
    for (std::size_t i = 0; i < m; ++i) {
      CHECK(std::hypot(p[i][0], p[i][1]) == doctest::Approx(pt.r_squared));
      const Vec mid = scaled(0.5, add(p[i], p[(i + 1) % m]));
      CHECK(std::hypot(mid[0], mid[1]) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("listed effects are the extreme effects") {
  for (std::size_t m = 3; m <= 8; ++m) {
    const auto pt = polygon_theory(m);
    std::vector<Vec> expected = pt.effects;
    if (m % 2 == 1)
      for (const auto& e : pt.effects) expected.push_back(sub(pt.space.unit(), e));
    expected.push_back(Vec(3, 0.0));
    expected.push_back(pt.space.unit());
    const auto found = oracle::effect_vertices(pt.space.extreme_points());
    INFO("M = " << m);
    CHECK(found.size() == expected.size());
    for (const auto& e : expected) {
      bool hit = false;
      for (const auto& f : found) hit = hit || max_abs_diff(e, f) < 1e-9;
      CHECK(hit);
    }
    // e_i is 1 on w_i.
    for (std::size_t i = 0; i < m; ++i) CHECK(dot(pt.effects[i], pt.space.extreme_points()[i]) == doctest::Approx(1.0));
  }
}

TEST_CASE("Helstrom families") {
  CHECK(helstrom_family(polygon_theory(4)).weight == 0.5);
  CHECK(helstrom_family(polygon_theory(3)).weight == doctest::Approx(1.0 / 3.0));
  CHECK(helstrom_family(polygon_theory(5)).weight == doctest::Approx(0.4472135955));
  for (std::size_t m = 3; m <= 12; ++m) {
    const auto pt = polygon_theory(m);
    const auto f = helstrom_family(pt);
    CHECK(f.weight >= 1.0 / static_cast<double>(m));
    CHECK(helstrom_mixture_spread(pt, f) < 1e-12);
    // Every mixture is the centre (0, 0, 1).
    const Vec c = add(scaled(f.weight, pt.space.extreme_points()[0]), scaled(1.0 - f.weight, f.conjugates[0].coords));
    CHECK(max_abs_diff(c, pt.space.unit()) < 1e-12);
    if (m % 2 == 1) {
      // The weight r^2 / (1 + r^2) does not make the mixtures coincide.
      HelstromFamily other = f;
      other.weight = pt.r_squared / (1.0 + pt.r_squared);
      CHECK(helstrom_mixture_spread(pt, other) > 1e-2);
    }
  }
}

TEST_CASE("P_3 = 1 and P_4 = 1/2") {
  CHECK(polygon_closed_form(3) == doctest::Approx(1.0));
  CHECK(polygon_closed_form(4) == doctest::Approx(0.5));
  CHECK(max_success_lp(polygon_theory(3)).value == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(max_success_lp(polygon_theory(4)).value == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("optimal observable meets the Helstrom bound") {
  for (std::size_t m = 3; m <= 12; ++m) {
    INFO("M = " << m);
    const auto pt = polygon_theory(m);
    const auto f = helstrom_family(pt);
    const auto obs = polygon_optimal_observable(pt);
    for (std::size_t i = 0; i < m; ++i) CHECK(std::abs(prob(obs[i], f.conjugates[i])) < 1e-12);
    const double primal = success_probability(vertices(pt), obs);
    const double dual = 1.0 / (static_cast<double>(m) * f.weight);
    // Primal feasible value equals the dual bound: both are optimal.
    CHECK(primal == doctest::Approx(dual).epsilon(1e-12));
    CHECK(primal == doctest::Approx(polygon_closed_form(m)).epsilon(1e-12));
    const auto lp = max_success_lp(pt);
    CHECK(std::abs(lp.value - primal) < 1e-7);
    CHECK(lp.value <= dual + 1e-9);
    CHECK(success_probability(vertices(pt), lp.observable) == doctest::Approx(lp.value).epsilon(1e-9));
  }
}

TEST_CASE("triangle LP against vertex enumeration") {
  // Variables: three effects in R^3; rows: positivity on the vertices and
  // sum-to-unit as two inequalities.
  const auto pt = polygon_theory(3);
  const auto& w = pt.space.extreme_points();
  Vec c(9, 0.0);
  std::vector<Vec> rows;
  Vec rhs;
  for (std::size_t x = 0; x < 3; ++x) {
    for (std::size_t r = 0; r < 3; ++r) c[x * 3 + r] = w[x][r] / 3.0;
    for (const auto& p : w) {
      Vec row(9, 0.0);
      for (std::size_t r = 0; r < 3; ++r) row[x * 3 + r] = -p[r];
      rows.push_back(row);
      rhs.push_back(0.0);
    }
  }
  for (std::size_t r = 0; r < 3; ++r) {
    Vec row(9, 0.0);
    for (std::size_t x = 0; x < 3; ++x) row[x * 3 + r] = 1.0;
    rows.push_back(row);
    rhs.push_back(pt.space.unit()[r]);
    rows.push_back(scaled(-1.0, row));
    rhs.push_back(-pt.space.unit()[r]);
  }
  const auto best = oracle::lp_max_by_vertices(c, rows, rhs);
  REQUIRE(best);
  CHECK(*best == doctest::Approx(max_success_lp(pt).value).epsilon(1e-9));
}

TEST_CASE("discrimination is invariant under symmetries") {
  std::mt19937_64 rng(7);
  for (std::size_t m : {4, 5, 6, 7}) {
    const auto pt = polygon_theory(m);
    const auto rot = polygon_rotation(pt, 1 + rng() % (m - 1));
    const auto refl = polygon_reflection(pt);
    // Random mixed states, then their images.
    std::vector<State> states, rotated, reflected;
    for (int k = 0; k < 3; ++k) {
      states.push_back(oracle::random_state(rng, pt.space));
      rotated.push_back(rot.apply(states.back()));
      reflected.push_back(refl.apply(states.back()));
    }
    const double v = max_success_lp(pt.space, states).value;
    CHECK(max_success_lp(pt.space, rotated).value == doctest::Approx(v).epsilon(1e-8));
    CHECK(max_success_lp(pt.space, reflected).value == doctest::Approx(v).epsilon(1e-8));
    CHECK(v >= 1.0 / 3.0 - 1e-9);
    CHECK(v <= 1.0 + 1e-9);
  }
}

TEST_CASE("a bit programs at most two of M dynamics") {
  const auto bit = simplex(2);
  for (std::size_t m = 3; m <= 8; ++m) {
    std::vector<State> progs;
    for (std::size_t i = 0; i < m; ++i) progs.push_back(bit.pure_state(i % 2));
    CHECK(max_success_lp(bit, progs).value == doctest::Approx(classical_baseline(m)).epsilon(1e-9));
    CHECK(polygon_closed_form(m) >= classical_baseline(m) - 1e-12);
    if (m % 2 == 0) CHECK(polygon_closed_form(m) == doctest::Approx(classical_baseline(m)));
  }
}

TEST_CASE("game channels") {
  for (auto [n, m] : std::vector<std::pair<std::size_t, std::size_t>>{{3, 3}, {6, 3}, {8, 4}, {10, 5}, {7, 7}}) {
    INFO("N = " << n << ", M = " << m);
    const auto rep = run_game(n, m);
    CHECK(rep.pass());
    // Distinct dynamics move every n to distinct places.
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t x = 0; x < n; ++x) CHECK(rep.permutations[i][x] != rep.permutations[j][x]);

    // Recompute the success probability from the channel with explicit
    // product vectors.
    const auto pt = polygon_theory(m);
    const auto sys = simplex(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t x = 0; x < n; ++x) {
        const Vec in = kron(sys.extreme_points()[x], pt.space.extreme_points()[i]);
        const Vec eff = kron(sys.extreme_points()[rep.permutations[i][x]], pt.space.unit());
        acc += dot(eff, matvec(rep.channel.matrix(), in));
      }
    CHECK(acc / static_cast<double>(n * m) == doctest::Approx(polygon_closed_form(m)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(run_game(3, 5), ValidationError);
}

TEST_CASE("the rank-one block maps give the same observables") {
  // Block maps c |e_i><e_i| with c = 4/M (even) or (1+r^2)^2/M (odd) pull the
  // unit effect back to A_i.
  for (std::size_t m = 3; m <= 9; ++m) {
    const auto pt = polygon_theory(m);
    const double c = m % 2 == 0 ? 4.0 / m : std::pow(1.0 + pt.r_squared, 2) / m;
    const auto obs = polygon_optimal_observable(pt);
    for (std::size_t i = 0; i < m; ++i) {
      const Matrix t = scaled(c, outer(pt.effects[i], pt.effects[i]));
      CHECK(max_abs_diff(matvec(t.transpose(), pt.space.unit()), obs[i].coords) < 1e-12);
    }
  }
}

TEST_CASE("triangular prism") {
  const auto p = triangular_prism();
  CHECK(p.size() == 6);
  CHECK(p.dim() == 4);
  // Triangle times segment: every pair of vertices is distinguishable, but in
  // R^4 no more than four states are jointly.
  CHECK(max_pairwise_clique(p).size() == 6);
  std::vector<State> all;
  for (std::size_t i = 0; i < 6; ++i) all.push_back(p.pure_state(i));
  CHECK_FALSE(find_distinguishing_observable(p, all));
  CHECK(find_distinguishing_observable(p, {all[0], all[1], all[2]}));
  CHECK_FALSE(find_distinguishing_observable(p, {all[0], all[1], all[3]}));
}
