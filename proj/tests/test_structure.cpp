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

#include "gptlab/errors.hpp"
#include "gptlab/polygon.hpp"
#include "gptlab/structure.hpp"
#include "oracles.hpp"

using namespace gptlab;

using Blocks = std::vector<std::vector<std::size_t>>;

namespace {

std::vector<Blocks> census(const StateSpace& s, std::size_t max_degree) {
  std::vector<Blocks> out;
  for (const auto& q : enumerate_quasiclassical_decompositions(s, max_degree)) out.push_back(q.partition.blocks);
  return out;
}

}  // namespace

TEST_CASE("partition validation") {
  const auto sq = square();
  CHECK_THROWS_AS(make_partition(sq, {{0, 1}, {1, 2, 3}}), ValidationError);
  CHECK_THROWS_AS(make_partition(sq, {{0, 1}, {2}}), ValidationError);
  CHECK_THROWS_AS(make_partition(sq, {{0, 1, 2, 3}, {}}), ValidationError);
  CHECK(make_partition(sq, {{3, 2}, {1, 0}}).blocks == Blocks{{0, 1}, {2, 3}});
}

TEST_CASE("equivalence decomposition") {
  for (std::size_t n = 1; n <= 5; ++n) CHECK(equivalence_decomposition(simplex(n)).degree() == n);
  CHECK(equivalence_decomposition(square()).degree() == 4);
  CHECK(equivalence_decomposition(pentagon()).blocks == Blocks{{0, 1, 2, 3, 4}});
  CHECK(equivalence_decomposition(triangular_prism()).degree() == 6);
  // Two pentagons side by side: one class per summand.
  CHECK(equivalence_decomposition(direct_sum({pentagon(), pentagon()})).blocks ==
        Blocks{{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}});
}

TEST_CASE("equivalence classes are permuted by symmetries") {
  const auto ds = direct_sum({pentagon(), simplex(2), pentagon()});
  const auto p = equivalence_decomposition(ds);
  CHECK(p.degree() == 4);
  // Swap the two pentagon summands.
  std::vector<std::size_t> perm(ds.size());
  for (std::size_t i = 0; i < 5; ++i) {
    perm[i] = i + 7;
    perm[i + 7] = i;
  }
  perm[5] = 6;
  perm[6] = 5;
  const auto g = vertex_permutation_channel(ds, perm);
  CHECK(is_reversible(g));
  for (const auto& b : p.blocks) {
    std::vector<std::size_t> img;
    for (auto i : b) img.push_back(perm[i]);
    std::sort(img.begin(), img.end());
    CHECK(std::find(p.blocks.begin(), p.blocks.end(), img) != p.blocks.end());
  }
}

TEST_CASE("quasi-classical witnesses") {
  const auto sq = square();
  const auto horiz = make_partition(sq, {{0, 1}, {2, 3}});
  auto w = quasiclassical_witness(horiz);
  REQUIRE(w);
  for (std::size_t z = 0; z < 2; ++z)
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(prob((*w)[z], sq.pure_state(i)) == doctest::Approx(horiz.block_of()[i] == z ? 1.0 : 0.0));
  CHECK_FALSE(quasiclassical_witness(make_partition(sq, {{0, 2}, {1, 3}})));
  const auto prism = triangular_prism();
  CHECK(quasiclassical_witness(make_partition(prism, {{0, 1, 2}, {3, 4, 5}})));
  CHECK_THROWS_AS(quasiclassical_witness(make_partition(sq, {{0, 1, 2, 3}})), ValidationError);
}

TEST_CASE("census of fixtures") {
  CHECK(census(square(), 2) == std::vector<Blocks>{{{0, 1}, {2, 3}}, {{0, 3}, {1, 2}}});
  CHECK(census(square(), 4) == census(square(), 2));
  CHECK(census(pentagon(), 5).empty());
  const std::vector<Blocks> prism{{{0, 1, 2}, {3, 4, 5}},
                                  {{0, 1, 3, 4}, {2, 5}},
                                  {{0, 2, 3, 5}, {1, 4}},
                                  {{0, 3}, {1, 2, 4, 5}},
                                  {{0, 3}, {1, 4}, {2, 5}}};
  CHECK(census(triangular_prism(), 6) == prism);
  // Degree bound: a simplex reaches degree = dim.
  const auto d3 = census(simplex(3), 3);
  CHECK(d3.size() == 4);
  CHECK(d3.back().size() == 3);
  CHECK_THROWS_AS(enumerate_quasiclassical_decompositions(simplex(4), 4, default_tolerances(), 3), UnsupportedError);
  CHECK_THROWS_AS(enumerate_quasiclassical_decompositions(square(), 1), ValidationError);
}

TEST_CASE("degree bound on polygons and simplices") {
  for (std::size_t m = 3; m <= 8; ++m) {
    const auto pt = polygon_theory(m);
    for (const auto& q : enumerate_quasiclassical_decompositions(pt.space, m)) {
      CHECK(q.partition.degree() <= 3);
      if (q.partition.degree() == 3) CHECK(m == 3);
    }
  }
}

TEST_CASE("cross-block pure states are distinguishable by the witness") {
  for (const auto& s : {square(), triangular_prism(), simplex(4)})
    for (const auto& q : enumerate_quasiclassical_decompositions(s, 4)) {
      const auto owner = q.partition.block_of();
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
          if (owner[i] != owner[j]) {
            CHECK(prob(q.witness[owner[i]], s.pure_state(i)) == doctest::Approx(1.0));
            CHECK(prob(q.witness[owner[i]], s.pure_state(j)) == doctest::Approx(0.0).epsilon(1e-9));
          }
    }
}

TEST_CASE("condition star examples") {
  const auto sq = square();
  CHECK(check_condition_star(make_partition(sq, {{0, 1}, {2, 3}})).holds);
  const auto diag = check_condition_star(make_partition(sq, {{0, 2}, {1, 3}}));
  CHECK_FALSE(diag.holds);
  // Centre = (w0 + w2)/2 = (w1 + w3)/2 moves all weight between blocks.
  CHECK(diag.max_shift == doctest::Approx(1.0));
  CHECK(check_condition_star(make_partition(simplex(4), {{0}, {1, 3}, {2}})).holds);
}

TEST_CASE("witness existence and condition star agree on random partitions (property)") {
  std::mt19937_64 rng(31);
  const std::vector<StateSpace> spaces{square(), pentagon(), polygon_theory(6).space, triangular_prism(), simplex(4),
                                       direct_sum({square(), simplex(1)})};
  int yes = 0, no = 0;
  for (int t = 0; t < 120; ++t) {
    const auto& s = spaces[t % spaces.size()];
    const std::size_t k = 2 + rng() % 2;
    std::vector<std::size_t> label(s.size());
    for (auto& l : label) l = rng() % k;
    for (std::size_t z = 0; z < k; ++z) label[z] = z;  // every block nonempty
    std::shuffle(label.begin(), label.end(), rng);
    Blocks blocks(k);
    for (std::size_t i = 0; i < s.size(); ++i) blocks[label[i]].push_back(i);
    const auto p = make_partition(s, blocks);
    const bool witness = quasiclassical_witness(p).has_value();
    const auto star = check_condition_star(p);
    CHECK_FALSE(star.ambiguous);
    CHECK(witness == star.holds);
    CHECK(witness == oracle::quasiclassical(s.extreme_points(), p.block_of(), p.degree()));
    (witness ? yes : no)++;
  }
  CHECK(yes > 5);
  CHECK(no > 5);
}
