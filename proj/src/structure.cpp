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

#include "gptlab/structure.hpp"

#include <algorithm>
#include <numeric>

#include "gptlab/errors.hpp"
#include "gptlab/lp.hpp"

namespace gptlab {

std::vector<std::size_t> Partition::block_of() const {
  std::vector<std::size_t> out(space.size(), 0);
  for (std::size_t z = 0; z < blocks.size(); ++z)
    for (auto i : blocks[z]) out[i] = z;
  return out;
}

Partition make_partition(const StateSpace& space, std::vector<std::vector<std::size_t>> blocks) {
  if (blocks.empty()) throw ValidationError("partition needs at least one block");
  std::vector<int> hits(space.size(), 0);
  for (auto& b : blocks) {
    if (b.empty()) throw ValidationError("partition has an empty block");
    std::sort(b.begin(), b.end());
    for (auto i : b) {
      if (i >= space.size()) throw ValidationError("partition index " + std::to_string(i) + " out of range");
      if (++hits[i] > 1) throw ValidationError("pure state " + std::to_string(i) + " appears in two blocks");
    }
  }
  for (std::size_t i = 0; i < space.size(); ++i)
    if (hits[i] == 0) throw ValidationError("pure state " + std::to_string(i) + " is not covered");
  std::sort(blocks.begin(), blocks.end());
  return Partition{space, std::move(blocks)};
}

Partition equivalence_decomposition(const StateSpace& space, const Tolerances& tol) {
  const std::size_t n = space.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (find(i) == find(j)) continue;
      if (!perfectly_distinguishable(space, space.pure_state(i), space.pure_state(j), tol)) parent[find(j)] = find(i);
    }
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::ptrdiff_t> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<std::ptrdiff_t>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(slot[r])].push_back(i);
  }
  return make_partition(space, std::move(blocks));
}

std::optional<Observable> quasiclassical_witness(const Partition& partition, const Tolerances& tol) {
  const StateSpace& space = partition.space;
  if (partition.degree() < 2) throw ValidationError("quasiclassical_witness needs at least two blocks");
  const auto owner = partition.block_of();
  const std::size_t d = space.dim();
  std::vector<Effect> effects;
  Vec rest = space.unit();
  for (std::size_t z = 0; z + 1 < partition.degree(); ++z) {
    lp::LpProblem p(d);
    p.set_all_free();
    for (std::size_t i = 0; i < space.size(); ++i) p.add_eq(space.extreme_points()[i], owner[i] == z ? 1.0 : 0.0);
    auto a = lp::find_feasible(std::move(p), tol);
    if (!a) return std::nullopt;
    rest = sub(rest, *a);
    effects.push_back(Effect{std::move(*a)});
  }
  effects.push_back(Effect{std::move(rest)});
  // The last effect is fixed by the others; check it against its block too.
  for (std::size_t i = 0; i < space.size(); ++i) {
    const double v = dot(effects.back().coords, space.extreme_points()[i]);
    if (std::abs(v - (owner[i] + 1 == partition.degree() ? 1.0 : 0.0)) > tol.eps_eq) return std::nullopt;
  }
  return validate_observable(space, std::move(effects), {}, tol);
}

namespace {

// Restricted growth strings: calls f(labels, blocks) for every set partition
// of n items into at most k blocks.
template <class F>
void for_each_set_partition(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> a(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t used) -> void {
    if (i == n) {
      f(a, used);
      return;
    }
    for (std::size_t v = 0; v <= used && v < k; ++v) {
      a[i] = v;
      self(self, i + 1, std::max(used, v + 1));
    }
  };
  if (n == 0) return;
  a[0] = 0;
  rec(rec, 1, 1);
}

void assert_degree_bound(const QuasiClassicalStructure& s) {
  const auto& sp = s.partition.space;
  if (s.partition.degree() > sp.dim() || (s.partition.degree() == sp.dim() && !sp.is_simplex()))
    throw GptError("quasi-classical degree bound violated: degree " + std::to_string(s.partition.degree()) +
                   " in dimension " + std::to_string(sp.dim()));
}

}  // namespace

std::vector<QuasiClassicalStructure> enumerate_quasiclassical_decompositions(const StateSpace& space,
                                                                             std::size_t max_degree,
                                                                             const Tolerances& tol,
                                                                             std::size_t class_cap) {
  if (max_degree < 2) throw ValidationError("max_degree must be at least 2");
  const Partition classes = equivalence_decomposition(space, tol);
  const std::size_t c = classes.degree();
  if (c > class_cap)
    throw UnsupportedError("quasi-classical search over " + std::to_string(c) +
                           " equivalence classes exceeds the limit of " + std::to_string(class_cap));
  std::vector<QuasiClassicalStructure> out;
  for_each_set_partition(c, max_degree, [&](const std::vector<std::size_t>& label, std::size_t used) {
    if (used < 2) return;
    std::vector<std::vector<std::size_t>> blocks(used);
    for (std::size_t k = 0; k < c; ++k)
      for (auto i : classes.blocks[k]) blocks[label[k]].push_back(i);
    Partition p = make_partition(space, std::move(blocks));
    if (auto w = quasiclassical_witness(p, tol)) {
      out.push_back({std::move(p), std::move(*w)});
      assert_degree_bound(out.back());
    }
  });
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.partition.degree() != y.partition.degree()) return x.partition.degree() < y.partition.degree();
    return x.partition.blocks < y.partition.blocks;
  });
  return out;
}

ConditionStar check_condition_star(const Partition& partition, const Tolerances& tol) {
  const StateSpace& space = partition.space;
  if (partition.degree() < 2) throw ValidationError("check_condition_star needs at least two blocks");
  const std::size_t n = space.size();
  const std::size_t d = space.dim();
  const auto owner = partition.block_of();
  ConditionStar out;
  // Variables: lambda_i (first decomposition), mu_i (second), all >= 0.
  for (std::size_t z0 = 0; z0 < partition.degree(); ++z0) {
    lp::LpProblem p(2 * n);
    for (std::size_t r = 0; r < d; ++r) {
      Vec row(2 * n);
      for (std::size_t i = 0; i < n; ++i) {
        row[i] = space.extreme_points()[i][r];
        row[n + i] = -space.extreme_points()[i][r];
      }
      p.add_eq(row, 0.0);
    }
    Vec mass(2 * n, 0.0);
    std::fill(mass.begin(), mass.begin() + static_cast<std::ptrdiff_t>(n), 1.0);
    p.add_eq(mass, 1.0);
    Vec c(2 * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      if (owner[i] == z0) {
        c[i] = 1.0;
        c[n + i] = -1.0;
      }
    p.set_objective(std::move(c));
    const auto res = lp::solve(p, tol);
    const auto* opt = std::get_if<lp::Optimal>(&res);
    if (!opt) throw GptError("check_condition_star: LP did not reach an optimum");
    if (opt->value > out.max_shift) {
      out.max_shift = opt->value;
      out.worst_block = z0;
    }
  }
  out.holds = out.max_shift < tol.eps_eq;
  out.ambiguous = out.max_shift > tol.eps_feas && out.max_shift < tol.eps_eq;
  return out;
}

}  // namespace gptlab
