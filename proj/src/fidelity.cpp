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

#include "gptlab/fidelity.hpp"

#include <algorithm>
#include <cmath>

#include "gptlab/errors.hpp"
#include "gptlab/lp.hpp"

namespace gptlab {

double bhattacharyya(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DimensionError("bhattacharyya: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += std::sqrt(std::max(0.0, p[i]) * std::max(0.0, q[i]));
  return acc;
}

bool fidelity_is_zero(const StateSpace& space, const State& a, const State& b, const Tolerances& tol) {
  return perfectly_distinguishable(space, a, b, tol);
}

namespace {

void check_input(const StateSpace& space, const State& s, const char* which, const Tolerances& tol) {
  if (s.coords.size() != space.dim()) throw DimensionError(std::string("fidelity: state ") + which + " has the wrong dimension");
  if (!contains_state(space, s.coords, tol)) throw ValidationError(std::string("fidelity: state ") + which + " is not in the state space");
}

FidelityResult on_simplex(const StateSpace& space, const State& a, const State& b, const Tolerances& tol) {
  const auto inv = inverse(Matrix::from_columns(space.extreme_points()));
  if (!inv) throw GptError("fidelity: simplex vertices are singular");
  const Vec p = matvec(*inv, a.coords);
  const Vec q = matvec(*inv, b.coords);
  std::vector<Effect> effects;
  for (std::size_t k = 0; k < space.dim(); ++k) effects.push_back(Effect{Vec(inv->row(k).begin(), inv->row(k).end())});
  FidelityResult r;
  r.value = std::clamp(bhattacharyya(p, q), 0.0, 1.0);
  r.witness_observable = validate_observable(space, std::move(effects), {}, tol);
  return r;
}

FidelityResult on_rays(const StateSpace& space, const State& a, const State& b, const Tolerances& tol) {
  const auto& rays = space.effect_rays();
  const std::size_t n = rays.size();
  const std::size_t d = space.dim();
  Vec cost(n);
  for (std::size_t r = 0; r < n; ++r)
    cost[r] = std::sqrt(std::max(0.0, dot(rays[r], a.coords)) * std::max(0.0, dot(rays[r], b.coords)));

  lp::LpProblem p(n);
  for (std::size_t i = 0; i < d; ++i) {
    Vec row(n);
    for (std::size_t r = 0; r < n; ++r) row[r] = rays[r][i];
    p.add_eq(row, space.unit()[i]);
  }
  p.set_objective(scaled(-1.0, cost));
  const auto res = lp::solve(p, tol);
  const auto* opt = std::get_if<lp::Optimal>(&res);
  if (!opt) throw GptError("fidelity: ray decomposition LP has no optimum");

  std::vector<Effect> effects;
  Vec rest = space.unit();
  for (std::size_t r = 0; r < n; ++r) {
    if (opt->point[r] <= tol.eps_feas * 1e-3) continue;
    effects.push_back(Effect{scaled(opt->point[r], rays[r])});
    rest = sub(rest, effects.back().coords);
  }
  // Fold rounding residue into the largest effect so the witness sums to u.
  auto big = std::max_element(effects.begin(), effects.end(), [](const Effect& x, const Effect& y) {
    return norm_inf(x.coords) < norm_inf(y.coords);
  });
  big->coords = add(big->coords, rest);

  FidelityResult out;
  out.value = std::clamp(-opt->value, 0.0, 1.0);
  out.witness_observable = validate_observable(space, std::move(effects), {}, tol);
  return out;
}

}  // namespace

FidelityResult fidelity(const StateSpace& space, const State& a, const State& b, const Tolerances& tol) {
  check_input(space, a, "a", tol);
  check_input(space, b, "b", tol);
  if (max_abs_diff(a.coords, b.coords) <= tol.eps_eq) {
    FidelityResult r;
    r.value = 1.0;
    r.witness_observable = validate_observable(space, {space.unit_effect()}, {}, tol);
    return r;
  }
  if (auto obs = find_distinguishing_observable(space, {a, b}, tol)) {
    FidelityResult r;
    r.value = 0.0;
    r.certified_zero = true;
    r.witness_observable = std::move(*obs);
    return r;
  }
  return space.is_simplex() ? on_simplex(space, a, b, tol) : on_rays(space, a, b, tol);
}

}  // namespace gptlab
