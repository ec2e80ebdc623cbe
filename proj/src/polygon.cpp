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

#include "gptlab/polygon.hpp"

#include <cmath>
#include <numbers>

#include "gptlab/errors.hpp"
#include "gptlab/lp.hpp"

namespace gptlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

PolygonTheory polygon_theory(std::size_t sides) {
  if (sides < 3) throw ValidationError("polygon needs at least 3 sides, got " + std::to_string(sides));
  const double m = static_cast<double>(sides);
  PolygonTheory pt;
  pt.sides = sides;
  pt.r_squared = 1.0 / std::cos(kPi / m);
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < sides; ++i) {
    const double a = 2.0 * kPi * static_cast<double>(i) / m;
    pts.push_back({pt.r_squared * std::cos(a), pt.r_squared * std::sin(a), 1.0});
  }
  pt.space = make_state_space(std::move(pts), {0.0, 0.0, 1.0}, "polygon" + std::to_string(sides));
  for (std::size_t i = 0; i < sides; ++i) {
    if (sides % 2 == 0) {
      const double a = (2.0 * static_cast<double>(i) - 1.0) * kPi / m;
      pt.effects.push_back({0.5 * std::cos(a), 0.5 * std::sin(a), 0.5});
    } else {
      const double a = 2.0 * kPi * static_cast<double>(i) / m;
      const double s = 1.0 / (1.0 + pt.r_squared);
      pt.effects.push_back({s * std::cos(a), s * std::sin(a), s});
    }
  }
  return pt;
}

StateSpace square() { return polygon_theory(4).space.renamed("square"); }
StateSpace pentagon() { return polygon_theory(5).space.renamed("pentagon"); }

StateSpace triangular_prism() {
  const double h = std::sqrt(3.0) / 2.0;
  const double tri[3][2] = {{1.0, 0.0}, {-0.5, h}, {-0.5, -h}};
  std::vector<Vec> pts;
  for (double z : {-1.0, 1.0})
    for (const auto& t : tri) pts.push_back({t[0], t[1], z, 1.0});
  return make_state_space(std::move(pts), {0.0, 0.0, 0.0, 1.0}, "prism");
}

Channel polygon_rotation(const PolygonTheory& pt, std::size_t k) {
  const double a = 2.0 * kPi * static_cast<double>(k % pt.sides) / static_cast<double>(pt.sides);
  Matrix m = Matrix::identity(3);
  m(0, 0) = std::cos(a);
  m(0, 1) = -std::sin(a);
  m(1, 0) = std::sin(a);
  m(1, 1) = std::cos(a);
  return make_channel(std::move(m), pt.space, pt.space);
}

Channel polygon_reflection(const PolygonTheory& pt) {
  Matrix m = Matrix::identity(3);
  m(1, 1) = -1.0;
  return make_channel(std::move(m), pt.space, pt.space);
}

double helstrom_mixture_spread(const PolygonTheory& pt, const HelstromFamily& family) {
  const auto& w = pt.space.extreme_points();
  const Vec first = add(scaled(family.weight, w[0]), scaled(1.0 - family.weight, family.conjugates[0].coords));
  double spread = 0.0;
  for (std::size_t i = 1; i < pt.sides; ++i) {
    const Vec mi = add(scaled(family.weight, w[i]), scaled(1.0 - family.weight, family.conjugates[i].coords));
    spread = std::max(spread, max_abs_diff(first, mi));
  }
  return spread;
}

HelstromFamily helstrom_family(const PolygonTheory& pt, const Tolerances& tol) {
  const std::size_t m = pt.sides;
  const auto& w = pt.space.extreme_points();
  HelstromFamily f;
  if (m % 2 == 0) {
    f.weight = 0.5;
    for (std::size_t i = 0; i < m; ++i) f.conjugates.push_back(State{w[(i + m / 2) % m]});
  } else {
    f.weight = 1.0 / (1.0 + pt.r_squared);
    for (std::size_t i = 0; i < m; ++i)
      f.conjugates.push_back(State{scaled(0.5, add(w[(i + (m - 1) / 2) % m], w[(i + (m + 1) / 2) % m]))});
  }
  if (f.weight < 1.0 / static_cast<double>(m) - tol.eps_eq)
    throw GptError("Helstrom weight below 1/M");
  for (const auto& t : f.conjugates)
    if (!contains_state(pt.space, t.coords, tol)) throw GptError("Helstrom conjugate is not a state");
  if (const double s = helstrom_mixture_spread(pt, f); s > tol.eps_eq)
    throw GptError("Helstrom mixtures differ by " + std::to_string(s));
  return f;
}

Observable polygon_optimal_observable(const PolygonTheory& pt, const Tolerances& tol) {
  const double m = static_cast<double>(pt.sides);
  const double c = pt.sides % 2 == 0 ? 2.0 / m : (1.0 + pt.r_squared) / m;
  std::vector<Effect> effects;
  for (const auto& e : pt.effects) effects.push_back(Effect{scaled(c, e)});
  Observable obs = validate_observable(pt.space, std::move(effects), {}, tol);
  const auto fam = helstrom_family(pt, tol);
  for (std::size_t i = 0; i < pt.sides; ++i)
    if (std::abs(prob(obs[i], fam.conjugates[i])) > tol.eps_eq)
      throw GptError("optimal polygon effect " + std::to_string(i) + " does not vanish on its conjugate");
  return obs;
}

double success_probability(const std::vector<State>& states, const Observable& obs) {
  if (states.size() != obs.size())
    throw DimensionError("success_probability: " + std::to_string(states.size()) + " states but " +
                         std::to_string(obs.size()) + " outcomes");
  double acc = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) acc += prob(obs[i], states[i]);
  return acc / static_cast<double>(states.size());
}

DiscriminationOptimum max_success_lp(const StateSpace& space, const std::vector<State>& states,
                                     const Tolerances& tol) {
  const std::size_t k = states.size();
  const std::size_t d = space.dim();
  if (k == 0) throw ValidationError("max_success_lp: no states");
  lp::LpProblem p(k * d);
  p.set_all_free();
  Vec c(k * d, 0.0);
  for (std::size_t x = 0; x < k; ++x) {
    if (states[x].coords.size() != d) throw DimensionError("max_success_lp: state dimension");
    for (std::size_t r = 0; r < d; ++r) c[x * d + r] = states[x].coords[r] / static_cast<double>(k);
    for (const auto& w : space.extreme_points()) {
      Vec row(k * d, 0.0);
      std::copy(w.begin(), w.end(), row.begin() + static_cast<std::ptrdiff_t>(x * d));
      p.add_ge(row, 0.0);
    }
  }
  for (std::size_t r = 0; r < d; ++r) {
    Vec row(k * d, 0.0);
    for (std::size_t x = 0; x < k; ++x) row[x * d + r] = 1.0;
    p.add_eq(row, space.unit()[r]);
  }
  p.set_objective(std::move(c));
  const auto res = lp::solve(p, tol);
  const auto* opt = std::get_if<lp::Optimal>(&res);
  if (!opt) throw GptError("max_success_lp: LP did not reach an optimum");
  std::vector<Effect> effects;
  for (std::size_t x = 0; x < k; ++x)
    effects.push_back(Effect{Vec(opt->point.begin() + static_cast<std::ptrdiff_t>(x * d),
                                 opt->point.begin() + static_cast<std::ptrdiff_t>((x + 1) * d))});
  DiscriminationOptimum out;
  out.value = opt->value;
  out.observable = validate_observable(space, std::move(effects), {}, tol);
  return out;
}

DiscriminationOptimum max_success_lp(const PolygonTheory& pt, const Tolerances& tol) {
  std::vector<State> states;
  for (std::size_t i = 0; i < pt.sides; ++i) states.push_back(pt.space.pure_state(i));
  return max_success_lp(pt.space, states, tol);
}

double polygon_closed_form(std::size_t sides) {
  if (sides < 3) throw ValidationError("polygon needs at least 3 sides");
  const double m = static_cast<double>(sides);
  if (sides % 2 == 0) return 2.0 / m;
  return (1.0 + 1.0 / std::cos(kPi / m)) / m;
}

double classical_baseline(std::size_t sides) {
  if (sides < 3) throw ValidationError("polygon needs at least 3 sides");
  return 2.0 / static_cast<double>(sides);
}

GameReport run_game(std::size_t system_size, std::size_t sides, const Tolerances& tol) {
  if (sides < 3) throw ValidationError("polygon needs at least 3 sides");
  if (system_size < sides)
    throw ValidationError("game needs N >= M (got N=" + std::to_string(system_size) + ", M=" + std::to_string(sides) +
                          ")");
  const std::size_t n_sys = system_size;
  const PolygonTheory pt = polygon_theory(sides);
  const std::size_t da = pt.space.dim();
  GameReport rep;
  rep.sides = sides;
  rep.system_size = n_sys;
  for (std::size_t i = 0; i < sides; ++i) {
    std::vector<std::size_t> perm(n_sys);
    for (std::size_t n = 0; n < n_sys; ++n) perm[n] = (n + i) % n_sys;
    rep.permutations.push_back(std::move(perm));
  }
  const auto opt = max_success_lp(pt, tol);
  rep.lp_value = opt.value;
  rep.optimal_observable = opt.observable;

  // Observable A^n with N outcomes: outcome pi_i(n) carries A_i, the rest are
  // zero. Block (k, n) of the channel is xi_k^n (A_k^n)^T.
  Matrix theta(n_sys * da, n_sys * da);
  for (std::size_t n = 0; n < n_sys; ++n)
    for (std::size_t i = 0; i < sides; ++i) {
      const std::size_t k = rep.permutations[i][n];
      const Matrix block = outer(pt.space.extreme_points()[k % sides], opt.observable[i].coords);
      for (std::size_t r = 0; r < da; ++r)
        for (std::size_t c = 0; c < da; ++c) theta(k * da + r, n * da + c) = block(r, c);
    }
  const TensorSpace tot = min_tensor(simplex(n_sys), pt.space);
  rep.channel = make_channel(std::move(theta), tot.space, tot.space, tol);

  double acc = 0.0;
  const Matrix& m = rep.channel.matrix();
  for (std::size_t i = 0; i < sides; ++i)
    for (std::size_t n = 0; n < n_sys; ++n) {
      const std::size_t k = rep.permutations[i][n];
      const Vec& w = pt.space.extreme_points()[i];
      for (std::size_t r = 0; r < da; ++r)
        for (std::size_t c = 0; c < da; ++c) acc += pt.space.unit()[r] * m(k * da + r, n * da + c) * w[c];
    }
  rep.achieved = acc / static_cast<double>(sides * n_sys);
  rep.closed_form = polygon_closed_form(sides);
  rep.baseline = classical_baseline(sides);
  rep.lossless = std::abs(rep.achieved - rep.lp_value) <= tol.eps_eq;
  rep.matches_closed_form = std::abs(rep.lp_value - rep.closed_form) <= tol.eps_eq;
  rep.at_least_baseline = rep.lp_value >= rep.baseline - tol.eps_eq;
  return rep;
}

}  // namespace gptlab
