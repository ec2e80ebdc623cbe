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

#include "gptlab/state_space.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>

#include "gptlab/clique.hpp"
#include "gptlab/errors.hpp"
#include "gptlab/geometry.hpp"
#include "gptlab/lp.hpp"

namespace gptlab {

struct StateSpace::Cache {
  std::once_flag rays_once;
  std::vector<Vec> rays;
  std::once_flag effects_once;
  std::vector<Vec> effects;
  std::exception_ptr effects_error;
};

const std::vector<Vec>& StateSpace::effect_rays() const {
  std::call_once(cache_->rays_once, [this] { cache_->rays = geometry::dual_cone_rays(points_); });
  return cache_->rays;
}

const std::vector<Vec>& StateSpace::extreme_effects() const {
  std::call_once(cache_->effects_once, [this] {
    try {
      cache_->effects = geometry::effect_polytope_vertices(points_);
    } catch (...) {
      cache_->effects_error = std::current_exception();
    }
  });
  if (cache_->effects_error) std::rethrow_exception(cache_->effects_error);
  return cache_->effects;
}

bool StateSpace::same_as(const StateSpace& other, double eps) const {
  if (dim() != other.dim() || size() != other.size()) return false;
  if (max_abs_diff(unit_, other.unit_) > eps) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (max_abs_diff(points_[i], other.points_[i]) > eps) return false;
  return true;
}

StateSpace StateSpace::renamed(std::string name) const {
  StateSpace out = *this;
  out.name_ = std::move(name);
  return out;
}

namespace {

// Residual LP: minimize sum(s+ + s-) s.t. sum_i l_i p_i + s+ - s- = v,
// sum_i l_i = 1, l, s+, s- >= 0.
double hull_residual(const std::vector<Vec>& points, std::span<const double> v, std::ptrdiff_t skip) {
  const std::size_t d = v.size();
  std::vector<std::size_t> use;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (static_cast<std::ptrdiff_t>(i) != skip) use.push_back(i);
  const std::size_t n = use.size();
  lp::LpProblem p(n + 2 * d);
  for (std::size_t r = 0; r < d; ++r) {
    Vec row(n + 2 * d, 0.0);
    for (std::size_t k = 0; k < n; ++k) row[k] = points[use[k]][r];
    row[n + r] = 1.0;
    row[n + d + r] = -1.0;
    p.add_eq(row, v[r]);
  }
  Vec mass(n + 2 * d, 0.0);
  std::fill(mass.begin(), mass.begin() + static_cast<std::ptrdiff_t>(n), 1.0);
  p.add_eq(mass, 1.0);
  Vec c(n + 2 * d, 0.0);
  std::fill(c.begin() + static_cast<std::ptrdiff_t>(n), c.end(), -1.0);
  p.set_objective(std::move(c));
  auto res = lp::solve(p);
  if (auto* opt = std::get_if<lp::Optimal>(&res)) return std::max(0.0, -opt->value);
  throw GptError("hull_residual: residual LP did not reach an optimum");
}

std::string join_indices(const std::vector<std::size_t>& idx) {
  std::ostringstream os;
  for (std::size_t k = 0; k < idx.size(); ++k) os << (k ? "," : "") << idx[k];
  return os.str();
}

}  // namespace

StateSpace make_unchecked_space(std::vector<Vec> points, Vec unit, std::string name) {
  StateSpace s;
  s.name_ = std::move(name);
  s.points_ = std::move(points);
  s.unit_ = std::move(unit);
  s.cache_ = std::make_shared<StateSpace::Cache>();
  return s;
}

StateSpace make_state_space(std::vector<Vec> points, Vec unit, std::string name, const Tolerances& tol) {
  if (points.empty()) throw ValidationError("state space needs at least one point");
  const std::size_t d = unit.size();
  if (d == 0) throw ValidationError("unit effect is empty");
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i].size() != d)
      throw DimensionError("point " + std::to_string(i) + " has dimension " + std::to_string(points[i].size()) +
                           ", expected " + std::to_string(d));

  std::vector<std::size_t> bad_norm;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (std::abs(dot(unit, points[i]) - 1.0) > tol.eps_eq) bad_norm.push_back(i);
  if (!bad_norm.empty())
    throw ValidationError("unit effect is not 1 on points [" + join_indices(bad_norm) + "]");

  if (const auto r = rank(points); r != d)
    throw ValidationError("points span a " + std::to_string(r) + "-dimensional subspace of R^" + std::to_string(d));

  if (points.size() > 1) {
    std::vector<std::size_t> interior;
    for (std::size_t i = 0; i < points.size(); ++i)
      if (hull_residual(points, points[i], static_cast<std::ptrdiff_t>(i)) <=
          tol.eps_feas * std::max(1.0, norm_inf(points[i])))
        interior.push_back(i);
    if (!interior.empty())
      throw ValidationError("points [" + join_indices(interior) + "] lie in the convex hull of the others");
  }
  return make_unchecked_space(std::move(points), std::move(unit), std::move(name));
}

StateSpace simplex(std::size_t n) {
  if (n == 0) throw ValidationError("simplex needs at least one pure state");
  std::vector<Vec> pts(n, Vec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) pts[i][i] = 1.0;
  return make_unchecked_space(std::move(pts), Vec(n, 1.0), "simplex" + std::to_string(n));
}

StateSpace direct_sum(const std::vector<StateSpace>& spaces, const Tolerances& tol) {
  if (spaces.size() < 2) throw ValidationError("direct_sum needs at least two summands");
  std::size_t total_dim = 0;
  for (const auto& s : spaces) total_dim += s.dim();
  std::vector<Vec> pts;
  Vec unit(total_dim, 0.0);
  std::vector<Block> blocks;
  std::string name;
  std::size_t offset = 0;
  for (const auto& s : spaces) {
    blocks.push_back({offset, s.dim(), pts.size(), s.size()});
    for (const auto& p : s.extreme_points()) {
      Vec q(total_dim, 0.0);
      std::copy(p.begin(), p.end(), q.begin() + static_cast<std::ptrdiff_t>(offset));
      pts.push_back(std::move(q));
    }
    std::copy(s.unit().begin(), s.unit().end(), unit.begin() + static_cast<std::ptrdiff_t>(offset));
    offset += s.dim();
    name += (name.empty() ? "" : "+") + s.name();
  }
  StateSpace out = make_state_space(std::move(pts), std::move(unit), std::move(name), tol);
  out.blocks_ = std::move(blocks);
  return out;
}

double membership_residual(const StateSpace& space, std::span<const double> v) {
  if (v.size() != space.dim()) throw DimensionError("membership_residual: dimension mismatch");
  return hull_residual(space.extreme_points(), v, -1);
}

bool contains_state(const StateSpace& space, std::span<const double> v, const Tolerances& tol) {
  if (v.size() != space.dim()) throw DimensionError("contains_state: dimension mismatch");
  if (std::abs(dot(space.unit(), v) - 1.0) > tol.eps_feas * std::max(1.0, norm_inf(v))) return false;
  return membership_residual(space, v) <= tol.eps_feas * std::max(1.0, norm_inf(v));
}

State mix(const StateSpace& space, std::span<const double> weights) {
  if (weights.size() != space.size()) throw DimensionError("mix: weight count mismatch");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw ValidationError("mix: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12 * weights.size()) throw ValidationError("mix: weights do not sum to 1");
  return State{combine(weights, space.extreme_points())};
}

Vec Observable::distribution(const State& s) const {
  Vec out(effects_.size());
  for (std::size_t i = 0; i < effects_.size(); ++i) out[i] = prob(effects_[i], s);
  return out;
}

Observable validate_observable(const StateSpace& space, std::vector<Effect> effects, std::vector<std::string> labels,
                               const Tolerances& tol) {
  if (effects.empty()) throw ValidationError("observable needs at least one effect");
  if (!labels.empty() && labels.size() != effects.size())
    throw ValidationError("observable: label count does not match effect count");
  Vec total(space.dim(), 0.0);
  for (std::size_t x = 0; x < effects.size(); ++x) {
    if (effects[x].coords.size() != space.dim())
      throw DimensionError("effect " + std::to_string(x) + " has the wrong dimension");
    for (std::size_t i = 0; i < space.size(); ++i) {
      const double v = dot(effects[x].coords, space.extreme_points()[i]);
      if (v < -tol.eps_feas || v > 1.0 + tol.eps_feas)
        throw ValidationError("effect " + std::to_string(x) + " takes value " + std::to_string(v) +
                              " on pure state " + std::to_string(i));
    }
    total = add(total, effects[x].coords);
  }
  if (const double gap = max_abs_diff(total, space.unit()); gap > tol.eps_feas * std::max<double>(1.0, effects.size()))
    throw ValidationError("effects do not sum to the unit effect (max deviation " + std::to_string(gap) + ")");
  if (labels.empty())
    for (std::size_t x = 0; x < effects.size(); ++x) labels.push_back(std::to_string(x));
  Observable obs;
  obs.effects_ = std::move(effects);
  obs.labels_ = std::move(labels);
  return obs;
}

std::optional<Observable> find_distinguishing_observable(const StateSpace& space, const std::vector<State>& states,
                                                         const Tolerances& tol) {
  const std::size_t k = states.size();
  const std::size_t d = space.dim();
  if (k < 2) throw ValidationError("find_distinguishing_observable needs at least two states");
  for (std::size_t a = 0; a < k; ++a) {
    if (states[a].coords.size() != d) throw DimensionError("state dimension mismatch");
    for (std::size_t b = 0; b < a; ++b)
      if (max_abs_diff(states[a].coords, states[b].coords) <= tol.eps_eq)
        throw ValidationError("duplicate states " + std::to_string(b) + " and " + std::to_string(a));
  }
  // Variables: effect x occupies columns [x*d, (x+1)*d).
  lp::LpProblem p(k * d);
  p.set_all_free();
  for (std::size_t x = 0; x < k; ++x) {
    for (std::size_t y = 0; y < k; ++y) {
      Vec row(k * d, 0.0);
      std::copy(states[y].coords.begin(), states[y].coords.end(), row.begin() + static_cast<std::ptrdiff_t>(x * d));
      p.add_eq(row, x == y ? 1.0 : 0.0);
    }
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
  auto sol = lp::find_feasible(std::move(p), tol);
  if (!sol) return std::nullopt;
  std::vector<Effect> effects;
  for (std::size_t x = 0; x < k; ++x)
    effects.push_back(Effect{Vec(sol->begin() + static_cast<std::ptrdiff_t>(x * d),
                                 sol->begin() + static_cast<std::ptrdiff_t>((x + 1) * d))});
  return validate_observable(space, std::move(effects), {}, tol);
}

bool perfectly_distinguishable(const StateSpace& space, const State& a, const State& b, const Tolerances& tol) {
  if (max_abs_diff(a.coords, b.coords) <= tol.eps_eq) return false;
  return find_distinguishing_observable(space, {a, b}, tol).has_value();
}

std::vector<std::size_t> max_pairwise_clique(const StateSpace& space, const std::vector<State>& candidates,
                                             const Tolerances& tol) {
  const std::size_t n = candidates.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      adj[i][j] = adj[j][i] = perfectly_distinguishable(space, candidates[i], candidates[j], tol);
  return max_clique(adj);
}

std::vector<std::size_t> max_pairwise_clique(const StateSpace& space, const Tolerances& tol) {
  std::vector<State> pure;
  for (std::size_t i = 0; i < space.size(); ++i) pure.push_back(space.pure_state(i));
  return max_pairwise_clique(space, pure, tol);
}

namespace {

double min_pairwise_gap(const Observable& obs, const std::vector<State>& targets) {
  double gap = std::numeric_limits<double>::infinity();
  std::vector<Vec> dists;
  for (const auto& t : targets) dists.push_back(obs.distribution(t));
  for (std::size_t a = 0; a < dists.size(); ++a)
    for (std::size_t b = a + 1; b < dists.size(); ++b) gap = std::min(gap, max_abs_diff(dists[a], dists[b]));
  return gap;
}

std::optional<Observable> build_from_completion(const StateSpace& space, const std::vector<State>& targets,
                                                const std::vector<Vec>& completion, const Tolerances& tol) {
  const std::size_t d = space.dim();
  std::vector<Vec> target_vecs;
  for (const auto& t : targets) target_vecs.push_back(t.coords);
  const auto chosen = independent_subset(target_vecs);
  const std::size_t m = chosen.size();

  std::vector<Vec> basis;
  for (auto i : chosen) basis.push_back(target_vecs[i]);
  for (const auto& c : completion) {
    if (basis.size() == d) break;
    const bool in_targets = std::any_of(target_vecs.begin(), target_vecs.end(),
                                        [&](const Vec& t) { return max_abs_diff(t, c) <= tol.eps_eq; });
    if (in_targets) continue;
    basis.push_back(c);
    if (rank(basis) != basis.size()) basis.pop_back();
  }
  if (basis.size() != d) return std::nullopt;

  // Dual basis: rows of the inverse of [basis as columns].
  const auto inv = inverse(Matrix::from_columns(basis));
  if (!inv) return std::nullopt;
  std::vector<Vec> w;
  for (std::size_t k = 0; k < d; ++k) w.emplace_back(inv->row(k).begin(), inv->row(k).end());

  std::vector<Vec> b;
  for (std::size_t k = 0; k + 1 < m; ++k) b.push_back(w[k]);
  Vec tail(d, 0.0);
  for (std::size_t k = m - 1; k < d; ++k) tail = add(tail, w[k]);
  b.push_back(std::move(tail));

  double c = std::numeric_limits<double>::infinity();
  for (const auto& bm : b)
    for (const auto& p : space.extreme_points()) c = std::min(c, dot(bm, p));
  const double norm = 1.0 - static_cast<double>(m) * c;
  if (norm <= tol.eps_feas) return std::nullopt;

  std::vector<Effect> effects;
  for (const auto& bm : b) effects.push_back(Effect{scaled(1.0 / norm, sub(bm, scaled(c, space.unit())))});
  while (effects.size() < targets.size()) effects.push_back(Effect{Vec(d, 0.0)});
  return validate_observable(space, std::move(effects), {}, tol);
}

}  // namespace

Observable informationally_complete_observable(const StateSpace& space, const std::vector<State>& targets,
                                               std::uint64_t seed, const Tolerances& tol) {
  if (targets.size() < 2) throw ValidationError("informationally_complete_observable needs at least two targets");
  for (std::size_t a = 0; a < targets.size(); ++a) {
    if (targets[a].coords.size() != space.dim()) throw DimensionError("target dimension mismatch");
    for (std::size_t b = 0; b < a; ++b)
      if (max_abs_diff(targets[a].coords, targets[b].coords) <= tol.eps_eq)
        throw ValidationError("targets " + std::to_string(b) + " and " + std::to_string(a) + " are not distinct");
  }

  std::optional<Observable> best;
  double best_gap = -1.0;
  auto consider = [&](const std::vector<Vec>& completion) {
    auto obs = build_from_completion(space, targets, completion, tol);
    if (!obs) return;
    const double gap = min_pairwise_gap(*obs, targets);
    if (gap > best_gap) {
      best_gap = gap;
      best = std::move(obs);
    }
  };

  consider(space.extreme_points());
  // Degenerate completions (or ones leaving a tiny statistical gap) are
  // retried with random mixed states as completion candidates.
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  for (int attempt = 0; attempt < 16 && best_gap <= tol.eps_eq; ++attempt) {
    std::vector<Vec> completion;
    for (std::size_t k = 0; k < 2 * space.dim(); ++k) {
      Vec wts(space.size());
      double tot = 0.0;
      for (auto& x : wts) tot += (x = expo(rng));
      for (auto& x : wts) x /= tot;
      completion.push_back(combine(wts, space.extreme_points()));
    }
    consider(completion);
  }
  if (!best || best_gap <= tol.eps_eq)
    throw GptError("informationally_complete_observable: statistics do not separate the targets beyond eps_eq");
  return std::move(*best);
}

}  // namespace gptlab
