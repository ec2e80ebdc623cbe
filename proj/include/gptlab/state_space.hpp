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

#pragma once

// State spaces, states, effects and observables of polytopic theories.
//
// A state space is the convex hull of finitely many pure states living in a
// carrier space R^d, normalized by a unit effect u with <u, w> = 1 on every
// pure state. Effects live in the same R^d and act on states through the dot
// product; every vector with values in [0, 1] on the pure states is an effect.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gptlab/linalg.hpp"
#include "gptlab/tolerances.hpp"

namespace gptlab {

struct State {
  Vec coords;
  friend bool operator==(const State&, const State&) = default;
};

struct Effect {
  Vec coords;
  friend bool operator==(const Effect&, const Effect&) = default;
};

inline double prob(const Effect& e, const State& s) { return dot(e.coords, s.coords); }

/// Coordinates of one direct-sum summand inside a larger carrier.
struct Block {
  std::size_t carrier_offset;
  std::size_t carrier_size;
  std::size_t point_offset;
  std::size_t point_count;
};

class StateSpace {
 public:
  StateSpace() = default;

  const std::string& name() const { return name_; }
  std::size_t dim() const { return unit_.size(); }
  /// Number of pure states.
  std::size_t size() const { return points_.size(); }
  const std::vector<Vec>& extreme_points() const { return points_; }
  const Vec& unit() const { return unit_; }
  State pure_state(std::size_t i) const { return State{points_.at(i)}; }
  Effect unit_effect() const { return Effect{unit_}; }

  /// d affinely independent pure states in R^d.
  bool is_simplex() const { return points_.size() == dim(); }

  /// Direct-sum summands; empty unless built by direct_sum.
  const std::vector<Block>& blocks() const { return blocks_; }

  /// Extreme rays of the effect cone, each scaled to an effect with maximum 1.
  /// Computed once and shared between copies.
  const std::vector<Vec>& effect_rays() const;

  /// Vertices of the effect polytope; carrier dimension must be at most 6.
  const std::vector<Vec>& extreme_effects() const;

  /// Same carrier, pure states and unit (up to `eps`).
  bool same_as(const StateSpace& other, double eps) const;

  StateSpace renamed(std::string name) const;

 private:
  friend StateSpace make_state_space(std::vector<Vec>, Vec, std::string, const Tolerances&);
  friend StateSpace direct_sum(const std::vector<StateSpace>&, const Tolerances&);
  friend StateSpace make_unchecked_space(std::vector<Vec>, Vec, std::string);

  struct Cache;

  std::string name_;
  std::vector<Vec> points_;
  Vec unit_;
  std::vector<Block> blocks_;
  std::shared_ptr<Cache> cache_;
};

/// Validates and builds a state space. Rejects unit effects that are not 1 on
/// every point, point sets that do not span the carrier, and points lying in
/// the convex hull of the others (the diagnostic lists every offender).
StateSpace make_state_space(std::vector<Vec> points, Vec unit, std::string name = "",
                            const Tolerances& tol = default_tolerances());

/// Skips the convex-position LP; used for product spaces whose vertices are
/// known to be extreme.
StateSpace make_unchecked_space(std::vector<Vec> points, Vec unit, std::string name);

/// Classical simplex with n pure states (standard basis of R^n, u = all ones).
StateSpace simplex(std::size_t n);

StateSpace direct_sum(const std::vector<StateSpace>& spaces, const Tolerances& tol = default_tolerances());

/// Minimum L1 residual of v against conv(pure states); 0 means v is a state.
double membership_residual(const StateSpace& space, std::span<const double> v);

bool contains_state(const StateSpace& space, std::span<const double> v, const Tolerances& tol = default_tolerances());

/// Mixture sum_i weights[i] * pure_i. Weights must be a probability vector.
State mix(const StateSpace& space, std::span<const double> weights);

/// Observable with validated effects. Construct through validate_observable.
class Observable {
 public:
  const std::vector<Effect>& effects() const { return effects_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return effects_.size(); }
  const Effect& operator[](std::size_t i) const { return effects_[i]; }

  /// Outcome distribution on a state.
  Vec distribution(const State& s) const;

 private:
  friend Observable validate_observable(const StateSpace&, std::vector<Effect>, std::vector<std::string>,
                                        const Tolerances&);
  std::vector<Effect> effects_;
  std::vector<std::string> labels_;
};

/// Checks sum-to-unit and the [0, 1] range on every pure state.
Observable validate_observable(const StateSpace& space, std::vector<Effect> effects,
                               std::vector<std::string> labels = {},
                               const Tolerances& tol = default_tolerances());

/// Observable {e_x} with <e_x, states[y]> = delta_xy, or nullopt when the LP
/// is infeasible. Throws on duplicate states.
std::optional<Observable> find_distinguishing_observable(const StateSpace& space, const std::vector<State>& states,
                                                         const Tolerances& tol = default_tolerances());

bool perfectly_distinguishable(const StateSpace& space, const State& a, const State& b,
                               const Tolerances& tol = default_tolerances());

/// Largest subset of `candidates` (indices) whose members are pairwise
/// perfectly distinguishable. Exact branch-and-bound clique search.
std::vector<std::size_t> max_pairwise_clique(const StateSpace& space, const std::vector<State>& candidates,
                                             const Tolerances& tol = default_tolerances());

/// Same, with the pure states as candidates.
std::vector<std::size_t> max_pairwise_clique(const StateSpace& space, const Tolerances& tol = default_tolerances());

/// Observable with |targets| outcomes whose statistics tell the targets
/// apart: extends a linearly independent subset of the targets to a basis of
/// states, takes the dual basis, merges the tail coordinates into one effect,
/// shifts by the smallest value on the pure states and renormalizes. Padded
/// with zero effects to |targets| outcomes.
Observable informationally_complete_observable(const StateSpace& space, const std::vector<State>& targets,
                                               std::uint64_t seed = 0, const Tolerances& tol = default_tolerances());

}  // namespace gptlab
