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

// Regular polygon theories, weak Helstrom families and the programming game
// in which a polygon apparatus programs permutations of a classical system.

#include <vector>

#include "gptlab/channels.hpp"
#include "gptlab/state_space.hpp"

namespace gptlab {

struct PolygonTheory {
  std::size_t sides = 0;
  /// r^2 = 1 / cos(pi / M).
  double r_squared = 0.0;
  /// Pure states w_i = (r^2 cos(2 pi i / M), r^2 sin(2 pi i / M), 1), unit (0, 0, 1).
  StateSpace space;
  /// e_i, one per vertex: <e_i, w_i> = 1 and e_i vanishes on the vertices
  /// opposite w_i. For odd M the complements u - e_i are extreme as well.
  std::vector<Vec> effects;
};

PolygonTheory polygon_theory(std::size_t sides);

/// Square (M = 4) and pentagon (M = 5) state spaces, named accordingly.
StateSpace square();
StateSpace pentagon();

/// Triangular prism in R^4: bottom triangle w_0..w_2 at height -1, top
/// triangle w_3..w_5 directly above them at height +1, unit (0, 0, 0, 1).
StateSpace triangular_prism();

/// Rotation w_i -> w_{i+k}.
Channel polygon_rotation(const PolygonTheory& pt, std::size_t k);
/// Reflection w_i -> w_{-i}.
Channel polygon_reflection(const PolygonTheory& pt);

struct HelstromFamily {
  std::vector<State> conjugates;
  double weight = 0.0;
};

/// Even M: t_i = w_{i+M/2}, weight 1/2. Odd M: t_i = midpoint of the edge
/// opposite w_i, weight 1/(1+r^2) (the value making every mixture
/// weight*w_i + (1-weight)*t_i equal to the centre). Both conditions are
/// re-checked; failure throws.
HelstromFamily helstrom_family(const PolygonTheory& pt, const Tolerances& tol = default_tolerances());

/// Largest deviation between the mixtures weight*w_i + (1-weight)*t_i.
double helstrom_mixture_spread(const PolygonTheory& pt, const HelstromFamily& family);

/// A_i = (2/M) e_i for even M, ((1+r^2)/M) e_i for odd M.
Observable polygon_optimal_observable(const PolygonTheory& pt, const Tolerances& tol = default_tolerances());

/// (1/n) sum_i <A_i, states[i]>.
double success_probability(const std::vector<State>& states, const Observable& obs);

struct DiscriminationOptimum {
  double value = 0.0;
  Observable observable;
};

/// max over observables of (1/n) sum_i <A_i, states[i]>, by LP.
DiscriminationOptimum max_success_lp(const StateSpace& space, const std::vector<State>& states,
                                     const Tolerances& tol = default_tolerances());
DiscriminationOptimum max_success_lp(const PolygonTheory& pt, const Tolerances& tol = default_tolerances());

/// 2/M for even M, (1+r^2)/M for odd M.
double polygon_closed_form(std::size_t sides);
/// Success probability with a classical bit in place of the polygon: 2/M.
double classical_baseline(std::size_t sides);

struct GameReport {
  std::size_t sides = 0;
  std::size_t system_size = 0;
  /// perms[i][n] = pi_i(n) = (n + i) mod N.
  std::vector<std::vector<std::size_t>> permutations;
  /// Success probability evaluated directly on the constructed channel.
  double achieved = 0.0;
  double lp_value = 0.0;
  double closed_form = 0.0;
  double baseline = 0.0;
  Observable optimal_observable;
  Channel channel;
  bool lossless = false;           // achieved == lp_value
  bool matches_closed_form = false;
  bool at_least_baseline = false;
  bool pass() const { return lossless && matches_closed_form && at_least_baseline; }
};

/// Builds the channel on simplex(N) (x)min polygon(M) realizing the LP optimum
/// and evaluates the game on it. Requires N >= M.
GameReport run_game(std::size_t system_size, std::size_t sides, const Tolerances& tol = default_tolerances());

}  // namespace gptlab
