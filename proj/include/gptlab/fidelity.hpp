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

// Fidelity between states of a polytopic theory:
//
//   F(w, s) = inf over observables {e_x} of  sum_x sqrt(<e_x, w> <e_x, s>).
//
// g(e) = sqrt(<e, w> <e, s>) is concave and positively homogeneous, hence
// superadditive, so splitting an effect into extreme rays of the effect cone
// never increases the sum. The infimum is therefore attained by observables
// built from extreme rays and reduces to a linear program over ray weights.

#include "gptlab/state_space.hpp"

namespace gptlab {

struct FidelityResult {
  double value = 1.0;
  Observable witness_observable;
  /// Set when an observable perfectly distinguishing the inputs exists.
  bool certified_zero = false;
  /// False would mean the value is only an upper bound; every method
  /// implemented here is exact.
  bool exact = true;
};

/// Exact F = 0 test via the perfect-distinguishability LP.
bool fidelity_is_zero(const StateSpace& space, const State& a, const State& b,
                      const Tolerances& tol = default_tolerances());

FidelityResult fidelity(const StateSpace& space, const State& a, const State& b,
                        const Tolerances& tol = default_tolerances());

/// Classical fidelity sum_x sqrt(p_x q_x).
double bhattacharyya(std::span<const double> p, std::span<const double> q);

}  // namespace gptlab
