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

// Channels between polytopic state spaces, reversible dynamics, minimal and
// maximal tensor products, marginals and measure-and-prepare maps.

#include <string>
#include <vector>

#include "gptlab/state_space.hpp"

namespace gptlab {

class Channel {
 public:
  Channel() = default;

  const Matrix& matrix() const { return matrix_; }
  const StateSpace& source() const { return source_; }
  const StateSpace& target() const { return target_; }

  State apply(const State& s) const;
  /// Dual action on effects: e -> matrix^T e.
  Effect pullback(const Effect& e) const;
  Matrix dual_matrix() const { return matrix_.transpose(); }

 private:
  friend Channel make_channel(Matrix, const StateSpace&, const StateSpace&, const Tolerances&);
  Matrix matrix_;
  StateSpace source_;
  StateSpace target_;
};

/// Validates that every pure state of `source` lands in `target`. The error
/// names the offending vertex and its membership residual.
Channel make_channel(Matrix matrix, const StateSpace& source, const StateSpace& target,
                     const Tolerances& tol = default_tolerances());

Channel identity_channel(const StateSpace& space);

/// First `a`, then `b`.
Channel compose_channels(const Channel& a, const Channel& b, const Tolerances& tol = default_tolerances());

/// The inverse as a channel, if the matrix is invertible and its inverse maps
/// the space into itself.
std::optional<Channel> inverse_channel(const Channel& c, const Tolerances& tol = default_tolerances());

bool is_reversible(const Channel& c, const Tolerances& tol = default_tolerances());

/// The linear map sending pure state i to pure state perm[i]. Throws when the
/// relabeling is not induced by a linear map.
Channel vertex_permutation_channel(const StateSpace& space, const std::vector<std::size_t>& perm,
                                   const Tolerances& tol = default_tolerances());

/// Permutation of pure states realized by a channel mapping pure states to
/// pure states; nullopt if some image is not a pure state.
std::optional<std::vector<std::size_t>> induced_permutation(const Channel& c, const Tolerances& tol = default_tolerances());

enum class TensorRule { Min, Max };

struct TensorSpace {
  StateSpace first;
  StateSpace second;
  TensorRule rule = TensorRule::Min;
  /// Product pure states, index i * second.size() + j (Min rule only).
  StateSpace space;
};

TensorSpace min_tensor(const StateSpace& a, const StateSpace& b);

/// <u (x) u, mu> = 1 and <e (x) f, mu> >= 0 for every pair of effects. The
/// effect cones are generated by their extreme rays, so pairs of rays suffice.
bool max_tensor_contains(const StateSpace& a, const StateSpace& b, std::span<const double> mu,
                         const Tolerances& tol = default_tolerances());

bool min_tensor_contains(const TensorSpace& ts, std::span<const double> mu,
                         const Tolerances& tol = default_tolerances());

enum class Keep { First, Second };

/// Contracts the discarded factor with its unit effect. Throws if the result
/// is not a state of the kept factor.
State marginal(const TensorSpace& ts, std::span<const double> mu, Keep keep,
               const Tolerances& tol = default_tolerances());

enum class Side { Left, Right };

/// Left: c (x) id acting on A (x)min ancilla. Right: id (x) c on ancilla (x)min A.
Channel extend_with_identity(const Channel& c, const StateSpace& ancilla, Side side,
                             const Tolerances& tol = default_tolerances());

/// w -> sum_n <A_n, w> prepared[n].
Channel measure_and_prepare(const StateSpace& source, const Observable& obs, const StateSpace& target,
                            const std::vector<State>& prepared, const Tolerances& tol = default_tolerances());

}  // namespace gptlab
