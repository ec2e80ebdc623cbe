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

// Equivalence classes of pure states and quasi-classical decompositions.
//
// Two pure states are equivalent when they are joined by a chain of pairs
// that are not perfectly distinguishable. A quasi-classical decomposition is
// a partition of the pure states together with an observable taking value 1
// on its own block and 0 on every other block.

#include <optional>
#include <vector>

#include "gptlab/state_space.hpp"

namespace gptlab {

struct Partition {
  StateSpace space;
  /// Sorted index sets over the pure states; blocks ordered by smallest member.
  std::vector<std::vector<std::size_t>> blocks;

  std::size_t degree() const { return blocks.size(); }
  /// Block index of every pure state.
  std::vector<std::size_t> block_of() const;
};

/// Checks blocks are nonempty, disjoint and cover the pure states, then
/// canonicalizes the order.
Partition make_partition(const StateSpace& space, std::vector<std::vector<std::size_t>> blocks);

struct QuasiClassicalStructure {
  Partition partition;
  Observable witness;
};

Partition equivalence_decomposition(const StateSpace& space, const Tolerances& tol = default_tolerances());

/// Observable {A_z} with <A_z, w> = [w in block z] on every pure state, or
/// nullopt when no such observable exists.
std::optional<Observable> quasiclassical_witness(const Partition& partition,
                                                 const Tolerances& tol = default_tolerances());

inline constexpr std::size_t kDefaultClassCap = 12;

/// All quasi-classical decompositions of degree 2..max_degree whose blocks are
/// unions of equivalence classes (finer cuts would separate equivalent states
/// and cannot be witnessed). Throws UnsupportedError above `class_cap` classes.
std::vector<QuasiClassicalStructure> enumerate_quasiclassical_decompositions(
    const StateSpace& space, std::size_t max_degree, const Tolerances& tol = default_tolerances(),
    std::size_t class_cap = kDefaultClassCap);

struct ConditionStar {
  /// No block weight can be shifted by eps_eq or more between two convex
  /// decompositions of the same state.
  bool holds = true;
  /// Some shift lies strictly between eps_feas and eps_eq.
  bool ambiguous = false;
  /// Largest achievable weight shift over all blocks.
  double max_shift = 0.0;
  std::size_t worst_block = 0;
};

ConditionStar check_condition_star(const Partition& partition, const Tolerances& tol = default_tolerances());

}  // namespace gptlab
