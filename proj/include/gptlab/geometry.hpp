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

#include <vector>

#include "gptlab/linalg.hpp"
#include "gptlab/tolerances.hpp"

namespace gptlab::geometry {

/// Extreme rays of the dual cone {e : <e, p> >= 0 for every p in `points`}.
///
/// `points` must span R^d. Computed with the double description method
/// (incremental constraint insertion, algebraic adjacency test). Each ray is
/// scaled so that its maximum over `points` equals 1.
std::vector<Vec> dual_cone_rays(const std::vector<Vec>& points, const Tolerances& tol = default_tolerances());

/// Largest carrier dimension accepted by effect_polytope_vertices.
inline constexpr std::size_t kMaxEffectEnumerationDim = 6;

/// Vertices of {e : 0 <= <e, p> <= 1 for every p in `points`} by exhaustive
/// basis enumeration. Throws UnsupportedError above kMaxEffectEnumerationDim.
std::vector<Vec> effect_polytope_vertices(const std::vector<Vec>& points, const Tolerances& tol = default_tolerances());

/// Removes vectors equal (max-norm within `eps`) to an earlier entry.
std::vector<Vec> dedupe(std::vector<Vec> vectors, double eps);

}  // namespace gptlab::geometry
