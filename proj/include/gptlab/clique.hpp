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

#include <cstddef>
#include <vector>

namespace gptlab {

/// Maximum clique of an undirected graph given as a symmetric adjacency
/// matrix. Branch and bound with a greedy-colouring bound; ties resolve to
/// the lexicographically smallest vertex set found first.
std::vector<std::size_t> max_clique(const std::vector<std::vector<bool>>& adjacency);

}  // namespace gptlab
