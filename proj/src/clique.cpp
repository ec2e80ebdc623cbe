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

#include "gptlab/clique.hpp"

#include <algorithm>

namespace gptlab {

namespace {

class CliqueSearch {
 public:
  explicit CliqueSearch(const std::vector<std::vector<bool>>& adj) : adj_(adj) {}

  std::vector<std::size_t> run() {
    std::vector<std::size_t> all(adj_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    std::vector<std::size_t> current;
    expand(current, all);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  // Greedy colouring of `cand`; colour classes bound the clique size that
  // can still be added.
  void colour(const std::vector<std::size_t>& cand, std::vector<std::size_t>& order,
              std::vector<std::size_t>& bound) const {
    std::vector<std::vector<std::size_t>> classes;
    for (auto v : cand) {
      bool placed = false;
      for (auto& cls : classes) {
        if (std::none_of(cls.begin(), cls.end(), [&](std::size_t w) { return adj_[v][w]; })) {
          cls.push_back(v);
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back({v});
    }
    order.clear();
    bound.clear();
    for (std::size_t k = 0; k < classes.size(); ++k)
      for (auto v : classes[k]) {
        order.push_back(v);
        bound.push_back(k + 1);
      }
  }

  void expand(std::vector<std::size_t>& current, const std::vector<std::size_t>& cand) {
    if (cand.empty()) {
      if (current.size() > best_.size()) best_ = current;
      return;
    }
    std::vector<std::size_t> order, bound;
    colour(cand, order, bound);
    std::vector<bool> removed(adj_.size(), false);
    for (std::size_t k = order.size(); k-- > 0;) {
      if (current.size() + bound[k] <= best_.size()) return;
      const std::size_t v = order[k];
      current.push_back(v);
      std::vector<std::size_t> next;
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t w = order[j];
        if (!removed[w] && adj_[v][w]) next.push_back(w);
      }
      expand(current, next);
      current.pop_back();
      removed[v] = true;
    }
  }

  const std::vector<std::vector<bool>>& adj_;
  std::vector<std::size_t> best_;
};

}  // namespace

std::vector<std::size_t> max_clique(const std::vector<std::vector<bool>>& adjacency) {
  return CliqueSearch(adjacency).run();
}

}  // namespace gptlab
