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

#include "gptlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "gptlab/errors.hpp"
#include "gptlab/simd.hpp"

namespace gptlab::geometry {

namespace {

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] &= o.words_[k];
    return r;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
  bool contains(const Bits& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if ((o.words_[k] & ~words_[k]) != 0) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  Vec v;
  Bits zeros;
};

void normalize_inf(Vec& v) {
  const double s = norm_inf(v);
  if (s > 0.0) simd::scale(1.0 / s, v);
}

}  // namespace

std::vector<Vec> dedupe(std::vector<Vec> vectors, double eps) {
  std::vector<Vec> out;
  for (auto& v : vectors) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const Vec& w) { return max_abs_diff(v, w) <= eps; });
    if (!seen) out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vec> dual_cone_rays(const std::vector<Vec>& points, const Tolerances& tol) {
  if (points.empty()) throw DimensionError("dual_cone_rays: no points");
  const std::size_t d = points.front().size();
  const std::size_t n = points.size();
  const auto basis_idx = independent_subset(points);
  if (basis_idx.size() != d) throw ValidationError("dual_cone_rays: points do not span the carrier space");

  // Start from the simplicial cone cut out by d independent constraints: its
  // rays form the dual basis.
  std::vector<Vec> basis_rows;
  for (auto i : basis_idx) basis_rows.push_back(points[i]);
  const auto inv = inverse(Matrix::from_rows(basis_rows));
  if (!inv) throw ValidationError("dual_cone_rays: singular starting basis");

  std::vector<bool> processed(n, false);
  std::vector<Ray> rays;
  for (std::size_t k = 0; k < d; ++k) {
    Ray r{inv->column(k), Bits(n)};
    normalize_inf(r.v);
    for (std::size_t j = 0; j < d; ++j)
      if (j != k) r.zeros.set(basis_idx[j]);
    rays.push_back(std::move(r));
  }
  for (auto i : basis_idx) processed[i] = true;

  const double zero_tol = 1e3 * tol.eps_feas;
  for (std::size_t c = 0; c < n; ++c) {
    if (processed[c]) continue;
    const Vec& p = points[c];
    std::vector<double> val(rays.size());
    for (std::size_t k = 0; k < rays.size(); ++k) val[k] = simd::dot(rays[k].v, p) / std::max(1.0, norm_inf(p));

    std::vector<Ray> next;
    std::vector<std::size_t> pos, neg;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (val[k] > zero_tol) {
        pos.push_back(k);
        next.push_back(rays[k]);
      } else if (val[k] < -zero_tol) {
        neg.push_back(k);
      } else {
        Ray r = rays[k];
        r.zeros.set(c);
        next.push_back(std::move(r));
      }
    }
    for (auto ip : pos) {
      for (auto in : neg) {
        Bits common = rays[ip].zeros & rays[in].zeros;
        if (d >= 2 && common.count() < d - 2) continue;
        // Combinatorial pre-filter: another ray vanishing on `common` rules
        // out adjacency.
        bool blocked = false;
        for (std::size_t k = 0; k < rays.size() && !blocked; ++k)
          if (k != ip && k != in && rays[k].zeros.contains(common)) blocked = true;
        if (blocked) continue;
        std::vector<Vec> tight;
        for (std::size_t i = 0; i < n; ++i)
          if (common.test(i)) tight.push_back(points[i]);
        if (d >= 2 && rank(tight) != d - 2) continue;
        Vec v = sub(scaled(val[ip], rays[in].v), scaled(val[in], rays[ip].v));
        normalize_inf(v);
        common.set(c);
        next.push_back({std::move(v), std::move(common)});
      }
    }
    rays = std::move(next);
    processed[c] = true;
  }

  std::vector<Vec> out;
  out.reserve(rays.size());
  for (auto& r : rays) {
    double mx = 0.0;
    for (const auto& p : points) mx = std::max(mx, simd::dot(r.v, p));
    if (mx <= 0.0) throw GptError("dual_cone_rays: degenerate ray");
    out.push_back(scaled(1.0 / mx, r.v));
  }
  return dedupe(std::move(out), tol.eps_eq);
}

std::vector<Vec> effect_polytope_vertices(const std::vector<Vec>& points, const Tolerances& tol) {
  if (points.empty()) throw DimensionError("effect_polytope_vertices: no points");
  const std::size_t d = points.front().size();
  if (d > kMaxEffectEnumerationDim) {
    throw UnsupportedError("effect polytope vertex enumeration is limited to carrier dimension " +
                           std::to_string(kMaxEffectEnumerationDim) + " (got " + std::to_string(d) + ")");
  }
  const std::size_t n = points.size();
  std::vector<Vec> found;
  // A vertex is fixed by d tight constraints with independent normals; the
  // normals are points, each tight at level 0 or 1.
  std::vector<std::size_t> pick(d);
  for (std::size_t i = 0; i < d; ++i) pick[i] = i;
  if (n < d) return found;
  while (true) {
    std::vector<Vec> rows;
    for (auto i : pick) rows.push_back(points[i]);
    const Matrix a = Matrix::from_rows(rows);
    if (rank(a) == d) {
      for (std::uint32_t mask = 0; mask < (1U << d); ++mask) {
        Vec rhs(d);
        for (std::size_t k = 0; k < d; ++k) rhs[k] = (mask >> k) & 1U ? 1.0 : 0.0;
        auto e = solve(a, rhs);
        if (!e) continue;
        bool ok = true;
        for (const auto& p : points) {
          const double v = simd::dot(*e, p);
          if (v < -tol.eps_eq || v > 1.0 + tol.eps_eq) {
            ok = false;
            break;
          }
        }
        if (ok) found.push_back(std::move(*e));
      }
    }
    // next combination
    std::size_t k = d;
    while (k > 0 && pick[k - 1] == n - d + (k - 1)) --k;
    if (k == 0) break;
    ++pick[k - 1];
    for (std::size_t j = k; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
  return dedupe(std::move(found), tol.eps_eq);
}

}  // namespace gptlab::geometry
