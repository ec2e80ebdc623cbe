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

#include "gptlab/channels.hpp"

#include <cmath>
#include <sstream>

#include "gptlab/errors.hpp"

namespace gptlab {

State Channel::apply(const State& s) const {
  if (s.coords.size() != matrix_.cols()) throw DimensionError("channel applied to a state of the wrong dimension");
  return State{matvec(matrix_, s.coords)};
}

Effect Channel::pullback(const Effect& e) const {
  if (e.coords.size() != matrix_.rows()) throw DimensionError("channel pullback of an effect of the wrong dimension");
  return Effect{vecmat(e.coords, matrix_)};
}

Channel make_channel(Matrix matrix, const StateSpace& source, const StateSpace& target, const Tolerances& tol) {
  if (matrix.rows() != target.dim() || matrix.cols() != source.dim()) {
    std::ostringstream os;
    os << "channel matrix is " << matrix.rows() << "x" << matrix.cols() << ", expected " << target.dim() << "x"
       << source.dim();
    throw DimensionError(os.str());
  }
  for (std::size_t i = 0; i < source.size(); ++i) {
    const Vec img = matvec(matrix, source.extreme_points()[i]);
    const double norm = dot(target.unit(), img);
    if (std::abs(norm - 1.0) > tol.eps_feas * std::max(1.0, norm_inf(img))) {
      std::ostringstream os;
      os << "channel does not preserve normalization: pure state " << i << " maps to total weight " << norm;
      throw ValidationError(os.str());
    }
    if (!contains_state(target, img, tol)) {
      std::ostringstream os;
      os << "channel maps pure state " << i << " outside the target (membership residual "
         << membership_residual(target, img) << ")";
      throw ValidationError(os.str());
    }
  }
  Channel c;
  c.matrix_ = std::move(matrix);
  c.source_ = source;
  c.target_ = target;
  return c;
}

Channel identity_channel(const StateSpace& space) { return make_channel(Matrix::identity(space.dim()), space, space); }

Channel compose_channels(const Channel& a, const Channel& b, const Tolerances& tol) {
  if (!a.target().same_as(b.source(), tol.eps_eq))
    throw ValidationError("compose_channels: target of the first channel is not the source of the second");
  return make_channel(matmul(b.matrix(), a.matrix()), a.source(), b.target(), tol);
}

std::optional<Channel> inverse_channel(const Channel& c, const Tolerances& tol) {
  if (c.matrix().rows() != c.matrix().cols()) return std::nullopt;
  auto inv = inverse(c.matrix());
  if (!inv) return std::nullopt;
  try {
    return make_channel(std::move(*inv), c.target(), c.source(), tol);
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

bool is_reversible(const Channel& c, const Tolerances& tol) { return inverse_channel(c, tol).has_value(); }

Channel vertex_permutation_channel(const StateSpace& space, const std::vector<std::size_t>& perm,
                                   const Tolerances& tol) {
  const std::size_t n = space.size();
  if (perm.size() != n) throw DimensionError("vertex_permutation_channel: permutation has the wrong length");
  std::vector<bool> seen(n, false);
  for (auto p : perm) {
    if (p >= n || seen[p]) throw ValidationError("vertex_permutation_channel: not a permutation");
    seen[p] = true;
  }
  const auto& pts = space.extreme_points();
  const auto basis = independent_subset(pts);
  std::vector<Vec> from, to;
  for (auto i : basis) {
    from.push_back(pts[i]);
    to.push_back(pts[perm[i]]);
  }
  const auto inv = inverse(Matrix::from_columns(from));
  if (!inv) throw GptError("vertex_permutation_channel: singular basis");
  Matrix m = matmul(Matrix::from_columns(to), *inv);
  for (std::size_t i = 0; i < n; ++i)
    if (max_abs_diff(matvec(m, pts[i]), pts[perm[i]]) > tol.eps_eq)
      throw ValidationError("vertex_permutation_channel: relabeling of pure state " + std::to_string(i) +
                            " is not induced by a linear map");
  return make_channel(std::move(m), space, space, tol);
}

std::optional<std::vector<std::size_t>> induced_permutation(const Channel& c, const Tolerances& tol) {
  std::vector<std::size_t> out;
  for (const auto& p : c.source().extreme_points()) {
    const Vec img = matvec(c.matrix(), p);
    std::optional<std::size_t> hit;
    for (std::size_t j = 0; j < c.target().size(); ++j)
      if (max_abs_diff(img, c.target().extreme_points()[j]) <= tol.eps_eq) hit = j;
    if (!hit) return std::nullopt;
    out.push_back(*hit);
  }
  return out;
}

TensorSpace min_tensor(const StateSpace& a, const StateSpace& b) {
  std::vector<Vec> pts;
  pts.reserve(a.size() * b.size());
  for (const auto& p : a.extreme_points())
    for (const auto& q : b.extreme_points()) pts.push_back(kron(p, q));
  return TensorSpace{a, b, TensorRule::Min,
                     make_unchecked_space(std::move(pts), kron(a.unit(), b.unit()), a.name() + "*" + b.name())};
}

bool max_tensor_contains(const StateSpace& a, const StateSpace& b, std::span<const double> mu, const Tolerances& tol) {
  if (mu.size() != a.dim() * b.dim()) throw DimensionError("max_tensor_contains: vector has the wrong dimension");
  const double scale = std::max(1.0, norm_inf(mu));
  if (std::abs(dot(kron(a.unit(), b.unit()), mu) - 1.0) > tol.eps_feas * scale) return false;
  for (const auto& e : a.effect_rays())
    for (const auto& f : b.effect_rays())
      if (dot(kron(e, f), mu) < -tol.eps_feas * scale) return false;
  return true;
}

bool min_tensor_contains(const TensorSpace& ts, std::span<const double> mu, const Tolerances& tol) {
  if (ts.rule != TensorRule::Min) throw ValidationError("min_tensor_contains: not a Min-rule composite");
  return contains_state(ts.space, mu, tol);
}

State marginal(const TensorSpace& ts, std::span<const double> mu, Keep keep, const Tolerances& tol) {
  const std::size_t da = ts.first.dim();
  const std::size_t db = ts.second.dim();
  if (mu.size() != da * db) throw DimensionError("marginal: vector has the wrong dimension");
  State out;
  if (keep == Keep::First) {
    out.coords.assign(da, 0.0);
    for (std::size_t i = 0; i < da; ++i) out.coords[i] = dot(mu.subspan(i * db, db), ts.second.unit());
  } else {
    out.coords.assign(db, 0.0);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < db; ++j) out.coords[j] += ts.first.unit()[i] * mu[i * db + j];
  }
  const StateSpace& kept = keep == Keep::First ? ts.first : ts.second;
  if (!contains_state(kept, out.coords, tol)) throw ValidationError("marginal: contraction is not a valid state");
  return out;
}

Channel extend_with_identity(const Channel& c, const StateSpace& ancilla, Side side, const Tolerances& tol) {
  const Matrix id = Matrix::identity(ancilla.dim());
  if (side == Side::Left)
    return make_channel(kron(c.matrix(), id), min_tensor(c.source(), ancilla).space,
                        min_tensor(c.target(), ancilla).space, tol);
  return make_channel(kron(id, c.matrix()), min_tensor(ancilla, c.source()).space,
                      min_tensor(ancilla, c.target()).space, tol);
}

Channel measure_and_prepare(const StateSpace& source, const Observable& obs, const StateSpace& target,
                            const std::vector<State>& prepared, const Tolerances& tol) {
  if (prepared.size() != obs.size())
    throw DimensionError("measure_and_prepare: " + std::to_string(obs.size()) + " outcomes but " +
                         std::to_string(prepared.size()) + " prepared states");
  Matrix m(target.dim(), source.dim());
  for (std::size_t n = 0; n < obs.size(); ++n) {
    if (prepared[n].coords.size() != target.dim()) throw DimensionError("measure_and_prepare: prepared state dimension");
    if (obs[n].coords.size() != source.dim()) throw DimensionError("measure_and_prepare: effect dimension");
    m = add(m, outer(prepared[n].coords, obs[n].coords));
  }
  return make_channel(std::move(m), source, target, tol);
}

}  // namespace gptlab
