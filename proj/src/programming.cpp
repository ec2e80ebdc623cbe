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

#include "gptlab/programming.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gptlab/errors.hpp"
#include "gptlab/fidelity.hpp"

namespace gptlab {

namespace {

bool is_pure(const StateSpace& space, const State& s, double eps) {
  return std::any_of(space.extreme_points().begin(), space.extreme_points().end(),
                     [&](const Vec& p) { return max_abs_diff(p, s.coords) <= eps; });
}

void check_dynamics(const Channel& c, const StateSpace& system, const Tolerances& tol, const char* who) {
  if (!c.source().same_as(system, tol.eps_eq) || !c.target().same_as(system, tol.eps_eq))
    throw ValidationError(std::string(who) + ": dynamics must act on the system state space");
}

// Contracts the apparatus factor of mu with its unit effect.
Vec system_part(const ProgrammingInstance& inst, const Vec& mu) {
  const std::size_t da = inst.apparatus.dim();
  Vec out(inst.system.dim());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = dot(std::span<const double>(mu).subspan(i * da, da), inst.apparatus.unit());
  return out;
}

Matrix column_vector(std::span<const double> v) {
  Matrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

}  // namespace

Matrix swap_matrix(std::size_t a, std::size_t b) {
  Matrix s(a * b, a * b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) s(j * a + i, i * b + j) = 1.0;
  return s;
}

ProgrammingInstance make_programming_instance(const StateSpace& system, const StateSpace& apparatus, Matrix total,
                                              std::vector<Program> programs, bool allow_mixed,
                                              const Tolerances& tol) {
  ProgrammingInstance inst;
  inst.system = system;
  inst.apparatus = apparatus;
  inst.composite = min_tensor(system, apparatus);
  inst.total_channel = make_channel(std::move(total), inst.composite.space, inst.composite.space, tol);
  for (std::size_t k = 0; k < programs.size(); ++k) {
    auto& p = programs[k];
    if (p.state.coords.size() != apparatus.dim())
      throw DimensionError("program " + std::to_string(k) + " has the wrong dimension");
    check_dynamics(p.dynamics, system, tol, "programming instance");
    p.mixed = !is_pure(apparatus, p.state, tol.eps_eq);
    if (p.mixed && !allow_mixed)
      throw ValidationError("program " + std::to_string(k) + " is not a pure apparatus state");
    if (p.mixed && !contains_state(apparatus, p.state.coords, tol))
      throw ValidationError("program " + std::to_string(k) + " is not an apparatus state");
  }
  inst.programs = std::move(programs);
  return inst;
}

bool verify_program(const ProgrammingInstance& inst, std::size_t program_index, const Tolerances& tol) {
  const Program& prog = inst.programs.at(program_index);
  const auto& effects = inst.system.extreme_effects();
  for (const auto& w : inst.system.extreme_points()) {
    const Vec out = matvec(inst.total_channel.matrix(), kron(w, prog.state.coords));
    const Vec got = system_part(inst, out);
    const Vec want = matvec(prog.dynamics.matrix(), w);
    for (const auto& e : effects)
      if (std::abs(dot(e, got) - dot(e, want)) > tol.eps_eq) return false;
  }
  return true;
}

ProgramResidue compute_residues(const ProgrammingInstance& inst, std::size_t program_index, const Tolerances& tol) {
  if (!verify_program(inst, program_index, tol))
    throw ProgrammingError("compute_residues: program " + std::to_string(program_index) +
                           " does not implement its dynamics");
  const Program& prog = inst.programs[program_index];
  ProgramResidue res;
  res.program = prog.state;
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t j = 0; j < inst.system.size(); ++j) {
    const Vec out = matvec(inst.total_channel.matrix(), kron(inst.system.extreme_points()[j], prog.state.coords));
    const State sys = marginal(inst.composite, out, Keep::First, tol);
    const State app = marginal(inst.composite, out, Keep::Second, tol);
    if (const double gap = max_abs_diff(out, kron(sys.coords, app.coords)); gap > tol.eps_eq) {
      std::ostringstream os;
      os << "compute_residues: output on pure system state " << j << " is correlated (distance " << gap
         << " from the product of its marginals)";
      throw ProgrammingError(os.str());
    }
    std::size_t z = 0;
    while (z < res.distinct.size() && max_abs_diff(res.distinct[z].coords, app.coords) > tol.eps_eq) ++z;
    if (z == res.distinct.size()) {
      res.distinct.push_back(app);
      blocks.emplace_back();
    }
    blocks[z].push_back(j);
    res.residues.push_back(app);
  }
  res.system_blocks = make_partition(inst.system, std::move(blocks));
  return res;
}

bool AuditReport::pass() const {
  return unverified.empty() && std::all_of(pairs.begin(), pairs.end(), [](const AuditPair& p) { return p.ok(); });
}

AuditReport no_programming_audit(const ProgrammingInstance& inst, const Tolerances& tol) {
  AuditReport rep;
  std::vector<std::size_t> good;
  for (std::size_t k = 0; k < inst.programs.size(); ++k) {
    if (verify_program(inst, k, tol))
      good.push_back(k);
    else
      rep.unverified.push_back(k);
  }
  for (std::size_t a = 0; a < good.size(); ++a)
    for (std::size_t b = a + 1; b < good.size(); ++b) {
      const Program& p = inst.programs[good[a]];
      const Program& q = inst.programs[good[b]];
      AuditPair pair;
      pair.first = good[a];
      pair.second = good[b];
      pair.distinct_dynamics = max_abs_diff(p.dynamics.matrix(), q.dynamics.matrix()) > tol.eps_eq;
      if (max_abs_diff(p.state.coords, q.state.coords) > tol.eps_eq)
        pair.distinguishable = fidelity_is_zero(inst.apparatus, p.state, q.state, tol);
      rep.pairs.push_back(pair);
    }
  return rep;
}

ProgrammingInstance build_reversible_programmer(const StateSpace& system, const QuasiClassicalStructure& qc,
                                                const std::vector<Channel>& dynamics,
                                                const std::vector<std::size_t>& assignment,
                                                const Tolerances& tol) {
  const Partition& part = qc.partition;
  const StateSpace& app = part.space;
  if (assignment.size() != part.degree())
    throw ValidationError("build_reversible_programmer: need one dynamics index per block");
  for (auto a : assignment)
    if (a >= dynamics.size()) throw ValidationError("build_reversible_programmer: dynamics index out of range");
  for (const auto& c : dynamics) {
    check_dynamics(c, system, tol, "build_reversible_programmer");
    if (!is_reversible(c, tol)) throw ValidationError("build_reversible_programmer: dynamics is not reversible");
  }
  const auto owner = part.block_of();
  if (qc.witness.size() != part.degree())
    throw ValidationError("build_reversible_programmer: witness size does not match the partition");
  for (std::size_t z = 0; z < part.degree(); ++z)
    for (std::size_t j = 0; j < app.size(); ++j)
      if (std::abs(dot(qc.witness[z].coords, app.extreme_points()[j]) - (owner[j] == z ? 1.0 : 0.0)) > tol.eps_eq)
        throw ValidationError("build_reversible_programmer: witness does not certify the partition");

  // Solve L P = Y over the product pure states.
  std::vector<Vec> cols_p, cols_y;
  for (const auto& w : system.extreme_points())
    for (std::size_t j = 0; j < app.size(); ++j) {
      const Vec& s = app.extreme_points()[j];
      cols_p.push_back(kron(w, s));
      cols_y.push_back(kron(matvec(dynamics[assignment[owner[j]]].matrix(), w), s));
    }
  const Matrix p = Matrix::from_columns(cols_p);
  const Matrix y = Matrix::from_columns(cols_y);
  const Matrix pt = p.transpose();
  const auto gram_inv = inverse(matmul(p, pt));
  if (!gram_inv) throw ProgrammingError("build_reversible_programmer: product states do not span the composite");
  Matrix l = matmul(matmul(y, pt), *gram_inv);
  if (const double residual = max_abs_diff(matmul(l, p), y); residual > tol.eps_eq) {
    std::ostringstream os;
    os << "build_reversible_programmer: no linear map sends w (x) s to (a_n w) (x) s on every product pure state "
          "(least-squares residual "
       << residual
       << "); the linear spans of different apparatus blocks intersect, so the blockwise prescription is "
          "inconsistent";
    throw ProgrammingError(os.str());
  }
  std::vector<Program> programs;
  for (std::size_t z = 0; z < part.degree(); ++z)
    programs.push_back(Program{app.pure_state(part.blocks[z].front()), dynamics[assignment[z]], false});
  ProgrammingInstance inst = make_programming_instance(system, app, std::move(l), std::move(programs), false, tol);
  if (!is_reversible(inst.total_channel, tol))
    throw ProgrammingError("build_reversible_programmer: constructed channel is not reversible");
  for (std::size_t k = 0; k < inst.programs.size(); ++k)
    if (!verify_program(inst, k, tol))
      throw ProgrammingError("build_reversible_programmer: program " + std::to_string(k) + " failed verification");
  return inst;
}

Matrix channel_programmer_matrix(const std::vector<Channel>& dynamics, const Observable& obs,
                                 const std::vector<State>& reprepared) {
  if (dynamics.empty() || dynamics.size() != obs.size() || reprepared.size() != obs.size())
    throw DimensionError("channel_programmer_matrix: count mismatch");
  const std::size_t ds = dynamics.front().matrix().rows();
  const std::size_t da = obs[0].coords.size();
  Matrix m(ds * da, ds * da);
  for (std::size_t n = 0; n < obs.size(); ++n)
    m = add(m, kron(dynamics[n].matrix(), outer(reprepared[n].coords, obs[n].coords)));
  return m;
}

ProgrammingInstance build_channel_programmer(const StateSpace& system, const StateSpace& apparatus,
                                             const std::vector<State>& programs, std::optional<Observable> obs,
                                             const std::vector<Channel>& dynamics, std::vector<State> reprepared,
                                             const Tolerances& tol) {
  const std::size_t n_prog = programs.size();
  if (n_prog == 0) throw ValidationError("build_channel_programmer: no programs");
  if (dynamics.size() != n_prog) throw ValidationError("build_channel_programmer: need one dynamics per program");
  for (const auto& c : dynamics) check_dynamics(c, system, tol, "build_channel_programmer");
  for (std::size_t k = 0; k < n_prog; ++k)
    if (!is_pure(apparatus, programs[k], tol.eps_eq))
      throw ValidationError("build_channel_programmer: program " + std::to_string(k) + " is not pure");
  if (reprepared.empty()) reprepared = programs;
  if (reprepared.size() != n_prog)
    throw ValidationError("build_channel_programmer: need one re-prepared state per program");
  for (const auto& r : reprepared)
    if (!contains_state(apparatus, r.coords, tol))
      throw ValidationError("build_channel_programmer: re-prepared state is not an apparatus state");

  if (!obs) {
    if (n_prog == 1) {
      obs = validate_observable(apparatus, {apparatus.unit_effect()}, {}, tol);
    } else {
      obs = find_distinguishing_observable(apparatus, programs, tol);
      if (!obs) throw ProgrammingError("build_channel_programmer: programs are not perfectly distinguishable");
    }
  }
  if (obs->size() != n_prog) throw ValidationError("build_channel_programmer: observable needs one outcome per program");
  for (std::size_t k = 0; k < n_prog; ++k)
    for (std::size_t m = 0; m < n_prog; ++m)
      if (std::abs(prob((*obs)[k], programs[m]) - (k == m ? 1.0 : 0.0)) > tol.eps_eq)
        throw ProgrammingError("build_channel_programmer: observable does not distinguish the programs");

  const std::size_t ds = system.dim();
  const std::size_t da = apparatus.dim();
  const std::size_t n = n_prog;
  const Matrix id_sa = Matrix::identity(ds * da);
  Vec delta0(n, 0.0);
  delta0[0] = 1.0;
  // theta1: attach the classical register in state delta_0.
  const Matrix theta1 = kron(id_sa, column_vector(delta0));
  // theta2: measure-and-prepare on apparatus (x) register.
  Matrix mp(da * n, da * n);
  for (std::size_t k = 0; k < n; ++k) {
    Vec dk(n, 0.0);
    dk[k] = 1.0;
    mp = add(mp, outer(kron(reprepared[k].coords, dk), kron((*obs)[k].coords, Vec(n, 1.0))));
  }
  const Matrix theta2 = kron(Matrix::identity(ds), mp);
  // theta3: apply dynamics k to the system when the register reads k.
  Matrix theta3(ds * da * n, ds * da * n);
  for (std::size_t k = 0; k < n; ++k) {
    Matrix proj(n, n);
    proj(k, k) = 1.0;
    theta3 = add(theta3, kron(kron(dynamics[k].matrix(), Matrix::identity(da)), proj));
  }
  // Discard the register.
  const Matrix trace = kron(id_sa, column_vector(Vec(n, 1.0)).transpose());
  Matrix theta = matmul(trace, matmul(theta3, matmul(theta2, theta1)));

  std::vector<Program> progs;
  for (std::size_t k = 0; k < n; ++k) progs.push_back(Program{programs[k], dynamics[k], false});
  ProgrammingInstance inst = make_programming_instance(system, apparatus, std::move(theta), std::move(progs), false, tol);
  for (std::size_t k = 0; k < n; ++k)
    if (!verify_program(inst, k, tol))
      throw ProgrammingError("build_channel_programmer: program " + std::to_string(k) + " failed verification");
  return inst;
}

Observable extract_program_observable(const Channel& total, const StateSpace& apparatus,
                                      const std::vector<State>& programs,
                                      const std::vector<std::vector<std::size_t>>& permutations,
                                      const Tolerances& tol) {
  const std::size_t da = apparatus.dim();
  if (total.source().dim() % da != 0) throw DimensionError("extract_program_observable: channel dimension");
  const std::size_t n_sys = total.source().dim() / da;
  if (!total.source().same_as(min_tensor(simplex(n_sys), apparatus).space, tol.eps_eq))
    throw ValidationError("extract_program_observable: channel does not act on simplex (x)min apparatus");
  if (programs.size() != permutations.size() || programs.empty())
    throw ValidationError("extract_program_observable: need one permutation per program");
  const Matrix& m = total.matrix();
  for (std::size_t p = 0; p < programs.size(); ++p) {
    const auto& perm = permutations[p];
    if (perm.size() != n_sys || perm[0] != p)
      throw ValidationError("extract_program_observable: permutation " + std::to_string(p) + " must send 0 to " +
                            std::to_string(p));
    for (std::size_t s = 0; s < n_sys; ++s) {
      Vec delta(n_sys, 0.0);
      delta[s] = 1.0;
      const Vec out = matvec(m, kron(delta, programs[p].coords));
      for (std::size_t k = 0; k < n_sys; ++k) {
        const double weight = dot(std::span<const double>(out).subspan(k * da, da), apparatus.unit());
        if (std::abs(weight - (perm[s] == k ? 1.0 : 0.0)) > tol.eps_eq)
          throw ProgrammingError("extract_program_observable: program " + std::to_string(p) +
                                 " does not implement its permutation");
      }
    }
  }
  std::vector<Effect> effects;
  for (std::size_t k = 0; k < n_sys; ++k) {
    Vec a(da, 0.0);
    for (std::size_t r = 0; r < da; ++r)
      for (std::size_t c = 0; c < da; ++c) a[c] += apparatus.unit()[r] * m(k * da + r, c);
    effects.push_back(Effect{std::move(a)});
  }
  Observable obs = validate_observable(apparatus, std::move(effects), {}, tol);
  for (std::size_t k = 0; k < n_sys; ++k)
    for (std::size_t p = 0; p < programs.size(); ++p)
      if (std::abs(prob(obs[k], programs[p]) - (k == p ? 1.0 : 0.0)) > tol.eps_eq)
        throw ProgrammingError("extract_program_observable: recovered effects do not single out the programs");
  return obs;
}

ProgrammingInstance swap_roles(const ProgrammingInstance& inst, const Tolerances& tol) {
  const Matrix s = swap_matrix(inst.system.dim(), inst.apparatus.dim());
  Matrix swapped = matmul(s, matmul(inst.total_channel.matrix(), s.transpose()));
  std::vector<Program> programs;
  const Channel id = identity_channel(inst.apparatus);
  for (std::size_t j = 0; j < inst.system.size(); ++j) programs.push_back(Program{inst.system.pure_state(j), id, false});
  return make_programming_instance(inst.apparatus, inst.system, std::move(swapped), std::move(programs), false, tol);
}

}  // namespace gptlab
