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

// Programmable dynamics: a fixed channel on system (x)min apparatus whose
// restriction to the system is selected by the apparatus state (the program):
//
//   <e (x) u_app, L(w (x) xi)> = <e, a_xi(w)>   for all states w and effects e.

#include <optional>
#include <string>
#include <vector>

#include "gptlab/channels.hpp"
#include "gptlab/structure.hpp"

namespace gptlab {

struct Program {
  State state;
  Channel dynamics;
  bool mixed = false;
};

struct ProgrammingInstance {
  StateSpace system;
  StateSpace apparatus;
  TensorSpace composite;
  Channel total_channel;
  std::vector<Program> programs;
};

/// Validates the channel on the Min composite. Program states must be pure
/// apparatus states unless `allow_mixed` (only the auditor needs that).
ProgrammingInstance make_programming_instance(const StateSpace& system, const StateSpace& apparatus, Matrix total,
                                              std::vector<Program> programs, bool allow_mixed = false,
                                              const Tolerances& tol = default_tolerances());

/// Checks the defining identity on every pure system state and every extreme
/// effect of the system (linearity covers the rest).
bool verify_program(const ProgrammingInstance& inst, std::size_t program_index,
                    const Tolerances& tol = default_tolerances());

struct ProgramResidue {
  State program;
  /// Apparatus marginal of L(w_j (x) xi), one per pure system state w_j.
  std::vector<State> residues;
  /// Distinct residues.
  std::vector<State> distinct;
  /// Pure system states grouped by residue (block z <-> distinct[z]).
  Partition system_blocks;
};

/// Requires verify_program. Throws ProgrammingError if an output on a pure
/// input is not the product of its marginals.
ProgramResidue compute_residues(const ProgrammingInstance& inst, std::size_t program_index,
                                const Tolerances& tol = default_tolerances());

struct AuditPair {
  std::size_t first = 0;
  std::size_t second = 0;
  bool distinct_dynamics = false;
  bool distinguishable = false;
  /// Distinct dynamics demand perfectly distinguishable programs.
  bool ok() const { return !distinct_dynamics || distinguishable; }
};

struct AuditReport {
  /// Programs failing verify_program; they are excluded from the pairs.
  std::vector<std::size_t> unverified;
  std::vector<AuditPair> pairs;
  bool pass() const;
};

AuditReport no_programming_audit(const ProgrammingInstance& inst, const Tolerances& tol = default_tolerances());

/// Reversible L with L(w (x) s) = (a_n w) (x) s for s in block n of the
/// quasi-classical structure, dynamics a_n = dynamics[assignment[n]]. L is
/// solved for on the product pure states; when those constraints admit no
/// linear solution (spans of different blocks intersect) the construction
/// throws ProgrammingError with the residual. One program per block (its
/// smallest pure state).
ProgrammingInstance build_reversible_programmer(const StateSpace& system, const QuasiClassicalStructure& qc,
                                                const std::vector<Channel>& dynamics,
                                                const std::vector<std::size_t>& assignment,
                                                const Tolerances& tol = default_tolerances());

/// Channel programmer: append a classical ancilla, measure the apparatus with
/// `obs` (found by LP when absent) writing the outcome n into the ancilla and
/// re-preparing reprepared[n], apply dynamics[n] to the system conditioned on
/// the ancilla, and discard the ancilla. Refuses programs that are not
/// perfectly distinguishable.
ProgrammingInstance build_channel_programmer(const StateSpace& system, const StateSpace& apparatus,
                                             const std::vector<State>& programs, std::optional<Observable> obs,
                                             const std::vector<Channel>& dynamics,
                                             std::vector<State> reprepared = {},
                                             const Tolerances& tol = default_tolerances());

/// The same construction in closed form: sum_n T_n (x) reprepared_n A_n^T.
Matrix channel_programmer_matrix(const std::vector<Channel>& dynamics, const Observable& obs,
                                 const std::vector<State>& reprepared);

/// Given a channel on simplex(N) (x)min apparatus in which programs[n]
/// implements the permutation permutations[n] (with permutations[n][0] = n),
/// reads the block maps Theta_k^0 and returns A_k = Theta_k^{0*}(u_app).
Observable extract_program_observable(const Channel& total, const StateSpace& apparatus,
                                      const std::vector<State>& programs,
                                      const std::vector<std::vector<std::size_t>>& permutations,
                                      const Tolerances& tol = default_tolerances());

/// The instance seen from the other side: apparatus and system exchange roles
/// and every pure state of the old system programs the identity.
ProgrammingInstance swap_roles(const ProgrammingInstance& inst, const Tolerances& tol = default_tolerances());

/// Matrix exchanging the factors of R^a (x) R^b.
Matrix swap_matrix(std::size_t a, std::size_t b);

}  // namespace gptlab
