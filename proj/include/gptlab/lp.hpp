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

// Dense two-phase primal simplex.
//
//   maximize    c^T x
//   subject to  A_eq x  = b_eq
//               A_ub x <= b_ub
//               lo_j <= x_j <= hi_j
//
// Variables default to x_j >= 0. Pricing is Dantzig's rule; after a run of
// degenerate pivots the solver switches to Bland's rule until the objective
// moves again, so it cannot cycle.

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "gptlab/linalg.hpp"
#include "gptlab/tolerances.hpp"

namespace gptlab::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Bound {
  double lo = 0.0;
  double hi = kInf;
};

class LpProblem {
 public:
  explicit LpProblem(std::size_t num_vars);

  std::size_t num_vars() const { return objective_.size(); }

  void set_objective(Vec c);
  void set_objective(std::size_t j, double c) { objective_.at(j) = c; }
  const Vec& objective() const { return objective_; }

  void add_eq(std::span<const double> row, double rhs);
  void add_le(std::span<const double> row, double rhs);
  void add_ge(std::span<const double> row, double rhs);

  void set_bounds(std::size_t j, double lo, double hi);
  void set_free(std::size_t j) { set_bounds(j, -kInf, kInf); }
  void set_all_free();
  const std::vector<Bound>& bounds() const { return bounds_; }

  const Matrix& eq_lhs() const { return eq_lhs_; }
  const Vec& eq_rhs() const { return eq_rhs_; }
  const Matrix& ub_lhs() const { return ub_lhs_; }
  const Vec& ub_rhs() const { return ub_rhs_; }

  /// Largest violation of any constraint or bound at `x`.
  double max_violation(std::span<const double> x) const;

 private:
  Vec objective_;
  Matrix eq_lhs_;
  Vec eq_rhs_;
  Matrix ub_lhs_;
  Vec ub_rhs_;
  std::vector<Bound> bounds_;
};

struct Optimal {
  double value;
  Vec point;
};
struct Infeasible {
  /// Phase-one residual (sum of artificial variables) at termination.
  double residual;
};
struct Unbounded {};

using LpResult = std::variant<Optimal, Infeasible, Unbounded>;

LpResult solve(const LpProblem& problem, const Tolerances& tol = default_tolerances());

inline bool is_optimal(const LpResult& r) { return std::holds_alternative<Optimal>(r); }
inline bool is_infeasible(const LpResult& r) { return std::holds_alternative<Infeasible>(r); }

/// Feasibility query: solves with a zero objective and returns a point if any.
std::optional<Vec> find_feasible(LpProblem problem, const Tolerances& tol = default_tolerances());

struct SolverStats {
  std::size_t pivots = 0;
  std::size_t bland_pivots = 0;
};
/// Statistics of the most recent solve on the calling thread.
SolverStats last_stats();

}  // namespace gptlab::lp
