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

#include "gptlab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gptlab/errors.hpp"
#include "gptlab/simd.hpp"

namespace gptlab::lp {

namespace {

thread_local SolverStats g_stats;

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-10;
constexpr double kDegenerateStep = 1e-13;
constexpr std::size_t kDegenerateRunBeforeBland = 50;
constexpr std::size_t kMaxPivots = 200000;

// How an original variable is expressed through nonnegative columns.
struct VarMap {
  enum class Kind { Shift, Flip, Split } kind;
  double offset;  // lo for Shift, hi for Flip
  std::size_t col;
  std::size_t col_neg;  // Split only
};

struct StandardForm {
  Matrix a;  // m x n, all rows equalities after slack insertion
  Vec b;     // >= 0
  Vec c;     // objective over columns (maximize)
  double c_offset = 0.0;
  std::vector<VarMap> vars;
  std::vector<std::ptrdiff_t> unit_column;  // per row: column usable as initial basis, or -1
};

StandardForm to_standard_form(const LpProblem& p) {
  StandardForm sf;
  const std::size_t nv = p.num_vars();
  std::size_t ncol = 0;
  std::vector<std::size_t> bounded_shift;  // vars needing an explicit upper row
  sf.vars.reserve(nv);
  for (std::size_t j = 0; j < nv; ++j) {
    const Bound& bd = p.bounds()[j];
    if (std::isfinite(bd.lo)) {
      sf.vars.push_back({VarMap::Kind::Shift, bd.lo, ncol++, 0});
      if (std::isfinite(bd.hi)) bounded_shift.push_back(j);
    } else if (std::isfinite(bd.hi)) {
      sf.vars.push_back({VarMap::Kind::Flip, bd.hi, ncol++, 0});
    } else {
      sf.vars.push_back({VarMap::Kind::Split, 0.0, ncol, ncol + 1});
      ncol += 2;
    }
  }
  const std::size_t n_eq = p.eq_lhs().rows();
  const std::size_t n_ub = p.ub_lhs().rows();
  const std::size_t n_le = n_ub + bounded_shift.size();
  const std::size_t m = n_eq + n_le;
  const std::size_t n = ncol + n_le;
  sf.a = Matrix(m, n);
  sf.b.assign(m, 0.0);
  sf.unit_column.assign(m, -1);

  auto emit = [&](std::size_t row, std::span<const double> coeffs, double rhs) {
    for (std::size_t j = 0; j < nv; ++j) {
      const double aj = coeffs[j];
      if (aj == 0.0) continue;
      const VarMap& vm = sf.vars[j];
      switch (vm.kind) {
        case VarMap::Kind::Shift:
          sf.a(row, vm.col) += aj;
          rhs -= aj * vm.offset;
          break;
        case VarMap::Kind::Flip:
          sf.a(row, vm.col) -= aj;
          rhs -= aj * vm.offset;
          break;
        case VarMap::Kind::Split:
          sf.a(row, vm.col) += aj;
          sf.a(row, vm.col_neg) -= aj;
          break;
      }
    }
    sf.b[row] = rhs;
  };

  std::size_t row = 0;
  for (std::size_t i = 0; i < n_eq; ++i, ++row) emit(row, p.eq_lhs().row(i), p.eq_rhs()[i]);
  std::size_t slack = ncol;
  for (std::size_t i = 0; i < n_ub; ++i, ++row, ++slack) {
    emit(row, p.ub_lhs().row(i), p.ub_rhs()[i]);
    sf.a(row, slack) = 1.0;
    sf.unit_column[row] = static_cast<std::ptrdiff_t>(slack);
  }
  for (std::size_t j : bounded_shift) {
    const Bound& bd = p.bounds()[j];
    sf.a(row, sf.vars[j].col) = 1.0;
    sf.b[row] = bd.hi - bd.lo;
    sf.a(row, slack) = 1.0;
    sf.unit_column[row] = static_cast<std::ptrdiff_t>(slack);
    ++row;
    ++slack;
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (sf.b[i] < 0.0) {
      simd::scale(-1.0, sf.a.row(i));
      sf.b[i] = -sf.b[i];
      sf.unit_column[i] = -1;
    }
  }

  sf.c.assign(n, 0.0);
  for (std::size_t j = 0; j < nv; ++j) {
    const double cj = p.objective()[j];
    const VarMap& vm = sf.vars[j];
    switch (vm.kind) {
      case VarMap::Kind::Shift:
        sf.c[vm.col] += cj;
        sf.c_offset += cj * vm.offset;
        break;
      case VarMap::Kind::Flip:
        sf.c[vm.col] -= cj;
        sf.c_offset += cj * vm.offset;
        break;
      case VarMap::Kind::Split:
        sf.c[vm.col] += cj;
        sf.c[vm.col_neg] -= cj;
        break;
    }
  }
  return sf;
}

// Tableau with the reduced-cost row stored last. Column `width - 1` holds the
// right-hand side; the objective row's rhs entry is minus the current value.
class Tableau {
 public:
  Tableau(const StandardForm& sf, std::size_t num_artificial)
      : m_(sf.a.rows()), n_(sf.a.cols() + num_artificial), t_(m_ + 1, n_ + 1), basis_(m_), banned_(n_, false) {
    for (std::size_t i = 0; i < m_; ++i) {
      std::copy(sf.a.row(i).begin(), sf.a.row(i).end(), t_.row(i).begin());
      t_(i, n_) = sf.b[i];
    }
  }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  double& at(std::size_t i, std::size_t j) { return t_(i, j); }
  double rhs(std::size_t i) const { return t_(i, n_); }
  std::vector<std::size_t>& basis() { return basis_; }
  void ban(std::size_t j) { banned_[j] = true; }

  // Installs cost vector c (size n) and prices out the current basis.
  void set_objective(std::span<const double> c) {
    auto obj = t_.row(m_);
    std::fill(obj.begin(), obj.end(), 0.0);
    std::copy(c.begin(), c.end(), obj.begin());
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = c[basis_[i]];
      if (cb != 0.0) simd::axpy(-cb, t_.row(i), obj);
    }
  }

  double value() const { return -t_(m_, n_); }

  void pivot(std::size_t r, std::size_t c) {
    simd::scale(1.0 / t_(r, c), t_.row(r));
    t_(r, c) = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) {
        simd::axpy(-f, t_.row(r), t_.row(i));
        t_(i, c) = 0.0;
      }
    }
    basis_[r] = c;
    ++g_stats.pivots;
  }

  void remove_row(std::size_t r) {
    Matrix next(m_, n_ + 1);
    std::size_t k = 0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      std::copy(t_.row(i).begin(), t_.row(i).end(), next.row(k++).begin());
    }
    t_ = std::move(next);
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

  enum class Outcome { Optimal, Unbounded };

  // Primal simplex iterations maximizing the installed objective.
  Outcome run() {
    std::size_t degenerate_run = 0;
    bool bland = false;
    for (std::size_t iter = 0; iter < kMaxPivots; ++iter) {
      const auto obj = t_.row(m_);
      std::ptrdiff_t enter = -1;
      if (bland) {
        for (std::size_t j = 0; j < n_; ++j)
          if (!banned_[j] && obj[j] > kCostTol) {
            enter = static_cast<std::ptrdiff_t>(j);
            break;
          }
      } else {
        double best = kCostTol;
        for (std::size_t j = 0; j < n_; ++j)
          if (!banned_[j] && obj[j] > best) {
            best = obj[j];
            enter = static_cast<std::ptrdiff_t>(j);
          }
      }
      if (enter < 0) return Outcome::Optimal;
      const auto c = static_cast<std::size_t>(enter);

      std::ptrdiff_t leave = -1;
      double best_ratio = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = t_(i, c);
        if (a <= kPivotTol) continue;
        const double ratio = std::max(0.0, t_(i, n_)) / a;
        if (leave < 0) {
          leave = static_cast<std::ptrdiff_t>(i);
          best_ratio = ratio;
          continue;
        }
        const auto li = static_cast<std::size_t>(leave);
        const double slack = 1e-12 * (1.0 + best_ratio);
        if (ratio < best_ratio - slack) {
          leave = static_cast<std::ptrdiff_t>(i);
          best_ratio = ratio;
        } else if (ratio <= best_ratio + slack) {
          const bool take = bland ? basis_[i] < basis_[li] : a > t_(li, c);
          if (take) {
            leave = static_cast<std::ptrdiff_t>(i);
            best_ratio = std::min(best_ratio, ratio);
          }
        }
      }
      if (leave < 0) return Outcome::Unbounded;

      if (best_ratio <= kDegenerateStep) {
        if (++degenerate_run >= kDegenerateRunBeforeBland) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      if (bland) ++g_stats.bland_pivots;
      pivot(static_cast<std::size_t>(leave), c);
    }
    throw GptError("simplex: pivot limit exceeded");
  }

 private:
  std::size_t m_;
  std::size_t n_;
  Matrix t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> banned_;
};

// Recomputes the basic variables from the untouched standard-form data; this
// removes the drift accumulated over pivots.
void refine(const StandardForm& sf, const std::vector<std::size_t>& basis, Vec& z) {
  const std::size_t m = basis.size();
  if (m == 0) return;
  std::vector<std::size_t> rows;
  // Rows may have been dropped as redundant; pick m independent original rows.
  {
    std::vector<Vec> candidate;
    candidate.reserve(sf.a.rows());
    for (std::size_t i = 0; i < sf.a.rows(); ++i) {
      Vec r(m);
      for (std::size_t k = 0; k < m; ++k) r[k] = sf.a(i, basis[k]);
      candidate.push_back(std::move(r));
    }
    rows = independent_subset(candidate, 1e-10);
    if (rows.size() != m) return;
  }
  Matrix bm(m, m);
  Vec rhs(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t k = 0; k < m; ++k) bm(r, k) = sf.a(rows[r], basis[k]);
    rhs[r] = sf.b[rows[r]];
  }
  auto xb = solve(bm, rhs, 1e-13);
  if (!xb) return;
  for (std::size_t k = 0; k < m; ++k) z[basis[k]] = std::max(0.0, (*xb)[k]);
}

}  // namespace

LpProblem::LpProblem(std::size_t num_vars) : objective_(num_vars, 0.0), bounds_(num_vars) {}

void LpProblem::set_objective(Vec c) {
  if (c.size() != num_vars()) throw DimensionError("LpProblem: objective width mismatch");
  objective_ = std::move(c);
}

void LpProblem::add_eq(std::span<const double> row, double rhs) {
  if (row.size() != num_vars()) throw DimensionError("LpProblem: equality row width mismatch");
  eq_lhs_.append_row(row);
  eq_rhs_.push_back(rhs);
}

void LpProblem::add_le(std::span<const double> row, double rhs) {
  if (row.size() != num_vars()) throw DimensionError("LpProblem: inequality row width mismatch");
  ub_lhs_.append_row(row);
  ub_rhs_.push_back(rhs);
}

void LpProblem::add_ge(std::span<const double> row, double rhs) {
  add_le(scaled(-1.0, row), -rhs);
}

void LpProblem::set_bounds(std::size_t j, double lo, double hi) {
  if (j >= num_vars()) throw DimensionError("LpProblem: bound index out of range");
  bounds_[j] = {lo, hi};
}

void LpProblem::set_all_free() {
  for (auto& b : bounds_) b = {-kInf, kInf};
}

double LpProblem::max_violation(std::span<const double> x) const {
  if (x.size() != num_vars()) throw DimensionError("max_violation: point width mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < eq_lhs_.rows(); ++i)
    worst = std::max(worst, std::abs(simd::dot(eq_lhs_.row(i), x) - eq_rhs_[i]));
  for (std::size_t i = 0; i < ub_lhs_.rows(); ++i)
    worst = std::max(worst, simd::dot(ub_lhs_.row(i), x) - ub_rhs_[i]);
  for (std::size_t j = 0; j < x.size(); ++j) {
    worst = std::max(worst, bounds_[j].lo - x[j]);
    worst = std::max(worst, x[j] - bounds_[j].hi);
  }
  return worst;
}

LpResult solve(const LpProblem& problem, const Tolerances& tol) {
  g_stats = {};
  for (const auto& bd : problem.bounds())
    if (bd.lo > bd.hi) return Infeasible{bd.lo - bd.hi};

  const StandardForm sf = to_standard_form(problem);
  const std::size_t m = sf.a.rows();
  const std::size_t n = sf.a.cols();

  std::size_t num_art = 0;
  for (auto uc : sf.unit_column)
    if (uc < 0) ++num_art;

  Tableau tab(sf, num_art);
  {
    std::size_t art = n;
    for (std::size_t i = 0; i < m; ++i) {
      if (sf.unit_column[i] >= 0) {
        tab.basis()[i] = static_cast<std::size_t>(sf.unit_column[i]);
      } else {
        tab.at(i, art) = 1.0;
        tab.basis()[i] = art++;
      }
    }
  }

  if (num_art > 0) {
    Vec phase1(n + num_art, 0.0);
    for (std::size_t j = n; j < n + num_art; ++j) phase1[j] = -1.0;
    tab.set_objective(phase1);
    tab.run();
    const double residual = -tab.value();
    if (residual > tol.eps_feas) return Infeasible{residual};

    // Drive remaining artificials out of the basis; drop redundant rows.
    for (std::size_t i = 0; i < tab.rows();) {
      if (tab.basis()[i] < n) {
        ++i;
        continue;
      }
      std::ptrdiff_t col = -1;
      double best = 1e-9;
      for (std::size_t j = 0; j < n; ++j)
        if (std::abs(tab.at(i, j)) > best) {
          best = std::abs(tab.at(i, j));
          col = static_cast<std::ptrdiff_t>(j);
        }
      if (col >= 0) {
        tab.pivot(i, static_cast<std::size_t>(col));
        ++i;
      } else {
        tab.remove_row(i);
      }
    }
    for (std::size_t j = n; j < n + num_art; ++j) tab.ban(j);
  }

  Vec phase2(n + num_art, 0.0);
  std::copy(sf.c.begin(), sf.c.end(), phase2.begin());
  tab.set_objective(phase2);
  if (tab.run() == Tableau::Outcome::Unbounded) return Unbounded{};

  Vec z(n, 0.0);
  for (std::size_t i = 0; i < tab.rows(); ++i)
    if (tab.basis()[i] < n) z[tab.basis()[i]] = std::max(0.0, tab.rhs(i));
  {
    std::vector<std::size_t> basis;
    for (std::size_t i = 0; i < tab.rows(); ++i)
      if (tab.basis()[i] < n) basis.push_back(tab.basis()[i]);
    if (basis.size() == tab.rows()) refine(sf, basis, z);
  }

  Vec x(problem.num_vars());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const VarMap& vm = sf.vars[j];
    switch (vm.kind) {
      case VarMap::Kind::Shift: x[j] = vm.offset + z[vm.col]; break;
      case VarMap::Kind::Flip: x[j] = vm.offset - z[vm.col]; break;
      case VarMap::Kind::Split: x[j] = z[vm.col] - z[vm.col_neg]; break;
    }
  }
  const double violation = problem.max_violation(x);
  if (violation > tol.eps_feas) {
    throw GptError("simplex: optimal point violates constraints by " + std::to_string(violation));
  }
  return Optimal{dot(problem.objective(), x), std::move(x)};
}

std::optional<Vec> find_feasible(LpProblem problem, const Tolerances& tol) {
  problem.set_objective(Vec(problem.num_vars(), 0.0));
  auto result = solve(problem, tol);
  if (auto* opt = std::get_if<Optimal>(&result)) return std::move(opt->point);
  return std::nullopt;
}

SolverStats last_stats() { return g_stats; }

}  // namespace gptlab::lp
