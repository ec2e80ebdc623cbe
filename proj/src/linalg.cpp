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

#include "gptlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gptlab/errors.hpp"
#include "gptlab/simd.hpp"

namespace gptlab {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
  Matrix m;
  for (const auto& r : rows) m.append_row(r);
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols) {
  if (cols.empty()) return {};
  Matrix m(cols.front().size(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != m.rows()) throw DimensionError("from_columns: ragged columns");
    for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Vec Matrix::column(std::size_t c) const {
  Vec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void Matrix::append_row(std::span<const double> values) {
  if (rows_ == 0 && data_.empty()) cols_ = values.size();
  if (values.size() != cols_) throw DimensionError("append_row: width mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("dot: size mismatch");
  return simd::dot(a, b);
}

double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("max_abs_diff: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_diff: shape mismatch");
  return max_abs_diff(a.data(), b.data());
}

Vec add(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("add: size mismatch");
  Vec out(a.begin(), a.end());
  simd::axpy(1.0, b, out);
  return out;
}

Vec sub(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("sub: size mismatch");
  Vec out(a.begin(), a.end());
  simd::axpy(-1.0, b, out);
  return out;
}

Vec scaled(double s, std::span<const double> a) {
  Vec out(a.begin(), a.end());
  simd::scale(s, out);
  return out;
}

Vec combine(std::span<const double> weights, const std::vector<Vec>& vectors) {
  if (weights.size() != vectors.size()) throw DimensionError("combine: count mismatch");
  if (vectors.empty()) return {};
  Vec out(vectors.front().size(), 0.0);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != out.size()) throw DimensionError("combine: ragged vectors");
    if (weights[i] != 0.0) simd::axpy(weights[i], vectors[i], out);
  }
  return out;
}

Vec matvec(const Matrix& m, std::span<const double> x) {
  if (m.cols() != x.size()) throw DimensionError("matvec: shape mismatch");
  Vec out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out[r] = simd::dot(m.row(r), x);
  return out;
}

Vec vecmat(std::span<const double> x, const Matrix& m) {
  if (m.rows() != x.size()) throw DimensionError("vecmat: shape mismatch");
  Vec out(m.cols(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (x[r] != 0.0) simd::axpy(x[r], m.row(r), out);
  return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul: shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (double s = a(i, k); s != 0.0) simd::axpy(s, b.row(k), out.row(i));
  return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("add: shape mismatch");
  Matrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) simd::axpy(1.0, b.row(r), out.row(r));
  return out;
}

Matrix scaled(double s, const Matrix& m) {
  Matrix out = m;
  for (std::size_t r = 0; r < m.rows(); ++r) simd::scale(s, out.row(r));
  return out;
}

Matrix outer(std::span<const double> a, std::span<const double> b) {
  Matrix out(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto row = out.row(i);
    for (std::size_t j = 0; j < b.size(); ++j) row[j] = a[i] * b[j];
  }
  return out;
}

Vec kron(std::span<const double> a, std::span<const double> b) {
  Vec out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double s = a(i, j);
      if (s == 0.0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = s * b(k, l);
    }
  return out;
}

namespace {

double max_entry(const Matrix& a) { return norm_inf(a.data()); }

// In-place reduction of `work` (n x (n + extra)) to [I | X]. Returns false on
// a vanishing pivot.
bool gauss_jordan(Matrix& work, std::size_t n, double threshold) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(work(r, col)) > std::abs(work(piv, col))) piv = r;
    if (std::abs(work(piv, col)) <= threshold) return false;
    if (piv != col) {
      auto a = work.row(piv);
      auto b = work.row(col);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    simd::scale(1.0 / work(col, col), work.row(col));
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = work(r, col);
      if (f != 0.0) simd::axpy(-f, work.row(col), work.row(r));
    }
  }
  return true;
}

// Row echelon reduction; returns pivot columns.
std::vector<std::size_t> rref(Matrix& work, double pivot_tol) {
  const double threshold = pivot_tol * std::max(1.0, max_entry(work));
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < work.cols() && row < work.rows(); ++col) {
    std::size_t piv = row;
    for (std::size_t r = row + 1; r < work.rows(); ++r)
      if (std::abs(work(r, col)) > std::abs(work(piv, col))) piv = r;
    if (std::abs(work(piv, col)) <= threshold) continue;
    if (piv != row) {
      auto a = work.row(piv);
      auto b = work.row(row);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    simd::scale(1.0 / work(row, col), work.row(row));
    for (std::size_t r = 0; r < work.rows(); ++r) {
      if (r == row) continue;
      const double f = work(r, col);
      if (f != 0.0) simd::axpy(-f, work.row(row), work.row(r));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::optional<Vec> solve(const Matrix& a, std::span<const double> b, double pivot_tol) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw DimensionError("solve: shape mismatch");
  Matrix work(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    std::copy(a.row(r).begin(), a.row(r).end(), work.row(r).begin());
    work(r, n) = b[r];
  }
  if (!gauss_jordan(work, n, pivot_tol * std::max(1.0, max_entry(a)))) return std::nullopt;
  Vec x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = work(r, n);
  return x;
}

std::optional<Matrix> inverse(const Matrix& a, double pivot_tol) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionError("inverse: matrix not square");
  Matrix work(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    std::copy(a.row(r).begin(), a.row(r).end(), work.row(r).begin());
    work(r, n + r) = 1.0;
  }
  if (!gauss_jordan(work, n, pivot_tol * std::max(1.0, max_entry(a)))) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = work(r, n + c);
  return inv;
}

std::size_t rank(const Matrix& a, double pivot_tol) {
  Matrix work = a;
  return rref(work, pivot_tol).size();
}

std::size_t rank(const std::vector<Vec>& vectors, double pivot_tol) {
  if (vectors.empty()) return 0;
  return rank(Matrix::from_rows(vectors), pivot_tol);
}

std::vector<std::size_t> independent_subset(const std::vector<Vec>& vectors, double pivot_tol) {
  // Column pivots of [v_0 v_1 ...] pick the first independent vectors in order.
  if (vectors.empty()) return {};
  Matrix work = Matrix::from_columns(vectors);
  return rref(work, pivot_tol);
}

std::vector<Vec> null_space(const Matrix& a, double pivot_tol) {
  Matrix work = a;
  const auto pivots = rref(work, pivot_tol);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(a.cols(), 0.0);
    v[free] = 1.0;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -work(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<LeastSquares> least_squares(const Matrix& a, std::span<const double> b, double pivot_tol) {
  if (a.rows() != b.size()) throw DimensionError("least_squares: shape mismatch");
  const Matrix at = a.transpose();
  const Matrix normal = matmul(at, a);
  const Vec rhs = matvec(at, b);
  auto x = solve(normal, rhs, pivot_tol);
  if (!x) return std::nullopt;
  // One step of iterative refinement keeps the residual honest for the
  // moderately conditioned systems built from polygon coordinates.
  Vec r = sub(b, matvec(a, *x));
  if (auto dx = solve(normal, matvec(at, r), pivot_tol)) *x = add(*x, *dx);
  LeastSquares out{std::move(*x), 0.0};
  out.residual = norm_inf(sub(b, matvec(a, out.x)));
  return out;
}

}  // namespace gptlab
