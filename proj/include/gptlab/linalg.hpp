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

// Small dense real linear algebra. Everything here is sized for the toy
// theories the library deals with (dimensions in the tens), so matrices are
// plain row-major buffers and every routine is O(n^3) Gaussian elimination.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace gptlab {

using Vec = std::vector<double>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  /// Builds a matrix whose rows are the given vectors (all of equal length).
  static Matrix from_rows(const std::vector<Vec>& rows);
  /// Builds a matrix whose columns are the given vectors.
  static Matrix from_columns(const std::vector<Vec>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vec column(std::size_t c) const;

  /// Appends a row; the first row fixes the column count of an empty matrix.
  void append_row(std::span<const double> values);

  std::span<const double> data() const { return data_; }

  Matrix transpose() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm_inf(std::span<const double> a);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
double max_abs_diff(const Matrix& a, const Matrix& b);

Vec add(std::span<const double> a, std::span<const double> b);
Vec sub(std::span<const double> a, std::span<const double> b);
Vec scaled(double s, std::span<const double> a);
/// sum_i weights[i] * vectors[i]
Vec combine(std::span<const double> weights, const std::vector<Vec>& vectors);

Vec matvec(const Matrix& m, std::span<const double> x);
/// x^T m
Vec vecmat(std::span<const double> x, const Matrix& m);
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix add(const Matrix& a, const Matrix& b);
Matrix scaled(double s, const Matrix& m);
/// a b^T
Matrix outer(std::span<const double> a, std::span<const double> b);

/// Kronecker products; index (i, j) of a⊗b lives at i * b.size() + j.
Vec kron(std::span<const double> a, std::span<const double> b);
Matrix kron(const Matrix& a, const Matrix& b);

/// Solves the square system a x = b by Gaussian elimination with partial
/// pivoting. Returns nullopt when a pivot falls below `pivot_tol` times the
/// largest entry of `a`.
std::optional<Vec> solve(const Matrix& a, std::span<const double> b, double pivot_tol = 1e-12);
std::optional<Matrix> inverse(const Matrix& a, double pivot_tol = 1e-12);

/// Numerical rank via elimination with scaled pivot threshold.
std::size_t rank(const Matrix& a, double pivot_tol = 1e-9);
std::size_t rank(const std::vector<Vec>& vectors, double pivot_tol = 1e-9);

/// Indices of a maximal linearly independent subset, chosen greedily in order.
std::vector<std::size_t> independent_subset(const std::vector<Vec>& vectors, double pivot_tol = 1e-9);

/// Orthonormal-free basis of {x : a x = 0} (rows of the result span the kernel).
std::vector<Vec> null_space(const Matrix& a, double pivot_tol = 1e-9);

/// Least-squares solution of a x = b for a with full column rank, together
/// with the residual max-norm. Used to test consistency of overdetermined
/// linear systems.
struct LeastSquares {
  Vec x;
  double residual = 0.0;
};
std::optional<LeastSquares> least_squares(const Matrix& a, std::span<const double> b, double pivot_tol = 1e-12);

}  // namespace gptlab
