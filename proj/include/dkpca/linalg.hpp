// Copyright 2026 The dkpca authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dkpca {

// Dense row-major matrix of doubles. Everything downstream (kernels, KPCA,
// projections) is built on this one type; the datasets of interest stay small
// enough (a few thousand rows/columns) that dense storage is the simple and
// adequate choice.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// a (m x n) times b (n x p). Each output element accumulates its products in
// ascending-k order, so the result is bitwise identical for any thread count.
Matrix multiply(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);

// a * aT: pairwise dot products of rows, mirrored across the diagonal so the
// result is exactly symmetric.
Matrix gram_rows(const Matrix& a);

// aT * a, accumulated row by row (sum of outer products). Exactly symmetric.
Matrix gram_columns(const Matrix& a);

double max_abs(const Matrix& a);
double frobenius_norm(const Matrix& a);
// max_ij |a(i,j) - a(j,i)| for a square matrix.
double max_asymmetry(const Matrix& a);

struct EigenResult {
  std::vector<double> values;  // unordered, values[i] pairs with column i
  Matrix vectors;              // orthonormal columns
  bool converged = false;
  double off_diagonal = 0.0;   // off-diagonal Frobenius norm at exit
  int sweeps = 0;
};

// Cyclic Jacobi eigendecomposition of a symmetric matrix. Sweeps rotate away
// every off-diagonal element in row order; convergence when the off-diagonal
// Frobenius norm drops below tol_factor * ||a||_F. Plain, serial and
// deterministic; adequate for the matrix sizes this project works at.
EigenResult jacobi_eigendecompose(const Matrix& a, double tol_factor = 1e-10,
                                  int max_sweeps = 100);

// Worker threads for the big matrix products, from DKPCA_THREADS (0 or 1
// means serial reference mode). Partitioning is by output rows, so results
// do not depend on this value.
unsigned thread_count();

}  // namespace dkpca
