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
//
// Test-side reference implementations. Everything here is written the dumb
// way on purpose (triple loops, max-pivot Jacobi) and stays independent of
// the library code paths it is used to check.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dkpca/linalg.hpp"
#include "dkpca/rng.hpp"

namespace oracles {

using dkpca::Matrix;

inline Matrix naive_multiply(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  return c;
}

inline Matrix naive_transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

// G^p by repeated naive multiplication; p = 0 gives the identity.
inline Matrix naive_power(const Matrix& g, int p) {
  Matrix out = Matrix::identity(g.rows());
  for (int i = 0; i < p; ++i) out = naive_multiply(out, g);
  return out;
}

inline double factorial(int p) {
  double f = 1.0;
  for (int i = 2; i <= p; ++i) f *= i;
  return f;
}

// sum_{p=0}^{steps} lambda^p G^p / p!, each power recomputed from scratch.
inline Matrix naive_semantic(const Matrix& g, double lambda, int steps) {
  Matrix s(g.rows(), g.rows());
  for (int p = 0; p <= steps; ++p) {
    const Matrix gp = naive_power(g, p);
    const double coefficient = std::pow(lambda, p) / factorial(p);
    for (std::size_t i = 0; i < s.data().size(); ++i)
      s.data()[i] += coefficient * gp.data()[i];
  }
  return s;
}

// D S ST DT entirely with naive products.
inline Matrix naive_diffusion_kernel(const Matrix& d, const Matrix& s) {
  const Matrix ds = naive_multiply(d, s);
  return naive_multiply(ds, naive_transpose(ds));
}

// Documents shared by each term pair, counted straight from the incidence
// matrix.
inline Matrix shared_document_counts(const Matrix& incidence) {
  const std::size_t n = incidence.cols();
  Matrix g(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      double count = 0.0;
      for (std::size_t i = 0; i < incidence.rows(); ++i)
        if (incidence(i, j) > 0.0 && incidence(i, k) > 0.0) count += 1.0;
      g(j, k) = count;
    }
  return g;
}

struct EigenPairs {
  std::vector<double> values;  // descending
  Matrix vectors;              // columns aligned with values
};

// Classical Jacobi: each step annihilates the largest off-diagonal element.
// A different pivot strategy and code path from the library's cyclic solver.
inline EigenPairs classical_jacobi(Matrix a, int max_iterations = 20000,
                                   double tolerance = 1e-13) {
  const std::size_t n = a.rows();
  Matrix v = Matrix::identity(n);
  for (int iteration = 0; iteration < max_iterations; ++iteration) {
    std::size_t p = 0, q = 1;
    double biggest = -1.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (std::abs(a(i, j)) > biggest) {
          biggest = std::abs(a(i, j));
          p = i;
          q = j;
        }
    if (n < 2 || biggest <= tolerance) break;

    const double theta = 0.5 * std::atan2(2.0 * a(p, q), a(q, q) - a(p, p));
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Matrix rotated = a;
    for (std::size_t k = 0; k < n; ++k) {
      rotated(p, k) = c * a(p, k) - s * a(q, k);
      rotated(q, k) = s * a(p, k) + c * a(q, k);
    }
    Matrix next = rotated;
    for (std::size_t k = 0; k < n; ++k) {
      next(k, p) = c * rotated(k, p) - s * rotated(k, q);
      next(k, q) = s * rotated(k, p) + c * rotated(k, q);
    }
    a = next;
    for (std::size_t k = 0; k < n; ++k) {
      const double vkp = v(k, p);
      const double vkq = v(k, q);
      v(k, p) = c * vkp - s * vkq;
      v(k, q) = s * vkp + c * vkq;
    }
  }

  EigenPairs pairs;
  pairs.values.resize(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
  pairs.vectors = Matrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    pairs.values[c] = a(order[c], order[c]);
    for (std::size_t r = 0; r < n; ++r) pairs.vectors(r, c) = v(r, order[c]);
  }
  return pairs;
}

// Classical PCA scores of a row-per-sample matrix: center columns, take the
// eigenvectors of XcT Xc, project. Column c of the result holds the scores
// of component c.
inline Matrix covariance_pca_scores(const Matrix& x) {
  const std::size_t m = x.rows();
  const std::size_t n = x.cols();
  Matrix centered = x;
  for (std::size_t j = 0; j < n; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < m; ++i) mean += x(i, j);
    mean /= static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) centered(i, j) -= mean;
  }
  const Matrix cov = naive_multiply(naive_transpose(centered), centered);
  const EigenPairs pairs = classical_jacobi(cov);
  return naive_multiply(centered, pairs.vectors);
}

// Deterministic helpers for randomized tests.
inline double uniform(dkpca::SplitMix64& g, double lo, double hi) {
  // 53-bit mantissa fraction
  const double u = static_cast<double>(g.next() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

inline Matrix random_matrix(dkpca::SplitMix64& g, std::size_t rows, std::size_t cols,
                            double lo = -1.0, double hi = 1.0) {
  Matrix m(rows, cols);
  for (double& v : m.data()) v = uniform(g, lo, hi);
  return m;
}

inline Matrix random_count_matrix(dkpca::SplitMix64& g, std::size_t rows,
                                  std::size_t cols, int max_count = 3) {
  Matrix m(rows, cols);
  for (double& v : m.data())
    v = static_cast<double>(g.next_below(static_cast<std::uint64_t>(max_count) + 1));
  return m;
}

inline Matrix random_symmetric(dkpca::SplitMix64& g, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = uniform(g, -1.0, 1.0);
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

// Random PSD matrix R RT with R of the given inner dimension.
inline Matrix random_psd(dkpca::SplitMix64& g, std::size_t n, std::size_t inner) {
  const Matrix r = random_matrix(g, n, inner);
  return naive_multiply(r, naive_transpose(r));
}

inline double max_abs_difference(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

}  // namespace oracles
