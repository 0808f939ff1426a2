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

#include "dkpca/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "dkpca/errors.hpp"

namespace dkpca {

namespace {

// Runs fn(begin, end) over [0, total) split into contiguous chunks, one per
// worker. fn must only write rows in its own range.
template <typename Fn>
void parallel_rows(std::size_t total, Fn&& fn) {
  unsigned workers = thread_count();
  if (workers <= 1 || total < 2 * workers) {
    fn(std::size_t{0}, total);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t begin = w * chunk;
    std::size_t end = std::min(total, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

unsigned thread_count() {
  static const unsigned cached = [] {
    const char* env = std::getenv("DKPCA_THREADS");
    if (env == nullptr) return 1u;
    long v = std::strtol(env, nullptr, 10);
    if (v <= 1) return 1u;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    return static_cast<unsigned>(std::min<long>(v, hw));
  }();
  return cached;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw ParameterError("multiply: inner dimensions disagree");
  Matrix c(a.rows(), b.cols());
  const std::size_t n = a.cols();
  const std::size_t p = b.cols();
  parallel_rows(a.rows(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto ci = c.row(i);
      for (std::size_t k = 0; k < n; ++k) {
        const double aik = a(i, k);
        if (aik == 0.0) continue;  // skipping a zero product leaves the sum bit-identical
        auto bk = b.row(k);
        for (std::size_t j = 0; j < p; ++j) ci[j] += aik * bk[j];
      }
    }
  });
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

Matrix gram_rows(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix g(m, m);
  parallel_rows(m, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto ri = a.row(i);
      for (std::size_t j = i; j < m; ++j) {
        auto rj = a.row(j);
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += ri[k] * rj[k];
        g(i, j) = acc;
      }
    }
  });
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < i; ++j) g(i, j) = g(j, i);
  return g;
}

Matrix gram_columns(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix g(n, n);
  // Sum of row outer products; skipping zero entries keeps the cost near the
  // number of nonzero term pairs per document rather than n^2 per row.
  std::vector<std::size_t> nz;
  for (std::size_t i = 0; i < m; ++i) {
    auto ri = a.row(i);
    nz.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (ri[j] != 0.0) nz.push_back(j);
    for (std::size_t j : nz) {
      const double vj = ri[j];
      for (std::size_t k : nz) {
        if (k < j) continue;
        g(j, k) += vj * ri[k];
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < j; ++k) g(j, k) = g(k, j);
  return g;
}

double max_abs(const Matrix& a) {
  double best = 0.0;
  for (double v : a.data()) best = std::max(best, std::abs(v));
  return best;
}

double frobenius_norm(const Matrix& a) {
  double acc = 0.0;
  for (double v : a.data()) acc += v * v;
  return std::sqrt(acc);
}

double max_asymmetry(const Matrix& a) {
  if (!a.square()) throw ParameterError("max_asymmetry: matrix not square");
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      best = std::max(best, std::abs(a(i, j) - a(j, i)));
  return best;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) acc += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(acc);
}

}  // namespace

EigenResult jacobi_eigendecompose(const Matrix& input, double tol_factor,
                                  int max_sweeps) {
  if (!input.square()) throw ParameterError("jacobi: matrix not square");
  const std::size_t n = input.rows();

  EigenResult out;
  out.vectors = Matrix::identity(n);
  if (n == 0) {
    out.converged = true;
    return out;
  }

  Matrix a = input;
  const double scale = frobenius_norm(a);
  const double threshold = tol_factor * scale;

  // Eigenvectors accumulate transposed (one vector per row) so the rotation
  // updates run along contiguous rows; transposed back on exit.
  Matrix vt = Matrix::identity(n);
  out.off_diagonal = off_diagonal_norm(a);
  if (scale == 0.0 || out.off_diagonal <= threshold) {
    out.converged = true;
  } else {
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const double apq = a(p, q);
          if (apq == 0.0) continue;
          // Rotation angle that zeroes a(p,q); hypot keeps tau^2 from
          // overflowing when apq is tiny.
          const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
          const double t = (tau >= 0.0) ? 1.0 / (tau + std::hypot(1.0, tau))
                                        : 1.0 / (tau - std::hypot(1.0, tau));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;

          const double app = a(p, p);
          const double aqq = a(q, q);

          // A stays exactly symmetric, so rows p and q carry the same bits
          // as columns p and q: rotate the two rows in place, mirror them
          // back into the columns, then patch the four pivot entries.
          auto row_p = a.row(p);
          auto row_q = a.row(q);
          for (std::size_t k = 0; k < n; ++k) {
            const double akp = row_p[k];
            const double akq = row_q[k];
            row_p[k] = c * akp - s * akq;
            row_q[k] = s * akp + c * akq;
          }
          for (std::size_t k = 0; k < n; ++k) {
            a(k, p) = row_p[k];
            a(k, q) = row_q[k];
          }
          a(p, p) = app - t * apq;
          a(q, q) = aqq + t * apq;
          a(p, q) = 0.0;
          a(q, p) = 0.0;

          auto vt_p = vt.row(p);
          auto vt_q = vt.row(q);
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = vt_p[k];
            const double vkq = vt_q[k];
            vt_p[k] = c * vkp - s * vkq;
            vt_q[k] = s * vkp + c * vkq;
          }
        }
      }
      out.sweeps = sweep + 1;
      out.off_diagonal = off_diagonal_norm(a);
      if (out.off_diagonal <= threshold) {
        out.converged = true;
        break;
      }
    }
  }

  out.vectors = transpose(vt);
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i);
  return out;
}

}  // namespace dkpca
