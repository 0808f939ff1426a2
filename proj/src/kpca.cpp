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

#include "dkpca/kpca.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "dkpca/errors.hpp"

namespace dkpca::kpca {

std::size_t EigenSpectrum::positive_count() const {
  std::size_t count = 0;
  for (double v : eigenvalues) {
    if (v > 0.0) ++count;
  }
  return count;
}

CenteredKernel center_kernel(const kernels::KernelMatrix& kernel) {
  const Matrix& k = kernel.values;
  if (k.rows() == 0) throw ParameterError("center_kernel: empty kernel");
  if (!k.square()) throw ParameterError("center_kernel: kernel not square");

  const std::size_t m = k.rows();
  // J K JT expanded entrywise: K_ij - mu_i - mu_j + mu. Using row means for
  // both sides keeps the result exactly symmetric when K is.
  std::vector<double> row_mean(m, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double acc = 0.0;
    auto ri = k.row(i);
    for (std::size_t j = 0; j < m; ++j) acc += ri[j];
    row_mean[i] = acc / static_cast<double>(m);
    total += acc;
  }
  const double grand_mean = total / static_cast<double>(m * m);

  CenteredKernel centered;
  centered.source_kind = kernel.kind;
  centered.values = Matrix(m, m);
  // (k + mu) - (mu_i + mu_j): grouping the means keeps the expression
  // invariant under swapping i and j, so the result is symmetric to the bit.
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      centered.values(i, j) = (k(i, j) + grand_mean) - (row_mean[i] + row_mean[j]);
  return centered;
}

EigenSpectrum symmetric_eigendecomposition(const CenteredKernel& centered,
                                           const EigenOptions& options) {
  const Matrix& k = centered.values;
  if (k.rows() == 0) throw ParameterError("eigendecomposition: empty kernel");

  EigenResult raw = jacobi_eigendecompose(k, options.tol_factor, options.max_sweeps);
  if (!raw.converged)
    throw NumericError("eigendecomposition did not converge in " +
                       std::to_string(raw.sweeps) + " sweeps, off-diagonal residual " +
                       std::to_string(raw.off_diagonal));

  const std::size_t m = raw.values.size();
  double max_magnitude = 0.0;
  for (double v : raw.values) max_magnitude = std::max(max_magnitude, std::abs(v));
  const double clamp = options.clamp_factor * max_magnitude;
  for (double& v : raw.values)
    if (std::abs(v) < clamp) v = 0.0;

  // Descending eigenvalues; ties keep Jacobi output order.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return raw.values[a] > raw.values[b];
  });

  EigenSpectrum spectrum;
  spectrum.eigenvalues.resize(m);
  spectrum.eigenvectors = Matrix(m, m);
  for (std::size_t col = 0; col < m; ++col) {
    const std::size_t src = order[col];
    spectrum.eigenvalues[col] = raw.values[src];

    // Sign convention: the first largest-magnitude component is positive.
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double mag = std::abs(raw.vectors(i, src));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    const double flip = raw.vectors(arg, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < m; ++i)
      spectrum.eigenvectors(i, col) = flip * raw.vectors(i, src);
  }
  return spectrum;
}

std::size_t select_dimension(const EigenSpectrum& spectrum, const DimensionPolicy& policy) {
  if (spectrum.size() == 0) throw ParameterError("select_dimension: empty spectrum");
  const std::size_t positives = spectrum.positive_count();
  if (positives == 0)
    throw DegenerateKernelError("select_dimension: no positive eigenvalues");

  if (policy.mode == DimensionPolicy::Mode::explicit_dim) {
    if (policy.dim < 1) throw ParameterError("select_dimension: dimension must be >= 1");
    return std::min(policy.dim, positives);
  }

  const double tau = policy.threshold;
  if (!(tau > 0.0) || tau > 1.0)
    throw ParameterError("select_dimension: threshold must lie in (0, 1]");
  double total = 0.0;
  for (std::size_t i = 0; i < positives; ++i) total += spectrum.eigenvalues[i];
  double cumulative = 0.0;
  for (std::size_t i = 0; i < positives; ++i) {
    cumulative += spectrum.eigenvalues[i];
    if (cumulative / total >= tau) return i + 1;
  }
  return positives;
}

Projection project(const EigenSpectrum& spectrum, std::size_t d) {
  const std::size_t positives = spectrum.positive_count();
  if (d < 1) throw ParameterError("project: dimension must be >= 1");
  if (d > positives)
    throw ParameterError("project: dimension " + std::to_string(d) + " exceeds the " +
                         std::to_string(positives) + " positive eigenvalues");

  const std::size_t m = spectrum.size();
  Projection projection;
  projection.dimension = d;
  projection.coordinates = Matrix(d, m);
  for (std::size_t r = 0; r < d; ++r) {
    const double scale = std::sqrt(spectrum.eigenvalues[r]);
    for (std::size_t i = 0; i < m; ++i)
      projection.coordinates(r, i) = scale * spectrum.eigenvectors(i, r);
  }

  double total = 0.0;
  for (std::size_t i = 0; i < positives; ++i) total += spectrum.eigenvalues[i];
  double kept = 0.0;
  for (std::size_t i = 0; i < d; ++i) kept += spectrum.eigenvalues[i];
  projection.retained_variance_ratio = kept / total;
  return projection;
}

void write_spectrum_csv(const EigenSpectrum& spectrum, std::ostream& out) {
  double total = 0.0;
  for (double v : spectrum.eigenvalues) total += std::max(v, 0.0);

  out << "index,eigenvalue,cumulative_ratio\n";
  char line[96];
  double cumulative = 0.0;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    cumulative += std::max(spectrum.eigenvalues[i], 0.0);
    const double ratio = total > 0.0 ? cumulative / total : 0.0;
    std::snprintf(line, sizeof line, "%zu,%.12g,%.6f\n", i + 1,
                  spectrum.eigenvalues[i], ratio);
    out << line;
  }
}

}  // namespace dkpca::kpca
