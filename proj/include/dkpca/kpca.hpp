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
#include <iosfwd>
#include <vector>

#include "dkpca/kernels.hpp"
#include "dkpca/linalg.hpp"

namespace dkpca::kpca {

// A kernel conjugated with the centering projector J = I - (1/m) 11T, so
// that feature-space coordinates have zero mean: row and column sums vanish
// and eigenvalues measure variance.
struct CenteredKernel {
  Matrix values;
  kernels::Kind source_kind = kernels::Kind::linear;

  std::size_t size() const { return values.rows(); }
};

// Full spectrum of a centered kernel. Eigenvalues descend; column i of
// `eigenvectors` belongs to eigenvalues[i]; columns are orthonormal and sign
// fixed (largest-magnitude component positive) so output is reproducible.
struct EigenSpectrum {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;

  std::size_t size() const { return eigenvalues.size(); }
  std::size_t positive_count() const;
};

// Non-linear principal coordinates Y = Lambda_d^{1/2} W_dT. Column i holds
// the d-dimensional coordinates of document i.
struct Projection {
  Matrix coordinates;  // d x m
  std::size_t dimension = 0;
  double retained_variance_ratio = 0.0;
};

struct EigenOptions {
  double tol_factor = 1e-10;  // convergence: off-diag Frobenius < tol_factor * ||K||_F
  int max_sweeps = 100;
  double clamp_factor = 1e-10;  // |eigenvalue| < clamp_factor * max|eigenvalue| -> 0
};

// K_hat = J K JT. Centering twice changes nothing (J is a projector).
CenteredKernel center_kernel(const kernels::KernelMatrix& kernel);

// Cyclic Jacobi on the centered kernel, then descending sort, clamping of
// round-off-scale eigenvalues to zero, and the sign convention above.
EigenSpectrum symmetric_eigendecomposition(const CenteredKernel& centered,
                                           const EigenOptions& options = {});

struct DimensionPolicy {
  enum class Mode { explicit_dim, variance_threshold };
  Mode mode = Mode::variance_threshold;
  std::size_t dim = 0;
  double threshold = 1.0;

  static DimensionPolicy explicit_dim(std::size_t d) {
    return {Mode::explicit_dim, d, 0.0};
  }
  static DimensionPolicy variance_threshold(double tau) {
    return {Mode::variance_threshold, 0, tau};
  }
};

// Explicit mode clamps to the number of strictly positive eigenvalues;
// threshold mode returns the smallest d whose cumulative eigenvalue ratio
// reaches tau over the positive spectrum.
std::size_t select_dimension(const EigenSpectrum& spectrum, const DimensionPolicy& policy);

// Requires 1 <= d <= positive_count().
Projection project(const EigenSpectrum& spectrum, std::size_t d);

// `index,eigenvalue,cumulative_ratio` rows (1-based; ratios over the
// positive part of the spectrum), for dimension-selection plots.
void write_spectrum_csv(const EigenSpectrum& spectrum, std::ostream& out);

}  // namespace dkpca::kpca
