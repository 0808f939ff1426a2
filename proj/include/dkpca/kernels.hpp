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

#include <cstdint>
#include <filesystem>
#include <string>

#include "dkpca/linalg.hpp"

namespace dkpca::kernels {

enum class Kind : std::uint8_t { linear = 0, rbf = 1, poly = 2, diffusion = 3 };

std::string kind_name(Kind kind);
Kind kind_from_name(const std::string& name);

// Parameters actually used to build a kernel; fields irrelevant to the kind
// stay at their defaults.
struct KernelParams {
  double sigma = 0.0;
  int degree = 0;
  double lambda = 0.0;
  int steps = 0;
  bool rbf_unsquared = false;
};

// Documents x documents Gram matrix. Valid kernels are symmetric and
// positive semi-definite up to round-off; validate_mercer checks both.
struct KernelMatrix {
  Matrix values;
  Kind kind = Kind::linear;
  KernelParams params;

  std::size_t size() const { return values.rows(); }
};

// Terms x terms co-occurrence counts: entry (j,k) is the number of documents
// containing both terms, and the diagonal counts documents per term. Built
// from the binary incidence matrix; a tf-weighted variant exists for
// ablation runs.
struct CooccurrenceMatrix {
  Matrix values;
};

// Truncated exponential of the co-occurrence matrix:
//   S = sum_{p=0}^{steps} lambda^p G^p / p!
// Entry (j,k) aggregates co-occurrence chains between terms j and k of
// length up to `steps`, each order damped by lambda^p / p!.
struct SemanticMatrix {
  Matrix values;
  double lambda = 0.0;
  int steps = 0;
};

// Higher truncation orders are pointless: the factorial kills them and the
// similarity signal fades after two or three steps anyway.
inline constexpr int kDefaultStepCap = 8;

// K = D * DT over term-frequency rows.
KernelMatrix gram_linear(const Matrix& doc_term);

// K(i,j) = exp(-||x_i - x_j||^2 / (2 sigma^2)). With unsquared set, the
// exponent uses the plain norm instead (both forms are valid kernels).
KernelMatrix gram_rbf(const Matrix& doc_term, double sigma, bool unsquared = false);

// K(i,j) = (<x_i, x_j> + 1)^degree with integer degree >= 1.
KernelMatrix gram_poly(const Matrix& doc_term, int degree);

// G = BT * B for the 0/1 incidence matrix B.
CooccurrenceMatrix cooccurrence_matrix(const Matrix& incidence);

// Same contraction over raw term frequencies (ablation variant).
CooccurrenceMatrix cooccurrence_from_tf(const Matrix& doc_term);

// The truncated Taylor sum above, accumulated with a running matrix power
// and factorial. steps above step_cap is rejected.
SemanticMatrix diffusion_semantic_matrix(const CooccurrenceMatrix& cooc, double lambda,
                                         int steps, int step_cap = kDefaultStepCap);

// K = (D S)(D S)T. Multiplying D by S first costs O(m N^2) and avoids ever
// forming the N x N x N product S ST, which would dominate when N >> m.
KernelMatrix gram_diffusion(const Matrix& doc_term, const SemanticMatrix& semantic);

struct MercerVerdict {
  double max_asymmetry = 0.0;   // max |K - KT| entrywise
  double min_eigenvalue = 0.0;  // of the symmetric part (K + KT)/2
  bool passed = false;          // asymmetry <= tol and min eigenvalue >= -tol
};

// Checks the two Mercer conditions and reports the measured slack either way.
MercerVerdict validate_mercer(const KernelMatrix& kernel, double tol);

// Binary cache: magic "DKPK", u32 version, u8 kind, u64 m, then m*m
// little-endian doubles in row order. Reload is exact to the bit.
void save_kernel(const KernelMatrix& kernel, const std::filesystem::path& path);
KernelMatrix load_kernel(const std::filesystem::path& path);

}  // namespace dkpca::kernels
