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

#include "dkpca/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "dkpca/errors.hpp"

namespace dkpca::kernels {

std::string kind_name(Kind kind) {
  switch (kind) {
    case Kind::linear: return "linear";
    case Kind::rbf: return "rbf";
    case Kind::poly: return "poly";
    case Kind::diffusion: return "diffusion";
  }
  throw ParameterError("unknown kernel kind");
}

Kind kind_from_name(const std::string& name) {
  if (name == "linear") return Kind::linear;
  if (name == "rbf") return Kind::rbf;
  if (name == "poly") return Kind::poly;
  if (name == "diffusion") return Kind::diffusion;
  throw ParameterError("unknown kernel kind: " + name);
}

KernelMatrix gram_linear(const Matrix& doc_term) {
  if (doc_term.empty()) throw ParameterError("gram_linear: empty input matrix");
  return {gram_rows(doc_term), Kind::linear, {}};
}

KernelMatrix gram_rbf(const Matrix& doc_term, double sigma, bool unsquared) {
  if (doc_term.empty()) throw ParameterError("gram_rbf: empty input matrix");
  if (!(sigma > 0.0)) throw ParameterError("gram_rbf: sigma must be positive");

  const std::size_t m = doc_term.rows();
  const std::size_t n = doc_term.cols();
  const double denom = 2.0 * sigma * sigma;
  Matrix k(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    k(i, i) = 1.0;
    auto ri = doc_term.row(i);
    for (std::size_t j = i + 1; j < m; ++j) {
      auto rj = doc_term.row(j);
      double sq = 0.0;
      for (std::size_t c = 0; c < n; ++c) {
        const double d = ri[c] - rj[c];
        sq += d * d;
      }
      const double dist = unsquared ? std::sqrt(sq) : sq;
      const double value = std::exp(-dist / denom);
      k(i, j) = value;
      k(j, i) = value;
    }
  }
  KernelParams params;
  params.sigma = sigma;
  params.rbf_unsquared = unsquared;
  return {std::move(k), Kind::rbf, params};
}

KernelMatrix gram_poly(const Matrix& doc_term, int degree) {
  if (doc_term.empty()) throw ParameterError("gram_poly: empty input matrix");
  if (degree < 1) throw ParameterError("gram_poly: degree must be >= 1");

  const std::size_t m = doc_term.rows();
  const std::size_t n = doc_term.cols();
  Matrix k(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    auto ri = doc_term.row(i);
    for (std::size_t j = i; j < m; ++j) {
      auto rj = doc_term.row(j);
      double dot = 0.0;
      for (std::size_t c = 0; c < n; ++c) dot += ri[c] * rj[c];
      double value = 1.0;
      for (int p = 0; p < degree; ++p) value *= dot + 1.0;
      k(i, j) = value;
      k(j, i) = value;
    }
  }
  KernelParams params;
  params.degree = degree;
  return {std::move(k), Kind::poly, params};
}

CooccurrenceMatrix cooccurrence_matrix(const Matrix& incidence) {
  if (incidence.empty()) throw ParameterError("cooccurrence_matrix: empty input matrix");
  return {gram_columns(incidence)};
}

CooccurrenceMatrix cooccurrence_from_tf(const Matrix& doc_term) {
  if (doc_term.empty()) throw ParameterError("cooccurrence_from_tf: empty input matrix");
  return {gram_columns(doc_term)};
}

SemanticMatrix diffusion_semantic_matrix(const CooccurrenceMatrix& cooc, double lambda,
                                         int steps, int step_cap) {
  const Matrix& g = cooc.values;
  if (g.empty() || !g.square())
    throw ParameterError("diffusion_semantic_matrix: G must be square and non-empty");
  if (max_asymmetry(g) > 1e-9 * std::max(1.0, max_abs(g)))
    throw ParameterError("diffusion_semantic_matrix: G must be symmetric");
  if (!(lambda >= 0.0))
    throw ParameterError("diffusion_semantic_matrix: lambda must be >= 0");
  if (steps < 0) throw ParameterError("diffusion_semantic_matrix: steps must be >= 0");
  if (steps > step_cap)
    throw ParameterError("diffusion_semantic_matrix: steps " + std::to_string(steps) +
                         " exceeds the cap of " + std::to_string(step_cap));

  const std::size_t n = g.rows();
  Matrix s = Matrix::identity(n);
  Matrix power = Matrix::identity(n);
  double coefficient = 1.0;  // lambda^p / p!
  for (int p = 1; p <= steps; ++p) {
    power = multiply(power, g);
    // Re-impose exact symmetry; repeated products drift by round-off.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = 0.5 * (power(i, j) + power(j, i));
        power(i, j) = v;
        power(j, i) = v;
      }
    coefficient *= lambda / static_cast<double>(p);
    if (coefficient == 0.0) break;  // lambda == 0: S stays exactly the identity
    for (std::size_t i = 0; i < s.data().size(); ++i)
      s.data()[i] += coefficient * power.data()[i];
  }
  return {std::move(s), lambda, steps};
}

KernelMatrix gram_diffusion(const Matrix& doc_term, const SemanticMatrix& semantic) {
  if (doc_term.empty()) throw ParameterError("gram_diffusion: empty input matrix");
  if (semantic.values.rows() != doc_term.cols())
    throw ParameterError("gram_diffusion: semantic matrix is " +
                         std::to_string(semantic.values.rows()) + "x" +
                         std::to_string(semantic.values.cols()) + " but D has " +
                         std::to_string(doc_term.cols()) + " terms");

  Matrix projected = multiply(doc_term, semantic.values);
  KernelParams params;
  params.lambda = semantic.lambda;
  params.steps = semantic.steps;
  return {gram_rows(projected), Kind::diffusion, params};
}

MercerVerdict validate_mercer(const KernelMatrix& kernel, double tol) {
  const Matrix& k = kernel.values;
  if (!k.square()) throw ParameterError("validate_mercer: kernel not square");

  MercerVerdict verdict;
  verdict.max_asymmetry = max_asymmetry(k);

  Matrix symmetric_part(k.rows(), k.cols());
  for (std::size_t i = 0; i < k.rows(); ++i)
    for (std::size_t j = 0; j < k.cols(); ++j)
      symmetric_part(i, j) = 0.5 * (k(i, j) + k(j, i));

  EigenResult eig = jacobi_eigendecompose(symmetric_part);
  if (!eig.converged)
    throw NumericError("validate_mercer: eigensolver did not converge, off-diagonal " +
                       std::to_string(eig.off_diagonal));
  verdict.min_eigenvalue =
      eig.values.empty() ? 0.0 : *std::min_element(eig.values.begin(), eig.values.end());
  verdict.passed =
      verdict.max_asymmetry <= tol && verdict.min_eigenvalue >= -tol;
  return verdict;
}

namespace {

constexpr char kMagic[4] = {'D', 'K', 'P', 'K'};
constexpr std::uint32_t kCacheVersion = 1;

void write_u64(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes, 8);
}

void write_u32(std::ostream& out, std::uint32_t v) {
  char bytes[4];
  for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes, 4);
}

std::uint64_t read_u64(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
  return v;
}

std::uint32_t read_u32(std::istream& in) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | bytes[i];
  return v;
}

}  // namespace

void save_kernel(const KernelMatrix& kernel, const std::filesystem::path& path) {
  if (!kernel.values.square()) throw ParameterError("save_kernel: kernel not square");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open kernel cache for writing: " + path.string());

  out.write(kMagic, 4);
  write_u32(out, kCacheVersion);
  out.put(static_cast<char>(static_cast<std::uint8_t>(kernel.kind)));
  write_u64(out, kernel.values.rows());
  for (double v : kernel.values.data()) write_u64(out, std::bit_cast<std::uint64_t>(v));
  if (!out) throw IoError("failed writing kernel cache: " + path.string());
}

KernelMatrix load_kernel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open kernel cache: " + path.string());

  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw ParseError("not a kernel cache file: " + path.string());
  const std::uint32_t version = read_u32(in);
  if (version != kCacheVersion)
    throw ParseError("unsupported kernel cache version " + std::to_string(version));
  const int kind_byte = in.get();
  if (kind_byte < 0 || kind_byte > 3)
    throw ParseError("bad kernel kind byte in cache: " + path.string());
  const std::uint64_t m = read_u64(in);

  KernelMatrix kernel;
  kernel.kind = static_cast<Kind>(kind_byte);
  kernel.values = Matrix(m, m);
  for (double& v : kernel.values.data()) v = std::bit_cast<double>(read_u64(in));
  if (!in) throw ParseError("truncated kernel cache: " + path.string());
  return kernel;
}

}  // namespace dkpca::kernels
