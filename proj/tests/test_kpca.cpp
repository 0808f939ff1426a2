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

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dkpca/errors.hpp"
#include "dkpca/kpca.hpp"
#include "oracles.hpp"

using namespace dkpca::kpca;
using dkpca::Matrix;
using dkpca::SplitMix64;
using dkpca::kernels::KernelMatrix;
using dkpca::kernels::Kind;

namespace {

KernelMatrix wrap(Matrix values, Kind kind = Kind::linear) {
  return {std::move(values), kind, {}};
}

double row_sum(const Matrix& m, std::size_t i) {
  double acc = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j);
  return acc;
}

double column_sum(const Matrix& m, std::size_t j) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) acc += m(i, j);
  return acc;
}

}  // namespace

TEST_SUITE_BEGIN("kpca");

TEST_CASE("a constant kernel centers to zero") {
  const auto centered = center_kernel(wrap(Matrix(5, 5, 1.0)));
  for (double v : centered.values.data()) CHECK(v == doctest::Approx(0.0));
  CHECK(centered.source_kind == Kind::linear);
}

TEST_CASE("centering the 2x2 scaled identity") {
  Matrix k(2, 2);
  k(0, 0) = 2.0;
  k(1, 1) = 2.0;
  const auto centered = center_kernel(wrap(std::move(k)));
  CHECK(centered.values(0, 0) == doctest::Approx(1.0));
  CHECK(centered.values(0, 1) == doctest::Approx(-1.0));
  CHECK(centered.values(1, 0) == doctest::Approx(-1.0));
  CHECK(centered.values(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("centered kernels have vanishing row and column sums") {
  SplitMix64 g(31);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t m = 2 + g.next_below(10);
    const auto centered = wrap(oracles::random_psd(g, m, m));
    const auto hat = center_kernel(centered);
    const double bound =
        1e-8 * static_cast<double>(m) * std::max(1e-300, dkpca::max_abs(hat.values));
    for (std::size_t i = 0; i < m; ++i) {
      CHECK(std::abs(row_sum(hat.values, i)) <= bound);
      CHECK(std::abs(column_sum(hat.values, i)) <= bound);
    }
    CHECK(dkpca::max_asymmetry(hat.values) == 0.0);
  }
}

TEST_CASE("centering is idempotent") {
  SplitMix64 g(32);
  const auto kernel = wrap(oracles::random_psd(g, 7, 7));
  const auto once = center_kernel(kernel);
  const auto twice = center_kernel(wrap(once.values, once.source_kind));
  CHECK(oracles::max_abs_difference(once.values, twice.values) <= 1e-10);
}

TEST_CASE("centering rejects empty and non-square kernels") {
  CHECK_THROWS_AS(center_kernel(wrap(Matrix())), dkpca::ParameterError);
  CHECK_THROWS_AS(center_kernel(wrap(Matrix(2, 3))), dkpca::ParameterError);
}

TEST_CASE("eigendecomposition of the identity") {
  const auto spectrum =
      symmetric_eigendecomposition({Matrix::identity(4), Kind::linear});
  for (double v : spectrum.eigenvalues) CHECK(v == 1.0);
  // residual bound
  for (std::size_t c = 0; c < 4; ++c) {
    double norm = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      norm += spectrum.eigenvectors(i, c) * spectrum.eigenvectors(i, c);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("eigendecomposition of the hand-solved 2x2 centered kernel") {
  Matrix k(2, 2);
  k(0, 0) = 1.0;
  k(0, 1) = -1.0;
  k(1, 0) = -1.0;
  k(1, 1) = 1.0;
  const auto spectrum = symmetric_eigendecomposition({std::move(k), Kind::linear});
  CHECK(spectrum.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(spectrum.eigenvalues[1] == doctest::Approx(0.0));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  // sign convention puts the first component positive
  CHECK(spectrum.eigenvectors(0, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  CHECK(spectrum.eigenvectors(1, 0) == doctest::Approx(-inv_sqrt2).epsilon(1e-12));
}

TEST_CASE("eigenvalues come out in descending order") {
  Matrix k(3, 3);
  k(0, 0) = 3.0;
  k(1, 1) = 1.0;
  k(2, 2) = 2.0;
  const auto spectrum = symmetric_eigendecomposition({std::move(k), Kind::linear});
  CHECK(spectrum.eigenvalues == std::vector<double>{3.0, 2.0, 1.0});
}

TEST_CASE("round-off-scale eigenvalues clamp to exact zero") {
  SplitMix64 g(33);
  // rank-deficient PSD: 6 points in a 3-dimensional feature space
  const auto kernel = wrap(oracles::random_psd(g, 6, 3));
  const auto centered = center_kernel(kernel);
  const auto spectrum = symmetric_eigendecomposition(centered);
  CHECK(spectrum.positive_count() == 3);
  for (std::size_t i = 3; i < 6; ++i) CHECK(spectrum.eigenvalues[i] == 0.0);
}

TEST_CASE("eigendecomposition meets residual and orthonormality bounds") {
  SplitMix64 g(34);
  const Matrix a = oracles::random_symmetric(g, 40);
  const auto spectrum = symmetric_eigendecomposition({a, Kind::linear});
  const double scale = dkpca::frobenius_norm(a);
  for (std::size_t c = 0; c < a.rows(); ++c) {
    double residual = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      double av = 0.0;
      for (std::size_t j = 0; j < a.cols(); ++j) av += a(i, j) * spectrum.eigenvectors(j, c);
      const double r = av - spectrum.eigenvalues[c] * spectrum.eigenvectors(i, c);
      residual += r * r;
    }
    CHECK(std::sqrt(residual) <= 1e-8 * scale);
  }
  for (std::size_t c1 = 0; c1 < a.rows(); ++c1)
    for (std::size_t c2 = c1; c2 < a.rows(); ++c2) {
      double dot = 0.0;
      for (std::size_t i = 0; i < a.rows(); ++i)
        dot += spectrum.eigenvectors(i, c1) * spectrum.eigenvectors(i, c2);
      CHECK(std::abs(dot - (c1 == c2 ? 1.0 : 0.0)) <= 1e-9);
    }
}

TEST_CASE("select_dimension threshold and explicit policies") {
  EigenSpectrum spectrum;
  spectrum.eigenvalues = {9.0, 1.0};
  CHECK(select_dimension(spectrum, DimensionPolicy::variance_threshold(0.9)) == 1);

  spectrum.eigenvalues = {4.0, 3.0, 2.0, 1.0};
  CHECK(select_dimension(spectrum, DimensionPolicy::explicit_dim(10)) == 4);
  CHECK(select_dimension(spectrum, DimensionPolicy::explicit_dim(2)) == 2);

  spectrum.eigenvalues = {5.0, 3.0, 2.0, 0.0, 0.0};
  CHECK(select_dimension(spectrum, DimensionPolicy::variance_threshold(0.8)) == 2);
  CHECK(select_dimension(spectrum, DimensionPolicy::variance_threshold(1.0)) == 3);
}

TEST_CASE("select_dimension rejects bad thresholds and degenerate spectra") {
  EigenSpectrum spectrum;
  spectrum.eigenvalues = {1.0};
  CHECK_THROWS_AS(select_dimension(spectrum, DimensionPolicy::variance_threshold(0.0)),
                  dkpca::ParameterError);
  CHECK_THROWS_AS(select_dimension(spectrum, DimensionPolicy::variance_threshold(1.5)),
                  dkpca::ParameterError);
  CHECK_THROWS_AS(select_dimension(spectrum, DimensionPolicy::explicit_dim(0)),
                  dkpca::ParameterError);
  spectrum.eigenvalues = {0.0, 0.0};
  CHECK_THROWS_AS(select_dimension(spectrum, DimensionPolicy::explicit_dim(1)),
                  dkpca::DegenerateKernelError);
}

TEST_CASE("projection of the hand-solved 2x2 kernel") {
  Matrix k(2, 2);
  k(0, 0) = 1.0;
  k(0, 1) = -1.0;
  k(1, 0) = -1.0;
  k(1, 1) = 1.0;
  const auto spectrum = symmetric_eigendecomposition({std::move(k), Kind::linear});
  const auto projection = project(spectrum, 1);
  CHECK(projection.dimension == 1);
  CHECK(projection.retained_variance_ratio == doctest::Approx(1.0));
  CHECK(projection.coordinates(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(projection.coordinates(0, 1) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("projection rejects impossible dimensions") {
  EigenSpectrum spectrum;
  spectrum.eigenvalues = {2.0, 0.0};
  spectrum.eigenvectors = Matrix::identity(2);
  CHECK_THROWS_AS(project(spectrum, 0), dkpca::ParameterError);
  CHECK_THROWS_AS(project(spectrum, 2), dkpca::ParameterError);
}

TEST_CASE("Y YT reproduces the positive eigenvalues") {
  SplitMix64 g(35);
  const auto kernel = wrap(oracles::random_psd(g, 8, 8));
  const auto centered = center_kernel(kernel);
  const auto spectrum = symmetric_eigendecomposition(centered);
  const std::size_t d = spectrum.positive_count();
  const auto projection = project(spectrum, d);
  const Matrix yyt = dkpca::gram_rows(projection.coordinates);
  const double lambda_max = spectrum.eigenvalues[0];
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double expected = i == j ? spectrum.eigenvalues[i] : 0.0;
      CHECK(std::abs(yyt(i, j) - expected) <= 1e-6 * lambda_max);
    }
}

TEST_CASE("pairwise distances in Y match the kernel-distance identity") {
  SplitMix64 g(36);
  const auto kernel = wrap(oracles::random_psd(g, 7, 7));
  const auto centered = center_kernel(kernel);
  const auto spectrum = symmetric_eigendecomposition(centered);
  const auto projection = project(spectrum, spectrum.positive_count());
  const Matrix& k = centered.values;
  const double scale = dkpca::max_abs(k);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) {
      double dist_sq = 0.0;
      for (std::size_t r = 0; r < projection.dimension; ++r) {
        const double d = projection.coordinates(r, i) - projection.coordinates(r, j);
        dist_sq += d * d;
      }
      const double expected = k(i, i) + k(j, j) - 2.0 * k(i, j);
      CHECK(std::abs(dist_sq - expected) <= 1e-6 * std::max(1.0, scale));
    }
}

TEST_CASE("normalized eigenvector route reproduces the projection") {
  // W_hat_dT K_hat with W_hat_d = Lambda_d^{-1/2} W_d equals
  // Lambda_d^{1/2} W_dT; both routes computed here explicitly.
  SplitMix64 g(37);
  const auto kernel = wrap(oracles::random_psd(g, 6, 6));
  const auto centered = center_kernel(kernel);
  const auto spectrum = symmetric_eigendecomposition(centered);
  const std::size_t d = spectrum.positive_count();
  const auto projection = project(spectrum, d);

  const std::size_t m = spectrum.size();
  Matrix normalized_t(d, m);  // rows are lambda^{-1/2} w_i
  for (std::size_t r = 0; r < d; ++r) {
    const double inv_sqrt = 1.0 / std::sqrt(spectrum.eigenvalues[r]);
    for (std::size_t i = 0; i < m; ++i)
      normalized_t(r, i) = inv_sqrt * spectrum.eigenvectors(i, r);
  }
  const Matrix direct = dkpca::multiply(normalized_t, centered.values);
  const double scale = std::abs(spectrum.eigenvalues[0]);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t i = 0; i < m; ++i)
      CHECK(std::abs(direct(r, i) - projection.coordinates(r, i)) <=
            1e-8 * std::max(1.0, scale));
}

TEST_CASE("linear-kernel KPCA equals covariance PCA up to component sign") {
  SplitMix64 g(38);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix data = oracles::random_matrix(g, 6, 4);
    const auto kernel = dkpca::kernels::gram_linear(data);
    const auto spectrum = symmetric_eigendecomposition(center_kernel(kernel));
    const std::size_t d = spectrum.positive_count();
    REQUIRE(d <= 4);
    const auto projection = project(spectrum, d);

    const Matrix scores = oracles::covariance_pca_scores(data);
    for (std::size_t c = 0; c < d; ++c) {
      double direct = 0.0, flipped = 0.0;
      for (std::size_t i = 0; i < 6; ++i) {
        direct = std::max(direct, std::abs(scores(i, c) - projection.coordinates(c, i)));
        flipped = std::max(flipped, std::abs(scores(i, c) + projection.coordinates(c, i)));
      }
      CHECK(std::min(direct, flipped) <= 1e-6);
    }
  }
}

TEST_CASE("the pipeline is deterministic in reference mode") {
  SplitMix64 g(39);
  const auto kernel = wrap(oracles::random_psd(g, 9, 9));
  const auto first = project(symmetric_eigendecomposition(center_kernel(kernel)), 3);
  const auto second = project(symmetric_eigendecomposition(center_kernel(kernel)), 3);
  CHECK(first.coordinates == second.coordinates);  // bitwise
}

TEST_CASE("an exhausted sweep budget raises a numeric error with the residual") {
  SplitMix64 g(40);
  const Matrix a = oracles::random_symmetric(g, 6);
  EigenOptions options;
  options.max_sweeps = 0;
  CHECK_THROWS_WITH_AS(symmetric_eigendecomposition({a, Kind::linear}, options),
                       doctest::Contains("residual"), dkpca::NumericError);
}

TEST_CASE("spectrum CSV lists 1-based indices and cumulative ratios") {
  EigenSpectrum spectrum;
  spectrum.eigenvalues = {3.0, 1.0, 0.0};
  spectrum.eigenvectors = Matrix::identity(3);
  std::ostringstream out;
  write_spectrum_csv(spectrum, out);
  CHECK(out.str() ==
        "index,eigenvalue,cumulative_ratio\n"
        "1,3,0.750000\n"
        "2,1,1.000000\n"
        "3,0,1.000000\n");
}

TEST_SUITE_END();
