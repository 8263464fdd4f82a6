// Copyright 2026 The gapmeasure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gap/errors.hpp"
#include "gap/spectral.hpp"
#include "test_util.hpp"

using namespace gap;
using gap::test::diag;

namespace {

double max_orthonormality_error(const ComplexMatrix& v) {
  return (v.adjoint() * v - ComplexMatrix::Identity(v.cols(), v.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("validate_hermitian accepts Hermitian input unchanged") {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  CHECK(validate_hermitian(id, 1e-9).matrix() == id);

  ComplexMatrix pauli_y(2, 2);
  pauli_y << Complex(0, 0), Complex(0, 1), Complex(0, -1), Complex(0, 0);
  CHECK(validate_hermitian(pauli_y, 1e-9).matrix() == pauli_y);
}

TEST_CASE("validate_hermitian rejects asymmetric and non-finite input") {
  ComplexMatrix m(2, 2);
  m << 0, 1, 0, 0;
  try {
    validate_hermitian(m, 1e-9);
    FAIL("expected AsymmetryExceeded");
  } catch (const AsymmetryExceeded& e) {
    CHECK(e.deviation() == 1.0);
  }
  m << 1, std::nan(""), std::nan(""), 1;
  CHECK_THROWS_AS(validate_hermitian(m, 1e-9), NonFinite);
  CHECK_THROWS_AS(validate_hermitian(ComplexMatrix::Zero(2, 3), 1e-9), DimMismatch);
}

TEST_CASE("validate_hermitian symmetrizes small asymmetry exactly") {
  ComplexMatrix m(2, 2);
  m << Complex(1, 1e-12), Complex(0.5, 0.25), Complex(0.5 + 1e-12, -0.25), 2;
  const ComplexMatrix h = validate_hermitian(m, 1e-9).matrix();
  CHECK(h == h.adjoint());
}

TEST_CASE("eigh on diagonal and Pauli-x") {
  const SpectralDecomposition sd = eigh(validate_hermitian(diag({3, 1, 2})));
  CHECK(sd.eigenvalues(0) == 3.0);
  CHECK(sd.eigenvalues(1) == 2.0);
  CHECK(sd.eigenvalues(2) == 1.0);
  CHECK(std::abs(sd.eigenvectors(0, 0)) == 1.0);
  CHECK(std::abs(sd.eigenvectors(2, 1)) == 1.0);
  CHECK(std::abs(sd.eigenvectors(1, 2)) == 1.0);

  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  const SpectralDecomposition px = eigh(validate_hermitian(x));
  CHECK(px.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(px.eigenvalues(1) == doctest::Approx(-1.0).epsilon(1e-15));
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(std::abs(px.eigenvectors.col(0).dot(StateVector::Constant(2, s))) - 1.0) < 1e-14);
  StateVector minus(2);
  minus << s, -s;
  CHECK(std::abs(std::abs(px.eigenvectors.col(1).dot(minus)) - 1.0) < 1e-14);
}

TEST_CASE("eigh reconstructs random Hermitian matrices") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    for (Index dim : {1, 2, 6, 20, 60}) {
      const ComplexMatrix m = gap::test::random_hermitian(dim, seed * 100 + dim);
      const SpectralDecomposition sd = eigh(validate_hermitian(m));
      CHECK((sd.reconstruct() - m).norm() < 1e-10 * static_cast<double>(dim));
      CHECK(max_orthonormality_error(sd.eigenvectors) <= 1e-12);
      for (Index k = 1; k < dim; ++k) CHECK(sd.eigenvalues(k - 1) >= sd.eigenvalues(k));

      // Independent route: Eigen's tridiagonal QR solver.
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> ref(m);
      const RealVector ref_desc = ref.eigenvalues().reverse();
      CHECK((ref_desc - sd.eigenvalues).cwiseAbs().maxCoeff() < 1e-11 * (1.0 + m.norm()));
    }
  }
}

TEST_CASE("eigh fixes eigenvector phases") {
  const ComplexMatrix m = gap::test::random_hermitian(8, 99);
  const SpectralDecomposition sd = eigh(validate_hermitian(m));
  for (Index j = 0; j < sd.dim(); ++j) {
    Index best = 0;
    sd.eigenvectors.col(j).cwiseAbs().maxCoeff(&best);
    CHECK(sd.eigenvectors(best, j).imag() == 0.0);
    CHECK(sd.eigenvectors(best, j).real() > 0.0);
  }
}

TEST_CASE("eigh reports non-convergence") {
  const ComplexMatrix m = gap::test::random_hermitian(10, 5);
  JacobiOptions opts;
  opts.max_sweeps = 1;
  CHECK_THROWS_AS(eigh(validate_hermitian(m), opts), ConvergenceFailure);
}

TEST_CASE("eigh on degenerate spectra") {
  // Two-fold degenerate eigenvalue hidden by a unitary rotation.
  const ComplexMatrix u = eigh(validate_hermitian(gap::test::random_hermitian(4, 7))).eigenvectors;
  const ComplexMatrix m = u * diag({2, 2, 1, 0}) * u.adjoint();
  const SpectralDecomposition sd = eigh(validate_hermitian(m, 1e-12));
  CHECK(sd.eigenvalues(0) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(sd.eigenvalues(1) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK((sd.reconstruct() - m).norm() < 1e-12);
}

TEST_CASE("thermal_state values") {
  const HermitianOperator h = validate_hermitian(gap::test::random_hermitian(5, 11));
  const DensityOperator flat = thermal_state(h, 0.0);
  for (Index k = 0; k < 5; ++k) CHECK(flat.probabilities()(k) == doctest::Approx(0.2).epsilon(1e-15));

  const DensityOperator two = thermal_state(validate_hermitian(diag({0, std::log(2.0)})), 1.0);
  CHECK(two.probabilities()(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(two.probabilities()(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  // High-precision oracle: e^{-50}/(1 + e^{-50}).
  const DensityOperator cold = thermal_state(validate_hermitian(diag({0, 1})), 50.0);
  CHECK(cold.probabilities()(0) == 1.0);
  CHECK(cold.probabilities()(1) == doctest::Approx(1.928749847963917783e-22).epsilon(1e-14));
  CHECK(cold.matrix().allFinite());

  const DensityOperator frozen = thermal_state(validate_hermitian(diag({0, 1})), 1e6);
  CHECK(frozen.probabilities()(0) == 1.0);
  CHECK(frozen.probabilities()(1) == 0.0);

  CHECK_THROWS(thermal_state(h, -1.0));
  CHECK_THROWS(thermal_state(h, INFINITY));
}

TEST_CASE("thermal_state commutes with H") {
  for (std::uint64_t seed : {21u, 22u, 23u}) {
    const ComplexMatrix m = gap::test::random_hermitian(7, seed);
    for (double beta : {0.1, 1.0, 10.0}) {
      const ComplexMatrix rho = thermal_state(validate_hermitian(m), beta).matrix();
      CHECK((rho * m - m * rho).norm() < 1e-9 * m.norm());
      CHECK(rho.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("density operator clamping and errors") {
  // Tiny negative eigenvalue is clamped.
  SpectralDecomposition sd{RealVector(3), ComplexMatrix::Identity(3, 3)};
  sd.eigenvalues << 0.5, 0.5, -1e-16;
  const DensityOperator rho = DensityOperator::from_spectral(sd);
  CHECK(rho.probabilities()(2) == 0.0);
  CHECK(rho.probabilities().sum() == doctest::Approx(1.0).epsilon(1e-15));

  sd.eigenvalues << 0.6, 0.5, -0.1;
  CHECK_THROWS_AS(DensityOperator::from_spectral(sd), NotPositive);
  sd.eigenvalues << 0.6, 0.6, 0.0;
  CHECK_THROWS_AS(DensityOperator::from_spectral(sd), TraceNotOne);
}

TEST_CASE("density operator invariants on random inputs") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const DensityOperator rho = gap::test::random_density(1 + static_cast<Index>(seed % 7), seed);
    CHECK(rho.probabilities().minCoeff() >= 0.0);
    CHECK(std::abs(rho.probabilities().sum() - 1.0) <= 1e-10);
    CHECK(trace_norm(rho.matrix()) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("trace_norm") {
  CHECK(trace_norm(diag({0.5, -0.5})) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(trace_norm(diag({1, 0}) - diag({0, 1})) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(trace_norm(ComplexMatrix::Zero(3, 3)) == 0.0);

  // Non-Hermitian input goes through M*M: singular values of [[0,2],[0,0]] are (2, 0).
  ComplexMatrix nilpotent(2, 2);
  nilpotent << 0, 2, 0, 0;
  CHECK(trace_norm(nilpotent) == doctest::Approx(2.0).epsilon(1e-12));

  // Compare against an SVD for a random complex matrix.
  RandomStream stream(5, 5);
  ComplexMatrix a(5, 5);
  for (Index i = 0; i < 5; ++i)
    for (Index j = 0; j < 5; ++j) a(i, j) = sample_complex_gaussian(stream, 1.0);
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  CHECK(trace_norm(a) == doctest::Approx(svd.singularValues().sum()).epsilon(1e-10));
}

TEST_CASE("trace distance between density operators lies in [0, 2]") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const DensityOperator a = gap::test::random_density(4, seed);
    const DensityOperator b = gap::test::random_density(4, seed + 1000);
    const double d = trace_norm(a.matrix() - b.matrix());
    CHECK(d >= 0.0);
    CHECK(d <= 2.0 + 1e-12);
    CHECK(trace_norm(a.matrix() - a.matrix()) == 0.0);
  }
}

TEST_CASE("support_restriction") {
  const DensityOperator half = DensityOperator::from_matrix(diag({0.5, 0.5, 0.0}));
  const SupportRestriction s = support_restriction(half, 1e-12);
  CHECK(s.rank() == 2);
  CHECK(s.eigenvalues(0) == 0.5);
  CHECK(s.eigenvalues(1) == 0.5);

  StateVector phi(3);
  phi << Complex(1, 1), Complex(0, -2), 0.5;
  CHECK(support_restriction(pure_state(phi), 1e-12).rank() == 1);

  const double tiny = 1e-15;
  const DensityOperator nearly_pure = diagonal_density((RealVector(2) << 1.0 - tiny, tiny).finished());
  CHECK(support_restriction(nearly_pure, 1e-12).rank() == 1);

  CHECK_THROWS_AS(support_restriction(maximally_mixed(4), 0.3), EmptySupport);
  CHECK_THROWS(support_restriction(half, 1.0));
}

TEST_CASE("support_restriction keeps nearly all weight") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const DensityOperator rho = gap::test::random_density(6, seed);
    for (double cutoff : {1e-12, 1e-3, 0.05}) {
      const SupportRestriction s = support_restriction(rho, cutoff);
      CHECK(s.eigenvalues.sum() >= 1.0 - 6 * cutoff);
      CHECK(s.eigenvalues.minCoeff() > cutoff);
    }
  }
}
