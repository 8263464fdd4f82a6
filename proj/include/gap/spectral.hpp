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

#pragma once

// Finite-dimensional Hermitian linear algebra: validation, a cyclic Jacobi
// eigensolver, density operators, thermal states, the trace norm and
// support restriction.

#include <Eigen/Dense>
#include <complex>

namespace gap {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// A square complex matrix that is exactly equal to its adjoint.
///
/// Only obtainable through validate_hermitian(), which symmetrizes the input
/// after checking that it was Hermitian up to a tolerance.
class HermitianOperator {
 public:
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

 private:
  explicit HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {}
  friend HermitianOperator validate_hermitian(const ComplexMatrix&, double);

  ComplexMatrix m_;
};

/// Returns (M + M*)/2 when max |M_ij - conj(M_ji)| <= tol.
/// Throws AsymmetryExceeded, NonFinite, or DimMismatch (non-square input).
HermitianOperator validate_hermitian(const ComplexMatrix& raw, double tol = 1e-9);

/// Eigenvalues sorted descending, eigenvectors stored as orthonormal columns.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  Index dim() const noexcept { return eigenvalues.size(); }
  ComplexMatrix reconstruct() const;
};

struct JacobiOptions {
  /// Stop once the off-diagonal Frobenius norm drops below
  /// tolerance * ||A||_F.
  double tolerance = 1e-13;
  int max_sweeps = 100;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Each eigenvector's phase is fixed so that its largest-magnitude component
/// is real and positive (first such index on ties). Throws ConvergenceFailure
/// when max_sweeps is exhausted.
SpectralDecomposition eigh(const HermitianOperator& h, const JacobiOptions& opts = {});

/// Positive unit-trace Hermitian operator held in spectral form.
class DensityOperator {
 public:
  /// Negative eigenvalues of magnitude <= kClampTolerance are set to zero
  /// and the trace renormalized; larger ones raise NotPositive. A trace
  /// further than trace_tolerance from 1 raises TraceNotOne.
  static DensityOperator from_spectral(SpectralDecomposition sd,
                                       double trace_tolerance = 1e-8);
  static DensityOperator from_matrix(const ComplexMatrix& m,
                                     double hermitian_tol = 1e-9,
                                     double trace_tolerance = 1e-8);

  const SpectralDecomposition& spectral() const noexcept { return sd_; }
  const RealVector& probabilities() const noexcept { return sd_.eigenvalues; }
  const ComplexMatrix& eigenvectors() const noexcept { return sd_.eigenvectors; }
  /// Σ p_n |φ_n><φ_n|, rebuilt from the stored spectral data.
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  Index dim() const noexcept { return sd_.dim(); }

  static constexpr double kClampTolerance = 1e-10;

 private:
  explicit DensityOperator(SpectralDecomposition sd);

  SpectralDecomposition sd_;
  ComplexMatrix matrix_;
};

DensityOperator maximally_mixed(Index dim);
DensityOperator pure_state(const StateVector& phi);
/// Diagonal density operator in the standard basis.
DensityOperator diagonal_density(const RealVector& probabilities);

/// (1 - t) a + t b, re-decomposed spectrally.
DensityOperator convex_mix(const DensityOperator& a, const DensityOperator& b, double t);

/// e^{-βH} / tr e^{-βH} through the spectral decomposition of H with a
/// log-sum-exp shift, so large β neither overflows nor yields NaN.
DensityOperator thermal_state(const HermitianOperator& h, double beta);

/// tr sqrt(M* M). Hermitian inputs (the usual case: differences of density
/// operators) are evaluated as Σ|λ_n|, which avoids the square-root loss of
/// accuracy near zero singular values.
double trace_norm(const ComplexMatrix& m);

/// Eigenpairs of ρ with p_n above a cutoff.
struct SupportRestriction {
  Index ambient_dim = 0;
  ComplexMatrix basis;       // ambient_dim x rank, orthonormal columns
  RealVector eigenvalues;    // strictly positive, descending

  Index rank() const noexcept { return eigenvalues.size(); }
};

inline constexpr double kSupportCutoff = 1e-12;

/// Throws EmptySupport when nothing survives the cutoff.
SupportRestriction support_restriction(const DensityOperator& rho,
                                       double cutoff = kSupportCutoff);

/// Spectrum of ρ with eigenvalues at or below the cutoff set to zero.
/// Samplers use this so that rank-deficient inputs draw exactly on the support.
SpectralDecomposition sampling_spectrum(const DensityOperator& rho,
                                        double cutoff = kSupportCutoff);

/// Checks entries for NaN/inf; throws NonFinite.
void require_finite(const ComplexMatrix& m);

}  // namespace gap
