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

// Complex Gaussian measures G on C^d: sampling through the eigenbasis of the
// covariance, closed-form densities, and the characteristic function.

#include "gap/random_stream.hpp"
#include "gap/spectral.hpp"

namespace gap {

/// Mean vector plus the spectral data of a positive covariance operator.
///
/// An eigenvector matrix with zero columns stands for the standard basis,
/// which keeps long truncated spectra cheap to hold.
struct GaussianMeasureSpec {
  StateVector mean;
  SpectralDecomposition covariance;

  Index dim() const noexcept { return mean.size(); }
  bool standard_basis() const noexcept { return covariance.eigenvectors.cols() == 0; }
  double trace() const { return covariance.eigenvalues.sum(); }
  /// ⟨ψ, C ψ⟩.
  double quadratic_form(const StateVector& psi) const;

  /// Throws DimMismatch or NotPositive.
  void validate() const;

  /// Mean-zero Gaussian with covariance ρ, i.e. G(ρ).
  static GaussianMeasureSpec centered(const DensityOperator& rho);
};

/// z = (ξ₁ + iξ₂)·sqrt(variance/2) with ξ₁, ξ₂ independent standard normals
/// from the Box-Muller transform of two uniforms. variance = 0 gives exactly 0
/// without touching the stream.
Complex sample_complex_gaussian(RandomStream& stream, double variance);

/// ψ₀ + Σ Z_n φ_n with Z_n ~ CN(0, p_n). Coordinates with p_n = 0 contribute
/// exactly zero and consume no randomness.
StateVector sample_G(const GaussianMeasureSpec& spec, RandomStream& stream);

/// log of 1/(π^k Π p_n) · exp(-Σ |⟨φ_n,ψ⟩|²/p_n) on the support of ρ.
/// Throws OffSupport when ψ has a component of norm > 1e-8 outside it.
double log_g_density(const SupportRestriction& support, const StateVector& psi);
double g_density(const SupportRestriction& support, const StateVector& psi);
/// ‖ψ‖² · g_density(ψ).
double ga_density(const SupportRestriction& support, const StateVector& psi);

/// ψ/‖ψ‖; throws ZeroVector when ‖ψ‖ < 1e-300.
StateVector project(const StateVector& psi);

/// ∫ exp(i Re⟨φ,ψ⟩) G(dφ) = exp(i Re⟨ψ₀,ψ⟩ − ⟨ψ,Cψ⟩/4).
///
/// The quarter comes from the normalization of complex Gaussians used
/// throughout (real and imaginary parts each carry half the variance), under
/// which Re⟨φ,ψ⟩ is a real Gaussian with variance ⟨ψ,Cψ⟩/2.
Complex char_fn_gaussian(const GaussianMeasureSpec& spec, const StateVector& psi);

}  // namespace gap
