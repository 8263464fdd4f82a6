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

#include "gap/gaussian.hpp"

#include <cmath>
#include <numbers>

#include "gap/errors.hpp"

namespace gap {

double GaussianMeasureSpec::quadratic_form(const StateVector& psi) const {
  if (psi.size() != dim()) throw DimMismatch(dim(), psi.size());
  const RealVector& p = covariance.eigenvalues;
  double q = 0.0;
  if (standard_basis()) {
    for (Index n = 0; n < p.size(); ++n) q += p(n) * std::norm(psi(n));
  } else {
    const StateVector coords = covariance.eigenvectors.adjoint() * psi;
    for (Index n = 0; n < p.size(); ++n) q += p(n) * std::norm(coords(n));
  }
  return q;
}

void GaussianMeasureSpec::validate() const {
  if (covariance.eigenvalues.size() != dim()) throw DimMismatch(dim(), covariance.eigenvalues.size());
  if (!standard_basis() &&
      (covariance.eigenvectors.rows() != dim() || covariance.eigenvectors.cols() != dim()))
    throw DimMismatch(dim(), covariance.eigenvectors.cols());
  if (!mean.allFinite() || !covariance.eigenvalues.allFinite()) throw NonFinite();
  for (Index n = 0; n < covariance.eigenvalues.size(); ++n)
    if (covariance.eigenvalues(n) < 0.0) throw NotPositive(covariance.eigenvalues(n));
}

GaussianMeasureSpec GaussianMeasureSpec::centered(const DensityOperator& rho) {
  return {StateVector::Zero(rho.dim()), sampling_spectrum(rho)};
}

Complex sample_complex_gaussian(RandomStream& stream, double variance) {
  if (variance == 0.0) return 0.0;
  const double u1 = stream.uniform();
  const double u2 = stream.uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  const double xi1 = radius * std::cos(angle);
  const double xi2 = radius * std::sin(angle);
  return Complex(xi1, xi2) * std::sqrt(variance / 2.0);
}

StateVector sample_G(const GaussianMeasureSpec& spec, RandomStream& stream) {
  const RealVector& p = spec.covariance.eigenvalues;
  StateVector coords(p.size());
  for (Index n = 0; n < p.size(); ++n) coords(n) = sample_complex_gaussian(stream, p(n));
  if (spec.standard_basis()) return spec.mean + coords;
  return spec.mean + spec.covariance.eigenvectors * coords;
}

double log_g_density(const SupportRestriction& support, const StateVector& psi) {
  if (psi.size() != support.ambient_dim) throw DimMismatch(support.ambient_dim, psi.size());
  const StateVector coords = support.basis.adjoint() * psi;
  const double residual = (psi - support.basis * coords).norm();
  if (residual > 1e-8) throw OffSupport(residual);
  double log_density = -static_cast<double>(support.rank()) * std::log(std::numbers::pi);
  for (Index n = 0; n < support.rank(); ++n) {
    const double p = support.eigenvalues(n);
    log_density -= std::log(p) + std::norm(coords(n)) / p;
  }
  return log_density;
}

double g_density(const SupportRestriction& support, const StateVector& psi) {
  return std::exp(log_g_density(support, psi));
}

double ga_density(const SupportRestriction& support, const StateVector& psi) {
  const double sq = psi.squaredNorm();
  if (sq == 0.0) {
    if (psi.size() != support.ambient_dim) throw DimMismatch(support.ambient_dim, psi.size());
    return 0.0;
  }
  return sq * g_density(support, psi);
}

StateVector project(const StateVector& psi) {
  const double norm = psi.norm();
  if (!(norm >= 1e-300)) throw ZeroVector();
  return psi / norm;
}

Complex char_fn_gaussian(const GaussianMeasureSpec& spec, const StateVector& psi) {
  if (psi.size() != spec.dim()) throw DimMismatch(spec.dim(), psi.size());
  const double phase = spec.mean.dot(psi).real();  // Eigen's dot conjugates the left side
  const double decay = spec.quadratic_form(psi) / 4.0;
  return std::exp(Complex(-decay, phase));
}

}  // namespace gap
