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

#include "gap/gap_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gap/errors.hpp"

namespace gap {

namespace {

std::vector<double> cumulative_of(const RealVector& p) {
  std::vector<double> cumulative(static_cast<size_t>(p.size()));
  double running = 0.0;
  for (Index n = 0; n < p.size(); ++n) {
    running += p(n);
    cumulative[static_cast<size_t>(n)] = running;
  }
  return cumulative;
}

}  // namespace

GapMixtureSampler::GapMixtureSampler(const DensityOperator& rho) : dim_(rho.dim()) {
  const SpectralDecomposition sd = sampling_spectrum(rho);
  probabilities_ = sd.eigenvalues;
  basis_ = sd.eigenvectors;
  cumulative_ = cumulative_of(probabilities_);
}

GapMixtureSampler::GapMixtureSampler(const GaussianMeasureSpec& spec) : dim_(spec.dim()) {
  spec.validate();
  if (spec.mean.cwiseAbs().maxCoeff() != 0.0) throw NonzeroMean();
  const double total = spec.trace();
  if (!(total > 0.0)) throw EmptySupport();
  probabilities_ = spec.covariance.eigenvalues / total;
  basis_ = spec.covariance.eigenvectors;
  cumulative_ = cumulative_of(probabilities_);
}

StateVector GapMixtureSampler::operator()(RandomStream& stream) const {
  const double u = stream.uniform() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  Index chosen = static_cast<Index>(it - cumulative_.begin());
  // Guard against rounding at the top end and never pick a zero weight.
  chosen = std::min(chosen, dim_ - 1);
  while (probabilities_(chosen) == 0.0 && chosen > 0) --chosen;

  StateVector coords(dim_);
  for (Index n = 0; n < dim_; ++n) {
    const double p = probabilities_(n);
    if (n == chosen) {
      const double radius_sq = p * (stream.exponential() + stream.exponential());
      const double angle = 2.0 * std::numbers::pi * stream.uniform();
      coords(n) = std::polar(std::sqrt(radius_sq), angle);
    } else {
      coords(n) = sample_complex_gaussian(stream, p);
    }
  }
  const StateVector psi = basis_.cols() == 0 ? coords : StateVector(basis_ * coords);
  return project(psi);
}

StateVector sample_GAP_mixture(const DensityOperator& rho, RandomStream& stream) {
  return GapMixtureSampler(rho)(stream);
}

WeightedSample sample_GAP_weighted(const GaussianMeasureSpec& spec, RandomStream& stream) {
  const StateVector psi = sample_G(spec, stream);
  const double norm = psi.norm();
  if (!(norm >= 1e-300)) {
    StateVector fallback = StateVector::Zero(spec.dim());
    if (spec.standard_basis()) fallback(0) = 1.0;
    else fallback = spec.covariance.eigenvectors.col(0);
    return {fallback, 0.0};
  }
  return {psi / norm, psi.squaredNorm()};
}

std::vector<WeightedSample> sample_GAP_reweight(const DensityOperator& rho,
                                                std::uint64_t seed, Index batch_size) {
  if (batch_size < 1) throw Error("batch_size must be >= 1");
  const GaussianMeasureSpec spec = GaussianMeasureSpec::centered(rho);
  std::vector<WeightedSample> out;
  out.reserve(static_cast<size_t>(batch_size));
  for (Index i = 0; i < batch_size; ++i) {
    RandomStream stream(seed, static_cast<std::uint64_t>(i));
    out.push_back(sample_GAP_weighted(spec, stream));
  }
  return out;
}

}  // namespace gap
