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

// Exact and importance-weighted samplers for GAP(ρ) = P_* A G(ρ).
//
// The exact sampler uses that the ‖ψ‖²-adjusted Gaussian is a mixture:
//
//   ‖ψ‖² G(ρ)(dψ) = Σ_n p_n ν_n(dψ),
//
// where ν_n replaces coordinate n (in the eigenbasis of ρ) by its
// |z|²-size-biased version. The biased coordinate has a Gamma(2, p_n)
// squared radius and a uniform phase; all other coordinates keep their
// CN(0, p_m) law. Projecting a ν_n draw onto the sphere gives a GAP draw.

#include <vector>

#include "gap/gaussian.hpp"

namespace gap {

/// Precomputes the index-selection table for repeated GAP(ρ) draws.
class GapMixtureSampler {
 public:
  explicit GapMixtureSampler(const DensityOperator& rho);
  /// Mean-zero spec; the covariance is normalized to unit trace.
  /// Throws NonzeroMean when spec.mean != 0.
  explicit GapMixtureSampler(const GaussianMeasureSpec& spec);

  Index dim() const noexcept { return dim_; }

  /// Stream layout: one uniform for the mixture index, then the coordinates
  /// in eigenbasis order (three uniforms for the biased one, two for each
  /// other coordinate with p > 0, none for p = 0).
  StateVector operator()(RandomStream& stream) const;

 private:
  Index dim_;
  RealVector probabilities_;
  ComplexMatrix basis_;  // empty means standard basis
  std::vector<double> cumulative_;
};

StateVector sample_GAP_mixture(const DensityOperator& rho, RandomStream& stream);

struct WeightedSample {
  StateVector vector;  // on the unit sphere
  double weight = 0.0;
};

/// One G(ρ) draw, projected, carrying importance weight ‖ψ‖². A zero draw
/// (probability zero) gets weight 0 and the first eigenvector.
WeightedSample sample_GAP_weighted(const GaussianMeasureSpec& spec, RandomStream& stream);

/// batch_size weighted draws; draw i uses sub-stream (seed, i).
std::vector<WeightedSample> sample_GAP_reweight(const DensityOperator& rho,
                                                std::uint64_t seed, Index batch_size);

}  // namespace gap
