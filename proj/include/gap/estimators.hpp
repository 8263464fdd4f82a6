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

// Streaming estimators for the mean, covariance and density operator of a
// measure on C^d, plus the empirical characteristic function.
//
// All estimators normalize by the total weight (1/n for unweighted batches),
// so weighted batches give self-normalized importance estimates.

#include <optional>
#include <vector>

#include "gap/batch.hpp"
#include "gap/gap_sampler.hpp"
#include "gap/json_io.hpp"

namespace gap {

/// Mergeable running sums: weighted Welford mean and centered co-moment, and
/// the uncentered second moment Σ w ψψ*.
class Accumulator {
 public:
  explicit Accumulator(Index dim);

  void add(const StateVector& psi, double weight = 1.0);
  void add(const WeightedSample& s) { add(s.vector, s.weight); }
  /// Chan et al. pairwise combination.
  void merge(const Accumulator& other);

  Index dim() const noexcept { return mean_.size(); }
  Index count() const noexcept { return n_; }
  double weight_sum() const noexcept { return w_; }
  double weight_sq_sum() const noexcept { return w2_; }
  /// max | ‖ψ‖ − 1 | over everything added.
  double max_norm_deviation() const noexcept { return max_norm_dev_; }
  /// Σ w ‖ψ‖² / Σ w.
  double mean_sq_norm() const;

  const StateVector& running_mean() const noexcept { return mean_; }
  const ComplexMatrix& centered_sum() const noexcept { return comoment_; }
  const ComplexMatrix& uncentered_sum() const noexcept { return second_; }

 private:
  Index n_ = 0;
  double w_ = 0.0;
  double w2_ = 0.0;
  double sq_norm_sum_ = 0.0;
  double max_norm_dev_ = 0.0;
  StateVector mean_;
  ComplexMatrix comoment_;
  ComplexMatrix second_;
};

/// Accumulates fixed-size shards (in parallel) and merges them in shard
/// order, so the result does not depend on the thread count.
Accumulator accumulate(const SampleBatch& batch, unsigned threads = 0);

/// Throws EmptyBatch when nothing carries weight.
StateVector empirical_mean(const Accumulator& acc);
/// (1/W) Σ w (ψ − ψ̂)(ψ − ψ̂)*; needs n >= 2.
ComplexMatrix empirical_covariance(const Accumulator& acc);
/// (1/W) Σ w ψψ* without a sphere check.
ComplexMatrix empirical_second_moment(const Accumulator& acc);
/// Same as the second moment, but every sample must be a unit vector within
/// 1e-8 (NotOnSphere otherwise).
ComplexMatrix empirical_density_operator(const Accumulator& acc);

/// (1/W) Σ w exp(i Re⟨ψ_i, ψ⟩).
Complex empirical_char_fn(const SampleBatch& batch, const StateVector& psi);

/// Plug-in mean and standard error of a scalar sample, self-normalized when
/// weights are given: se = sqrt(Σ w²(x − x̄)²) / Σ w.
struct ScalarEstimate {
  double estimate = 0.0;
  double se = 0.0;
};
ScalarEstimate mean_with_se(const RealVector& values, const RealVector& weights = {});

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a − F_b|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);
/// One-sample KS statistic against the uniform law on [lo, hi].
double ks_uniform(std::vector<double> values, double lo, double hi);
/// Asymptotic critical value c(α) sqrt((n + m)/(n m)), c(α) = sqrt(−ln(α/2)/2).
double ks_critical_value(double alpha, Index n, Index m);
/// One-sample version: c(α)/sqrt(n).
double ks_critical_value(double alpha, Index n);

struct EstimatorReport {
  Index n = 0;
  MeasureKind measure = MeasureKind::G;
  StateVector mean_hat;
  std::optional<ComplexMatrix> cov_hat;  // needs n >= 2
  ComplexMatrix rho_hat;                 // second moment; a density operator for GAP batches
  double se_scale = 0.0;                 // 1/sqrt(n)
  ScalarEstimate mean_sq_norm;
  std::optional<double> mean_weight;
  std::optional<double> trace_distance_to_ref;
};

/// GAP batches must lie on the sphere (NotOnSphere otherwise).
EstimatorReport estimate(const SampleBatch& batch, const DensityOperator* reference = nullptr);
Json report_to_json(const EstimatorReport& report);

}  // namespace gap
