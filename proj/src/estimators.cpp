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

#include "gap/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gap/errors.hpp"

namespace gap {

namespace {

constexpr Index kShard = 4096;
constexpr double kSphereTolerance = 1e-8;

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return (m + m.adjoint()) * 0.5; }

}  // namespace

Accumulator::Accumulator(Index dim)
    : mean_(StateVector::Zero(dim)),
      comoment_(ComplexMatrix::Zero(dim, dim)),
      second_(ComplexMatrix::Zero(dim, dim)) {}

void Accumulator::add(const StateVector& psi, double weight) {
  if (psi.size() != dim()) throw DimMismatch(dim(), psi.size());
  if (!(weight >= 0.0) || !std::isfinite(weight)) throw Error("sample weight must be finite and >= 0");
  ++n_;
  const double sq = psi.squaredNorm();
  max_norm_dev_ = std::max(max_norm_dev_, std::abs(std::sqrt(sq) - 1.0));
  if (weight == 0.0) return;
  w_ += weight;
  w2_ += weight * weight;
  sq_norm_sum_ += weight * sq;
  const StateVector delta = psi - mean_;
  mean_ += delta * (weight / w_);
  comoment_.noalias() += (weight * (1.0 - weight / w_)) * delta * delta.adjoint();
  second_.noalias() += weight * psi * psi.adjoint();
}

void Accumulator::merge(const Accumulator& other) {
  if (other.dim() != dim()) throw DimMismatch(dim(), other.dim());
  n_ += other.n_;
  max_norm_dev_ = std::max(max_norm_dev_, other.max_norm_dev_);
  if (other.w_ == 0.0) return;
  if (w_ == 0.0) {
    w_ = other.w_;
    w2_ = other.w2_;
    sq_norm_sum_ = other.sq_norm_sum_;
    mean_ = other.mean_;
    comoment_ = other.comoment_;
    second_ = other.second_;
    return;
  }
  const double total = w_ + other.w_;
  const StateVector delta = other.mean_ - mean_;
  comoment_ += other.comoment_;
  comoment_.noalias() += (w_ * other.w_ / total) * delta * delta.adjoint();
  mean_ += delta * (other.w_ / total);
  second_ += other.second_;
  sq_norm_sum_ += other.sq_norm_sum_;
  w2_ += other.w2_;
  w_ = total;
}

double Accumulator::mean_sq_norm() const {
  if (w_ == 0.0) throw EmptyBatch();
  return sq_norm_sum_ / w_;
}

Accumulator accumulate(const SampleBatch& batch, unsigned threads) {
  const Index n = batch.size();
  const Index shards = (n + kShard - 1) / kShard;
  std::vector<Accumulator> parts(static_cast<size_t>(shards), Accumulator(batch.dim()));
  parallel_for_index(
      shards, threads,
      [&](Index s) {
        Accumulator& acc = parts[static_cast<size_t>(s)];
        const Index end = std::min(n, (s + 1) * kShard);
        for (Index i = s * kShard; i < end; ++i) acc.add(batch.samples.col(i), batch.weight(i));
      },
      1);
  Accumulator total(batch.dim());
  for (const auto& part : parts) total.merge(part);
  return total;
}

StateVector empirical_mean(const Accumulator& acc) {
  if (acc.count() < 1 || acc.weight_sum() == 0.0) throw EmptyBatch();
  return acc.running_mean();
}

ComplexMatrix empirical_covariance(const Accumulator& acc) {
  if (acc.count() < 2 || acc.weight_sum() == 0.0) throw EmptyBatch();
  return hermitian_part(acc.centered_sum() / acc.weight_sum());
}

ComplexMatrix empirical_second_moment(const Accumulator& acc) {
  if (acc.count() < 1 || acc.weight_sum() == 0.0) throw EmptyBatch();
  return hermitian_part(acc.uncentered_sum() / acc.weight_sum());
}

ComplexMatrix empirical_density_operator(const Accumulator& acc) {
  if (acc.max_norm_deviation() > kSphereTolerance)
    throw NotOnSphere(1.0 + acc.max_norm_deviation());
  return empirical_second_moment(acc);
}

Complex empirical_char_fn(const SampleBatch& batch, const StateVector& psi) {
  if (batch.size() < 1) throw EmptyBatch();
  if (psi.size() != batch.dim()) throw DimMismatch(batch.dim(), psi.size());
  const StateVector pairings = batch.samples.adjoint() * psi;  // ⟨ψ_i, ψ⟩
  Complex sum = 0.0;
  double weights = 0.0;
  for (Index i = 0; i < batch.size(); ++i) {
    const double w = batch.weight(i);
    sum += w * std::exp(Complex(0.0, pairings(i).real()));
    weights += w;
  }
  if (weights == 0.0) throw EmptyBatch();
  return sum / weights;
}

ScalarEstimate mean_with_se(const RealVector& values, const RealVector& weights) {
  const Index n = values.size();
  if (n < 1) throw EmptyBatch();
  if (weights.size() != 0 && weights.size() != n) throw DimMismatch(n, weights.size());
  auto w = [&](Index i) { return weights.size() == 0 ? 1.0 : weights(i); };
  double total = 0.0;
  double sum = 0.0;
  for (Index i = 0; i < n; ++i) {
    total += w(i);
    sum += w(i) * values(i);
  }
  if (total == 0.0) throw EmptyBatch();
  const double mean = sum / total;
  double spread = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double d = values(i) - mean;
    spread += w(i) * w(i) * d * d;
  }
  return {mean, std::sqrt(spread) / total};
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw EmptyBatch();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_uniform(std::vector<double> values, double lo, double hi) {
  if (values.empty()) throw EmptyBatch();
  if (!(hi > lo)) throw Error("uniform KS needs hi > lo");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    const double cdf = std::clamp((values[i] - lo) / (hi - lo), 0.0, 1.0);
    d = std::max({d, static_cast<double>(i + 1) / n - cdf, cdf - static_cast<double>(i) / n});
  }
  return d;
}

double ks_critical_value(double alpha, Index n, Index m) {
  const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  return c * std::sqrt((nd + md) / (nd * md));
}

double ks_critical_value(double alpha, Index n) {
  return std::sqrt(-std::log(alpha / 2.0) / 2.0) / std::sqrt(static_cast<double>(n));
}

EstimatorReport estimate(const SampleBatch& batch, const DensityOperator* reference) {
  if (batch.size() < 1) throw EmptyBatch();
  const Accumulator acc = accumulate(batch);
  EstimatorReport r;
  r.n = batch.size();
  r.measure = batch.kind;
  r.mean_hat = empirical_mean(acc);
  if (acc.count() >= 2) r.cov_hat = empirical_covariance(acc);
  r.rho_hat = batch.kind == MeasureKind::G ? empirical_second_moment(acc)
                                           : empirical_density_operator(acc);
  r.se_scale = 1.0 / std::sqrt(static_cast<double>(r.n));
  r.mean_sq_norm = mean_with_se(batch.samples.colwise().squaredNorm().transpose(), batch.weights);
  if (batch.weighted()) r.mean_weight = batch.weights.mean();
  if (reference != nullptr) {
    if (reference->dim() != batch.dim()) throw DimMismatch(batch.dim(), reference->dim());
    r.trace_distance_to_ref = trace_norm(r.rho_hat - reference->matrix());
  }
  return r;
}

Json report_to_json(const EstimatorReport& r) {
  Json j{{"n", r.n},
         {"measure", std::string(measure_label(r.measure))},
         {"mean_hat", vector_to_json(r.mean_hat)},
         {"mean_norm", r.mean_hat.norm()},
         {"rho_hat", matrix_to_json(r.rho_hat)},
         {"se_scale", r.se_scale},
         {"mean_sq_norm", r.mean_sq_norm.estimate},
         {"mean_sq_norm_se", r.mean_sq_norm.se}};
  if (r.cov_hat) j["cov_hat"] = matrix_to_json(*r.cov_hat);
  if (r.mean_weight) j["mean_weight"] = *r.mean_weight;
  if (r.trace_distance_to_ref) j["trace_distance_to_ref"] = *r.trace_distance_to_ref;
  return j;
}

}  // namespace gap
