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

#include "gap/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gap/errors.hpp"

namespace gap {

EigenvalueSequence EigenvalueSequence::geometric(double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw Error("geometric ratio must lie in (0, 1)");
  EigenvalueSequence seq;
  seq.term = [ratio](std::int64_t n) {
    return (1.0 - ratio) * std::pow(ratio, static_cast<double>(n - 1));
  };
  seq.tail_bound = [ratio](std::int64_t n) { return std::pow(ratio, static_cast<double>(n)); };
  seq.total = 1.0;
  return seq;
}

EigenvalueSequence EigenvalueSequence::thermal_oscillator(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw Error("beta must be finite and > 0");
  return geometric(std::exp(-beta));
}

Truncation truncate(const EigenvalueSequence& seq, double epsilon, std::int64_t cap) {
  if (!(epsilon > 0.0)) throw Error("epsilon must be > 0");
  if (!(epsilon < seq.total)) throw Error("epsilon must be below the total trace");
  if (cap < 1) throw Error("truncation cap must be >= 1");

  // Exponential search then bisection; tail_bound is nonincreasing.
  std::int64_t hi = 1;
  while (seq.tail_bound(hi) > epsilon) {
    if (hi >= cap) {
      throw TailBoundTooLoose("tail bound stays above " + std::to_string(epsilon) +
                              " up to N = " + std::to_string(cap));
    }
    hi = std::min(cap, hi * 2);
  }
  std::int64_t lo = hi / 2;  // tail_bound(lo) > epsilon, or lo == 0
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (seq.tail_bound(mid) <= epsilon) hi = mid;
    else lo = mid;
  }

  Truncation out;
  const Index n = static_cast<Index>(hi);
  out.spec.mean = StateVector::Zero(n);
  out.spec.covariance.eigenvalues.resize(n);
  for (Index k = 0; k < n; ++k) out.spec.covariance.eigenvalues(k) = seq.term(k + 1);
  out.achieved_tail = seq.tail_bound(hi);
  return out;
}

}  // namespace gap
