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

#include <cstdint>
#include <functional>

#include "gap/gaussian.hpp"

namespace gap {

/// A trace-class spectrum p_1, p_2, ... known through its terms, a certified
/// bound on the tail Σ_{n>N} p_n, and its total.
///
/// tail_bound must be nonincreasing in N, tend to zero, and dominate the
/// true tail.
struct EigenvalueSequence {
  std::function<double(std::int64_t)> term;        // n >= 1
  std::function<double(std::int64_t)> tail_bound;  // N >= 0
  double total = 0.0;

  /// p_n = (1 - r) r^{n-1}; total 1, tail r^N exactly. r = 1/2 gives 2^{-n}.
  static EigenvalueSequence geometric(double ratio);
  /// Truncated harmonic oscillator at inverse temperature β: p_n ∝ e^{-β(n-1)}.
  static EigenvalueSequence thermal_oscillator(double beta);
};

struct Truncation {
  GaussianMeasureSpec spec;  // mean zero, diagonal in the standard basis
  double achieved_tail = 0.0;

  Index size() const noexcept { return spec.dim(); }
};

/// Smallest N with tail_bound(N) <= epsilon, as an N-dimensional mean-zero
/// Gaussian with covariance diag(p_1..p_N).
///
/// Requires 0 < epsilon < total. Throws TailBoundTooLoose when no N up to
/// `cap` qualifies.
Truncation truncate(const EigenvalueSequence& seq, double epsilon, std::int64_t cap = 1'000'000);

}  // namespace gap
