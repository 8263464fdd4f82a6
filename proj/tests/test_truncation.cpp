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
#include "gap/truncation.hpp"

using namespace gap;

TEST_CASE("geometric sequence terms") {
  const auto seq = EigenvalueSequence::geometric(0.5);
  CHECK(seq.term(1) == 0.5);
  CHECK(seq.term(3) == 0.125);
  CHECK(seq.tail_bound(0) == 1.0);
  CHECK(seq.tail_bound(4) == 0.0625);
  CHECK(seq.total == 1.0);
}

TEST_CASE("smallest truncation meeting the tail bound") {
  const auto seq = EigenvalueSequence::geometric(0.5);
  const auto t = truncate(seq, 1e-6);
  CHECK(t.size() == 20);
  CHECK(t.achieved_tail == std::ldexp(1.0, -20));
  CHECK(truncate(seq, 0.5).size() == 1);
  // Minimality: one fewer term would miss the bound.
  CHECK(seq.tail_bound(19) > 1e-6);
}

TEST_CASE("truncated spec keeps the leading terms") {
  const auto t = truncate(EigenvalueSequence::geometric(0.5), 1e-6);
  CHECK(t.spec.standard_basis());
  CHECK(t.spec.mean.isZero());
  CHECK(t.spec.trace() == doctest::Approx(1.0 - t.achieved_tail).epsilon(1e-15));
  for (Index n = 1; n < t.size(); ++n)
    CHECK(t.spec.covariance.eigenvalues(n) ==
          doctest::Approx(0.5 * t.spec.covariance.eigenvalues(n - 1)));
}

TEST_CASE("thermal oscillator truncation") {
  const auto seq = EigenvalueSequence::thermal_oscillator(1.0);
  CHECK(seq.term(1) == doctest::Approx(1.0 - std::exp(-1.0)));
  const auto t = truncate(seq, 1e-8);
  CHECK(t.size() == 19);
  CHECK(t.achieved_tail <= 1e-8);
  CHECK(seq.tail_bound(18) > 1e-8);
  // Direct summation of the next 10N terms.
  double tail = 0.0;
  for (std::int64_t n = 20; n <= 20 + 10 * 19; ++n) tail += seq.term(n);
  CHECK(tail < 1e-8);
  CHECK(tail == doctest::Approx(t.achieved_tail).epsilon(1e-9));
}

TEST_CASE("truncation errors") {
  const auto slow = EigenvalueSequence::geometric(1.0 - 1e-9);
  CHECK_THROWS_AS(truncate(slow, 1e-12, 1000), TailBoundTooLoose);
  CHECK_THROWS_AS(truncate(EigenvalueSequence::geometric(0.5), 0.0), Error);
  CHECK_THROWS_AS(truncate(EigenvalueSequence::geometric(0.5), 1.0), Error);
}
