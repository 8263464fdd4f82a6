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
#include <set>

#include "gap/random_stream.hpp"

using gap::RandomStream;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  // Reference values from the Random123 distribution's kat_vectors.
  CHECK(gap::philox4x32({0, 0, 0, 0}, {0, 0}) ==
        std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(gap::philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                        {0xffffffffu, 0xffffffffu}) ==
        std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(gap::philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                        {0xa4093822u, 0x299f31d0u}) ==
        std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are reproducible from (seed, index)") {
  RandomStream a(42, 7), b(42, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct indices and seeds give distinct streams") {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t s = 0; s < 50; ++s)
    for (std::uint64_t i = 0; i < 50; ++i) firsts.insert(RandomStream(s, i).next_u64());
  CHECK(firsts.size() == 2500);
}

TEST_CASE("uniforms stay inside the open unit interval") {
  RandomStream s(1, 1);
  double sum = 0.0;
  constexpr int kN = 200'000;
  for (int i = 0; i < kN; ++i) {
    const double u = s.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  // mean of U(0,1): 1/2 with SE sqrt(1/12/N) ≈ 6.5e-4.
  CHECK(std::abs(sum / kN - 0.5) < 4 * std::sqrt(1.0 / 12.0 / kN));
}

TEST_CASE("adjacent streams are uncorrelated") {
  constexpr int kN = 100'000;
  double sxy = 0.0;
  for (int i = 0; i < kN; ++i) {
    RandomStream a(3, static_cast<std::uint64_t>(2 * i)), b(3, static_cast<std::uint64_t>(2 * i + 1));
    sxy += (a.uniform() - 0.5) * (b.uniform() - 0.5);
  }
  // Var of the product is 1/144, so the normalized correlation has SE 1/sqrt(N).
  CHECK(std::abs(sxy / kN * 12.0) < 4.0 / std::sqrt(kN));
}

TEST_CASE("exponential draws have mean one") {
  RandomStream s(9, 0);
  constexpr int kN = 100'000;
  double sum = 0.0;
  for (int i = 0; i < kN; ++i) sum += s.exponential();
  CHECK(std::abs(sum / kN - 1.0) < 4.0 / std::sqrt(kN));
}

TEST_CASE("derive_seed separates legs") {
  std::set<std::uint64_t> seeds;
  for (std::uint64_t leg = 0; leg < 1000; ++leg) seeds.insert(gap::derive_seed(42, leg));
  CHECK(seeds.size() == 1000);
  CHECK(gap::derive_seed(42, 3) == gap::derive_seed(42, 3));
}
