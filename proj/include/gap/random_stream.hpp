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

#include <array>
#include <cstdint>

namespace gap {

/// Philox4x32-10 block function (Salmon et al., counter-based RNG).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Reproducible sub-stream of uniforms identified by (seed, stream index).
///
/// The seed is the Philox key and the stream index occupies the upper half of
/// the counter; the lower half counts blocks within the stream. Distinct
/// indices therefore never share a counter value, and the draws of stream i
/// depend on nothing but (seed, i).
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream) noexcept
      : seed_(seed), stream_(stream) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::uint64_t next_u64() noexcept;

  /// Uniform on the open interval (0, 1), 53-bit resolution. Never returns
  /// 0 or 1, so log(u) and log(1 - u) are always finite.
  double uniform() noexcept;

  /// Mean-1 exponential by inverse CDF.
  double exponential() noexcept;

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int available_ = 0;
};

/// Derives an independent seed for a named experiment leg, so that legs of
/// one run do not reuse each other's (seed, index) pairs.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t leg) noexcept;

}  // namespace gap
