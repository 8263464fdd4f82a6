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

// Sample batches: parallel generation with per-sample streams and the
// on-disk batch format.
//
// Batch file: one header line
//   {"dim":d,"measure":"G"|"GAP"|"GA-weighted","n":N,"rho_file":path,"seed":s}
// followed by N lines of 2d comma-separated decimals (re, im interleaved),
// plus a trailing weight column for "GA-weighted".

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "gap/gaussian.hpp"

namespace gap {

enum class MeasureKind { G, GapMixture, GapReweight };

/// Header label: "G", "GAP", "GA-weighted".
std::string_view measure_label(MeasureKind kind) noexcept;
/// Accepts header labels and the CLI spellings "GAP-mixture", "GAP-reweight".
MeasureKind parse_measure(std::string_view text);

struct SampleBatch {
  MeasureKind kind = MeasureKind::G;
  std::uint64_t seed = 0;
  std::string rho_file;
  ComplexMatrix samples;  // dim x n, one sample per column
  RealVector weights;     // empty unless kind == GapReweight

  Index dim() const noexcept { return samples.rows(); }
  Index size() const noexcept { return samples.cols(); }
  bool weighted() const noexcept { return weights.size() > 0; }
  double weight(Index i) const { return weighted() ? weights(i) : 1.0; }
};

/// Calls fn(i) for i in [0, n), split over `threads` workers (0 = hardware
/// concurrency), each worker taking at least `grain` indices. fn must only
/// write state owned by index i.
template <class Fn>
void parallel_for_index(Index n, unsigned threads, Fn&& fn, Index grain = 1024) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const Index workers =
      std::min<Index>(static_cast<Index>(threads), std::max<Index>(n / std::max<Index>(grain, 1), 1));
  if (workers <= 1) {
    for (Index i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (Index w = 0; w < workers; ++w) {
    const Index begin = n * w / workers;
    const Index end = n * (w + 1) / workers;
    pool.emplace_back([begin, end, &fn] {
      for (Index i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

/// Sample i always consumes stream (seed, i), so the batch is bit-identical
/// for any thread count.
SampleBatch sample_batch(const DensityOperator& rho, MeasureKind kind, Index n,
                         std::uint64_t seed, unsigned threads = 0);
SampleBatch sample_G_batch(const GaussianMeasureSpec& spec, Index n, std::uint64_t seed,
                           unsigned threads = 0);

std::string batch_to_text(const SampleBatch& batch);
SampleBatch batch_from_text(std::string_view text);

void write_batch_file(const std::filesystem::path& path, const SampleBatch& batch);
/// Throws FormatError on a malformed header, wrong column counts, or a row
/// count that disagrees with the header.
SampleBatch read_batch_file(const std::filesystem::path& path);

}  // namespace gap
