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

// Property checks run by `gaptool verify` and the acceptance test binary.
// Every threshold is fixed here; a check reports what it measured, the
// threshold, and the headroom left.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gap/json_io.hpp"

namespace gap::verify {

struct Defaults {
  static constexpr std::uint64_t seed = 42;
  static constexpr Index batch_size = 100'000;
  static constexpr Index panel_size = 12;
  static constexpr double support_cutoff = 1e-12;
  static constexpr std::int64_t truncation_cap = 1'000'000;
};

Json defaults_json();

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// Measured statistics and the thresholds they were held to. Contains no
  /// timings, so reruns serialize identically.
  Json measured;
  /// Smallest relative headroom (threshold − value)/threshold over the
  /// checks of this criterion; negative when failing.
  double margin = 0.0;
  double seconds = 0.0;
  double time_budget = 0.0;
};

struct RunOptions {
  std::uint64_t seed = Defaults::seed;
  unsigned threads = 0;
};

CriterionResult density_reproduction(const RunOptions& opts);    // 1
CriterionResult sampler_cross_validation(const RunOptions& opts);  // 2
CriterionResult characteristic_function(const RunOptions& opts);  // 3
CriterionResult adjust_project_covariance(const RunOptions& opts);  // 4
CriterionResult continuity(const RunOptions& opts);               // 5
CriterionResult charfn_mechanism(const RunOptions& opts);         // 6
CriterionResult counterexample(const RunOptions& opts);           // 7
CriterionResult uniform_case(const RunOptions& opts);             // 8
CriterionResult truncation(const RunOptions& opts);               // 9
/// Reruns 1, 5 and 7 with a different thread count and compares the
/// serialized measurements byte for byte.
CriterionResult determinism(const RunOptions& opts);              // 10

enum class Suite { Core, Continuity, Counterexample, All };
Suite parse_suite(std::string_view text);
std::string_view suite_label(Suite suite) noexcept;

struct SuiteReport {
  Suite suite = Suite::All;
  std::uint64_t seed = 0;
  std::vector<CriterionResult> results;

  bool passed() const;
};

/// Runs the suite's criteria in id order; `on_result` (optional) is called
/// after each one, e.g. for progress output.
SuiteReport run_suite(Suite suite, const RunOptions& opts,
                      void (*on_result)(const CriterionResult&) = nullptr);

/// JSON report without timings (deterministic for fixed seed).
Json report_to_json(const SuiteReport& report);

/// "[PASS] #1 name (margin 0.73, 1.2 s)".
std::string summary_line(const CriterionResult& r);

}  // namespace gap::verify
