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

// Desk-scale checks of the continuity of ρ ↦ GAP(ρ): finite panels of
// bounded continuous test functions as a surrogate for weak convergence,
// closed-form characteristic-function gaps, the tail quantity of the
// tightness criterion, and the two-point counterexample for the adjustment
// map.

#include <cstdint>
#include <string_view>
#include <vector>

#include "gap/batch.hpp"
#include "gap/estimators.hpp"

namespace gap {

enum class PanelKind { Constant, Cosine, GaussianBump };

std::string_view panel_kind_label(PanelKind kind) noexcept;

/// One bounded test function on C^d, |f| <= 1:
///   Constant      f(ψ) = 1
///   Cosine        f(ψ) = cos(Re⟨χ, ψ⟩)
///   GaussianBump  f(ψ) = exp(−‖ψ − χ‖²)
struct PanelFunction {
  PanelKind kind = PanelKind::Constant;
  StateVector anchor;

  double operator()(const StateVector& psi) const;
  /// Same, with ‖ψ‖² supplied by the caller (for closed-form evaluations
  /// where the exact norm is known but √n·e_1 would round it).
  double evaluate(const StateVector& psi, double norm_sq) const;
};

struct TestFunctionPanel {
  Index dim = 0;
  std::vector<PanelFunction> functions;

  Index size() const noexcept { return static_cast<Index>(functions.size()); }
};

/// Function 0 is the constant; the rest alternate cosine and bump, with
/// anchor j drawn from G(I/dim) on stream (seed, j). Requires m >= 3.
TestFunctionPanel make_panel(Index dim, std::uint64_t seed, Index m = 12);

/// Plug-in (self-normalized for weighted batches) mean and SE per function.
std::vector<ScalarEstimate> panel_expectations(const SampleBatch& batch,
                                               const TestFunctionPanel& panel);

struct PanelDiscrepancy {
  PanelKind kind = PanelKind::Constant;
  double discrepancy = 0.0;  // |estimate − reference|
  double se = 0.0;           // sqrt(se_estimate² + se_reference²)
  double estimate = 0.0;
  double reference = 0.0;
};

std::vector<PanelDiscrepancy> compare_panels(const std::vector<ScalarEstimate>& estimate,
                                             const std::vector<ScalarEstimate>& reference,
                                             const TestFunctionPanel& panel);

struct ConvergenceRecord {
  std::int64_t n = 0;
  double trace_distance = 0.0;  // ‖ρ_n − ρ‖₁
  std::vector<PanelDiscrepancy> panel;
};

struct ConvergenceReport {
  std::vector<ConvergenceRecord> records;
};

Json report_to_json(const ConvergenceReport& report);

struct ContinuityOptions {
  Index batch_size = 50'000;
  std::uint64_t seed = 42;
  Index panel_size = 12;
  unsigned threads = 0;
};

/// For each n builds ρ_n = (1 − 1/n)ρ + (1/n)σ and compares GAP(ρ_n) against
/// GAP(ρ) on the panel, using independent mixture batches. The GAP(ρ) batch
/// uses derive_seed(seed, 0) and leg n uses derive_seed(seed, n).
ConvergenceReport continuity_experiment(const DensityOperator& rho, const DensityOperator& sigma,
                                        const std::vector<std::int64_t>& ns,
                                        const ContinuityOptions& opts = {});

struct CharFnGap {
  std::int64_t n = 0;
  double trace_distance = 0.0;
  std::vector<double> gaps;    // |μ̂_n(ψ) − μ̂(ψ)| per panel vector
  std::vector<double> bounds;  // ‖ψ‖² ‖ρ_n − ρ‖₁
  double max_gap = 0.0;
};

/// Closed-form Gaussian characteristic-function gaps between G(ρ_n) and G(ρ)
/// along the same convex family; no sampling.
std::vector<CharFnGap> charfn_convergence(const DensityOperator& rho, const DensityOperator& sigma,
                                          const std::vector<std::int64_t>& ns,
                                          const std::vector<StateVector>& vectors);

/// |μ̂_a(ψ) − μ̂_b(ψ)| for the mean-zero Gaussians G(a), G(b).
double charfn_gap(const DensityOperator& a, const DensityOperator& b, const StateVector& psi);

/// sup over the family of Σ_{i >= k} ⟨e_i, ρ e_i⟩ in the standard basis,
/// with k 1-based in [1, dim + 1].
double tail_compactness(const std::vector<DensityOperator>& rhos, Index k);

/// Exact evaluation of μ_n = (1 − 1/n) δ_0 + (1/n) δ_{ψ_n}, ‖ψ_n‖² = n,
/// with ψ_n = √n e_1.
struct CounterexampleRecord {
  std::int64_t n = 0;
  std::vector<double> mu_n;          // μ_n(f) per panel function
  std::vector<double> adjusted_mu_n; // (Aμ_n)(f) = f(ψ_n)
  double adjusted_mass = 0.0;        // (Aμ_n)(1), identically 1
};

struct CounterexampleReport {
  std::vector<double> delta0;       // δ_0(f), the weak limit of μ_n
  double limit_adjusted_mass = 0.0; // (Aδ_0)(1) = 0
  std::vector<CounterexampleRecord> records;
};

CounterexampleReport adjustment_counterexample(const std::vector<std::int64_t>& ns,
                                               const TestFunctionPanel& panel);

Json report_to_json(const CounterexampleReport& report);

}  // namespace gap
