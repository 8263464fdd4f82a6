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

#include "gap/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "gap/errors.hpp"
#include "gap/random_stream.hpp"

namespace gap {

std::string_view panel_kind_label(PanelKind kind) noexcept {
  switch (kind) {
    case PanelKind::Constant: return "constant";
    case PanelKind::Cosine: return "cos";
    case PanelKind::GaussianBump: return "gauss";
  }
  return "constant";
}

double PanelFunction::operator()(const StateVector& psi) const {
  switch (kind) {
    case PanelKind::Constant:
      return 1.0;
    case PanelKind::Cosine:
      return std::cos(anchor.dot(psi).real());
    case PanelKind::GaussianBump:
      return std::exp(-(psi - anchor).squaredNorm());
  }
  return 0.0;
}

double PanelFunction::evaluate(const StateVector& psi, double norm_sq) const {
  if (kind != PanelKind::GaussianBump) return (*this)(psi);
  const double distance_sq = norm_sq + anchor.squaredNorm() - 2.0 * anchor.dot(psi).real();
  return std::exp(-distance_sq);
}

TestFunctionPanel make_panel(Index dim, std::uint64_t seed, Index m) {
  if (m < 3) throw Error("panel needs at least 3 functions");
  if (dim < 1) throw Error("panel dimension must be >= 1");
  TestFunctionPanel panel;
  panel.dim = dim;
  panel.functions.push_back({PanelKind::Constant, StateVector::Zero(dim)});
  const double variance = 1.0 / static_cast<double>(dim);
  for (Index j = 1; j < m; ++j) {
    RandomStream stream(seed, static_cast<std::uint64_t>(j));
    StateVector anchor(dim);
    for (Index k = 0; k < dim; ++k) anchor(k) = sample_complex_gaussian(stream, variance);
    panel.functions.push_back(
        {j % 2 == 1 ? PanelKind::Cosine : PanelKind::GaussianBump, std::move(anchor)});
  }
  return panel;
}

std::vector<ScalarEstimate> panel_expectations(const SampleBatch& batch,
                                               const TestFunctionPanel& panel) {
  if (batch.size() < 1) throw EmptyBatch();
  if (batch.dim() != panel.dim) throw DimMismatch(panel.dim, batch.dim());
  const RealVector sq_norms = batch.samples.colwise().squaredNorm().transpose();
  std::vector<ScalarEstimate> out;
  out.reserve(panel.functions.size());
  RealVector values(batch.size());
  for (const PanelFunction& f : panel.functions) {
    if (f.kind == PanelKind::Constant) {
      values.setOnes();
    } else {
      // Re⟨χ, ψ_i⟩ = Re⟨ψ_i, χ⟩ for every column at once.
      const RealVector overlap = (batch.samples.adjoint() * f.anchor).real();
      if (f.kind == PanelKind::Cosine) {
        values = overlap.array().cos();
      } else {
        const double anchor_sq = f.anchor.squaredNorm();
        values = (-(sq_norms.array() + anchor_sq - 2.0 * overlap.array())).exp();
      }
    }
    out.push_back(mean_with_se(values, batch.weights));
  }
  return out;
}

std::vector<PanelDiscrepancy> compare_panels(const std::vector<ScalarEstimate>& estimate,
                                             const std::vector<ScalarEstimate>& reference,
                                             const TestFunctionPanel& panel) {
  if (estimate.size() != panel.functions.size() || reference.size() != panel.functions.size())
    throw DimMismatch(panel.size(), static_cast<Index>(estimate.size()));
  std::vector<PanelDiscrepancy> out;
  for (size_t j = 0; j < estimate.size(); ++j) {
    out.push_back({panel.functions[j].kind, std::abs(estimate[j].estimate - reference[j].estimate),
                   std::hypot(estimate[j].se, reference[j].se), estimate[j].estimate,
                   reference[j].estimate});
  }
  return out;
}

Json report_to_json(const ConvergenceReport& report) {
  Json out = Json::array();
  for (const auto& r : report.records) {
    Json panel = Json::array();
    for (const auto& d : r.panel) {
      panel.push_back({{"kind", std::string(panel_kind_label(d.kind))},
                       {"estimate", d.discrepancy},
                       {"se", d.se},
                       {"perturbed", d.estimate},
                       {"reference", d.reference}});
    }
    out.push_back({{"n", r.n}, {"trace_distance", r.trace_distance}, {"panel", std::move(panel)}});
  }
  return out;
}

namespace {

void check_family(const DensityOperator& rho, const DensityOperator& sigma,
                  const std::vector<std::int64_t>& ns) {
  if (rho.dim() != sigma.dim()) throw DimMismatch(rho.dim(), sigma.dim());
  if (ns.empty()) throw Error("ns must not be empty");
  for (size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] < 1) throw Error("every n must be >= 1");
    if (i > 0 && ns[i] <= ns[i - 1]) throw Error("ns must be strictly increasing");
  }
  if (trace_norm(rho.matrix() - sigma.matrix()) == 0.0) throw Error("rho and sigma coincide");
}

DensityOperator family_member(const DensityOperator& rho, const DensityOperator& sigma,
                              std::int64_t n) {
  return convex_mix(rho, sigma, 1.0 / static_cast<double>(n));
}

}  // namespace

ConvergenceReport continuity_experiment(const DensityOperator& rho, const DensityOperator& sigma,
                                        const std::vector<std::int64_t>& ns,
                                        const ContinuityOptions& opts) {
  check_family(rho, sigma, ns);
  const TestFunctionPanel panel = make_panel(rho.dim(), opts.seed, opts.panel_size);
  const SampleBatch reference_batch = sample_batch(
      rho, MeasureKind::GapMixture, opts.batch_size, derive_seed(opts.seed, 0), opts.threads);
  const std::vector<ScalarEstimate> reference = panel_expectations(reference_batch, panel);

  ConvergenceReport report;
  for (std::int64_t n : ns) {
    const DensityOperator rho_n = family_member(rho, sigma, n);
    const SampleBatch batch =
        sample_batch(rho_n, MeasureKind::GapMixture, opts.batch_size,
                     derive_seed(opts.seed, static_cast<std::uint64_t>(n)), opts.threads);
    report.records.push_back({n, trace_norm(rho_n.matrix() - rho.matrix()),
                              compare_panels(panel_expectations(batch, panel), reference, panel)});
  }
  return report;
}

double charfn_gap(const DensityOperator& a, const DensityOperator& b, const StateVector& psi) {
  return std::abs(char_fn_gaussian(GaussianMeasureSpec::centered(a), psi) -
                  char_fn_gaussian(GaussianMeasureSpec::centered(b), psi));
}

std::vector<CharFnGap> charfn_convergence(const DensityOperator& rho, const DensityOperator& sigma,
                                          const std::vector<std::int64_t>& ns,
                                          const std::vector<StateVector>& vectors) {
  check_family(rho, sigma, ns);
  std::vector<CharFnGap> out;
  for (std::int64_t n : ns) {
    const DensityOperator rho_n = family_member(rho, sigma, n);
    CharFnGap record;
    record.n = n;
    record.trace_distance = trace_norm(rho_n.matrix() - rho.matrix());
    for (const StateVector& psi : vectors) {
      const double gap = charfn_gap(rho_n, rho, psi);
      record.gaps.push_back(gap);
      record.bounds.push_back(psi.squaredNorm() * record.trace_distance);
      record.max_gap = std::max(record.max_gap, gap);
    }
    out.push_back(std::move(record));
  }
  return out;
}

double tail_compactness(const std::vector<DensityOperator>& rhos, Index k) {
  if (rhos.empty()) throw Error("tail_compactness needs at least one operator");
  const Index dim = rhos.front().dim();
  if (k < 1 || k > dim + 1) throw Error("k must lie in [1, dim + 1]");
  double sup = 0.0;
  for (const DensityOperator& rho : rhos) {
    if (rho.dim() != dim) throw DimMismatch(dim, rho.dim());
    double tail = 0.0;
    for (Index i = k - 1; i < dim; ++i) tail += rho.matrix()(i, i).real();
    sup = std::max(sup, tail);
  }
  return sup;
}

CounterexampleReport adjustment_counterexample(const std::vector<std::int64_t>& ns,
                                               const TestFunctionPanel& panel) {
  if (ns.empty()) throw Error("ns must not be empty");
  const StateVector origin = StateVector::Zero(panel.dim);
  CounterexampleReport report;
  for (const PanelFunction& f : panel.functions) report.delta0.push_back(f(origin));
  // ‖0‖² = 0, so the adjusted limit candidate carries no mass.
  report.limit_adjusted_mass = 0.0;

  for (std::int64_t n : ns) {
    if (n < 1) throw Error("every n must be >= 1");
    const double nd = static_cast<double>(n);
    StateVector psi_n = StateVector::Zero(panel.dim);
    psi_n(0) = std::sqrt(nd);
    // ‖ψ_n‖² is n by construction; use the exact integer rather than the
    // rounded squared norm of √n.
    const double norm_sq = nd;
    CounterexampleRecord record;
    record.n = n;
    for (size_t j = 0; j < panel.functions.size(); ++j) {
      const double at_psi = panel.functions[j].evaluate(psi_n, norm_sq);
      record.mu_n.push_back((1.0 - 1.0 / nd) * report.delta0[j] + at_psi / nd);
      // A μ_n(f) = (1 − 1/n)·0·f(0) + (1/n)·n·f(ψ_n).
      record.adjusted_mu_n.push_back(norm_sq / nd * at_psi);
    }
    record.adjusted_mass = norm_sq / nd;
    report.records.push_back(std::move(record));
  }
  return report;
}

Json report_to_json(const CounterexampleReport& report) {
  Json records = Json::array();
  for (const auto& r : report.records) {
    records.push_back({{"n", r.n},
                       {"mu_n", r.mu_n},
                       {"adjusted_mu_n", r.adjusted_mu_n},
                       {"adjusted_mass", r.adjusted_mass}});
  }
  return {{"delta0", report.delta0},
          {"limit_adjusted_mass", report.limit_adjusted_mass},
          {"records", std::move(records)}};
}

}  // namespace gap
