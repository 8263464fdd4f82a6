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

#include <algorithm>
#include <cmath>

#include "gap/convergence.hpp"
#include "gap/errors.hpp"
#include "test_util.hpp"

using namespace gap;
using gap::test::diag;

namespace {

DensityOperator thermal012() {
  return thermal_state(validate_hermitian(diag({0.0, 1.0, 2.0})), 1.0);
}

SampleBatch single(const StateVector& v) {
  SampleBatch b;
  b.samples = v;
  return b;
}

}  // namespace

TEST_CASE("panels are deterministic and bounded") {
  const auto a = make_panel(4, 7, 12);
  const auto b = make_panel(4, 7, 12);
  REQUIRE(a.size() == 12);
  CHECK(a.functions.front().kind == PanelKind::Constant);
  for (Index j = 0; j < a.size(); ++j) {
    CHECK(a.functions[j].kind == b.functions[j].kind);
    CHECK(a.functions[j].anchor == b.functions[j].anchor);
  }
  CHECK(make_panel(4, 8).functions[1].anchor != a.functions[1].anchor);

  for (std::uint64_t i = 0; i < 10'000; ++i) {
    RandomStream s(3, i);
    StateVector psi(4);
    for (Index k = 0; k < 4; ++k) psi(k) = sample_complex_gaussian(s, 4.0);
    for (const auto& f : a.functions) REQUIRE(std::abs(f(psi)) <= 1.0);
  }
  for (const auto& f : a.functions)
    if (f.kind == PanelKind::Cosine) CHECK(f(StateVector::Zero(4)) == 1.0);
}

TEST_CASE("panel expectations on simple batches") {
  const auto panel = make_panel(3, 1);
  const auto rho = gap::test::random_density(3, 1);
  const auto batch = sample_batch(rho, MeasureKind::GapMixture, 1000, 1, 1);
  const auto est = panel_expectations(batch, panel);
  CHECK(est[0].estimate == 1.0);
  CHECK(est[0].se == 0.0);

  const PanelFunction& cosine = panel.functions[1];
  REQUIRE(cosine.kind == PanelKind::Cosine);
  const auto at_anchor = panel_expectations(single(cosine.anchor), panel);
  CHECK(at_anchor[1].estimate == std::cos(cosine.anchor.squaredNorm()));
  CHECK(at_anchor[1].se == 0.0);

  CHECK_THROWS_AS(panel_expectations(SampleBatch{}, panel), EmptyBatch);
}

TEST_CASE("tail compactness") {
  const auto rho = DensityOperator::from_matrix(diag({0.5, 0.25, 0.25}));
  CHECK(tail_compactness({rho}, 1) == doctest::Approx(1.0));
  CHECK(tail_compactness({rho}, 2) == doctest::Approx(0.5));
  CHECK(tail_compactness({rho}, 4) == 0.0);
  CHECK_THROWS_AS(tail_compactness({rho}, 0), Error);
  CHECK_THROWS_AS(tail_compactness({rho}, 5), Error);

  // Family (1 − 1/n)ρ + (1/n)σ against brute-force enumeration.
  const auto base = gap::test::random_density(4, 2);
  const auto sigma = gap::test::random_density(4, 3);
  std::vector<DensityOperator> family;
  for (int n = 1; n <= 10; ++n) family.push_back(convex_mix(base, sigma, 1.0 / n));
  double previous = 2.0;
  for (Index k = 1; k <= 5; ++k) {
    double brute = 0.0;
    for (const auto& r : family) {
      const ComplexMatrix m = r.matrix();
      double s = 0.0;
      for (Index i = k - 1; i < 4; ++i) s += m(i, i).real();
      brute = std::max(brute, s);
    }
    const double t = tail_compactness(family, k);
    CHECK(t == doctest::Approx(brute).epsilon(1e-12));
    CHECK(t <= previous);
    previous = t;
  }
  CHECK(previous == 0.0);
}

TEST_CASE("closed-form characteristic function gaps") {
  const auto rho = thermal012();
  const auto sigma = maximally_mixed(3);
  StateVector psi = StateVector::Zero(3);
  psi(1) = Complex(0.5, 1.0);
  CHECK(charfn_gap(rho, rho, psi) == 0.0);

  std::vector<StateVector> vectors;
  for (std::uint64_t j = 0; j < 20; ++j) {
    RandomStream s(11, j);
    StateVector v(3);
    for (Index k = 0; k < 3; ++k) v(k) = sample_complex_gaussian(s, 1.0);
    vectors.push_back(v);
  }
  const std::vector<std::int64_t> ns{2, 4, 8, 16, 32, 64, 128};
  const auto gaps = charfn_convergence(rho, sigma, ns, vectors);
  REQUIRE(gaps.size() == ns.size());
  const double full = trace_norm(sigma.matrix() - rho.matrix());
  for (const auto& g : gaps) {
    CHECK(g.trace_distance == doctest::Approx(full / static_cast<double>(g.n)).epsilon(1e-10));
    for (size_t j = 0; j < vectors.size(); ++j) {
      CHECK(g.gaps[j] <= g.bounds[j]);
      CHECK(g.bounds[j] == doctest::Approx(vectors[j].squaredNorm() * g.trace_distance));
    }
  }
  // n · gap settles to a constant.
  for (size_t i = 1; i < gaps.size(); ++i) {
    if (gaps[i].n < 8) continue;
    const double ratio = (gaps[i].n * gaps[i].max_gap) / (gaps[i - 1].n * gaps[i - 1].max_gap);
    CHECK(std::abs(ratio - 1.0) < 0.1);
  }
}

TEST_CASE("continuity experiment") {
  const auto rho = thermal012();
  const auto sigma = maximally_mixed(3);
  ContinuityOptions opts;
  opts.batch_size = 20'000;
  opts.seed = 5;
  const std::vector<std::int64_t> ns{2, 8, 64};
  const auto report = continuity_experiment(rho, sigma, ns, opts);
  REQUIRE(report.records.size() == 3);
  const double full = trace_norm(sigma.matrix() - rho.matrix());
  for (const auto& rec : report.records) {
    CHECK(std::abs(rec.trace_distance - full / static_cast<double>(rec.n)) < 1e-10);
    CHECK(rec.panel.size() == 12);
    for (const auto& d : rec.panel) CHECK(d.discrepancy >= 0.0);
  }

  CHECK_THROWS_AS(continuity_experiment(rho, rho, {2}, opts), Error);

  // ρ_n = ρ: identical measures, only noise.
  const auto panel = make_panel(3, opts.seed);
  const auto a = sample_batch(rho, MeasureKind::GapMixture, opts.batch_size, 1);
  const auto b = sample_batch(rho, MeasureKind::GapMixture, opts.batch_size, 2);
  for (const auto& d : compare_panels(panel_expectations(a, panel), panel_expectations(b, panel), panel))
    CHECK(d.discrepancy <= 4.0 * d.se);

  const Json j = report_to_json(report);
  REQUIRE(j.is_array());
  CHECK(j[0].at("n") == 2);
  CHECK(j[0].at("panel").size() == 12);
  CHECK(j[0].at("panel")[0].at("kind") == "constant");
}

TEST_CASE("adjustment counterexample is exact") {
  StateVector origin = StateVector::Zero(2);
  TestFunctionPanel panel{2, {PanelFunction{PanelKind::Constant, origin},
                              PanelFunction{PanelKind::GaussianBump, origin}}};
  const std::vector<std::int64_t> ns{1, 2, 4, 64, 1024};
  const auto report = adjustment_counterexample(ns, panel);
  CHECK(report.limit_adjusted_mass == 0.0);
  CHECK(report.delta0 == std::vector<double>{1.0, 1.0});
  for (const auto& rec : report.records) {
    const double n = static_cast<double>(rec.n);
    CHECK(rec.adjusted_mass == 1.0);
    CHECK(rec.mu_n[0] == 1.0);
    CHECK(rec.mu_n[1] == doctest::Approx((1.0 - 1.0 / n) + std::exp(-n) / n).epsilon(1e-15));
    CHECK(rec.adjusted_mu_n[0] == 1.0);
    CHECK(rec.adjusted_mu_n[1] == std::exp(-n));
  }
  CHECK(report.records.back().mu_n[1] > 0.999);
}
