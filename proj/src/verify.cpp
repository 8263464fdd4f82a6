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

#include "gap/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "gap/batch.hpp"
#include "gap/convergence.hpp"
#include "gap/errors.hpp"
#include "gap/estimators.hpp"
#include "gap/truncation.hpp"

namespace gap::verify {

namespace {

// Collects named checks for one criterion.
class Checks {
 public:
  /// value < threshold
  void below(const std::string& name, double value, double threshold) {
    record(name, value, threshold, "<", value < threshold);
  }
  /// value <= threshold
  void at_most(const std::string& name, double value, double threshold) {
    record(name, value, threshold, "<=", value <= threshold);
  }
  void exact(const std::string& name, double value, double expected) {
    const bool ok = value == expected;
    checks_.push_back({{"name", name}, {"value", value}, {"expected", expected}, {"passed", ok}});
    passed_ = passed_ && ok;
    margin_ = std::min(margin_, ok ? 1.0 : -1.0);
  }
  void require(const std::string& name, bool ok) {
    checks_.push_back({{"name", name}, {"passed", ok}});
    passed_ = passed_ && ok;
    margin_ = std::min(margin_, ok ? 1.0 : -1.0);
  }

  bool passed() const { return passed_; }
  double margin() const { return margin_; }
  Json json() const { return checks_; }

 private:
  void record(const std::string& name, double value, double threshold, const char* op, bool ok) {
    checks_.push_back({{"name", name},
                       {"value", value},
                       {"threshold", threshold},
                       {"op", op},
                       {"passed", ok}});
    passed_ = passed_ && ok;
    double m;
    if (threshold > 0.0) m = (threshold - value) / threshold;
    else m = ok ? 1.0 : -1.0;
    margin_ = std::min(margin_, m);
  }

  Json checks_ = Json::array();
  bool passed_ = true;
  double margin_ = 1.0;
};

CriterionResult run_timed(int id, std::string name, double budget,
                          const std::function<void(Checks&, Json&)>& body) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.time_budget = budget;
  Checks checks;
  Json extra = Json::object();
  const auto start = std::chrono::steady_clock::now();
  body(checks, extra);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.measured = extra;
  r.measured["checks"] = checks.json();
  r.margin = checks.margin();
  r.passed = checks.passed() && r.seconds <= budget;
  return r;
}

DensityOperator thermal_ladder(Index levels, double beta) {
  ComplexMatrix h = ComplexMatrix::Zero(levels, levels);
  for (Index k = 0; k < levels; ++k) h(k, k) = static_cast<double>(k);
  return thermal_state(validate_hermitian(h), beta);
}

// Vectors with independent CN(0, variance) coordinates on streams (seed, j).
std::vector<StateVector> probe_vectors(Index dim, Index count, std::uint64_t seed, double variance) {
  std::vector<StateVector> out;
  for (Index j = 0; j < count; ++j) {
    RandomStream stream(seed, static_cast<std::uint64_t>(j));
    StateVector v(dim);
    for (Index k = 0; k < dim; ++k) v(k) = sample_complex_gaussian(stream, variance);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::int64_t> doubling(std::int64_t from, std::int64_t to) {
  std::vector<std::int64_t> ns;
  for (std::int64_t n = from; n <= to; n *= 2) ns.push_back(n);
  return ns;
}

}  // namespace

Json defaults_json() {
  return {{"seed", Defaults::seed},
          {"batch_size", Defaults::batch_size},
          {"panel_size", Defaults::panel_size},
          {"support_cutoff", Defaults::support_cutoff},
          {"truncation_cap", Defaults::truncation_cap}};
}

CriterionResult density_reproduction(const RunOptions& opts) {
  return run_timed(1, "density-operator reproduction", 10.0, [&](Checks& c, Json& out) {
    const DensityOperator rho = thermal_ladder(4, 1.0);
    constexpr Index kN = 200'000;
    Json distances = Json::array();
    for (std::uint64_t s = opts.seed; s < opts.seed + 3; ++s) {
      const SampleBatch batch = sample_batch(rho, MeasureKind::GapMixture, kN, s, opts.threads);
      const ComplexMatrix rho_hat = empirical_density_operator(accumulate(batch, opts.threads));
      const double d = trace_norm(rho_hat - rho.matrix());
      c.below("trace_norm(rho_hat - rho), seed " + std::to_string(s), d, 0.02);
      distances.push_back(d);
    }
    out["n"] = kN;
    out["trace_distances"] = distances;
  });
}

CriterionResult sampler_cross_validation(const RunOptions& opts) {
  return run_timed(2, "mixture vs reweight sampler", 10.0, [&](Checks& c, Json& out) {
    const DensityOperator rho = thermal_ladder(3, 1.0);
    constexpr Index kN = 100'000;
    const SampleBatch mix =
        sample_batch(rho, MeasureKind::GapMixture, kN, derive_seed(opts.seed, 2), opts.threads);
    const SampleBatch rew =
        sample_batch(rho, MeasureKind::GapReweight, kN, derive_seed(opts.seed, 3), opts.threads);
    const ComplexMatrix rho_mix = empirical_density_operator(accumulate(mix, opts.threads));
    const ComplexMatrix rho_rew = empirical_density_operator(accumulate(rew, opts.threads));
    const double d = trace_norm(rho_mix - rho_rew);
    c.below("trace_norm(rho_mix - rho_reweight)", d, 0.03);

    const TestFunctionPanel panel = make_panel(rho.dim(), opts.seed, Defaults::panel_size);
    const auto diffs =
        compare_panels(panel_expectations(mix, panel), panel_expectations(rew, panel), panel);
    Json panel_json = Json::array();
    for (size_t j = 0; j < diffs.size(); ++j) {
      c.at_most("panel " + std::to_string(j) + " discrepancy vs 4 SE", diffs[j].discrepancy,
                4.0 * diffs[j].se);
      panel_json.push_back({{"kind", std::string(panel_kind_label(diffs[j].kind))},
                            {"discrepancy", diffs[j].discrepancy},
                            {"se", diffs[j].se}});
    }
    out["trace_distance"] = d;
    out["panel"] = panel_json;
    out["mean_weight"] = rew.weights.mean();
  });
}

CriterionResult characteristic_function(const RunOptions& opts) {
  return run_timed(3, "Gaussian characteristic function", 5.0, [&](Checks& c, Json& out) {
    const DensityOperator rho = thermal_ladder(4, 1.0);
    GaussianMeasureSpec spec = GaussianMeasureSpec::centered(rho);
    spec.mean << Complex(0.5, 0.0), Complex(0.0, 0.3), Complex(0.0, 0.0), Complex(-0.2, 0.1);
    constexpr Index kN = 100'000;
    const SampleBatch batch = sample_G_batch(spec, kN, derive_seed(opts.seed, 4), opts.threads);
    const auto probes = probe_vectors(rho.dim(), 20, derive_seed(opts.seed, 5), 1.0);
    double worst = 0.0;
    Json errors = Json::array();
    for (const StateVector& psi : probes) {
      const double err = std::abs(empirical_char_fn(batch, psi) - char_fn_gaussian(spec, psi));
      errors.push_back(err);
      worst = std::max(worst, err);
    }
    c.below("max |empirical - closed form|", worst, 4.0 / std::sqrt(static_cast<double>(kN)));
    out["errors"] = errors;
  });
}

CriterionResult adjust_project_covariance(const RunOptions& opts) {
  return run_timed(4, "covariance of G vs density operator of GAP", 10.0,
                   [&](Checks& c, Json& out) {
    const DensityOperator rho = thermal_ladder(4, 1.0);
    constexpr Index kN = 100'000;
    const SampleBatch g =
        sample_batch(rho, MeasureKind::G, kN, derive_seed(opts.seed, 6), opts.threads);
    const SampleBatch gap =
        sample_batch(rho, MeasureKind::GapMixture, kN, derive_seed(opts.seed, 7), opts.threads);
    const ComplexMatrix cov = empirical_covariance(accumulate(g, opts.threads));
    const ComplexMatrix rho_hat = empirical_density_operator(accumulate(gap, opts.threads));
    const double d = trace_norm(cov - rho_hat);
    c.below("trace_norm(cov_G - rho_GAP)", d, 0.03);
    out["trace_distance"] = d;
  });
}

CriterionResult continuity(const RunOptions& opts) {
  return run_timed(5, "continuity of rho -> GAP(rho)", 60.0, [&](Checks& c, Json& out) {
    const DensityOperator rho = thermal_ladder(3, 1.0);
    const DensityOperator sigma = maximally_mixed(3);
    const auto ns = doubling(2, 64);
    ContinuityOptions copts;
    copts.batch_size = 50'000;
    copts.seed = opts.seed;
    copts.panel_size = Defaults::panel_size;
    copts.threads = opts.threads;
    const ConvergenceReport report = continuity_experiment(rho, sigma, ns, copts);
    const double full = trace_norm(sigma.matrix() - rho.matrix());
    for (const auto& r : report.records) {
      c.at_most("|trace distance - ||sigma-rho||/n|, n = " + std::to_string(r.n),
                std::abs(r.trace_distance - full / static_cast<double>(r.n)), 1e-10);
    }
    const auto& first = report.records.front();
    const auto& last = report.records.back();
    for (size_t j = 0; j < last.panel.size(); ++j) {
      const double threshold =
          std::max(3.0 * last.panel[j].se, first.panel[j].discrepancy / 4.0);
      c.at_most("panel " + std::to_string(j) + " discrepancy at n = 64", last.panel[j].discrepancy,
                threshold);
    }
    out["report"] = report_to_json(report);
  });
}

CriterionResult charfn_mechanism(const RunOptions& opts) {
  return run_timed(6, "characteristic-function gap", 1.0, [&](Checks& c, Json& out) {
    const DensityOperator rho = thermal_ladder(3, 1.0);
    const DensityOperator sigma = maximally_mixed(3);
    const auto ns = doubling(2, 64);
    const auto probes = probe_vectors(3, 20, derive_seed(opts.seed, 11), 1.0);
    const auto gaps = charfn_convergence(rho, sigma, ns, probes);
    double worst_excess = -1.0;
    double worst_ratio_dev = 0.0;
    for (const auto& g : gaps)
      for (size_t j = 0; j < g.gaps.size(); ++j)
        worst_excess = std::max(worst_excess, g.gaps[j] - g.bounds[j]);
    c.at_most("max(gap - ||psi||^2 ||rho_n - rho||_1)", worst_excess, 0.0);
    // n·gap(n) should be flat for n >= 8.
    for (size_t k = 1; k < gaps.size(); ++k) {
      if (gaps[k - 1].n < 8) continue;
      for (size_t j = 0; j < probes.size(); ++j) {
        const double a = static_cast<double>(gaps[k - 1].n) * gaps[k - 1].gaps[j];
        const double b = static_cast<double>(gaps[k].n) * gaps[k].gaps[j];
        worst_ratio_dev = std::max(worst_ratio_dev, std::abs(b / a - 1.0));
      }
    }
    c.at_most("max |n gap(n) / (m gap(m)) - 1| for n, m >= 8", worst_ratio_dev, 0.10);
    Json max_gaps = Json::array();
    for (const auto& g : gaps) max_gaps.push_back({{"n", g.n}, {"max_gap", g.max_gap}});
    out["max_gaps"] = max_gaps;
  });
}

CriterionResult counterexample(const RunOptions& opts) {
  return run_timed(7, "adjustment counterexample", 1.0, [&](Checks& c, Json& out) {
    TestFunctionPanel panel = make_panel(3, opts.seed, Defaults::panel_size);
    panel.functions.push_back({PanelKind::GaussianBump, StateVector::Zero(3)});
    const auto ns = doubling(1, 4096);
    const CounterexampleReport report = adjustment_counterexample(ns, panel);
    c.exact("limit candidate adjusted mass", report.limit_adjusted_mass, 0.0);
    const size_t origin_bump = panel.functions.size() - 1;
    for (const auto& r : report.records) {
      const double nd = static_cast<double>(r.n);
      c.exact("adjusted mass, n = " + std::to_string(r.n), r.adjusted_mass, 1.0);
      c.exact("mu_n(exp(-|psi|^2)), n = " + std::to_string(r.n), r.mu_n[origin_bump],
              (1.0 - 1.0 / nd) + std::exp(-nd) / nd);
      double worst = 0.0;
      for (size_t j = 0; j < r.mu_n.size(); ++j)
        worst = std::max(worst, std::abs(r.mu_n[j] - report.delta0[j]));
      c.at_most("max |mu_n(f) - delta_0(f)|, n = " + std::to_string(r.n), worst, 2.0 / nd);
    }
    out["report"] = report_to_json(report);
  });
}

CriterionResult uniform_case(const RunOptions& opts) {
  return run_timed(8, "uniform special case", 10.0, [&](Checks& c, Json& out) {
    constexpr Index kDim = 4;
    constexpr Index kN = 100'000;
    const DensityOperator rho = maximally_mixed(kDim);
    const SampleBatch gap =
        sample_batch(rho, MeasureKind::GapMixture, kN, derive_seed(opts.seed, 8), opts.threads);
    const double d =
        trace_norm(empirical_density_operator(accumulate(gap, opts.threads)) - rho.matrix());
    c.below("trace_norm(rho_hat - I/d)", d, 0.02);

    // Oracle: normalized standard complex Gaussian vectors.
    const std::uint64_t oracle_seed = derive_seed(opts.seed, 9);
    std::vector<double> from_gap(kN), from_oracle(kN);
    for (Index i = 0; i < kN; ++i) {
      from_gap[static_cast<size_t>(i)] = std::norm(gap.samples(0, i));
      RandomStream stream(oracle_seed, static_cast<std::uint64_t>(i));
      StateVector v(kDim);
      for (Index k = 0; k < kDim; ++k) v(k) = sample_complex_gaussian(stream, 1.0);
      from_oracle[static_cast<size_t>(i)] = std::norm(v(0)) / v.squaredNorm();
    }
    const double ks = ks_two_sample(from_gap, from_oracle);
    c.below("two-sample KS of |<e1,psi>|^2", ks, ks_critical_value(0.01, kN, kN));
    out["trace_distance"] = d;
    out["ks_statistic"] = ks;
  });
}

CriterionResult truncation(const RunOptions& opts) {
  return run_timed(9, "trace-class truncation", 5.0, [&](Checks& c, Json& out) {
    const Truncation t = truncate(EigenvalueSequence::geometric(0.5), 1e-6, Defaults::truncation_cap);
    c.exact("truncation size", static_cast<double>(t.size()), 20.0);
    c.at_most("achieved tail", t.achieved_tail, 1e-6);
    constexpr Index kN = 100'000;
    const SampleBatch batch = sample_G_batch(t.spec, kN, derive_seed(opts.seed, 10), opts.threads);
    const ScalarEstimate sq = mean_with_se(batch.samples.colwise().squaredNorm().transpose());
    const double expected = 1.0 - std::ldexp(1.0, -20);
    c.below("|mean ||psi||^2 - (1 - 2^-20)| vs 4 SE", std::abs(sq.estimate - expected), 4.0 * sq.se);
    out["size"] = t.size();
    out["achieved_tail"] = t.achieved_tail;
    out["mean_sq_norm"] = sq.estimate;
    out["mean_sq_norm_se"] = sq.se;
  });
}

CriterionResult determinism(const RunOptions& opts) {
  return run_timed(10, "determinism", 30.0, [&](Checks& c, Json& out) {
    RunOptions serial = opts;
    serial.threads = 1;
    RunOptions parallel = opts;
    parallel.threads = 4;
    using Fn = CriterionResult (*)(const RunOptions&);
    const std::pair<int, Fn> legs[] = {{1, &density_reproduction}, {5, &continuity}, {7, &counterexample}};
    Json compared = Json::array();
    for (const auto& [id, fn] : legs) {
      const std::string a = dump_json(fn(serial).measured);
      const std::string b = dump_json(fn(parallel).measured);
      c.require("criterion " + std::to_string(id) + " reruns bit-identical", a == b);
      compared.push_back(id);
    }
    out["compared"] = compared;
  });
}

Suite parse_suite(std::string_view text) {
  if (text == "core") return Suite::Core;
  if (text == "continuity") return Suite::Continuity;
  if (text == "counterexample") return Suite::Counterexample;
  if (text == "all") return Suite::All;
  throw FormatError("unknown suite '" + std::string(text) + "'");
}

std::string_view suite_label(Suite suite) noexcept {
  switch (suite) {
    case Suite::Core: return "core";
    case Suite::Continuity: return "continuity";
    case Suite::Counterexample: return "counterexample";
    case Suite::All: return "all";
  }
  return "all";
}

bool SuiteReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
}

SuiteReport run_suite(Suite suite, const RunOptions& opts,
                      void (*on_result)(const CriterionResult&)) {
  using Fn = CriterionResult (*)(const RunOptions&);
  std::vector<Fn> plan;
  switch (suite) {
    case Suite::Core:
      plan = {&density_reproduction, &sampler_cross_validation, &characteristic_function,
              &adjust_project_covariance, &uniform_case, &truncation};
      break;
    case Suite::Continuity:
      plan = {&continuity, &charfn_mechanism};
      break;
    case Suite::Counterexample:
      plan = {&counterexample};
      break;
    case Suite::All:
      plan = {&density_reproduction, &sampler_cross_validation, &characteristic_function,
              &adjust_project_covariance, &continuity, &charfn_mechanism, &counterexample,
              &uniform_case, &truncation, &determinism};
      break;
  }
  SuiteReport report;
  report.suite = suite;
  report.seed = opts.seed;
  for (Fn fn : plan) {
    report.results.push_back(fn(opts));
    if (on_result != nullptr) on_result(report.results.back());
  }
  return report;
}

Json report_to_json(const SuiteReport& report) {
  Json criteria = Json::array();
  for (const auto& r : report.results) {
    criteria.push_back({{"id", r.id},
                        {"name", r.name},
                        {"passed", r.passed},
                        {"margin", r.margin},
                        {"time_budget_s", r.time_budget},
                        {"within_time_budget", r.seconds <= r.time_budget},
                        {"measured", r.measured}});
  }
  return {{"suite", std::string(suite_label(report.suite))},
          {"seed", report.seed},
          {"defaults", defaults_json()},
          {"passed", report.passed()},
          {"criteria", std::move(criteria)}};
}

std::string summary_line(const CriterionResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "[%s] #%d %s (margin %.3f, %.2f s of %.0f s)",
                r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.margin, r.seconds,
                r.time_budget);
  return buf;
}

}  // namespace gap::verify
