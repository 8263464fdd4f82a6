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

// gaptool: build density operators, sample G / GAP measures, estimate, and
// run the verification suites. Every command is deterministic given --seed.
//
// Exit codes: 0 success/pass, 1 verification failure, 2 usage or input-file
// error, 3 numeric error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gap/batch.hpp"
#include "gap/convergence.hpp"
#include "gap/errors.hpp"
#include "gap/estimators.hpp"
#include "gap/json_io.hpp"
#include "gap/truncation.hpp"
#include "gap/verify.hpp"

namespace {

using namespace gap;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct RunConfig {
  std::string out;
  bool quiet = false;
  std::uint64_t seed = verify::Defaults::seed;
  unsigned threads = 0;

  // density
  std::string preset;
  std::string hamiltonian;
  std::string rho;
  Index dim = 0;
  double beta = 1.0;
  double epsilon = 0.0;

  // sample / estimate
  std::string measure = "GAP-mixture";
  Index n = verify::Defaults::batch_size;
  std::string batch;
  std::string ref;

  // charfn / continuity
  std::string sigma;
  std::vector<std::int64_t> ns{2, 4, 8, 16, 32, 64};
  Index panel_size = verify::Defaults::panel_size;
  bool csv = false;

  std::string suite = "all";
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) std::cout << text;
  else atomic_write(cfg.out, text);
}

void progress(const RunConfig& cfg, const std::string& text) {
  if (!cfg.quiet) std::cerr << text << '\n';
}

ComplexMatrix diagonal_matrix(const RealVector& p) {
  return p.cast<Complex>().asDiagonal();
}

int cmd_density(const RunConfig& cfg) {
  ComplexMatrix out;
  if (!cfg.hamiltonian.empty()) {
    const HermitianOperator h = validate_hermitian(read_matrix_file(cfg.hamiltonian));
    out = thermal_state(h, cfg.beta).matrix();
  } else if (!cfg.rho.empty()) {
    // Validate, then write back the entries as read so rewriting is idempotent.
    out = read_matrix_file(cfg.rho);
    DensityOperator::from_matrix(out);
  } else if (cfg.preset == "maximally-mixed") {
    out = maximally_mixed(cfg.dim).matrix();
  } else if (cfg.preset == "pure") {
    out = pure_state(StateVector::Ones(cfg.dim)).matrix();
  } else if (cfg.preset == "thermal-qho") {
    RealVector p;
    if (cfg.dim > 0) {
      p.resize(cfg.dim);
      for (Index k = 0; k < cfg.dim; ++k) p(k) = std::exp(-cfg.beta * static_cast<double>(k));
      p /= p.sum();
    } else {
      const Truncation t =
          truncate(EigenvalueSequence::thermal_oscillator(cfg.beta), cfg.epsilon,
                   verify::Defaults::truncation_cap);
      p = t.spec.covariance.eigenvalues / t.spec.trace();
      progress(cfg, "truncated at N = " + std::to_string(t.size()) +
                        ", certified tail " + format_double(t.achieved_tail));
    }
    out = diagonal_matrix(p);
  } else {
    throw CLI::ValidationError("density", "need one of --preset, --hamiltonian, --rho");
  }
  emit(cfg, dump_json(matrix_to_json(out)) + "\n");
  return 0;
}

int cmd_sample(const RunConfig& cfg) {
  const DensityOperator rho = read_density_file(cfg.rho);
  SampleBatch batch = sample_batch(rho, parse_measure(cfg.measure), cfg.n, cfg.seed, cfg.threads);
  batch.rho_file = cfg.rho;
  emit(cfg, batch_to_text(batch));
  progress(cfg, "wrote " + std::to_string(batch.size()) + " samples");
  return 0;
}

int cmd_estimate(const RunConfig& cfg) {
  const SampleBatch batch = read_batch_file(cfg.batch);
  std::optional<DensityOperator> reference;
  if (!cfg.ref.empty()) reference = read_density_file(cfg.ref);
  const EstimatorReport report = estimate(batch, reference ? &*reference : nullptr);
  emit(cfg, dump_json(report_to_json(report)) + "\n");
  return 0;
}

DensityOperator sigma_or_default(const RunConfig& cfg, const DensityOperator& rho) {
  return cfg.sigma.empty() ? maximally_mixed(rho.dim()) : read_density_file(cfg.sigma);
}

int cmd_charfn(const RunConfig& cfg) {
  const DensityOperator rho = read_density_file(cfg.rho);
  const DensityOperator sigma = sigma_or_default(cfg, rho);
  std::vector<StateVector> probes;
  for (Index j = 0; j < cfg.panel_size; ++j) {
    RandomStream stream(cfg.seed, static_cast<std::uint64_t>(j));
    StateVector v(rho.dim());
    for (Index k = 0; k < rho.dim(); ++k) v(k) = sample_complex_gaussian(stream, 1.0);
    probes.push_back(std::move(v));
  }
  Json out = Json::array();
  for (const CharFnGap& g : charfn_convergence(rho, sigma, cfg.ns, probes)) {
    out.push_back({{"n", g.n},
                   {"trace_distance", g.trace_distance},
                   {"max_gap", g.max_gap},
                   {"gaps", g.gaps},
                   {"bounds", g.bounds}});
  }
  emit(cfg, dump_json(out) + "\n");
  return 0;
}

std::string continuity_csv(const ConvergenceReport& report) {
  std::string text = "n,trace_distance,function,kind,discrepancy,se\n";
  for (const auto& r : report.records) {
    for (size_t j = 0; j < r.panel.size(); ++j) {
      text += std::to_string(r.n) + "," + format_double(r.trace_distance) + "," +
              std::to_string(j) + "," + std::string(panel_kind_label(r.panel[j].kind)) + "," +
              format_double(r.panel[j].discrepancy) + "," + format_double(r.panel[j].se) + "\n";
    }
  }
  return text;
}

int cmd_continuity(const RunConfig& cfg) {
  const DensityOperator rho = read_density_file(cfg.rho);
  const DensityOperator sigma = sigma_or_default(cfg, rho);
  ContinuityOptions opts;
  opts.batch_size = cfg.n;
  opts.seed = cfg.seed;
  opts.panel_size = cfg.panel_size;
  opts.threads = cfg.threads;
  const ConvergenceReport report = continuity_experiment(rho, sigma, cfg.ns, opts);
  emit(cfg, cfg.csv ? continuity_csv(report) : dump_json(report_to_json(report)) + "\n");
  return 0;
}

bool g_quiet = false;

void print_result(const verify::CriterionResult& r) {
  if (!g_quiet) std::cerr << verify::summary_line(r) << '\n';
}

int cmd_verify(const RunConfig& cfg) {
  g_quiet = cfg.quiet;
  verify::RunOptions opts;
  opts.seed = cfg.seed;
  opts.threads = cfg.threads;
  const verify::SuiteReport report = verify::run_suite(verify::parse_suite(cfg.suite), opts, &print_result);
  emit(cfg, dump_json(verify::report_to_json(report)) + "\n");
  return report.passed() ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sample and verify GAP measures of density operators"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Output file (default: stdout)");
    sub->add_flag("--quiet", cfg.quiet, "Suppress progress output");
  };
  auto seeded = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->capture_default_str();
  };

  auto* density = app.add_subcommand("density", "Write a density operator file");
  common(density);
  density->add_option("--preset", cfg.preset, "maximally-mixed | pure | thermal-qho")
      ->check(CLI::IsMember({"maximally-mixed", "pure", "thermal-qho"}));
  density->add_option("--hamiltonian", cfg.hamiltonian, "Hamiltonian matrix file (thermal state)")
      ->check(CLI::ExistingFile);
  density->add_option("--rho", cfg.rho, "Existing density file to validate and rewrite")
      ->check(CLI::ExistingFile);
  density->add_option("--dim", cfg.dim, "Dimension for presets")->check(CLI::PositiveNumber);
  density->add_option("--beta", cfg.beta, "Inverse temperature")->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  density->add_option("--epsilon", cfg.epsilon,
                      "thermal-qho without --dim: truncate where the tail drops below epsilon")
      ->check(CLI::PositiveNumber);

  auto* sample = app.add_subcommand("sample", "Draw a sample batch");
  common(sample);
  seeded(sample);
  sample->add_option("--rho", cfg.rho, "Density operator file")->required()->check(CLI::ExistingFile);
  sample->add_option("--measure", cfg.measure, "G | GAP-mixture | GAP-reweight")
      ->check(CLI::IsMember({"G", "GAP-mixture", "GAP-reweight"}))
      ->capture_default_str();
  sample->add_option("--n", cfg.n, "Batch size")->check(CLI::PositiveNumber)->capture_default_str();

  auto* est = app.add_subcommand("estimate", "Estimate mean, covariance and density operator");
  common(est);
  est->add_option("batch", cfg.batch, "Sample batch file")->required()->check(CLI::ExistingFile);
  est->add_option("--ref", cfg.ref, "Reference density file")->check(CLI::ExistingFile);

  auto* charfn = app.add_subcommand("charfn", "Closed-form characteristic-function gaps");
  common(charfn);
  seeded(charfn);
  charfn->add_option("--rho", cfg.rho, "Target density file")->required()->check(CLI::ExistingFile);
  charfn->add_option("--sigma", cfg.sigma, "Perturbation density file (default: maximally mixed)")
      ->check(CLI::ExistingFile);
  charfn->add_option("--ns", cfg.ns, "Mixture indices n")->delimiter(',')->capture_default_str();
  charfn->add_option("--m", cfg.panel_size, "Number of probe vectors")
      ->check(CLI::PositiveNumber);

  auto* cont = app.add_subcommand("continuity", "GAP(rho_n) vs GAP(rho) panel discrepancies");
  common(cont);
  seeded(cont);
  cont->add_option("--rho", cfg.rho, "Target density file")->required()->check(CLI::ExistingFile);
  cont->add_option("--sigma", cfg.sigma, "Perturbation density file (default: maximally mixed)")
      ->check(CLI::ExistingFile);
  cont->add_option("--ns", cfg.ns, "Mixture indices n")->delimiter(',')->capture_default_str();
  cont->add_option("--n", cfg.n, "Batch size per leg")->check(CLI::PositiveNumber);
  cont->add_option("--m", cfg.panel_size, "Panel size")->check(CLI::Range(3, 1000))
      ->capture_default_str();
  cont->add_flag("--csv", cfg.csv, "Emit CSV instead of JSON");

  auto* ver = app.add_subcommand("verify", "Run verification suites");
  common(ver);
  seeded(ver);
  ver->add_option("--suite", cfg.suite, "core | continuity | counterexample | all")
      ->check(CLI::IsMember({"core", "continuity", "counterexample", "all"}))
      ->capture_default_str();

  app.footer("Defaults: seed 42, N = 100000, panel m = 12, support cutoff 1e-12, "
             "truncation cap 1e6.\nExit codes: 0 ok, 1 verification failed, 2 usage, 3 numeric error.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*density) {
      if (!cfg.preset.empty() && cfg.preset != "thermal-qho" && cfg.dim == 0)
        throw CLI::ValidationError("--dim", "required for this preset");
      if (cfg.preset == "thermal-qho" && cfg.dim == 0 && cfg.epsilon == 0.0)
        throw CLI::ValidationError("--dim", "thermal-qho needs --dim or --epsilon");
      if (cfg.preset == "thermal-qho" && cfg.dim == 0 && cfg.beta == 0.0)
        throw CLI::ValidationError("--beta", "truncation needs beta > 0");
      return cmd_density(cfg);
    }
    if (*sample) return cmd_sample(cfg);
    if (*est) return cmd_estimate(cfg);
    if (*charfn) return cmd_charfn(cfg);
    if (*cont) {
      if (cont->count("--n") == 0) cfg.n = 50'000;
      return cmd_continuity(cfg);
    }
    if (*ver) return cmd_verify(cfg);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const gap::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const gap::Error& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}
