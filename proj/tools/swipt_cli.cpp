// Copyright 2026 The swipt-secure Authors
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

// Command-line front end: montecarlo, single, sweep and selftest.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swipt/errors.hpp"
#include "swipt/harness.hpp"

namespace {

using namespace swipt;

// Flags shared by the experiment subcommands; unset ones keep the config value.
struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> schemes;
  std::optional<int> lambda_points;
  std::optional<int> realizations;
  std::optional<int> receivers;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "JSON experiment config (defaults when omitted)")
        ->check(CLI::ExistingFile);
    app->add_option("--seed", seed, "master seed (single: channel seed)");
    app->add_option("--out", out, "output path");
    app->add_option("--schemes", schemes,
                    "comma-separated subset of relaxed,suboptimal1,suboptimal2,baseline1,baseline2");
    app->add_option("--lambda-points", lambda_points, "uniform weight grid size")
        ->check(CLI::PositiveNumber);
    app->add_option("--realizations", realizations, "channel draws")->check(CLI::PositiveNumber);
    app->add_option("--receivers", receivers, "number of receivers K (one desired, K-1 idle)")
        ->check(CLI::PositiveNumber);
  }

  ExperimentConfig resolve() const {
    ExperimentConfig c = config.empty() ? ExperimentConfig{} : load_config(config);
    if (seed) c.seed = *seed;
    if (out) c.output = *out;
    if (schemes) {
      c.schemes.clear();
      std::stringstream list(*schemes);
      std::string name;
      while (std::getline(list, name, ',')) {
        const auto s = parse_scheme(name);
        if (!s) throw DomainError("unknown scheme '" + name + "'");
        c.schemes.push_back(*s);
      }
    }
    if (lambda_points) {
      c.lambda_points = *lambda_points;
      c.lambdas.clear();
    }
    if (realizations) c.realizations = *realizations;
    if (receivers) c.set_receivers(*receivers);
    c.validate();
    return c;
  }
};

void write_or_print(const std::optional<std::string>& path, const std::string& text) {
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f) throw DomainError("cannot write '" + *path + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secure SWIPT power allocation: trade-off studies and checks"};
  app.require_subcommand(1);

  Common mc_opts, single_opts, sweep_opts;
  bool serial = false;
  auto* mc = app.add_subcommand("montecarlo", "average the trade-off over channel draws");
  mc_opts.attach(mc);
  mc->add_flag("--serial", serial, "run on one thread");

  double lambda1 = 0.5;
  bool as_json = false;
  auto* single = app.add_subcommand("single", "detailed report for one channel draw");
  single_opts.attach(single);
  single->add_option("--lambda1", lambda1, "weight of the efficiency objective")
      ->check(CLI::Range(0.0, 1.0));
  single->add_flag("--json", as_json, "machine-readable output");

  auto* sweep = app.add_subcommand("sweep", "weight sweep for one channel draw");
  sweep_opts.attach(sweep);

  SelftestOptions st;
  auto* selftest_cmd = app.add_subcommand("selftest", "solver, property and oracle checks");
  selftest_cmd->add_option("--instances", st.instances, "default-configuration draws")
      ->check(CLI::PositiveNumber);
  selftest_cmd->add_option("--corrupt-tolerance", st.corrupt_tolerance,
                           "test hook: override solver tolerances (must fail)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*mc) {
      const ExperimentConfig c = mc_opts.resolve();
      const TradeoffTable t = run_montecarlo(c, {.parallel = !serial});
      write_outputs(c, t);
      std::cout << "wrote " << c.output << " (" << t.rows.size() << " rows) and " << c.output
                << ".meta.json\n"
                << "draws: " << t.realizations << ", discarded infeasible: " << t.infeasible_draws
                << ", failed: " << t.failed_draws << '\n';
      for (std::size_t i = 0; i < t.monotonicity_violations.size(); ++i) {
        if (t.monotonicity_violations[i] == 0) continue;
        std::cerr << "soft check: " << to_string(c.schemes[i]) << " trade-off not monotone at "
                  << t.monotonicity_violations[i] << " grid steps in "
                  << t.draws_with_violations[i] << " draws\n";
      }
    } else if (*single) {
      const ExperimentConfig c = single_opts.resolve();
      const std::uint64_t seed = single_opts.seed ? *single_opts.seed : realization_seed(c.seed, 0);
      const SingleReport r = run_single(c, seed, {lambda1, 1.0 - lambda1});
      write_or_print(single_opts.out, as_json ? to_json(r) : format_text(r));
    } else if (*sweep) {
      const ExperimentConfig c = sweep_opts.resolve();
      const std::uint64_t seed = realization_seed(c.seed, 0);
      const GramSet g = gram_matrices(sample_channels(seed, c.system));
      const std::vector<Weights> grid = c.lambda_grid();
      const ParetoSweep s = pareto_sweep(g, c.qos, c.eps(), grid, c.schemes);
      write_or_print(sweep_opts.out, sweep_csv(s));
      for (Scheme scheme : c.schemes) {
        const int v = count_monotonicity_violations(s.points, scheme);
        if (v > 0) {
          std::cerr << "soft check: " << to_string(scheme) << " trade-off not monotone at " << v
                    << " grid steps\n";
        }
      }
    } else if (*selftest_cmd) {
      const SelftestReport r = selftest(st);
      for (const SelftestCheck& c : r.checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
      }
      std::cout << (r.passed() ? "selftest passed" : "selftest FAILED") << '\n';
      return r.passed() ? 0 : 1;
    }
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what();
    if (!e.certificate().empty()) std::cerr << " [" << e.certificate() << ']';
    std::cerr << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
