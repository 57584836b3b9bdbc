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

// Serial reference against OpenMP kernels: the grid oracle and the
// Monte-Carlo driver. Reports wall time and checks identical results.

#include <chrono>
#include <cstdio>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>

#include "swipt/errors.hpp"
#include "swipt/harness.hpp"

namespace {

using namespace swipt;

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same(const OracleResult& a, const OracleResult& b) {
  return a.feasible == b.feasible && a.objective == b.objective &&
         a.grid_objective == b.grid_objective && a.index == b.index &&
         (a.argument.w - b.argument.w).norm() == 0.0 && (a.argument.v - b.argument.v).norm() == 0.0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial versus OpenMP timing of the grid oracle and the Monte-Carlo driver"};
  int resolution = 256;
  int oracle_instances = 3;
  int realizations = 40;
  int receivers = 3;
  app.add_option("--resolution", resolution, "oracle grid resolution (even, >= 64)");
  app.add_option("--oracle-instances", oracle_instances, "two-antenna draws for the oracle");
  app.add_option("--realizations", realizations, "Monte-Carlo draws");
  app.add_option("--receivers", receivers, "receivers K for the Monte-Carlo run");
  CLI11_PARSE(app, argc, argv);

  std::printf("threads available: %d\n", omp_get_max_threads());
  bool all_same = true;

  // Grid oracle on two-antenna draws with one idle receiver.
  {
    ExperimentConfig tiny;
    tiny.system.num_antennas = 2;
    tiny.set_receivers(2);
    const std::vector<double> eps = tiny.eps();
    const Weights w{0.5, 0.5};
    OracleOptions opt;
    opt.resolution = resolution;
    double t_serial = 0.0, t_parallel = 0.0;
    int done = 0;
    for (std::uint64_t seed = 5000; done < oracle_instances && seed < 5500; ++seed) {
      const GramSet g = gram_matrices(sample_channels(seed, tiny.system));
      UtopiaValues u;
      try {
        u = compute_utopia(g, tiny.qos, eps);
      } catch (const InfeasibleError&) {
        continue;
      }
      ++done;
      OracleResult a, b;
      t_serial += seconds([&] { a = grid_oracle_serial(g, tiny.qos, eps, w, u, opt); });
      t_parallel += seconds([&] { b = grid_oracle(g, tiny.qos, eps, w, u, opt); });
      all_same = all_same && same(a, b);
    }
    std::printf("grid oracle   R=%d, %d draws: serial %.3f s, openmp %.3f s, speedup %.2f\n",
                resolution, done, t_serial, t_parallel, t_serial / t_parallel);
  }

  // Monte-Carlo driver on the default configuration.
  {
    ExperimentConfig c;
    c.set_receivers(receivers);
    c.realizations = realizations;
    TradeoffTable a, b;
    const double t_serial = seconds([&] { a = run_montecarlo(c, {.parallel = false}); });
    const double t_parallel = seconds([&] { b = run_montecarlo(c, {.parallel = true}); });
    all_same = all_same && to_csv(a) == to_csv(b);
    std::printf("monte carlo   %d draws, K=%d: serial %.3f s, openmp %.3f s, speedup %.2f\n",
                realizations, receivers, t_serial, t_parallel, t_serial / t_parallel);
  }
  std::printf("results identical: %s\n", all_same ? "yes" : "NO");
  return all_same ? 0 : 1;
}
