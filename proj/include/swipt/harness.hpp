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

#pragma once

// Experiment configuration, Monte-Carlo orchestration over channel draws,
// single-realization inspection, CSV/JSON emission and the self-test.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swipt/allocator.hpp"
#include "swipt/channel.hpp"
#include "swipt/metrics.hpp"
#include "swipt/oracle.hpp"

namespace swipt {

/// Everything a run depends on. Defaults reproduce the reference study:
/// six antennas, three receivers, 20 dBm budget, -23 dBm noise,
/// 10 dB / -10 dB SINR targets, eps = 0.5, 3 dB Rician factor.
struct ExperimentConfig {
  SystemConfig system;
  QosTargets qos;
  /// Uniform grid size, used when `lambdas` is empty.
  int lambda_points = 11;
  /// Explicit grid; overrides lambda_points when non-empty.
  std::vector<Weights> lambdas;
  int realizations = 1000;
  std::uint64_t seed = 1;
  std::vector<Scheme> schemes = all_schemes();
  std::string output = "tradeoff.csv";
  /// Hz. Carried as metadata only: every rate is per Hz.
  double bandwidth = 200e3;

  std::vector<Weights> lambda_grid() const;
  std::vector<double> eps() const { return system.conversion_efficiency; }
  /// Sets K and resizes the per-idle-receiver lists, repeating their first
  /// entries.
  void set_receivers(int k);
  /// Throws DomainError when an invariant is violated.
  void validate() const;
};

/// JSON document with the field names of ExperimentConfig, SystemConfig and
/// QosTargets (linear units, Watts, metres, Hz). Missing keys keep their
/// defaults; unknown keys are rejected with DomainError. `rician_factor`
/// also accepts the string "inf". Per-idle-receiver lists that are not
/// given follow num_receivers.
ExperimentConfig parse_config(std::string_view json_text);
/// Reads and parses a file. Throws DomainError when it cannot be read.
ExperimentConfig load_config(const std::string& path);
/// Canonical JSON (sorted keys, full precision); parse_config inverts it.
std::string config_to_json(const ExperimentConfig& config);
/// 16 hex digits of the FNV-1a hash of config_to_json.
std::string config_hash(const ExperimentConfig& config);

/// One CSV row: averages over the realizations feasible for every selected
/// scheme at this weight (NaN when there are none).
struct TradeoffRow {
  Weights weights;
  Scheme scheme = Scheme::kRelaxedP3;
  double avg_tp_w = 0.0;
  double avg_tp_dbm = 0.0;  ///< of avg_tp_w
  double avg_eff_pct = 0.0;
  double avg_csec = 0.0;    ///< bit/s/Hz
  double rank1_rate = 0.0;  ///< over the averaged realizations
  double prop2_rate = 0.0;  ///< over the averaged realizations
  int n_feasible = 0;       ///< realizations this scheme solved
  int n_infeasible = 0;     ///< realizations - n_feasible
  int n_averaged = 0;
};

struct TradeoffTable {
  std::vector<TradeoffRow> rows;  ///< weight-major, then configured scheme order
  int realizations = 0;
  int infeasible_draws = 0;       ///< draws without any allocation (discarded)
  int failed_draws = 0;           ///< draws where the utopia solves failed
  /// Soft trade-off check, per configured scheme: consecutive grid points of
  /// a draw where power or efficiency rises with lambda2, summed over draws,
  /// and the number of draws with at least one such point.
  std::vector<int> monotonicity_violations;
  std::vector<int> draws_with_violations;
};

struct RunOptions {
  /// Distribute realizations over OpenMP threads. Results are identical
  /// either way: every draw has its own seed and sums run in fixed order.
  bool parallel = true;
};

TradeoffTable run_montecarlo(const ExperimentConfig& config, const RunOptions& options = {});

/// Header lambda1,lambda2,scheme,avg_tp_dbm,avg_tp_w,avg_eff_pct,
/// avg_csec_bps_hz,rank1_rate,prop2_rate,n_feasible,n_infeasible.
std::string to_csv(const TradeoffTable& table);
/// Sidecar document: config hash, seed, counts, bandwidth, bound caveat.
std::string metadata_json(const ExperimentConfig& config, const TradeoffTable& table);
/// Writes the CSV to config.output and the sidecar to config.output + ".meta.json".
void write_outputs(const ExperimentConfig& config, const TradeoffTable& table);

/// Per-point CSV of a single-realization sweep.
std::string sweep_csv(const ParetoSweep& sweep);

struct SchemeDetail {
  Scheme scheme = Scheme::kRelaxedP3;
  bool feasible = false;
  std::string failure;
  std::optional<SolveReport> report;
  std::optional<FeasibilityReport> feasibility;  ///< of the recovered allocation
  RVec w_spectrum;  ///< eigenvalues of W_bar, descending
  RVec v_spectrum;  ///< eigenvalues of V_bar, descending
  /// |TP(recovered) - 1/xi| / (1/xi); NaN without a recovered allocation.
  double recovery_error = 0.0;
};

struct SingleReport {
  std::uint64_t seed = 0;
  Weights weights;
  ChannelRealization channels;
  bool feasible = false;
  std::string failure;
  UtopiaValues utopia;
  std::vector<SchemeDetail> schemes;
};

/// Solves one channel draw (seed used as is) for every configured scheme.
SingleReport run_single(const ExperimentConfig& config, std::uint64_t seed,
                        const Weights& weights);
std::string format_text(const SingleReport& report);
std::string to_json(const SingleReport& report);

struct SelftestOptions {
  /// Test hook: when positive, replaces the solver's feasibility and gap
  /// tolerances, which must make the self-test fail.
  double corrupt_tolerance = 0.0;
  int instances = 20;       ///< default-configuration draws
  int tiny_instances = 4;   ///< two-antenna draws for the oracle comparison
};

struct SelftestCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestReport {
  std::vector<SelftestCheck> checks;
  bool passed() const;
};

/// Solver conformance, normalization and recovery identities, rank-one
/// properties, scheme ordering, secrecy floor and oracle agreement.
SelftestReport selftest(const SelftestOptions& options = {});

}  // namespace swipt
