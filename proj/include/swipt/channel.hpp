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

#include <cstdint>
#include <random>
#include <vector>

#include "swipt/linalg.hpp"

namespace swipt {

/// Link-level parameters of the downlink (one transmitter, K single-antenna
/// receivers: one desired receiver plus K-1 idle receivers).
struct SystemConfig {
  int num_antennas = 6;
  int num_receivers = 3;
  double carrier_freq = 470e6;       ///< Hz
  double reference_distance = 2.0;   ///< m
  double max_distance = 10.0;        ///< m
  double breakpoint_distance = 5.0;  ///< m, free space up to here
  double breakpoint_exponent = 3.5;  ///< 10*n dB/decade beyond the breakpoint
  double rician_factor = 1.9952623149688795;  ///< linear (3 dB); +inf for pure LOS
  double antenna_gain = 10.0;        ///< combined linear link gain (10 dB)
  double noise_power = 5.011872336272715e-06;  ///< W (-23 dBm)
  std::vector<double> conversion_efficiency{0.5, 0.5};  ///< per idle receiver

  /// Throws DomainError when an invariant is violated.
  void validate() const;
};

struct ChannelRealization {
  CVec h;                       ///< desired receiver
  std::vector<CVec> g;          ///< idle receivers
  std::vector<double> distances;  ///< desired first, then idle receivers
};

struct GramSet {
  CMat h;               ///< h h^H
  std::vector<CMat> g;  ///< g_k g_k^H

  int num_antennas() const { return static_cast<int>(h.rows()); }
  int num_idle() const { return static_cast<int>(g.size()); }
};

/// Path loss in dB: free space up to the breakpoint, then
/// 10*breakpoint_exponent dB per decade. Throws DomainError below the
/// reference distance.
double path_loss_db(double distance, const SystemConfig& config);

/// antenna_gain * 10^(-PL/10).
double path_loss_gain(double distance, const SystemConfig& config);

/// sqrt(k/(k+1)) a + sqrt(1/(k+1)) n with a_i = exp(j pi i sin(theta)),
/// theta ~ U[-pi/2, pi/2), n ~ CN(0, I). rician_factor = +inf gives pure LOS.
CVec sample_small_scale(std::mt19937_64& rng, int num_antennas, double rician_factor);

/// Deterministic in (seed, config). Receivers are drawn in order desired,
/// idle_1, ..., idle_{K-1}; each draws distance, LOS angle, then N_t
/// circularly-symmetric Gaussian entries.
ChannelRealization sample_channels(std::uint64_t seed, const SystemConfig& config);

/// Seed used for realization `index` of a run with `master_seed`.
inline std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t index) {
  return master_seed + index;
}

GramSet gram_matrices(const ChannelRealization& realization);

/// Rank-one Hermitian outer product v v^H with exact symmetry.
CMat outer_product(const CVec& v);

}  // namespace swipt
