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

// Independent checks of allocations: constraint residuals in the original
// variables, and an exhaustive search over two-antenna allocations.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "swipt/allocator.hpp"
#include "swipt/channel.hpp"
#include "swipt/metrics.hpp"

namespace swipt {

/// Margins of the original constraints; positive means satisfied.
struct FeasibilityReport {
  double c1_margin = 0.0;          ///< SINR of the desired receiver minus the target
  std::vector<double> c2_margins;  ///< tolerable SINR minus achieved, per idle receiver
  double c3_margin = 0.0;          ///< P_max minus transmit power, W
  double c4_min_eigenvalue = 0.0;  ///< smallest eigenvalue of V
  double tolerance = 0.0;
  bool feasible = false;
};

/// Each margin is compared against -tolerance times its own target
/// (Gamma_req, Gamma_tol_k, P_max, and P_max for the eigenvalue of V).
FeasibilityReport feasibility_residuals(const Allocation& alloc, const GramSet& grams,
                                        const QosTargets& qos, double tolerance = 1e-6);

/// Grid indices of the oracle's best point: beam polar angle, beam phase,
/// noise-basis polar angle, noise-basis phase.
using GridIndex = std::array<int, 4>;

struct OracleResult {
  bool feasible = false;         ///< false: no feasible point at this resolution
  double objective = 0.0;        ///< Tchebycheff value of `argument`
  double grid_objective = 0.0;   ///< best value on the grid itself, before refinement
  Allocation argument;
  GridIndex index{};
  std::int64_t directions = 0;   ///< (beam, noise-basis) pairs examined
};

struct OracleOptions {
  int resolution = 128;          ///< even, >= 64
  BeamStructure beam = BeamStructure::kFull;
  NoiseStructure noise = NoiseStructure::kFull;
  /// Polish the best grid points with shrinking local grids in the angles.
  bool refine = true;
};

/// Minimizes the Tchebycheff objective over two-antenna allocations
///   w = sqrt(p) (cos phi, sin phi e^{i psi}),
///   V = v1 u1 u1^H + v2 u2 u2^H,  u1 = (cos theta, sin theta e^{i chi}),
/// in the frame where h lies along the first axis. For each direction pair
/// the powers (p, v1, v2) are optimized exactly: normalized by the transmit
/// power they live on a simplex where the constraints are half-planes, and
/// the minimum lies on the boundary of that polygon.
/// With at most one idle receiver the phases are eliminated exactly (the
/// beam's idle gain enters as one more linear variable over its attainable
/// interval; the noise basis takes the gain-maximizing phase), so only
/// phi = (pi/2) i/R and theta = (pi/2) b/R are gridded. With two idle
/// receivers phi, psi, theta <= pi/4 and chi are all gridded.
/// Grids are nested, so doubling R never worsens grid_objective. Ties go to
/// the smallest grid index. The best grid points are then polished by
/// local pattern search; `objective` is never worse than grid_objective and
/// is recomputed from `argument` through the metrics functions.
OracleResult grid_oracle(const GramSet& grams, const QosTargets& qos, std::span<const double> eps,
                         const Weights& weights, const UtopiaValues& utopia,
                         const OracleOptions& options = {});

/// Single-threaded reference of grid_oracle; returns identical results.
OracleResult grid_oracle_serial(const GramSet& grams, const QosTargets& qos,
                                std::span<const double> eps, const Weights& weights,
                                const UtopiaValues& utopia, const OracleOptions& options = {});

}  // namespace swipt
