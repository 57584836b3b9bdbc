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

#include <span>
#include <vector>

#include "swipt/channel.hpp"

namespace swipt {

/// Beamformer w and artificial-noise covariance V.
struct Allocation {
  CVec w;
  CMat v;
};

/// Same quantities with the beamformer replaced by a covariance W (W = w w^H
/// for a rank-one allocation). Used to score relaxed solutions.
struct CovarianceAllocation {
  CMat w;
  CMat v;
};

struct QosTargets {
  double gamma_req = 10.0;           ///< linear SINR
  std::vector<double> gamma_tol{0.1, 0.1};  ///< per idle receiver, linear
  double p_max = 0.1;                ///< W
  double sigma_s2 = 5.011872336272715e-06;  ///< W

  double max_gamma_tol() const;
  /// Throws DomainError unless gamma_req > max gamma_tol > 0, p_max > 0,
  /// sigma_s2 > 0 and gamma_tol has `num_idle` entries.
  void validate(std::size_t num_idle) const;
};

double sinr_desired(const Allocation& alloc, const CMat& h, double sigma_s2);
double sinr_idle(const Allocation& alloc, const CMat& g, double sigma_s2);
double secrecy_capacity(const Allocation& alloc, const GramSet& grams, double sigma_s2);
double harvested_power(const Allocation& alloc, const GramSet& grams, std::span<const double> eps);
double transmit_power(const Allocation& alloc);
/// Throws DomainError when the transmit power is zero.
double harvesting_efficiency(const Allocation& alloc, const GramSet& grams,
                             std::span<const double> eps);

double sinr_desired(const CovarianceAllocation& alloc, const CMat& h, double sigma_s2);
double sinr_idle(const CovarianceAllocation& alloc, const CMat& g, double sigma_s2);
double secrecy_capacity(const CovarianceAllocation& alloc, const GramSet& grams, double sigma_s2);
double harvested_power(const CovarianceAllocation& alloc, const GramSet& grams,
                       std::span<const double> eps);
double transmit_power(const CovarianceAllocation& alloc);
double harvesting_efficiency(const CovarianceAllocation& alloc, const GramSet& grams,
                             std::span<const double> eps);

/// log2(1 + gamma_req) - log2(1 + max_k gamma_tol_k); log2(1 + gamma_req)
/// when there are no idle receivers.
double secrecy_floor(const QosTargets& qos);

/// [log2(1 + sinr) - max_k log2(1 + sinr_idle_k)]^+
double secrecy_from_sinr(double sinr, std::span<const double> idle_sinr);

}  // namespace swipt
