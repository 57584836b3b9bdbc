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

#include "swipt/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "swipt/errors.hpp"

namespace swipt {

namespace {

constexpr double kSpeedOfLight = 3e8;

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

double free_space_db(double distance, double freq) {
  return 20.0 * std::log10(4.0 * std::numbers::pi * distance * freq / kSpeedOfLight);
}

}  // namespace

void SystemConfig::validate() const {
  if (num_antennas < 2) throw DomainError("num_antennas must be > 1");
  if (num_receivers < 1) throw DomainError("num_receivers must be >= 1");
  if (!positive_finite(carrier_freq)) throw DomainError("carrier_freq must be positive");
  if (!positive_finite(reference_distance) || !positive_finite(max_distance) ||
      reference_distance >= max_distance) {
    throw DomainError("need 0 < reference_distance < max_distance");
  }
  if (!positive_finite(breakpoint_distance)) throw DomainError("breakpoint_distance must be positive");
  if (!positive_finite(breakpoint_exponent)) throw DomainError("breakpoint_exponent must be positive");
  if (std::isnan(rician_factor) || rician_factor < 0.0) {
    throw DomainError("rician_factor must be >= 0");
  }
  if (!positive_finite(antenna_gain)) throw DomainError("antenna_gain must be positive");
  if (!positive_finite(noise_power)) throw DomainError("noise_power must be positive");
  if (conversion_efficiency.size() != static_cast<std::size_t>(num_receivers - 1)) {
    throw DomainError("conversion_efficiency needs one entry per idle receiver (" +
                      std::to_string(num_receivers - 1) + ")");
  }
  for (double e : conversion_efficiency) {
    if (!(e >= 0.0 && e <= 1.0)) throw DomainError("conversion_efficiency entries must lie in [0, 1]");
  }
}

double path_loss_db(double distance, const SystemConfig& config) {
  if (!(distance >= config.reference_distance)) {
    throw DomainError("distance " + std::to_string(distance) + " below reference distance");
  }
  const double bp = config.breakpoint_distance;
  if (distance <= bp) return free_space_db(distance, config.carrier_freq);
  return free_space_db(bp, config.carrier_freq) +
         10.0 * config.breakpoint_exponent * std::log10(distance / bp);
}

double path_loss_gain(double distance, const SystemConfig& config) {
  return config.antenna_gain * std::pow(10.0, -path_loss_db(distance, config) / 10.0);
}

CVec sample_small_scale(std::mt19937_64& rng, int num_antennas, double rician_factor) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi / 2, std::numbers::pi / 2);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const double theta = angle(rng);
  const bool los_only = std::isinf(rician_factor);
  const double los_w = los_only ? 1.0 : std::sqrt(rician_factor / (rician_factor + 1.0));
  const double nlos_w = los_only ? 0.0 : std::sqrt(1.0 / (rician_factor + 1.0));
  CVec out(num_antennas);
  for (int i = 0; i < num_antennas; ++i) {
    const Complex los = std::polar(1.0, std::numbers::pi * i * std::sin(theta));
    Complex nlos{0.0, 0.0};
    if (!los_only) {
      const double re = normal(rng);
      const double im = normal(rng);
      nlos = Complex(re, im);
    }
    out(i) = los_w * los + nlos_w * nlos;
  }
  return out;
}

ChannelRealization sample_channels(std::uint64_t seed, const SystemConfig& config) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(config.reference_distance, config.max_distance);
  ChannelRealization out;
  out.distances.reserve(config.num_receivers);
  out.g.reserve(config.num_receivers - 1);
  for (int r = 0; r < config.num_receivers; ++r) {
    const double d = dist(rng);
    CVec v = std::sqrt(path_loss_gain(d, config)) *
             sample_small_scale(rng, config.num_antennas, config.rician_factor);
    out.distances.push_back(d);
    if (r == 0) {
      out.h = std::move(v);
    } else {
      out.g.push_back(std::move(v));
    }
  }
  return out;
}

CMat outer_product(const CVec& v) {
  CMat m = v * v.adjoint();
  return hermitian_part(m);
}

GramSet gram_matrices(const ChannelRealization& realization) {
  GramSet out;
  out.h = outer_product(realization.h);
  out.g.reserve(realization.g.size());
  for (const auto& g : realization.g) {
    if (g.size() != realization.h.size()) throw DomainError("idle channel length mismatch");
    out.g.push_back(outer_product(g));
  }
  return out;
}

}  // namespace swipt
