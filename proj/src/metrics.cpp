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

#include "swipt/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "swipt/errors.hpp"

namespace swipt {

namespace {

void require_eps(std::span<const double> eps, const GramSet& grams) {
  if (eps.size() != grams.g.size()) throw DomainError("eps length must equal the number of idle receivers");
}

// Shared by the vector and covariance forms: only the "signal" term differs.
template <class Signal>
double sinr(Signal signal, const CMat& v, const CMat& m, double sigma_s2) {
  const double interference = trace_product(m, v);
  return std::max(0.0, signal) / (interference + sigma_s2);
}

template <class Alloc, class SinrFn>
double secrecy_impl(const Alloc& alloc, const GramSet& grams, double sigma_s2, SinrFn idle) {
  std::vector<double> idle_sinr;
  idle_sinr.reserve(grams.g.size());
  for (const auto& g : grams.g) idle_sinr.push_back(idle(alloc, g, sigma_s2));
  return secrecy_from_sinr(sinr_desired(alloc, grams.h, sigma_s2), idle_sinr);
}

}  // namespace

double QosTargets::max_gamma_tol() const {
  double m = 0.0;
  for (double g : gamma_tol) m = std::max(m, g);
  return m;
}

void QosTargets::validate(std::size_t num_idle) const {
  if (gamma_tol.size() != num_idle) throw DomainError("gamma_tol needs one entry per idle receiver");
  if (!(gamma_req > 0.0) || !std::isfinite(gamma_req)) throw DomainError("gamma_req must be positive");
  for (double g : gamma_tol) {
    if (!(g > 0.0) || !std::isfinite(g)) throw DomainError("gamma_tol entries must be positive");
  }
  if (!(gamma_req > max_gamma_tol())) throw DomainError("gamma_req must exceed every gamma_tol");
  if (!(p_max > 0.0) || !std::isfinite(p_max)) throw DomainError("p_max must be positive");
  if (!(sigma_s2 > 0.0) || !std::isfinite(sigma_s2)) throw DomainError("sigma_s2 must be positive");
}

double sinr_desired(const Allocation& alloc, const CMat& h, double sigma_s2) {
  return sinr(quad_form(alloc.w, h), alloc.v, h, sigma_s2);
}

double sinr_idle(const Allocation& alloc, const CMat& g, double sigma_s2) {
  return sinr(quad_form(alloc.w, g), alloc.v, g, sigma_s2);
}

double secrecy_capacity(const Allocation& alloc, const GramSet& grams, double sigma_s2) {
  return secrecy_impl(alloc, grams, sigma_s2,
                      [](const Allocation& a, const CMat& g, double s) { return sinr_idle(a, g, s); });
}

double harvested_power(const Allocation& alloc, const GramSet& grams, std::span<const double> eps) {
  require_eps(eps, grams);
  double total = 0.0;
  for (std::size_t k = 0; k < grams.g.size(); ++k) {
    total += eps[k] * (quad_form(alloc.w, grams.g[k]) + trace_product(grams.g[k], alloc.v));
  }
  return total;
}

double transmit_power(const Allocation& alloc) {
  return alloc.w.squaredNorm() + alloc.v.trace().real();
}

double harvesting_efficiency(const Allocation& alloc, const GramSet& grams,
                             std::span<const double> eps) {
  const double tp = transmit_power(alloc);
  if (!(tp > 0.0)) throw DomainError("harvesting efficiency undefined at zero transmit power");
  return harvested_power(alloc, grams, eps) / tp;
}

double sinr_desired(const CovarianceAllocation& alloc, const CMat& h, double sigma_s2) {
  return sinr(trace_product(h, alloc.w), alloc.v, h, sigma_s2);
}

double sinr_idle(const CovarianceAllocation& alloc, const CMat& g, double sigma_s2) {
  return sinr(trace_product(g, alloc.w), alloc.v, g, sigma_s2);
}

double secrecy_capacity(const CovarianceAllocation& alloc, const GramSet& grams, double sigma_s2) {
  return secrecy_impl(alloc, grams, sigma_s2, [](const CovarianceAllocation& a, const CMat& g,
                                                 double s) { return sinr_idle(a, g, s); });
}

double harvested_power(const CovarianceAllocation& alloc, const GramSet& grams,
                       std::span<const double> eps) {
  require_eps(eps, grams);
  double total = 0.0;
  for (std::size_t k = 0; k < grams.g.size(); ++k) {
    total += eps[k] * trace_product(grams.g[k], alloc.w + alloc.v);
  }
  return total;
}

double transmit_power(const CovarianceAllocation& alloc) {
  return alloc.w.trace().real() + alloc.v.trace().real();
}

double harvesting_efficiency(const CovarianceAllocation& alloc, const GramSet& grams,
                             std::span<const double> eps) {
  const double tp = transmit_power(alloc);
  if (!(tp > 0.0)) throw DomainError("harvesting efficiency undefined at zero transmit power");
  return harvested_power(alloc, grams, eps) / tp;
}

double secrecy_floor(const QosTargets& qos) {
  return std::log2(1.0 + qos.gamma_req) - std::log2(1.0 + qos.max_gamma_tol());
}

double secrecy_from_sinr(double sinr, std::span<const double> idle_sinr) {
  double worst = 0.0;
  for (double s : idle_sinr) worst = std::max(worst, std::log2(1.0 + s));
  return std::max(0.0, std::log2(1.0 + sinr) - worst);
}

}  // namespace swipt
