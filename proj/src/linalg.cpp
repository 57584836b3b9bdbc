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

#include "swipt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swipt {

CMat hermitian_part(const CMat& a) { return (a + a.adjoint()) * 0.5; }

double hermitian_residual(const CMat& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

double checked_real(Complex value, double scale, const char* what) {
  if (std::abs(value.imag()) > kImagResidueTol * std::max(1.0, scale)) {
    throw std::logic_error(std::string(what) + ": imaginary residue " +
                           std::to_string(value.imag()) + " (non-Hermitian input?)");
  }
  return value.real();
}

}  // namespace

double quad_form(const CVec& x, const CMat& a) {
  const Complex value = x.dot(a * x);  // x^H (A x)
  return checked_real(value, x.squaredNorm() * a.norm(), "quad_form");
}

double trace_product(const CMat& a, const CMat& b) {
  // Tr(AB) = sum_ij A_ij B_ji
  const Complex value = (a.transpose().cwiseProduct(b)).sum();
  return checked_real(value, a.norm() * b.norm(), "trace_product");
}

RVec eigenvalues_desc(const CMat& a) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  RVec ev = es.eigenvalues();
  std::reverse(ev.data(), ev.data() + ev.size());
  return ev;
}

double min_eigenvalue(const CMat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue(const CMat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(a.rows() - 1);
}

}  // namespace swipt
