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

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace swipt {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

/// Tolerance on the imaginary residue of a Hermitian quadratic form.
inline constexpr double kImagResidueTol = 1e-10;

/// (A + A^H) / 2.
CMat hermitian_part(const CMat& a);

/// max |A - A^H| entrywise.
double hermitian_residual(const CMat& a);

/// Re(x^H A x). Throws std::logic_error when the imaginary residue exceeds
/// kImagResidueTol relative to max(1, |x|^2 |A|_F).
double quad_form(const CVec& x, const CMat& a);

/// Re Tr(A B). Same residue check as quad_form.
double trace_product(const CMat& a, const CMat& b);

/// Eigenvalues of a Hermitian matrix in descending order.
RVec eigenvalues_desc(const CMat& a);

double min_eigenvalue(const CMat& a);
double max_eigenvalue(const CMat& a);

}  // namespace swipt
