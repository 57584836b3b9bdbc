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

#include "swipt/sdp_conformance.hpp"

#include <cmath>
#include <numbers>

namespace swipt::sdp {

namespace {

CMat mat2(Complex a, Complex b, Complex c, Complex d) {
  CMat m(2, 2);
  m << a, b, c, d;
  return m;
}

CMat e_ij(int n, int i, int j) {
  CMat m = CMat::Zero(n, n);
  if (i == j) {
    m(i, i) = 1.0;
  } else {
    m(i, j) = 0.5;
    m(j, i) = 0.5;
  }
  return m;
}

// min <C, X> s.t. Tr X = 1 has value lambda_min(C).
ConeProgram trace_program(const CMat& c, BlockKind kind) {
  ConeProgram p;
  const int n = static_cast<int>(c.rows());
  const int b = p.add_block(kind, n, "X");
  p.objective.add(b, c);
  p.add_constraint(LinearForm{}.add(b, CMat::Identity(n, n)), Relation::kEqual, 1.0, "trace");
  return p;
}

// F diag(d) F^H with F the unitary 4-point DFT, so the spectrum is d.
CMat dft_conjugated(const RVec& d) {
  const int n = static_cast<int>(d.size());
  CMat f(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      f(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(n)), 2.0 * std::numbers::pi * j * k / n);
    }
  }
  return hermitian_part(f * d.cast<Complex>().asDiagonal() * f.adjoint());
}

}  // namespace

std::vector<AnalyticProblem> analytic_suite() {
  std::vector<AnalyticProblem> suite;

  suite.push_back({"unit trace", trace_program(CMat::Identity(2, 2), BlockKind::kHermitian), 1.0});

  {
    ConeProgram p;
    const int b = p.add_block(BlockKind::kSymmetric, 2, "X");
    p.objective.add(b, e_ij(2, 0, 0));
    p.add_constraint(LinearForm{}.add(b, e_ij(2, 0, 1)), Relation::kEqual, 1.0, "off");
    p.add_constraint(LinearForm{}.add(b, e_ij(2, 1, 1)), Relation::kEqual, 1.0, "corner");
    suite.push_back({"determinant bound", std::move(p), 1.0});
  }

  const CMat c = mat2(2, 1, 1, 3);
  suite.push_back({"smallest eigenvalue", trace_program(c, BlockKind::kSymmetric),
                   (5.0 - std::sqrt(5.0)) / 2.0});
  suite.push_back({"largest eigenvalue", trace_program(-c, BlockKind::kSymmetric),
                   -(5.0 + std::sqrt(5.0)) / 2.0});
  suite.push_back({"complex eigenvalue",
                   trace_program(mat2(0, Complex(0, -1), Complex(0, 1), 0), BlockKind::kHermitian),
                   -1.0});
  {
    RVec d(4);
    d << 3.0, -0.75, 1.5, 2.0;
    suite.push_back({"rotated spectrum", trace_program(dft_conjugated(d), BlockKind::kHermitian),
                     -0.75});
  }

  {
    // min x1 + 2 x2  s.t. x1 + x2 >= 1, x1 <= 0.7
    ConeProgram p;
    const int x1 = p.add_block(BlockKind::kNonnegative, 1, "x1");
    const int x2 = p.add_block(BlockKind::kNonnegative, 1, "x2");
    p.objective.add_scalar(x1, 1.0).add_scalar(x2, 2.0);
    p.add_constraint(LinearForm{}.add_scalar(x1, 1).add_scalar(x2, 1), Relation::kGreaterEqual,
                     1.0, "sum");
    p.add_constraint(LinearForm{}.add_scalar(x1, 1), Relation::kLessEqual, 0.7, "cap");
    suite.push_back({"linear program with caps", std::move(p), 1.3});
  }
  {
    // min x1 + x2 + x3  s.t. x1 + 2 x2 + 3 x3 = 6
    ConeProgram p;
    for (int i = 0; i < 3; ++i) p.add_block(BlockKind::kNonnegative, 1, "x" + std::to_string(i));
    p.objective.add_scalar(0, 1).add_scalar(1, 1).add_scalar(2, 1);
    p.add_constraint(LinearForm{}.add_scalar(0, 1).add_scalar(1, 2).add_scalar(2, 3),
                     Relation::kEqual, 6.0, "eq");
    suite.push_back({"linear program with equality", std::move(p), 2.0});
  }
  {
    ConeProgram p;
    const int b = p.add_block(BlockKind::kSymmetric, 2, "X");
    p.objective.add(b, -0.25 * mat2(1, -1, -1, 1));
    p.add_constraint(LinearForm{}.add(b, e_ij(2, 0, 0)), Relation::kEqual, 1.0, "d0");
    p.add_constraint(LinearForm{}.add(b, e_ij(2, 1, 1)), Relation::kEqual, 1.0, "d1");
    suite.push_back({"two-node max-cut", std::move(p), -1.0});
  }
  {
    CVec a(3);
    a << 1, 2, 2;
    ConeProgram p;
    const int b = p.add_block(BlockKind::kHermitian, 3, "X");
    p.objective.add(b, CMat::Identity(3, 3));
    p.add_constraint(LinearForm{}.add(b, a * a.adjoint()), Relation::kGreaterEqual, 1.0, "aXa");
    suite.push_back({"minimum trace under a quadratic bound", std::move(p), 1.0 / 9.0});
  }
  {
    ConeProgram p;
    const int b = p.add_block(BlockKind::kSymmetric, 2, "X");
    p.objective.add(b, CMat::Identity(2, 2));
    p.add_constraint(LinearForm{}.add(b, e_ij(2, 0, 1)), Relation::kEqual, 1.0, "off");
    suite.push_back({"hyperbolic constraint", std::move(p), 2.0});
  }
  {
    ConeProgram p;
    const int s = p.add_block(BlockKind::kNonnegative, 1, "s");
    const int b = p.add_block(BlockKind::kSymmetric, 2, "X");
    p.objective.add_scalar(s, 1.0).add(b, CMat::Identity(2, 2));
    p.add_constraint(LinearForm{}.add(b, e_ij(2, 0, 1)), Relation::kEqual, 1.0, "off");
    p.add_constraint(LinearForm{}.add_scalar(s, 1.0), Relation::kGreaterEqual, 2.0, "floor");
    suite.push_back({"mixed scalar and matrix blocks", std::move(p), 4.0});
  }
  {
    const Complex z(1.0, 2.0);
    ConeProgram p;
    const int b = p.add_block(BlockKind::kHermitian, 2, "X");
    p.objective.add(b, CMat::Identity(2, 2));
    p.add_constraint(LinearForm{}.add(b, mat2(0, 0.5, 0.5, 0)), Relation::kEqual, z.real(), "re");
    p.add_constraint(LinearForm{}.add(b, mat2(0, Complex(0, 0.5), Complex(0, -0.5), 0)),
                     Relation::kEqual, z.imag(), "im");
    suite.push_back({"complex off-diagonal", std::move(p), 2.0 * std::abs(z)});
  }
  return suite;
}

std::vector<ConformanceResult> run_conformance(const SolverOptions& options,
                                               const ConformanceTolerances& tolerances) {
  std::vector<ConformanceResult> out;
  for (const AnalyticProblem& problem : analytic_suite()) {
    ConformanceResult r;
    r.name = problem.name;
    const ConeSolution sol = solve(problem.program, options);
    r.status = sol.status;
    r.objective_error = std::abs(sol.primal_objective - problem.optimum);
    r.duality_gap = sol.duality_gap;
    r.primal_infeasibility = sol.primal_infeasibility;
    r.dual_infeasibility = sol.dual_infeasibility;
    r.passed = sol.status == SolveStatus::kOptimal && r.objective_error <= tolerances.objective &&
               r.duality_gap <= tolerances.gap && r.primal_infeasibility <= tolerances.residual &&
               r.dual_infeasibility <= tolerances.residual;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace swipt::sdp
