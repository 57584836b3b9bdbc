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

// Small dense conic programs over Hermitian/symmetric PSD blocks and
// nonnegative scalars, solved by a homogeneous self-dual primal-dual
// interior-point method (Nesterov-Todd direction, Mehrotra predictor-corrector).
//
// Primal:  minimize   sum_b Re Tr(C_b X_b)
//          subject to sum_b Re Tr(A_ib X_b)  (=, <=, >=)  b_i,   X_b in K_b
//
// Dual multipliers follow the convention S_b = C_b - sum_i y_i A_ib with
// y_i = m_i for '=' and '>=' rows and y_i = -m_i for '<=' rows, where m_i is
// the reported (sign-corrected) multiplier. Inequality multipliers are >= 0.

#include <iosfwd>
#include <string>
#include <vector>

#include "swipt/linalg.hpp"

namespace swipt::sdp {

enum class BlockKind { kHermitian, kSymmetric, kNonnegative };

struct BlockSpec {
  BlockKind kind = BlockKind::kNonnegative;
  int dim = 1;
  std::string name;
};

enum class Relation { kEqual, kLessEqual, kGreaterEqual };

/// Coefficient of one block inside a linear functional. Scalars use 1x1.
struct Term {
  int block = 0;
  CMat coeff;
};

struct LinearForm {
  std::vector<Term> terms;

  LinearForm& add(int block, CMat coeff);
  LinearForm& add_scalar(int block, double coeff);
  double evaluate(const std::vector<CMat>& x) const;
};

struct Constraint {
  LinearForm lhs;
  Relation relation = Relation::kEqual;
  double rhs = 0.0;
  std::string label;
};

struct ConeProgram {
  std::vector<BlockSpec> blocks;
  LinearForm objective;
  std::vector<Constraint> constraints;

  int add_block(BlockKind kind, int dim, std::string name);
  int add_constraint(LinearForm lhs, Relation relation, double rhs, std::string label);

  /// Throws DomainError on shape mismatch, non-Hermitian coefficients,
  /// complex data on real blocks, non-finite data, or zero constraints.
  void validate() const;
};

struct SolverOptions {
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  int max_iterations = 100;
  double step_fraction = 0.98;
  /// tau/kappa ratio under which the iterate is read as an infeasibility ray.
  double infeasibility_ratio = 1e-8;
  /// Once all tolerances hold, iterate a few more steps until the largest
  /// residual-to-tolerance ratio (per-block complementarity included,
  /// against 10 * gap_tol) falls below this; the best accepted point is
  /// returned. 1 stops at the first point meeting every target.
  double polish_target = 0.01;
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kMaxIterations, kNumericalFailure };

const char* to_string(SolveStatus status);

struct IterationRecord {
  int iteration = 0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  double relative_gap = 0.0;
  double mu = 0.0;
  double step = 0.0;
};

struct ConeSolution {
  SolveStatus status = SolveStatus::kNumericalFailure;
  std::vector<CMat> primal;      ///< X_b, per block
  std::vector<double> multipliers;  ///< m_i, per constraint
  std::vector<CMat> dual_slack;  ///< S_b, per block
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  /// |p - d| / (1 + |p| + |d|)
  double duality_gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
  std::vector<IterationRecord> trace;
};

struct Residuals {
  double primal_infeas = 0.0;  ///< ||violation|| / (1 + ||b||)
  double dual_infeas = 0.0;    ///< ||C - A*y - S|| / (1 + ||C||), plus sign violations
  double gap = 0.0;            ///< relative, as ConeSolution::duality_gap
  double absolute_gap = 0.0;   ///< primal objective - dual objective
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  std::vector<double> primal_min_eigenvalues;
  std::vector<double> dual_min_eigenvalues;
  std::vector<double> complementarity;  ///< Re Tr(X_b S_b)
};

/// [[Re A, -Im A], [Im A, Re A]]. Throws DomainError when A is not Hermitian
/// (symmetry residual above 1e-9).
RMat embed_hermitian(const CMat& a);

/// Inverse of embed_hermitian (reads the left block column).
CMat unembed_hermitian(const RMat& m);

ConeSolution solve(const ConeProgram& program, const SolverOptions& options = {});

/// Recomputes feasibility, gap and cone membership from scratch.
Residuals residuals(const ConeProgram& program, const ConeSolution& solution);

/// Plain-text listing of a program. Grammar (one item per line):
///
///   program <num_blocks> <num_constraints>
///   block <index> <hermitian|symmetric|nonnegative> <dim> <name>
///   objective
///   constraint <index> <eq|le|ge> <rhs> <label>
///   term <block> <rows> <cols>
///   <re> <im>          (row-major, rows*cols lines, after each 'term')
///   end
///
/// 'term' lines follow the 'objective' or 'constraint' header they belong to.
void write_listing(std::ostream& out, const ConeProgram& program);

}  // namespace swipt::sdp
