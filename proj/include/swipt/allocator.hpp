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

// Power allocation for the secure SWIPT downlink.
//
// All programs are posed in Charnes-Cooper variables
//   W_bar = xi w w^H,  V_bar = xi V,  xi = 1 / (||w||^2 + Tr V),
// with the rank-one requirement on W_bar dropped. Scheme results are compared
// through the weighted Tchebycheff value
//   tau = max_j lambda_j (F_j - F_j*),  F_1 = -efficiency,  F_2 = transmit power.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/metrics.hpp"
#include "swipt/sdp.hpp"

namespace swipt {

enum class ProblemKind { kP1, kP2, kP3 };

enum class Scheme { kRelaxedP3, kSuboptimal1, kSuboptimal2, kBaseline1, kBaseline2 };

const char* to_string(Scheme scheme);
/// Accepts the names produced by to_string (case-sensitive).
std::optional<Scheme> parse_scheme(std::string_view name);
std::vector<Scheme> all_schemes();

/// Tchebycheff weights; lambda1 + lambda2 = 1, both >= 0.
struct Weights {
  double lambda1 = 0.5;
  double lambda2 = 0.5;

  /// Throws DomainError when off the simplex (tolerance 1e-9).
  void validate() const;
};

/// n >= 2 uniformly spaced weights from (0, 1) to (1, 0); n = 1 gives (0, 1).
std::vector<Weights> uniform_weights(int n);

/// Anchors of the Tchebycheff objective, taken from the relaxed
/// single-objective optima (bounds when the relaxation is not tight).
struct UtopiaValues {
  double f1_star = 0.0;  ///< minimum of -efficiency (<= 0)
  double f2_star = 0.0;  ///< minimum transmit power, W (> 0)
};

enum class BeamStructure { kFull, kMrt };
enum class NoiseStructure { kFull, kNullSpace };

struct ProblemSpec {
  ProblemKind kind = ProblemKind::kP3;
  Weights weights;
  UtopiaValues utopia;
  /// false: the efficiency row of the epigraph counts only the noise term.
  bool beam_harvesting = true;
  BeamStructure beam = BeamStructure::kFull;
  NoiseStructure noise = NoiseStructure::kFull;
};

/// A matrix variable that is either a full PSD block or a nonnegative scalar
/// times a fixed Hermitian basis matrix.
struct MatrixVariable {
  int block = -1;
  bool full = true;
  CMat basis;

  /// Adds scale * Re Tr(M X) to `form`.
  void add_trace(sdp::LinearForm& form, const CMat& m, double scale = 1.0) const;
  CMat value(const std::vector<CMat>& blocks) const;
  /// Dual slack of the variable (only meaningful for full blocks).
  CMat dual(const std::vector<CMat>& dual_slack) const;
};

/// Where each quantity of the transformed problem lives in the cone program.
/// The builder uses xi_hat = P_max * xi, so xi_hat = 1 at full power.
struct ProgramLayout {
  MatrixVariable w;
  MatrixVariable v;
  int xi_block = -1;       ///< scalar block, or the 2x2 epigraph block
  bool xi_in_epigraph = false;
  int epigraph_block = -1; ///< [[xi_hat, c], [c, q]], q = tau + lambda2 F2*
  int shift_block = -1;    ///< t >= 0 with tau = t + tau_offset (lambda2 = 0)
  double tau_offset = 0.0;
  int row_c1 = -1;
  std::vector<int> row_c2;
  /// C1 and C2 rows are divided by these factors (target times channel
  /// gain) so that residuals read as relative SINR errors.
  double c1_scale = 1.0;
  std::vector<double> c2_scale;
  int row_c3 = -1;
  int row_c6 = -1;
  int row_c8 = -1;         ///< efficiency row of the epigraph, when present
  double p_max = 0.0;
  /// The cone objective is the problem objective divided by this factor,
  /// chosen so optimal values are of order one.
  double objective_scale = 1.0;
};

struct TransformedProgram {
  sdp::ConeProgram program;
  ProgramLayout layout;
  ProblemSpec spec;
};

/// Builds the relaxed transformed problem. Throws DomainError for P1 without
/// idle receivers (no harvesting terms), for weights off the simplex, or for
/// invalid targets.
TransformedProgram build_transformed(const GramSet& grams, const QosTargets& qos,
                                     std::span<const double> eps, const ProblemSpec& spec);

/// Lagrange multipliers of the transformed problem in its own normalization
/// (objective tau, constraints as written with xi, not xi_hat).
struct DualCertificate {
  double beta = 0.0;            ///< SINR requirement of the desired receiver
  std::vector<double> theta;    ///< tolerable SINR of each idle receiver
  double alpha = 0.0;           ///< power budget
  double mu = 0.0;              ///< normalization Tr(W) + Tr(V) <= 1
  double nu = 0.0;              ///< xi >= 0
  double kappa1 = 0.0;          ///< efficiency row of the epigraph
  double kappa2 = 0.0;          ///< power row of the epigraph
  CMat y;                       ///< dual of W_bar >= 0
  CMat z;                       ///< dual of V_bar >= 0
};

struct TransformedSolution {
  CMat w_bar;
  CMat v_bar;
  double xi = 0.0;
  double tau = 0.0;             ///< P3 only
  double objective_value = 0.0;
  DualCertificate certificate;
  sdp::SolveStatus status = sdp::SolveStatus::kNumericalFailure;
  int iterations = 0;
  double duality_gap = 0.0;
};

struct AllocatorOptions {
  sdp::SolverOptions solver;
  double rank_tol = 1e-6;
  double prop2_tol = 1e-7;
  /// Move non-rank-one beam covariances along the optimal face toward
  /// rank one before the rank check (see reduce_rank).
  bool rank_reduction = true;
};

/// Solves a built program and decodes it. Throws InfeasibleError (with the
/// labels of the constraints in the infeasibility certificate) or SolverError.
/// Note that the transformed constraints are homogeneous: an original
/// instance without any feasible allocation shows up as xi = 0 at the P2
/// optimum, not as an infeasible cone program (see check_feasible).
TransformedSolution solve_transformed(const TransformedProgram& tp,
                                      const AllocatorOptions& options = {});

struct SingleObjectiveResult {
  double value = 0.0;  ///< P1: relaxed -efficiency; P2: 1 / xi
  TransformedSolution solution;
};

SingleObjectiveResult solve_single_objective(const GramSet& grams, const QosTargets& qos,
                                             std::span<const double> eps, ProblemKind kind,
                                             const AllocatorOptions& options = {});

/// Decides whether C1-C4 admit an allocation with the given structure by
/// maximizing xi (P2). Every feasible instance has P_max xi* >= 1; an
/// infeasible one has xi* = 0. Throws InfeasibleError in the latter case and
/// returns the P2 solution otherwise.
SingleObjectiveResult check_feasible(const GramSet& grams, const QosTargets& qos,
                                     std::span<const double> eps,
                                     BeamStructure beam = BeamStructure::kFull,
                                     NoiseStructure noise = NoiseStructure::kFull,
                                     const AllocatorOptions& options = {});

/// F1* from P1 (0 without idle receivers) and F2* from P2. Throws
/// InfeasibleError when the instance admits no allocation.
UtopiaValues compute_utopia(const GramSet& grams, const QosTargets& qos,
                            std::span<const double> eps, const AllocatorOptions& options = {});

struct RankCheck {
  bool rank_one = false;
  double eigen_ratio = 0.0;  ///< lambda_2 / lambda_1, 0 for a zero matrix
  bool degenerate = false;   ///< lambda_1 <= 1e-12
};

RankCheck check_rank_one(const CMat& w_bar, double tol = 1e-6);

/// Returns W' with range(W') inside range(W_bar) and Re Tr(A_j W') =
/// Re Tr(A_j W_bar) for every given A_j, of the smallest rank reachable by
/// repeatedly stepping along a trace-preserving direction until an
/// eigenvalue vanishes. When the A_j are all matrices through which W_bar
/// enters a program, W' is feasible with the same objective, so a
/// high-rank optimum becomes a low-rank one. Rank r is reduced while
/// r^2 exceeds the number of independent trace constraints. Eigenvalues
/// below tol * lambda_max count as zero. Deterministic.
CMat reduce_rank(const CMat& w_bar, std::span<const CMat> constraints, double tol = 1e-9);

/// w = sqrt(lambda_1(W)) u_1 with W = W_bar / xi, phase fixed so the
/// largest-magnitude entry is real and nonnegative; V = V_bar / xi.
/// Throws RecoveryError when xi <= feas_tol or W_bar is degenerate.
Allocation recover(const TransformedSolution& solution, double feas_tol = 1e-8);

struct ReportMetrics {
  double transmit_power = 0.0;  ///< W
  double efficiency = 0.0;      ///< fraction
  double secrecy = 0.0;         ///< bit/s/Hz
  /// True when scored from a relaxed (not rank-one) solution: the numbers
  /// are then bounds, not achievable values.
  bool bound_only = false;
};

struct SolveReport {
  Scheme scheme = Scheme::kRelaxedP3;
  /// Which program produced the result ("relaxed" or "suboptimal1" for the
  /// hybrid schemes; the scheme name otherwise).
  std::string branch;
  TransformedSolution transformed;
  std::optional<Allocation> recovered;
  bool rank_one = false;
  /// lambda_2 / lambda_1 of the reported W_bar.
  double eigen_ratio = 0.0;
  /// lambda_2 / lambda_1 of W_bar as returned by the solver, before any
  /// rank reduction.
  double raw_eigen_ratio = 0.0;
  bool degenerate = false;
  bool prop2_holds = false;
  ReportMetrics metrics;
  /// Optimal epigraph value of the program that was solved.
  double tau = 0.0;
  /// max_j lambda_j (F_j - F_j*) evaluated on `metrics`.
  double achieved_objective = 0.0;
};

/// Tchebycheff value of an achieved (efficiency, transmit power) pair.
double scalarized_objective(const Weights& weights, const UtopiaValues& utopia,
                            double efficiency, double transmit_power);

SolveReport solve_relaxed_p3(const GramSet& grams, const QosTargets& qos,
                             std::span<const double> eps, const Weights& weights,
                             const UtopiaValues& utopia, const AllocatorOptions& options = {});
SolveReport suboptimal1(const GramSet& grams, const QosTargets& qos, std::span<const double> eps,
                        const Weights& weights, const UtopiaValues& utopia,
                        const AllocatorOptions& options = {});
SolveReport suboptimal2(const GramSet& grams, const QosTargets& qos, std::span<const double> eps,
                        const Weights& weights, const UtopiaValues& utopia,
                        const AllocatorOptions& options = {});
SolveReport baseline1(const GramSet& grams, const QosTargets& qos, std::span<const double> eps,
                      const Weights& weights, const UtopiaValues& utopia,
                      const AllocatorOptions& options = {});
SolveReport baseline2(const GramSet& grams, const QosTargets& qos, std::span<const double> eps,
                      const Weights& weights, const UtopiaValues& utopia,
                      const AllocatorOptions& options = {});

SolveReport solve_scheme(Scheme scheme, const GramSet& grams, const QosTargets& qos,
                         std::span<const double> eps, const Weights& weights,
                         const UtopiaValues& utopia, const AllocatorOptions& options = {});

struct ParetoPoint {
  Weights weights;
  Scheme scheme = Scheme::kRelaxedP3;
  bool feasible = false;
  std::string failure;  ///< reason when not feasible
  std::optional<SolveReport> report;
  double transmit_power = 0.0;
  double efficiency = 0.0;
};

struct ParetoSweep {
  UtopiaValues utopia;
  std::vector<ParetoPoint> points;  ///< grid-major, then scheme order as given
};

/// Computes the utopia point once and solves every (weight, scheme) pair.
/// Infeasible or failed pairs are kept and marked. Throws InfeasibleError
/// when the utopia problems themselves are infeasible.
ParetoSweep pareto_sweep(const GramSet& grams, const QosTargets& qos, std::span<const double> eps,
                         std::span<const Weights> grid, std::span<const Scheme> schemes,
                         const AllocatorOptions& options = {});

/// Soft trade-off check: number of consecutive grid points (ordered by
/// increasing lambda2) of one scheme where transmit power or efficiency
/// increases by more than `slack`.
int count_monotonicity_violations(std::span<const ParetoPoint> points, Scheme scheme,
                                  double slack = 1e-9);

}  // namespace swipt
