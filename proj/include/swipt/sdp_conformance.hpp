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

// A fixed set of small conic programs with closed-form optima, used to
// check the solver's accuracy end to end.

#include <string>
#include <vector>

#include "swipt/sdp.hpp"

namespace swipt::sdp {

struct AnalyticProblem {
  std::string name;
  ConeProgram program;
  double optimum = 0.0;
};

/// At least ten programs covering Hermitian, symmetric and scalar blocks,
/// all three relations and complex coefficients.
std::vector<AnalyticProblem> analytic_suite();

struct ConformanceResult {
  std::string name;
  SolveStatus status = SolveStatus::kNumericalFailure;
  double objective_error = 0.0;  ///< |primal objective - optimum|
  double duality_gap = 0.0;      ///< relative, as ConeSolution::duality_gap
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  bool passed = false;
};

struct ConformanceTolerances {
  double objective = 1e-7;  ///< absolute
  double gap = 1e-8;
  double residual = 1e-8;
};

/// Solves every problem of the suite and grades it against the tolerances.
std::vector<ConformanceResult> run_conformance(const SolverOptions& options = {},
                                               const ConformanceTolerances& tolerances = {});

}  // namespace swipt::sdp
