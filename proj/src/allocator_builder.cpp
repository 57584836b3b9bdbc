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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "swipt/allocator.hpp"
#include "swipt/errors.hpp"

namespace swipt {

namespace {

constexpr double kSimplexTol = 1e-9;

CMat unit(int n, int i, int j) {
  CMat m = CMat::Zero(n, n);
  if (i == j) {
    m(i, i) = 1.0;
  } else {
    m(i, j) = 0.5;
    m(j, i) = 0.5;
  }
  return m;
}

void validate_eps(std::span<const double> eps, const GramSet& grams) {
  if (eps.size() != grams.g.size()) {
    throw DomainError("eps needs one entry per idle receiver");
  }
  for (double e : eps) {
    if (!(e >= 0.0 && e <= 1.0)) throw DomainError("eps entries must lie in [0, 1]");
  }
}

}  // namespace

void Weights::validate() const {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0) || std::abs(lambda1 + lambda2 - 1.0) > kSimplexTol) {
    throw DomainError("weights must lie on the simplex: lambda1, lambda2 >= 0, sum 1");
  }
}

std::vector<Weights> uniform_weights(int n) {
  if (n < 1) throw DomainError("need at least one weight");
  if (n == 1) return {Weights{0.0, 1.0}};
  std::vector<Weights> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double l1 = static_cast<double>(n - 1 - i) / (n - 1);
    out.push_back({l1, 1.0 - l1});
  }
  return out;
}

void MatrixVariable::add_trace(sdp::LinearForm& form, const CMat& m, double scale) const {
  if (full) {
    form.add(block, scale * m);
  } else {
    form.add_scalar(block, scale * trace_product(m, basis));
  }
}

CMat MatrixVariable::value(const std::vector<CMat>& blocks) const {
  if (full) return hermitian_part(blocks.at(block));
  return blocks.at(block)(0, 0).real() * basis;
}

CMat MatrixVariable::dual(const std::vector<CMat>& dual_slack) const {
  if (full) return hermitian_part(dual_slack.at(block));
  return CMat();
}

TransformedProgram build_transformed(const GramSet& grams, const QosTargets& qos,
                                     std::span<const double> eps, const ProblemSpec& spec) {
  const int n = grams.num_antennas();
  const int k_idle = grams.num_idle();
  if (n < 2) throw DomainError("need at least two transmit antennas");
  qos.validate(static_cast<std::size_t>(k_idle));
  validate_eps(eps, grams);
  const double h_norm2 = grams.h.trace().real();
  if (!(h_norm2 > 0.0)) throw DomainError("desired channel is zero");
  if (spec.kind == ProblemKind::kP1 && k_idle == 0) {
    throw DomainError("efficiency objective is degenerate without idle receivers");
  }
  const bool p3 = spec.kind == ProblemKind::kP3;
  const double l1 = spec.weights.lambda1;
  const double l2 = spec.weights.lambda2;
  if (p3) {
    spec.weights.validate();
    if (!(spec.utopia.f2_star > 0.0) || !(spec.utopia.f1_star <= 0.0)) {
      throw DomainError("utopia values must satisfy F1* <= 0 < F2*");
    }
  }

  TransformedProgram out;
  out.spec = spec;
  auto& prog = out.program;
  auto& lay = out.layout;
  lay.p_max = qos.p_max;
  const CMat eye = CMat::Identity(n, n);

  if (spec.beam == BeamStructure::kFull) {
    lay.w = {prog.add_block(sdp::BlockKind::kHermitian, n, "W_bar"), true, {}};
  } else {
    lay.w = {prog.add_block(sdp::BlockKind::kNonnegative, 1, "p_w"), false, grams.h / h_norm2};
  }
  if (spec.noise == NoiseStructure::kFull) {
    lay.v = {prog.add_block(sdp::BlockKind::kHermitian, n, "V_bar"), true, {}};
  } else {
    const CMat proj = hermitian_part(eye - grams.h / h_norm2);
    lay.v = {prog.add_block(sdp::BlockKind::kNonnegative, 1, "p_v"), false, proj / (n - 1)};
  }

  const bool epigraph = p3 && l2 > 0.0;
  if (epigraph) {
    lay.epigraph_block = prog.add_block(sdp::BlockKind::kSymmetric, 2, "epigraph");
    lay.xi_block = lay.epigraph_block;
    lay.xi_in_epigraph = true;
  } else {
    lay.xi_block = prog.add_block(sdp::BlockKind::kNonnegative, 1, "xi_hat");
  }
  auto add_xi = [&](sdp::LinearForm& f, double c) {
    if (lay.xi_in_epigraph) {
      f.add(lay.xi_block, c * unit(2, 0, 0));
    } else {
      f.add_scalar(lay.xi_block, c);
    }
  };

  const double gamma = qos.gamma_req;
  const double s2 = qos.sigma_s2;
  {
    sdp::LinearForm f;
    lay.c1_scale = gamma * h_norm2;
    const double r = 1.0 / lay.c1_scale;
    lay.w.add_trace(f, grams.h, r);
    lay.v.add_trace(f, grams.h, -gamma * r);
    add_xi(f, -gamma * s2 / qos.p_max * r);
    lay.row_c1 = prog.add_constraint(f, sdp::Relation::kGreaterEqual, 0.0, "C1");
  }
  for (int k = 0; k < k_idle; ++k) {
    const double tol = qos.gamma_tol[k];
    sdp::LinearForm f;
    const double gain = grams.g[k].trace().real();
    lay.c2_scale.push_back(tol > 0.0 && gain > 0.0 ? tol * gain : 1.0);
    const double r = 1.0 / lay.c2_scale.back();
    lay.w.add_trace(f, grams.g[k], r);
    lay.v.add_trace(f, grams.g[k], -tol * r);
    add_xi(f, -tol * s2 / qos.p_max * r);
    lay.row_c2.push_back(prog.add_constraint(f, sdp::Relation::kLessEqual, 0.0,
                                             "C2[" + std::to_string(k) + "]"));
  }
  {
    sdp::LinearForm f;
    lay.w.add_trace(f, eye);
    lay.v.add_trace(f, eye);
    add_xi(f, -1.0);
    lay.row_c3 = prog.add_constraint(f, sdp::Relation::kLessEqual, 0.0, "C3");
  }
  {
    sdp::LinearForm f;
    lay.w.add_trace(f, eye);
    lay.v.add_trace(f, eye);
    lay.row_c6 = prog.add_constraint(f, sdp::Relation::kLessEqual, 1.0, "C6");
  }

  // -sum_k eps_k G_k, the harvesting functional, and its largest magnitude
  // over the normalized set.
  CMat harvest = CMat::Zero(n, n);
  double harvest_bound = 0.0;
  for (int k = 0; k < k_idle; ++k) {
    harvest -= eps[k] * grams.g[k];
    harvest_bound += eps[k] * max_eigenvalue(grams.g[k]);
  }

  switch (spec.kind) {
    case ProblemKind::kP1:
      lay.objective_scale = harvest_bound > 0.0 ? harvest_bound : 1.0;
      lay.w.add_trace(prog.objective, harvest, 1.0 / lay.objective_scale);
      lay.v.add_trace(prog.objective, harvest, 1.0 / lay.objective_scale);
      break;
    case ProblemKind::kP2:
      add_xi(prog.objective, -1.0);
      break;
    case ProblemKind::kP3: {
      // Epigraph variable: q = tau + lambda2 F2* (lambda2 > 0), or t = tau - L1
      // with L1 a lower bound on the efficiency row (lambda2 = 0).
      int top_block = -1;
      CMat top_coeff = CMat::Ones(1, 1);
      const double scale = l1 * std::abs(spec.utopia.f1_star) + l2 * spec.utopia.f2_star;
      lay.objective_scale = scale > 0.0 ? scale : 1.0;
      if (epigraph) {
        const double c = std::sqrt(l2 * qos.p_max);
        prog.add_constraint(sdp::LinearForm{}.add(lay.epigraph_block, unit(2, 0, 1)),
                            sdp::Relation::kEqual, c, "C8_power");
        top_block = lay.epigraph_block;
        top_coeff = unit(2, 1, 1);
        lay.tau_offset = -l2 * spec.utopia.f2_star;
      } else {
        lay.shift_block = prog.add_block(sdp::BlockKind::kNonnegative, 1, "tau_shift");
        top_block = lay.shift_block;
        lay.tau_offset = l1 * (-harvest_bound - spec.utopia.f1_star);
      }
      prog.objective.add(top_block, top_coeff / lay.objective_scale);
      if (l1 > 0.0) {
        sdp::LinearForm f;
        if (spec.beam_harvesting) lay.w.add_trace(f, harvest, l1);
        lay.v.add_trace(f, harvest, l1);
        f.add(top_block, -top_coeff);
        lay.row_c8 = prog.add_constraint(f, sdp::Relation::kLessEqual,
                                         l1 * spec.utopia.f1_star + lay.tau_offset, "C8_efficiency");
      }
      break;
    }
  }
  return out;
}

TransformedSolution solve_transformed(const TransformedProgram& tp,
                                      const AllocatorOptions& options) {
  const auto& lay = tp.layout;
  const auto sol = sdp::solve(tp.program, options.solver);
  if (sol.status == sdp::SolveStatus::kInfeasible) {
    double scale = 0.0;
    for (double m : sol.multipliers) scale = std::max(scale, std::abs(m));
    std::ostringstream cert;
    for (std::size_t i = 0; i < sol.multipliers.size(); ++i) {
      const double m = scale > 0.0 ? sol.multipliers[i] / scale : 0.0;
      if (std::abs(m) > 1e-6) cert << tp.program.constraints[i].label << '=' << m << ' ';
    }
    std::string text = cert.str();
    if (!text.empty()) text.pop_back();
    throw InfeasibleError("transformed problem is infeasible", text);
  }
  if (sol.status != sdp::SolveStatus::kOptimal) {
    throw SolverError(std::string("cone solver stopped: ") + sdp::to_string(sol.status));
  }

  TransformedSolution out;
  out.status = sol.status;
  out.iterations = sol.iterations;
  out.duality_gap = sol.duality_gap;
  out.w_bar = lay.w.value(sol.primal);
  out.v_bar = lay.v.value(sol.primal);
  const double xi_hat = sol.primal[lay.xi_block](0, 0).real();
  out.xi = xi_hat / lay.p_max;

  switch (tp.spec.kind) {
    case ProblemKind::kP1:
      out.objective_value = sol.primal_objective * lay.objective_scale;
      break;
    case ProblemKind::kP2:
      out.objective_value = 1.0 / out.xi;
      break;
    case ProblemKind::kP3: {
      const double top = lay.epigraph_block >= 0 ? sol.primal[lay.epigraph_block](1, 1).real()
                                                 : sol.primal[lay.shift_block](0, 0).real();
      out.tau = top + lay.tau_offset;
      out.objective_value = out.tau;
      break;
    }
  }

  // Multipliers. Rows are posed with the same scale as the transformed
  // problem (xi_hat = P_max xi enters only through its coefficients), apart
  // from the C1/C2 normalization undone here. The objective scale divides
  // out of every multiplier.
  const double ds = lay.objective_scale;
  auto& cert = out.certificate;
  cert.beta = ds * sol.multipliers[lay.row_c1] / lay.c1_scale;
  for (std::size_t k = 0; k < lay.row_c2.size(); ++k) {
    cert.theta.push_back(ds * sol.multipliers[lay.row_c2[k]] / lay.c2_scale[k]);
  }
  cert.alpha = ds * sol.multipliers[lay.row_c3];
  cert.mu = ds * sol.multipliers[lay.row_c6];
  cert.kappa1 = lay.row_c8 >= 0 ? ds * sol.multipliers[lay.row_c8] : 0.0;
  if (lay.epigraph_block >= 0) {
    cert.kappa2 = ds * sol.dual_slack[lay.epigraph_block](1, 1).real();
  } else if (lay.shift_block >= 0) {
    cert.kappa2 = ds * sol.dual_slack[lay.shift_block](0, 0).real();
  }
  // Inside the epigraph block xi is kept strictly positive by the hyperbolic
  // constraint, so the multiplier of xi >= 0 vanishes.
  cert.nu = lay.xi_in_epigraph ? 0.0 : ds * lay.p_max * sol.dual_slack[lay.xi_block](0, 0).real();
  cert.y = ds * lay.w.dual(sol.dual_slack);
  cert.z = ds * lay.v.dual(sol.dual_slack);
  return out;
}

SingleObjectiveResult solve_single_objective(const GramSet& grams, const QosTargets& qos,
                                             std::span<const double> eps, ProblemKind kind,
                                             const AllocatorOptions& options) {
  if (kind == ProblemKind::kP3) throw DomainError("solve_single_objective takes P1 or P2");
  ProblemSpec spec;
  spec.kind = kind;
  const auto tp = build_transformed(grams, qos, eps, spec);
  SingleObjectiveResult out;
  out.solution = solve_transformed(tp, options);
  out.value = out.solution.objective_value;
  return out;
}

SingleObjectiveResult check_feasible(const GramSet& grams, const QosTargets& qos,
                                     std::span<const double> eps, BeamStructure beam,
                                     NoiseStructure noise, const AllocatorOptions& options) {
  ProblemSpec spec;
  spec.kind = ProblemKind::kP2;
  spec.beam = beam;
  spec.noise = noise;
  const auto tp = build_transformed(grams, qos, eps, spec);
  SingleObjectiveResult out;
  out.solution = solve_transformed(tp, options);
  const double xi_hat = out.solution.xi * qos.p_max;
  if (!(xi_hat >= 0.5)) {
    std::ostringstream cert;
    cert << "P_max*xi*=" << xi_hat << " (C1/C2/C3 jointly unattainable)";
    throw InfeasibleError("no allocation meets the QoS targets", cert.str());
  }
  out.value = out.solution.objective_value;
  return out;
}

UtopiaValues compute_utopia(const GramSet& grams, const QosTargets& qos,
                            std::span<const double> eps, const AllocatorOptions& options) {
  UtopiaValues u;
  u.f2_star = check_feasible(grams, qos, eps, BeamStructure::kFull, NoiseStructure::kFull, options).value;
  u.f1_star = grams.num_idle() > 0
                  ? std::min(0.0, solve_single_objective(grams, qos, eps, ProblemKind::kP1, options).value)
                  : 0.0;
  return u;
}

}  // namespace swipt
