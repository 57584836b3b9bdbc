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

#include <cmath>
#include <iomanip>
#include <ostream>

#include "swipt/errors.hpp"
#include "swipt/sdp.hpp"

namespace swipt::sdp {

LinearForm& LinearForm::add(int block, CMat coeff) {
  terms.push_back({block, std::move(coeff)});
  return *this;
}

LinearForm& LinearForm::add_scalar(int block, double coeff) {
  CMat c(1, 1);
  c(0, 0) = coeff;
  return add(block, std::move(c));
}

double LinearForm::evaluate(const std::vector<CMat>& x) const {
  double value = 0.0;
  for (const auto& t : terms) value += trace_product(t.coeff, x.at(t.block));
  return value;
}

int ConeProgram::add_block(BlockKind kind, int dim, std::string name) {
  blocks.push_back({kind, kind == BlockKind::kNonnegative ? 1 : dim, std::move(name)});
  return static_cast<int>(blocks.size()) - 1;
}

int ConeProgram::add_constraint(LinearForm lhs, Relation relation, double rhs,
                                std::string label) {
  constraints.push_back({std::move(lhs), relation, rhs, std::move(label)});
  return static_cast<int>(constraints.size()) - 1;
}

namespace {

void validate_form(const ConeProgram& p, const LinearForm& form, const std::string& where) {
  for (const auto& t : form.terms) {
    if (t.block < 0 || t.block >= static_cast<int>(p.blocks.size())) {
      throw DomainError(where + ": term refers to unknown block " + std::to_string(t.block));
    }
    const auto& spec = p.blocks[t.block];
    if (t.coeff.rows() != spec.dim || t.coeff.cols() != spec.dim) {
      throw DomainError(where + ": coefficient shape does not match block '" + spec.name + "'");
    }
    if (!t.coeff.allFinite()) throw DomainError(where + ": non-finite coefficient");
    if (hermitian_residual(t.coeff) > 1e-9 * std::max(1.0, t.coeff.norm())) {
      throw DomainError(where + ": coefficient is not Hermitian");
    }
    if (spec.kind != BlockKind::kHermitian && t.coeff.imag().cwiseAbs().maxCoeff() > 0.0) {
      throw DomainError(where + ": complex coefficient on real block '" + spec.name + "'");
    }
  }
}

}  // namespace

void ConeProgram::validate() const {
  if (blocks.empty()) throw DomainError("cone program has no blocks");
  if (constraints.empty()) throw DomainError("cone program has no constraints");
  for (const auto& b : blocks) {
    if (b.dim < 1) throw DomainError("block '" + b.name + "' has non-positive dimension");
  }
  validate_form(*this, objective, "objective");
  for (const auto& c : constraints) {
    if (!std::isfinite(c.rhs)) throw DomainError("constraint '" + c.label + "': non-finite rhs");
    validate_form(*this, c.lhs, "constraint '" + c.label + "'");
  }
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "Optimal";
    case SolveStatus::kInfeasible: return "Infeasible";
    case SolveStatus::kUnbounded: return "Unbounded";
    case SolveStatus::kMaxIterations: return "MaxIterations";
    case SolveStatus::kNumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

RMat embed_hermitian(const CMat& a) {
  if (a.rows() != a.cols()) throw DomainError("embed_hermitian: matrix is not square");
  if (hermitian_residual(a) > 1e-9) throw DomainError("embed_hermitian: matrix is not Hermitian");
  const Eigen::Index n = a.rows();
  RMat m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = a.real();
  m.bottomRightCorner(n, n) = a.real();
  m.topRightCorner(n, n) = -a.imag();
  m.bottomLeftCorner(n, n) = a.imag();
  return m;
}

CMat unembed_hermitian(const RMat& m) {
  const Eigen::Index n = m.rows() / 2;
  CMat a(n, n);
  a.real() = m.topLeftCorner(n, n);
  a.imag() = m.bottomLeftCorner(n, n);
  return a;
}

Residuals residuals(const ConeProgram& program, const ConeSolution& solution) {
  Residuals r;
  const auto& x = solution.primal;
  const auto& s = solution.dual_slack;
  const auto m = program.constraints.size();
  if (x.size() != program.blocks.size() || s.size() != program.blocks.size() ||
      solution.multipliers.size() != m) {
    throw DomainError("residuals: solution shape does not match program");
  }

  double viol2 = 0.0;
  double b2 = 0.0;
  double sign_viol2 = 0.0;
  std::vector<CMat> dual_res(program.blocks.size());
  for (std::size_t b = 0; b < program.blocks.size(); ++b) {
    const int n = program.blocks[b].dim;
    dual_res[b] = CMat::Zero(n, n);  // C - A*y
  }
  for (const auto& t : program.objective.terms) dual_res[t.block] += t.coeff;

  r.dual_objective = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = program.constraints[i];
    const double lhs = c.lhs.evaluate(x);
    const double diff = lhs - c.rhs;
    double v = 0.0;
    double mult = solution.multipliers[i];
    double y = mult;
    switch (c.relation) {
      case Relation::kEqual: v = std::abs(diff); break;
      case Relation::kLessEqual:
        v = std::max(0.0, diff);
        y = -mult;
        sign_viol2 += std::pow(std::min(0.0, mult), 2);
        break;
      case Relation::kGreaterEqual:
        v = std::max(0.0, -diff);
        sign_viol2 += std::pow(std::min(0.0, mult), 2);
        break;
    }
    viol2 += v * v;
    b2 += c.rhs * c.rhs;
    r.dual_objective += y * c.rhs;
    for (const auto& t : c.lhs.terms) dual_res[t.block] -= y * t.coeff;
  }

  double c2 = 0.0;
  for (const auto& t : program.objective.terms) c2 += t.coeff.squaredNorm();
  double dres2 = 0.0;
  for (std::size_t b = 0; b < program.blocks.size(); ++b) {
    dres2 += (dual_res[b] - s[b]).squaredNorm();
  }

  r.primal_infeas = std::sqrt(viol2) / (1.0 + std::sqrt(b2));
  r.dual_infeas = (std::sqrt(dres2) + std::sqrt(sign_viol2)) / (1.0 + std::sqrt(c2));
  r.primal_objective = program.objective.evaluate(x);
  r.absolute_gap = r.primal_objective - r.dual_objective;
  r.gap = std::abs(r.absolute_gap) /
          (1.0 + std::abs(r.primal_objective) + std::abs(r.dual_objective));

  for (std::size_t b = 0; b < program.blocks.size(); ++b) {
    r.primal_min_eigenvalues.push_back(min_eigenvalue(x[b]));
    r.dual_min_eigenvalues.push_back(min_eigenvalue(s[b]));
    r.complementarity.push_back((x[b] * s[b]).trace().real());
  }
  return r;
}

namespace {

const char* kind_name(BlockKind k) {
  switch (k) {
    case BlockKind::kHermitian: return "hermitian";
    case BlockKind::kSymmetric: return "symmetric";
    case BlockKind::kNonnegative: return "nonnegative";
  }
  return "?";
}

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::kEqual: return "eq";
    case Relation::kLessEqual: return "le";
    case Relation::kGreaterEqual: return "ge";
  }
  return "?";
}

void write_terms(std::ostream& out, const LinearForm& form) {
  for (const auto& t : form.terms) {
    out << "term " << t.block << ' ' << t.coeff.rows() << ' ' << t.coeff.cols() << '\n';
    for (Eigen::Index i = 0; i < t.coeff.rows(); ++i) {
      for (Eigen::Index j = 0; j < t.coeff.cols(); ++j) {
        out << t.coeff(i, j).real() << ' ' << t.coeff(i, j).imag() << '\n';
      }
    }
  }
}

std::string token(const std::string& s) { return s.empty() ? std::string("-") : s; }

}  // namespace

void write_listing(std::ostream& out, const ConeProgram& program) {
  const auto old_precision = out.precision(17);
  out << "program " << program.blocks.size() << ' ' << program.constraints.size() << '\n';
  for (std::size_t b = 0; b < program.blocks.size(); ++b) {
    const auto& spec = program.blocks[b];
    out << "block " << b << ' ' << kind_name(spec.kind) << ' ' << spec.dim << ' '
        << token(spec.name) << '\n';
  }
  out << "objective\n";
  write_terms(out, program.objective);
  for (std::size_t i = 0; i < program.constraints.size(); ++i) {
    const auto& c = program.constraints[i];
    out << "constraint " << i << ' ' << relation_name(c.relation) << ' ' << c.rhs << ' '
        << token(c.label) << '\n';
    write_terms(out, c.lhs);
  }
  out << "end\n";
  out.precision(old_precision);
}

}  // namespace swipt::sdp
