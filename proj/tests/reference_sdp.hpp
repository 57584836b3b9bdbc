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

// Slow reference for cross-checking the production solver. Feasible-start is
// not required: a plain infeasible primal-dual path-following method with a
// fixed centering parameter, the Newton system assembled through explicit
// Kronecker products, and no embedding, scaling or predictor-corrector.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "swipt/sdp.hpp"

namespace swipt::testing {

struct ReferenceResult {
  double objective = 0.0;
  bool converged = false;
  int iterations = 0;
};

inline ReferenceResult reference_solve(const sdp::ConeProgram& p, double tol = 1e-10) {
  // Extended precision keeps the Kronecker Newton system usable down to the
  // 1e-10 tolerance.
  using Real = long double;
  using MatrixXd = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  using VectorXd = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  // Real block sizes (Hermitian blocks doubled), plus one 1x1 block per
  // scalar and per inequality slack.
  std::vector<int> dims;
  std::vector<int> first(p.blocks.size());
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    first[b] = static_cast<int>(dims.size());
    const auto& blk = p.blocks[b];
    dims.push_back(blk.kind == sdp::BlockKind::kHermitian ? 2 * blk.dim : blk.dim);
  }
  const int m = static_cast<int>(p.constraints.size());
  std::vector<int> slack_block(m, -1);
  for (int i = 0; i < m; ++i) {
    if (p.constraints[i].relation != sdp::Relation::kEqual) {
      slack_block[i] = static_cast<int>(dims.size());
      dims.push_back(1);
    }
  }
  const int nb = static_cast<int>(dims.size());

  auto real_coeff = [&](int b, const CMat& c) -> MatrixXd {
    const MatrixXd re = c.real().cast<Real>();
    if (p.blocks[b].kind != sdp::BlockKind::kHermitian) return re;
    const MatrixXd im = c.imag().cast<Real>();
    const int n = p.blocks[b].dim;
    MatrixXd e(2 * n, 2 * n);
    e << re, -im, im, re;
    return e / 2;
  };
  auto zeros = [&] {
    std::vector<MatrixXd> v(nb);
    for (int k = 0; k < nb; ++k) v[k] = MatrixXd::Zero(dims[k], dims[k]);
    return v;
  };

  std::vector<MatrixXd> c = zeros();
  for (const auto& t : p.objective.terms) c[first[t.block]] += real_coeff(t.block, t.coeff);
  std::vector<std::vector<MatrixXd>> a(m, zeros());
  VectorXd bvec(m);
  for (int i = 0; i < m; ++i) {
    const auto& con = p.constraints[i];
    for (const auto& t : con.lhs.terms) a[i][first[t.block]] += real_coeff(t.block, t.coeff);
    if (con.relation == sdp::Relation::kLessEqual) a[i][slack_block[i]](0, 0) = 1.0;
    if (con.relation == sdp::Relation::kGreaterEqual) a[i][slack_block[i]](0, 0) = -1.0;
    bvec(i) = con.rhs;
  }

  auto inner = [&](const std::vector<MatrixXd>& x, const std::vector<MatrixXd>& y) {
    Real s = 0;
    for (int k = 0; k < nb; ++k) s += (x[k].array() * y[k].array()).sum();
    return s;
  };
  auto kron = [](const MatrixXd& p1, const MatrixXd& p2) {
    MatrixXd out(p1.rows() * p2.rows(), p1.cols() * p2.cols());
    for (int i = 0; i < p1.rows(); ++i)
      for (int j = 0; j < p1.cols(); ++j)
        out.block(i * p2.rows(), j * p2.cols(), p2.rows(), p2.cols()) = p1(i, j) * p2;
    return out;
  };
  auto vec = [](const MatrixXd& x) { return Eigen::Map<const VectorXd>(x.data(), x.size()); };
  auto max_step = [](const MatrixXd& x, const MatrixXd& dx) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(x);
    const MatrixXd r = es.operatorInverseSqrt();
    const Real lmin = Eigen::SelfAdjointEigenSolver<MatrixXd>(r * dx * r).eigenvalues()(0);
    return lmin >= 0 ? Real(1e300) : -1 / lmin;
  };

  std::vector<MatrixXd> x = zeros(), s = zeros();
  int n_total = 0;
  for (int k = 0; k < nb; ++k) {
    x[k].setIdentity();
    s[k].setIdentity();
    n_total += dims[k];
  }
  VectorXd y = VectorXd::Zero(m);
  const Real sigma = 0.1L;
  Real c_norm = 0;
  for (int k = 0; k < nb; ++k) c_norm += c[k].squaredNorm();
  c_norm = std::sqrt(c_norm);
  ReferenceResult res;
  for (int it = 0; it < 500; ++it) {
    res.iterations = it;
    VectorXd rp(m);
    for (int i = 0; i < m; ++i) rp(i) = bvec(i) - inner(a[i], x);
    std::vector<MatrixXd> rd = zeros();
    for (int k = 0; k < nb; ++k) {
      rd[k] = c[k] - s[k];
      for (int i = 0; i < m; ++i) rd[k] -= y(i) * a[i][k];
    }
    const Real pobj = inner(c, x);
    const Real dobj = bvec.dot(y);
    Real rd_norm = 0;
    for (int k = 0; k < nb; ++k) rd_norm += rd[k].squaredNorm();
    rd_norm = std::sqrt(rd_norm);
    res.objective = static_cast<double>(pobj);
    if (rp.norm() / (1 + bvec.norm()) < tol && rd_norm / (1 + c_norm) < tol &&
        std::abs(pobj - dobj) / (1 + std::abs(pobj) + std::abs(dobj)) < tol) {
      res.converged = true;
      return res;
    }
    const Real mu = inner(x, s) / n_total;

    std::vector<MatrixXd> sinv(nb), kr(nb);
    for (int k = 0; k < nb; ++k) {
      sinv[k] = s[k].inverse();
      kr[k] = kron(sinv[k], x[k]);  // vec(X A S^-1) = (S^-1 kron X) vec(A)
    }
    MatrixXd mm(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        Real v = 0;
        for (int k = 0; k < nb; ++k) v += vec(a[i][k]).dot(kr[k] * vec(a[j][k]));
        mm(i, j) = v;
      }
    // dX = sigma mu S^-1 - X - X dS S^-1, dS = Rd - A^T dy.
    VectorXd rhs = rp;
    std::vector<MatrixXd> base(nb);
    for (int k = 0; k < nb; ++k) base[k] = sigma * mu * sinv[k] - x[k] - x[k] * rd[k] * sinv[k];
    for (int i = 0; i < m; ++i) rhs(i) -= inner(a[i], base);
    const VectorXd dy = mm.fullPivLu().solve(rhs);
    std::vector<MatrixXd> ds(nb), dx(nb);
    Real amax = 1e300L;
    for (int k = 0; k < nb; ++k) {
      ds[k] = rd[k];
      for (int i = 0; i < m; ++i) ds[k] -= dy(i) * a[i][k];
      MatrixXd d = base[k] + x[k] * rd[k] * sinv[k] - x[k] * ds[k] * sinv[k];
      dx[k] = 0.5 * (d + d.transpose());
      amax = std::min({amax, max_step(x[k], dx[k]), max_step(s[k], ds[k])});
    }
    const Real alpha = std::min(Real(1), Real(0.9) * amax);
    for (int k = 0; k < nb; ++k) {
      x[k] += alpha * dx[k];
      s[k] += alpha * ds[k];
    }
    y += alpha * dy;
  }
  return res;
}

}  // namespace swipt::testing
