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

// Homogeneous self-dual interior-point method for the block programs in
// sdp.hpp. Complex blocks are solved through their real symmetric
// embedding; scalar blocks and inequality slacks form one diagonal block.

#include <algorithm>
#include <optional>
#include <cmath>
#include <limits>

#include "swipt/errors.hpp"
#include "swipt/sdp.hpp"

namespace swipt::sdp {
namespace {

// Iterations allowed after the first accepted point while polishing.
constexpr int kPolishIterations = 4;
// Iterative-refinement passes on each Newton direction.
constexpr int kRefinePasses = 2;

struct PsdBlock {
  int source = -1;
  bool complex = false;
  int n = 0;
  RMat c;
  std::vector<int> rows;
  std::vector<RMat> a;
};

struct Model {
  int m = 0;
  std::vector<PsdBlock> psd;
  int n_lp = 0;
  RMat a_lp;  // m x n_lp
  RVec c_lp;
  std::vector<int> lp_block;  // source block per entry, -1 for a slack
  RVec b;
  RVec row_scale;
  double obj_scale = 1.0;
  std::vector<double> row_sign;  // +1 for '=' and '>=', -1 for '<='
  std::vector<int> slack_of_row;  // LP entry of the row's slack, -1 for '='
  int degree = 0;
};

RMat real_coeff(const BlockSpec& spec, const CMat& coeff) {
  if (spec.kind == BlockKind::kHermitian) return embed_hermitian(coeff) * 0.5;
  return coeff.real();
}

Model build_model(const ConeProgram& p) {
  Model md;
  md.m = static_cast<int>(p.constraints.size());

  std::vector<int> psd_index(p.blocks.size(), -1);
  std::vector<int> lp_index(p.blocks.size(), -1);
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    const auto& spec = p.blocks[b];
    if (spec.dim == 1) {
      lp_index[b] = md.n_lp++;
      md.lp_block.push_back(static_cast<int>(b));
    } else {
      PsdBlock blk;
      blk.source = static_cast<int>(b);
      blk.complex = spec.kind == BlockKind::kHermitian;
      blk.n = blk.complex ? 2 * spec.dim : spec.dim;
      blk.c = RMat::Zero(blk.n, blk.n);
      psd_index[b] = static_cast<int>(md.psd.size());
      md.psd.push_back(std::move(blk));
    }
  }
  auto& slack_of_row = md.slack_of_row;
  slack_of_row.assign(md.m, -1);
  for (int i = 0; i < md.m; ++i) {
    if (p.constraints[i].relation != Relation::kEqual) {
      slack_of_row[i] = md.n_lp++;
      md.lp_block.push_back(-1);
    }
  }

  md.a_lp = RMat::Zero(md.m, md.n_lp);
  md.c_lp = RVec::Zero(md.n_lp);
  md.b = RVec::Zero(md.m);
  md.row_sign.assign(md.m, 1.0);

  for (const auto& t : p.objective.terms) {
    const auto& spec = p.blocks[t.block];
    if (lp_index[t.block] >= 0) {
      md.c_lp(lp_index[t.block]) += t.coeff(0, 0).real();
    } else {
      md.psd[psd_index[t.block]].c += real_coeff(spec, t.coeff);
    }
  }

  // Per-block accumulation so repeated terms on one block are merged.
  std::vector<std::vector<RMat>> acc(md.psd.size());
  std::vector<std::vector<bool>> touched(md.psd.size(), std::vector<bool>(md.m, false));
  for (auto& a : acc) a.resize(md.m);
  for (int i = 0; i < md.m; ++i) {
    const auto& c = p.constraints[i];
    md.b(i) = c.rhs;
    for (const auto& t : c.lhs.terms) {
      const auto& spec = p.blocks[t.block];
      if (lp_index[t.block] >= 0) {
        md.a_lp(i, lp_index[t.block]) += t.coeff(0, 0).real();
      } else {
        const int k = psd_index[t.block];
        if (!touched[k][i]) {
          acc[k][i] = RMat::Zero(md.psd[k].n, md.psd[k].n);
          touched[k][i] = true;
        }
        acc[k][i] += real_coeff(spec, t.coeff);
      }
    }
    if (c.relation == Relation::kLessEqual) {
      md.a_lp(i, slack_of_row[i]) = 1.0;
      md.row_sign[i] = -1.0;
    } else if (c.relation == Relation::kGreaterEqual) {
      md.a_lp(i, slack_of_row[i]) = -1.0;
    }
  }
  for (std::size_t k = 0; k < md.psd.size(); ++k) {
    for (int i = 0; i < md.m; ++i) {
      if (touched[k][i]) {
        md.psd[k].rows.push_back(i);
        md.psd[k].a.push_back(std::move(acc[k][i]));
      }
    }
  }

  // Row equilibration and objective normalization.
  md.row_scale = RVec::Ones(md.m);
  for (int i = 0; i < md.m; ++i) {
    double n2 = md.a_lp.row(i).squaredNorm();
    for (const auto& blk : md.psd) {
      for (std::size_t k = 0; k < blk.rows.size(); ++k) {
        if (blk.rows[k] == i) n2 += blk.a[k].squaredNorm();
      }
    }
    if (n2 > 0.0) md.row_scale(i) = std::sqrt(n2);
  }
  for (int i = 0; i < md.m; ++i) {
    md.a_lp.row(i) /= md.row_scale(i);
    md.b(i) /= md.row_scale(i);
  }
  for (auto& blk : md.psd) {
    for (std::size_t k = 0; k < blk.rows.size(); ++k) blk.a[k] /= md.row_scale(blk.rows[k]);
  }
  double c2 = md.c_lp.squaredNorm();
  for (const auto& blk : md.psd) c2 += blk.c.squaredNorm();
  if (c2 > 0.0) md.obj_scale = std::sqrt(c2);
  md.c_lp /= md.obj_scale;
  for (auto& blk : md.psd) blk.c /= md.obj_scale;

  md.degree = md.n_lp;
  for (const auto& blk : md.psd) md.degree += blk.n;
  return md;
}

// Primal-dual point of the homogeneous embedding.
struct Point {
  std::vector<RMat> x, s;
  RVec x_lp, s_lp, y;
  double tau = 1.0;
  double kappa = 1.0;
};

struct Direction {
  std::vector<RMat> dx, ds;
  RVec dx_lp, ds_lp, dy;
  double dtau = 0.0;
  double dkappa = 0.0;
};

double dot(const RMat& a, const RMat& b) { return a.cwiseProduct(b).sum(); }

RVec apply_a(const Model& md, const std::vector<RMat>& x, const RVec& x_lp) {
  RVec out = md.a_lp * x_lp;
  for (std::size_t k = 0; k < md.psd.size(); ++k) {
    const auto& blk = md.psd[k];
    for (std::size_t r = 0; r < blk.rows.size(); ++r) out(blk.rows[r]) += dot(blk.a[r], x[k]);
  }
  return out;
}

RMat apply_at_block(const PsdBlock& blk, const RVec& y) {
  RMat out = RMat::Zero(blk.n, blk.n);
  for (std::size_t r = 0; r < blk.rows.size(); ++r) out += y(blk.rows[r]) * blk.a[r];
  return out;
}

double objective(const Model& md, const std::vector<RMat>& x, const RVec& x_lp) {
  double v = md.c_lp.dot(x_lp);
  for (std::size_t k = 0; k < md.psd.size(); ++k) v += dot(md.psd[k].c, x[k]);
  return v;
}

// Keeps embedded complex iterates exactly in the [[R, -I], [I, R]] pattern.
void project_embedded(RMat& m) {
  const Eigen::Index n = m.rows() / 2;
  const RMat re = 0.5 * (m.topLeftCorner(n, n) + m.bottomRightCorner(n, n));
  const RMat im = 0.5 * (m.bottomLeftCorner(n, n) - m.topRightCorner(n, n));
  m.topLeftCorner(n, n) = re;
  m.bottomRightCorner(n, n) = re;
  m.bottomLeftCorner(n, n) = im;
  m.topRightCorner(n, n) = -im;
}

RMat symmetrize(const RMat& m) { return 0.5 * (m + m.transpose()); }

// Largest alpha with X + alpha dX PSD (infinity when unbounded).
double max_step_psd(const RMat& x, const RMat& dx, bool* ok) {
  Eigen::LLT<RMat> llt(x);
  if (llt.info() != Eigen::Success) {
    *ok = false;
    return 0.0;
  }
  const RMat l_inv_dx = llt.matrixL().solve(dx);
  const RMat w = llt.matrixL().solve(l_inv_dx.transpose());
  Eigen::SelfAdjointEigenSolver<RMat> es(symmetrize(w), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  if (lmin >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lmin;
}

double max_step_vec(const RVec& x, const RVec& dx) {
  double a = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (dx(i) < 0.0) a = std::min(a, -x(i) / dx(i));
  }
  return a;
}

double max_step_scalar(double x, double dx) {
  return dx < 0.0 ? -x / dx : std::numeric_limits<double>::infinity();
}

class Engine {
 public:
  Engine(const Model& md, const SolverOptions& opt) : md_(md), opt_(opt) {}

  ConeSolution run(const ConeProgram& program);

 private:
  // Nesterov-Todd scaling per block: W S W = X, G G^T = W,
  // G^{-1} X G^{-T} = G^T S G = diag(d).
  struct Factor {
    std::vector<RMat> w, g, g_inv;
    std::vector<RVec> d;
    std::vector<RMat> xcs;  // W C W
    // Bordered system in (dy, dtau):
    //   [ M          -(u + b)    ] [dy  ]   [ rp - A(R_hat)              ]
    //   [ (b - u)^T  cc + kappa/tau ] [dtau] = [ r3 + <C, R_hat> + r_tk/tau ]
    // solved as a whole: u and cc grow like 1/mu, and eliminating dtau
    // first cancels them catastrophically.
    Eigen::FullPivLU<RMat> lu;  // of E K E
    RVec equil;                 // E
    RVec u;
    double cc = 0.0;
    bool ok = true;
  };

  bool factorize(const Point& pt, Factor* f) const;
  Direction direction(const Point& pt, const Factor& f, const std::vector<RMat>& rc,
                      const RVec& rc_lp, double r_tk, const RVec& rp,
                      const std::vector<RMat>& rd, const RVec& rd_lp, double r3) const;
  void refine(const Point& pt, const Factor& f, const RVec& rp, double r3, Direction* d) const;
  double max_step(const Point& pt, const Direction& d, bool* ok) const;
  double mu(const Point& pt) const;
  void extract(const ConeProgram& program, const Point& pt, ConeSolution* out) const;

  const Model& md_;
  const SolverOptions& opt_;
};

double Engine::mu(const Point& pt) const {
  double v = pt.x_lp.dot(pt.s_lp) + pt.tau * pt.kappa;
  for (std::size_t k = 0; k < md_.psd.size(); ++k) v += dot(pt.x[k], pt.s[k]);
  return v / (md_.degree + 1);
}

bool Engine::factorize(const Point& pt, Factor* f) const {
  const int m = md_.m;
  const std::size_t nb = md_.psd.size();
  RMat mm = RMat::Zero(m, m);
  f->u = RVec::Zero(m);
  f->cc = 0.0;
  f->w.resize(nb);
  f->g.resize(nb);
  f->g_inv.resize(nb);
  f->d.resize(nb);
  f->xcs.resize(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    const auto& blk = md_.psd[k];
    Eigen::LLT<RMat> lx(pt.x[k]);
    if (lx.info() != Eigen::Success) return false;
    const RMat l = lx.matrixL();
    Eigen::SelfAdjointEigenSolver<RMat> es(symmetrize(l.transpose() * pt.s[k] * l));
    if (es.info() != Eigen::Success || !(es.eigenvalues()(0) > 0.0)) return false;
    f->d[k] = es.eigenvalues().cwiseSqrt();
    const RVec root = f->d[k].cwiseSqrt();
    f->g[k] = l * es.eigenvectors() * root.cwiseInverse().asDiagonal();
    f->g_inv[k] = root.asDiagonal() * es.eigenvectors().transpose() *
                  lx.matrixL().solve(RMat::Identity(blk.n, blk.n));
    f->w[k] = symmetrize(f->g[k] * f->g[k].transpose());
    if (blk.complex) project_embedded(f->w[k]);
    const RMat& w = f->w[k];
    f->xcs[k] = w * blk.c * w;
    f->cc += dot(blk.c, f->xcs[k]);
    for (std::size_t r = 0; r < blk.rows.size(); ++r) {
      const RMat pr = w * blk.a[r] * w;
      const int i = blk.rows[r];
      f->u(i) += dot(blk.c, pr);
      for (std::size_t t = 0; t < blk.rows.size(); ++t) mm(i, blk.rows[t]) += dot(blk.a[t], pr);
    }
  }
  const RVec d = pt.x_lp.cwiseQuotient(pt.s_lp);
  mm += md_.a_lp * d.asDiagonal() * md_.a_lp.transpose();
  f->u += md_.a_lp * d.cwiseProduct(md_.c_lp);
  f->cc += md_.c_lp.cwiseProduct(md_.c_lp).dot(d);
  mm = symmetrize(mm);

  RMat k = RMat::Zero(m + 1, m + 1);
  k.topLeftCorner(m, m) = mm;
  k.col(m).head(m) = -(f->u + md_.b);
  k.row(m).head(m) = (md_.b - f->u).transpose();
  k(m, m) = f->cc + pt.kappa / pt.tau;
  f->equil = k.diagonal().cwiseAbs().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  k = f->equil.asDiagonal() * k * f->equil.asDiagonal();
  if (!k.allFinite()) return false;
  f->lu.compute(k);
  if (!(f->lu.matrixLU().diagonal().cwiseAbs().minCoeff() > 0.0)) return false;
  return true;
}

Direction Engine::direction(const Point& pt, const Factor& f, const std::vector<RMat>& rc,
                            const RVec& rc_lp, double r_tk, const RVec& rp,
                            const std::vector<RMat>& rd, const RVec& rd_lp, double r3) const {
  const std::size_t nb = md_.psd.size();
  // Complementarity rows read dX + W dS W = Rc; R_hat = Rc - W Rd W.
  std::vector<RMat> rhat(nb);
  for (std::size_t k = 0; k < nb; ++k) rhat[k] = rc[k] - f.w[k] * rd[k] * f.w[k];
  const RVec rhat_lp = (rc_lp - pt.x_lp.cwiseProduct(rd_lp)).cwiseQuotient(pt.s_lp);

  const RVec a_rhat = apply_a(md_, rhat, rhat_lp);
  const double c_rhat = objective(md_, rhat, rhat_lp);
  RVec rhs(md_.m + 1);
  rhs.head(md_.m) = rp - a_rhat;
  rhs(md_.m) = r3 + c_rhat + r_tk / pt.tau;
  const RVec sol = f.equil.cwiseProduct(f.lu.solve(f.equil.cwiseProduct(rhs)));

  Direction d;
  d.dy = sol.head(md_.m);
  d.dtau = sol(md_.m);
  d.dkappa = (r_tk - pt.kappa * d.dtau) / pt.tau;

  d.dx.resize(nb);
  d.ds.resize(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    const auto& blk = md_.psd[k];
    const RMat aty = apply_at_block(blk, d.dy);
    d.ds[k] = rd[k] - aty + d.dtau * blk.c;
    d.dx[k] = symmetrize(rhat[k] + f.w[k] * (aty - d.dtau * blk.c) * f.w[k]);
    if (blk.complex) {
      project_embedded(d.dx[k]);
      project_embedded(d.ds[k]);
    }
  }
  d.ds_lp = rd_lp - md_.a_lp.transpose() * d.dy + d.dtau * md_.c_lp;
  d.dx_lp = (rc_lp - pt.x_lp.cwiseProduct(d.ds_lp)).cwiseQuotient(pt.s_lp);
  return d;
}

// The elimination satisfies the dual and complementarity rows exactly; the
// primal and gap rows inherit the Schur solve's error, which grows as the
// iterates approach the boundary. Correct them with a few extra solves.
void Engine::refine(const Point& pt, const Factor& f, const RVec& rp, double r3,
                    Direction* d) const {
  const std::size_t nb = md_.psd.size();
  std::vector<RMat> zero_blk(nb);
  for (std::size_t k = 0; k < nb; ++k) zero_blk[k] = RMat::Zero(md_.psd[k].n, md_.psd[k].n);
  const RVec zero_lp = RVec::Zero(md_.n_lp);
  auto error = [&](const Direction& t, RVec* ep, double* e3) {
    *ep = rp - (apply_a(md_, t.dx, t.dx_lp) - t.dtau * md_.b);
    *e3 = r3 - (md_.b.dot(t.dy) - objective(md_, t.dx, t.dx_lp) - t.dkappa);
    return std::sqrt(ep->squaredNorm() + *e3 * *e3);
  };
  RVec ep;
  double e3 = 0.0;
  double err = error(*d, &ep, &e3);
  for (int pass = 0; pass < kRefinePasses && err > 0.0; ++pass) {
    const Direction c = direction(pt, f, zero_blk, zero_lp, 0.0, ep, zero_blk, zero_lp, e3);
    Direction t = *d;
    for (std::size_t k = 0; k < nb; ++k) {
      t.dx[k] += c.dx[k];
      t.ds[k] += c.ds[k];
    }
    t.dx_lp += c.dx_lp;
    t.ds_lp += c.ds_lp;
    t.dy += c.dy;
    t.dtau += c.dtau;
    t.dkappa += c.dkappa;
    RVec ep_t;
    double e3_t = 0.0;
    const double err_t = error(t, &ep_t, &e3_t);
    // A badly conditioned factor can make the correction diverge.
    if (!(err_t < 0.5 * err)) break;
    *d = std::move(t);
    ep = std::move(ep_t);
    e3 = e3_t;
    err = err_t;
  }
}

double Engine::max_step(const Point& pt, const Direction& d, bool* ok) const {
  double a = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < md_.psd.size(); ++k) {
    a = std::min(a, max_step_psd(pt.x[k], d.dx[k], ok));
    a = std::min(a, max_step_psd(pt.s[k], d.ds[k], ok));
  }
  a = std::min(a, max_step_vec(pt.x_lp, d.dx_lp));
  a = std::min(a, max_step_vec(pt.s_lp, d.ds_lp));
  a = std::min(a, max_step_scalar(pt.tau, d.dtau));
  a = std::min(a, max_step_scalar(pt.kappa, d.dkappa));
  return a;
}

void Engine::extract(const ConeProgram& program, const Point& pt, ConeSolution* out) const {
  ConeSolution& sol = *out;
  const std::size_t nb = md_.psd.size();
  const int m = md_.m;

  // Map back to the caller's blocks. Rays (infeasible / unbounded) are
  // reported unnormalized by tau.
  const bool ray = sol.status == SolveStatus::kInfeasible || sol.status == SolveStatus::kUnbounded;
  const double inv_tau = ray ? 1.0 : 1.0 / pt.tau;
  sol.primal.resize(program.blocks.size());
  sol.dual_slack.resize(program.blocks.size());
  for (std::size_t k = 0; k < nb; ++k) {
    const auto& blk = md_.psd[k];
    if (blk.complex) {
      sol.primal[blk.source] = unembed_hermitian(pt.x[k]) * inv_tau;
      sol.dual_slack[blk.source] = unembed_hermitian(pt.s[k]) * (2.0 * md_.obj_scale * inv_tau);
    } else {
      sol.primal[blk.source] = (pt.x[k] * inv_tau).cast<Complex>();
      sol.dual_slack[blk.source] = (pt.s[k] * (md_.obj_scale * inv_tau)).cast<Complex>();
    }
  }
  for (int j = 0; j < md_.n_lp; ++j) {
    const int src = md_.lp_block[j];
    if (src < 0) continue;
    sol.primal[src] = CMat::Constant(1, 1, pt.x_lp(j) * inv_tau);
    sol.dual_slack[src] = CMat::Constant(1, 1, pt.s_lp(j) * md_.obj_scale * inv_tau);
  }
  sol.multipliers.resize(m);
  for (int i = 0; i < m; ++i) {
    // An inequality's multiplier is the dual of its slack, which equals
    // the signed y_i up to the dual residual and is non-negative.
    const int slack = md_.slack_of_row[i];
    sol.multipliers[i] = slack >= 0
                             ? pt.s_lp(slack) * md_.obj_scale * inv_tau
                             : pt.y(i) * md_.obj_scale / md_.row_scale(i) * inv_tau;
  }
  if (!ray) {
    const Residuals r = residuals(program, sol);
    sol.primal_objective = r.primal_objective;
    sol.dual_objective = r.dual_objective;
    sol.duality_gap = r.gap;
    sol.primal_infeasibility = r.primal_infeas;
    sol.dual_infeasibility = r.dual_infeas;
  } else {
    const auto& last = sol.trace.back();
    sol.primal_objective = last.primal_objective;
    sol.dual_objective = last.dual_objective;
    sol.duality_gap = last.relative_gap;
    sol.primal_infeasibility = last.primal_infeasibility;
    sol.dual_infeasibility = last.dual_infeasibility;
  }
}

ConeSolution Engine::run(const ConeProgram& program) {
  const std::size_t nb = md_.psd.size();
  const int m = md_.m;

  Point pt;
  pt.x.resize(nb);
  pt.s.resize(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    pt.x[k] = RMat::Identity(md_.psd[k].n, md_.psd[k].n);
    pt.s[k] = RMat::Identity(md_.psd[k].n, md_.psd[k].n);
  }
  pt.x_lp = RVec::Ones(md_.n_lp);
  pt.s_lp = RVec::Ones(md_.n_lp);
  pt.y = RVec::Zero(m);

  const double b_norm = md_.b.norm();
  double c_norm2 = md_.c_lp.squaredNorm();
  for (const auto& blk : md_.psd) c_norm2 += blk.c.squaredNorm();
  const double c_norm = std::sqrt(c_norm2);

  ConeSolution sol;
  sol.status = SolveStatus::kMaxIterations;

  std::vector<RMat> rd(nb), rc(nb);
  std::optional<Point> accepted;
  double accepted_merit = 0.0;
  int first_accepted = -1;
  int iter = 0;
  double last_step = 0.0;
  for (;; ++iter) {
    // Residuals of the embedding.
    const RVec ax = apply_a(md_, pt.x, pt.x_lp);
    const RVec rp = pt.tau * md_.b - ax;
    double rd_norm2 = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
      rd[k] = pt.tau * md_.psd[k].c - apply_at_block(md_.psd[k], pt.y) - pt.s[k];
      rd_norm2 += rd[k].squaredNorm();
    }
    const RVec rd_lp = pt.tau * md_.c_lp - md_.a_lp.transpose() * pt.y - pt.s_lp;
    rd_norm2 += rd_lp.squaredNorm();
    const double cx = objective(md_, pt.x, pt.x_lp);
    const double by = md_.b.dot(pt.y);
    const double rg = by - cx - pt.kappa;
    const double cur_mu = mu(pt);

    const double pobj = cx / pt.tau;
    const double dobj = by / pt.tau;
    IterationRecord rec;
    rec.iteration = iter;
    rec.primal_objective = pobj * md_.obj_scale;
    rec.dual_objective = dobj * md_.obj_scale;
    rec.primal_infeasibility = rp.norm() / pt.tau / (1.0 + b_norm);
    rec.dual_infeasibility = std::sqrt(rd_norm2) / pt.tau / (1.0 + c_norm);
    rec.relative_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
    rec.mu = cur_mu;
    rec.step = last_step;
    sol.trace.push_back(rec);

    if (rec.primal_infeasibility <= opt_.feas_tol && rec.dual_infeasibility <= opt_.feas_tol &&
        rec.relative_gap <= opt_.gap_tol) {
      // Scaled criteria met; confirm in the caller's normalization.
      ConeSolution probe = sol;
      probe.status = SolveStatus::kOptimal;
      extract(program, pt, &probe);
      if (probe.primal_infeasibility <= opt_.feas_tol &&
          probe.dual_infeasibility <= opt_.feas_tol && probe.duality_gap <= opt_.gap_tol) {
        // Accepted. Keep stepping while the point still improves toward the
        // polish target (which includes per-block complementarity), and
        // return the best accepted point.
        double merit = std::max({probe.primal_infeasibility / opt_.feas_tol,
                                 probe.dual_infeasibility / opt_.feas_tol,
                                 probe.duality_gap / opt_.gap_tol});
        for (double c : residuals(program, probe).complementarity) {
          merit = std::max(merit, std::abs(c) / (10.0 * opt_.gap_tol));
        }
        if (!accepted || merit < accepted_merit) {
          accepted = pt;
          accepted_merit = merit;
        }
        if (first_accepted < 0) first_accepted = iter;
        if (merit <= opt_.polish_target) break;
      }
    }
    // Polishing steps may lose accuracy near the boundary; bound them.
    if (first_accepted >= 0 && iter - first_accepted >= kPolishIterations) break;

    // Infeasibility rays: A*y + S ~ 0 with b'y > 0, or A(X) ~ 0 with <C,X> < 0.
    const bool ray_regime = pt.tau <= opt_.infeasibility_ratio * pt.kappa;
    if (by > 0.0) {
      double aty_s2 = 0.0;
      for (std::size_t k = 0; k < nb; ++k) {
        aty_s2 += (apply_at_block(md_.psd[k], pt.y) + pt.s[k]).squaredNorm();
      }
      aty_s2 += (md_.a_lp.transpose() * pt.y + pt.s_lp).squaredNorm();
      if (std::sqrt(aty_s2) <= opt_.feas_tol * by || ray_regime) {
        sol.status = SolveStatus::kInfeasible;
        break;
      }
    }
    if (cx < 0.0 && (ax.norm() <= opt_.feas_tol * -cx || ray_regime)) {
      sol.status = SolveStatus::kUnbounded;
      break;
    }
    if (iter >= opt_.max_iterations) {
      sol.status = SolveStatus::kMaxIterations;
      break;
    }

    Factor f;
    if (!factorize(pt, &f)) {
      sol.status = SolveStatus::kNumericalFailure;
      break;
    }

    // Predictor (affine scaling).
    for (std::size_t k = 0; k < nb; ++k) rc[k] = -pt.x[k];
    RVec rc_lp = -pt.x_lp.cwiseProduct(pt.s_lp);
    const double r3 = -rg;
    Direction aff = direction(pt, f, rc, rc_lp, -pt.tau * pt.kappa, rp, rd, rd_lp, r3);
    refine(pt, f, rp, r3, &aff);
    bool ok = true;
    const double a_aff = std::min(1.0, max_step(pt, aff, &ok));
    if (!ok) {
      sol.status = SolveStatus::kNumericalFailure;
      break;
    }
    double mu_aff = (pt.x_lp + a_aff * aff.dx_lp).dot(pt.s_lp + a_aff * aff.ds_lp) +
                    (pt.tau + a_aff * aff.dtau) * (pt.kappa + a_aff * aff.dkappa);
    for (std::size_t k = 0; k < nb; ++k) {
      mu_aff += dot(pt.x[k] + a_aff * aff.dx[k], pt.s[k] + a_aff * aff.ds[k]);
    }
    mu_aff /= (md_.degree + 1);
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / cur_mu, 3.0), 0.0, 1.0);

    // Corrector.
    const double target = sigma * cur_mu;
    for (std::size_t k = 0; k < nb; ++k) {
      // In the scaled space, d o (dX~ + dS~) = target I - d^2 - dX~_aff o dS~_aff.
      const RMat dxs = f.g_inv[k] * aff.dx[k] * f.g_inv[k].transpose();
      const RMat dss = f.g[k].transpose() * aff.ds[k] * f.g[k];
      RMat rhs = -0.5 * (dxs * dss + dss * dxs);
      const RVec& dk = f.d[k];
      rhs.diagonal() += (RVec::Constant(dk.size(), target) - dk.cwiseProduct(dk));
      for (Eigen::Index i = 0; i < rhs.rows(); ++i) {
        for (Eigen::Index j = 0; j < rhs.cols(); ++j) rhs(i, j) *= 2.0 / (dk(i) + dk(j));
      }
      rc[k] = symmetrize(f.g[k] * rhs * f.g[k].transpose());
      if (md_.psd[k].complex) project_embedded(rc[k]);
    }
    rc_lp = RVec::Constant(md_.n_lp, target) - pt.x_lp.cwiseProduct(pt.s_lp) -
            aff.dx_lp.cwiseProduct(aff.ds_lp);
    const double r_tk = target - pt.tau * pt.kappa - aff.dtau * aff.dkappa;
    Direction dir = direction(pt, f, rc, rc_lp, r_tk, rp, rd, rd_lp, r3);
    refine(pt, f, rp, r3, &dir);
    const double a_max = max_step(pt, dir, &ok);
    if (!ok) {
      sol.status = SolveStatus::kNumericalFailure;
      break;
    }
    const double alpha = std::min(1.0, opt_.step_fraction * a_max);
    if (!(alpha > 1e-14)) {
      sol.status = SolveStatus::kNumericalFailure;
      break;
    }
    last_step = alpha;

    for (std::size_t k = 0; k < nb; ++k) {
      pt.x[k] = symmetrize(pt.x[k] + alpha * dir.dx[k]);
      pt.s[k] = symmetrize(pt.s[k] + alpha * dir.ds[k]);
      if (md_.psd[k].complex) {
        project_embedded(pt.x[k]);
        project_embedded(pt.s[k]);
      }
    }
    pt.x_lp += alpha * dir.dx_lp;
    pt.s_lp += alpha * dir.ds_lp;
    pt.y += alpha * dir.dy;
    pt.tau += alpha * dir.dtau;
    pt.kappa += alpha * dir.dkappa;
  }
  sol.iterations = iter;
  if (accepted) {
    sol.status = SolveStatus::kOptimal;
    extract(program, *accepted, &sol);
    return sol;
  }
  extract(program, pt, &sol);
  return sol;
}

}  // namespace

ConeSolution solve(const ConeProgram& program, const SolverOptions& options) {
  if (!(options.gap_tol > 0.0) || !(options.feas_tol > 0.0) || options.max_iterations <= 0 ||
      !(options.step_fraction > 0.0 && options.step_fraction < 1.0)) {
    throw DomainError("solve: invalid solver options");
  }
  program.validate();
  const Model md = build_model(program);
  Engine engine(md, options);
  return engine.run(program);
}

}  // namespace swipt::sdp
