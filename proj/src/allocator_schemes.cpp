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
#include <map>
#include <tuple>

#include "swipt/allocator.hpp"
#include "swipt/errors.hpp"

namespace swipt {

const char* to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kRelaxedP3: return "relaxed";
    case Scheme::kSuboptimal1: return "suboptimal1";
    case Scheme::kSuboptimal2: return "suboptimal2";
    case Scheme::kBaseline1: return "baseline1";
    case Scheme::kBaseline2: return "baseline2";
  }
  return "unknown";
}

std::vector<Scheme> all_schemes() {
  return {Scheme::kRelaxedP3, Scheme::kSuboptimal1, Scheme::kSuboptimal2, Scheme::kBaseline1,
          Scheme::kBaseline2};
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (Scheme s : all_schemes()) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

RankCheck check_rank_one(const CMat& w_bar, double tol) {
  RankCheck out;
  const RVec ev = eigenvalues_desc(w_bar);
  const double l1 = ev.size() > 0 ? ev(0) : 0.0;
  if (!(l1 > 1e-12)) {
    out.degenerate = true;
    out.eigen_ratio = 0.0;
    out.rank_one = false;
    return out;
  }
  const double l2 = ev.size() > 1 ? std::max(0.0, ev(1)) : 0.0;
  out.eigen_ratio = std::min(1.0, l2 / l1);
  out.rank_one = out.eigen_ratio <= tol;
  return out;
}

Allocation recover(const TransformedSolution& solution, double feas_tol) {
  if (!(solution.xi > feas_tol)) throw RecoveryError("xi is not positive; cannot undo the change of variables");
  const CMat w = hermitian_part(solution.w_bar / solution.xi);
  Eigen::SelfAdjointEigenSolver<CMat> es(w);
  const Eigen::Index top = w.rows() - 1;
  const double lambda = es.eigenvalues()(top);
  if (!(lambda * solution.xi > 1e-12)) throw RecoveryError("beamforming matrix is degenerate");
  CVec vec = std::sqrt(lambda) * es.eigenvectors().col(top);
  Eigen::Index idx = 0;
  vec.cwiseAbs().maxCoeff(&idx);
  const Complex entry = vec(idx);
  if (std::abs(entry) > 0.0) vec *= std::conj(entry) / std::abs(entry);
  vec(idx) = Complex(vec(idx).real(), 0.0);
  return {vec, hermitian_part(solution.v_bar / solution.xi)};
}

double scalarized_objective(const Weights& weights, const UtopiaValues& utopia, double efficiency,
                            double transmit_power) {
  double value = -std::numeric_limits<double>::infinity();
  if (weights.lambda1 > 0.0) value = std::max(value, weights.lambda1 * (-efficiency - utopia.f1_star));
  if (weights.lambda2 > 0.0) value = std::max(value, weights.lambda2 * (transmit_power - utopia.f2_star));
  return value;
}

CMat reduce_rank(const CMat& w_bar, std::span<const CMat> constraints, double tol) {
  // W = F F^H with F = U_r diag(sqrt(lambda_r)).
  auto factor = [tol](const CMat& m) {
    Eigen::SelfAdjointEigenSolver<CMat> es(hermitian_part(m));
    const RVec& ev = es.eigenvalues();
    const double top = ev.size() > 0 ? ev(ev.size() - 1) : 0.0;
    std::vector<int> keep;
    for (int i = static_cast<int>(ev.size()) - 1; i >= 0; --i)
      if (top > 0.0 && ev(i) > tol * top) keep.push_back(i);
    CMat f(m.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k)
      f.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]) * std::sqrt(ev(keep[k]));
    return f;
  };

  CMat f = factor(w_bar);
  while (f.cols() > 1) {
    const int r = static_cast<int>(f.cols());
    const int n = r * r;
    // Row j: Re Tr(F^H A_j F D) over a real basis of Hermitian D.
    RMat rows(static_cast<Eigen::Index>(constraints.size()), n);
    for (std::size_t j = 0; j < constraints.size(); ++j) {
      const CMat b = f.adjoint() * constraints[j] * f;
      int col = 0;
      for (int i = 0; i < r; ++i) rows(j, col++) = b(i, i).real();
      for (int i = 0; i < r; ++i) {
        for (int k = i + 1; k < r; ++k) {
          rows(j, col++) = 2.0 * b(i, k).real();
          rows(j, col++) = 2.0 * b(i, k).imag();
        }
      }
      const double norm = rows.row(j).norm();
      if (norm > 0.0) rows.row(j) /= norm;
    }
    Eigen::JacobiSVD<RMat> svd(rows, Eigen::ComputeFullV);
    const RVec& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-10 * std::max(1.0, sv(0))) ++rank;
    if (rank >= n) break;
    const RVec d = svd.matrixV().col(n - 1);
    CMat dm = CMat::Zero(r, r);
    int col = 0;
    for (int i = 0; i < r; ++i) dm(i, i) = d(col++);
    for (int i = 0; i < r; ++i) {
      for (int k = i + 1; k < r; ++k) {
        dm(i, k) = Complex(d(col), d(col + 1));
        dm(k, i) = std::conj(dm(i, k));
        col += 2;
      }
    }
    // Step to the boundary of the PSD cone: I - D / lambda_max(D).
    RVec dev = eigenvalues_desc(dm);
    if (dev(0) <= 0.0) {
      dm = -dm;
      dev = eigenvalues_desc(dm);
    }
    const CMat step = CMat::Identity(r, r) - dm / dev(0);
    const CMat g = factor(step);
    if (g.cols() >= r) break;
    f = f * g;
  }
  return hermitian_part(f * f.adjoint());
}

namespace {

struct ProgramKey {
  bool beam_harvesting;
  BeamStructure beam;
  NoiseStructure noise;
  bool operator<(const ProgramKey& o) const {
    return std::tie(beam_harvesting, beam, noise) < std::tie(o.beam_harvesting, o.beam, o.noise);
  }
};

// Outcome of check_feasible per restricted structure: empty when feasible,
// the infeasibility certificate otherwise. Shared across weights.
using FeasibilityCache = std::map<std::pair<BeamStructure, NoiseStructure>, std::optional<std::string>>;

// Solves the P3 variants needed by the schemes at one weight, each at most
// once, so hybrid schemes and their components share work.
class SchemeSolver {
 public:
  SchemeSolver(const GramSet& grams, const QosTargets& qos, std::span<const double> eps,
               const Weights& weights, const UtopiaValues& utopia, const AllocatorOptions& options,
               FeasibilityCache* feasibility)
      : grams_(grams), qos_(qos), eps_(eps), weights_(weights), utopia_(utopia), options_(options),
        feasibility_(feasibility) {
    weights_.validate();
  }

  SolveReport run(Scheme scheme) {
    switch (scheme) {
      case Scheme::kRelaxedP3:
        return tagged(get({true, BeamStructure::kFull, NoiseStructure::kFull}), scheme, "relaxed");
      case Scheme::kSuboptimal1:
        return tagged(get({false, BeamStructure::kFull, NoiseStructure::kFull}), scheme, "suboptimal1");
      case Scheme::kSuboptimal2:
        return hybrid(NoiseStructure::kFull, scheme);
      case Scheme::kBaseline1:
        return hybrid(NoiseStructure::kNullSpace, scheme);
      case Scheme::kBaseline2: {
        SolveReport r = get({true, BeamStructure::kMrt, NoiseStructure::kFull});
        return tagged(std::move(r), scheme, "baseline2");
      }
    }
    throw DomainError("unknown scheme");
  }

 private:
  SolveReport hybrid(NoiseStructure noise, Scheme scheme) {
    SolveReport relaxed = get({true, BeamStructure::kFull, noise});
    if (relaxed.rank_one) return tagged(std::move(relaxed), scheme, "relaxed");
    return tagged(get({false, BeamStructure::kFull, noise}), scheme, "suboptimal1");
  }

  static SolveReport tagged(SolveReport r, Scheme scheme, const char* branch) {
    r.scheme = scheme;
    r.branch = branch;
    return r;
  }

  const SolveReport& get(const ProgramKey& key) {
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(key, solve(key)).first->second;
  }

  // The unrestricted structure is certified by the utopia computation.
  void ensure_feasible(BeamStructure beam, NoiseStructure noise) {
    if (beam == BeamStructure::kFull && noise == NoiseStructure::kFull) return;
    auto it = feasibility_->find({beam, noise});
    if (it == feasibility_->end()) {
      std::optional<std::string> failure;
      try {
        check_feasible(grams_, qos_, eps_, beam, noise, options_);
      } catch (const InfeasibleError& e) {
        failure = e.certificate();
      }
      it = feasibility_->emplace(std::make_pair(beam, noise), failure).first;
    }
    if (it->second) throw InfeasibleError("restricted structure admits no allocation", *it->second);
  }

  SolveReport solve(const ProgramKey& key) {
    ensure_feasible(key.beam, key.noise);
    ProblemSpec spec;
    spec.kind = ProblemKind::kP3;
    spec.weights = weights_;
    spec.utopia = utopia_;
    spec.beam_harvesting = key.beam_harvesting;
    spec.beam = key.beam;
    spec.noise = key.noise;
    const auto tp = build_transformed(grams_, qos_, eps_, spec);

    SolveReport r;
    r.transformed = solve_transformed(tp, options_);
    r.tau = r.transformed.tau;
    const auto& t = r.transformed;

    if (key.beam == BeamStructure::kMrt) {
      // Rank one by construction.
      r.rank_one = true;
      r.eigen_ratio = 0.0;
      r.degenerate = !(t.w_bar.trace().real() > 1e-12);
    } else {
      RankCheck rc = check_rank_one(t.w_bar, options_.rank_tol);
      r.raw_eigen_ratio = rc.eigen_ratio;
      if (!rc.rank_one && !rc.degenerate && options_.rank_reduction) {
        // W_bar enters the program only through these traces.
        std::vector<CMat> traces{grams_.h, CMat::Identity(grams_.num_antennas(),
                                                          grams_.num_antennas())};
        traces.insert(traces.end(), grams_.g.begin(), grams_.g.end());
        r.transformed.w_bar = reduce_rank(t.w_bar, traces);
        rc = check_rank_one(t.w_bar, options_.rank_tol);
      }
      r.rank_one = rc.rank_one;
      r.eigen_ratio = rc.eigen_ratio;
      r.degenerate = rc.degenerate;
    }

    // Sufficient condition theta_k >= kappa_1. Without the beamformer in the
    // efficiency row, kappa_1 does not reach the W_bar stationarity
    // condition and the condition holds trivially.
    r.prop2_holds = true;
    if (key.beam_harvesting) {
      for (double th : t.certificate.theta) {
        r.prop2_holds = r.prop2_holds && th >= t.certificate.kappa1 - options_.prop2_tol;
      }
    }

    const bool guaranteed = key.beam == BeamStructure::kMrt || !key.beam_harvesting;
    if (r.rank_one || (guaranteed && !r.degenerate)) {
      r.recovered = recover(t, options_.solver.feas_tol);
      const Allocation& a = *r.recovered;
      r.metrics.transmit_power = transmit_power(a);
      r.metrics.efficiency = grams_.num_idle() > 0 ? harvesting_efficiency(a, grams_, eps_) : 0.0;
      r.metrics.secrecy = secrecy_capacity(a, grams_, qos_.sigma_s2);
    } else {
      if (!(t.xi > options_.solver.feas_tol)) throw RecoveryError("xi is not positive");
      const CovarianceAllocation cov{t.w_bar / t.xi, t.v_bar / t.xi};
      r.metrics.transmit_power = transmit_power(cov);
      r.metrics.efficiency = grams_.num_idle() > 0 ? harvesting_efficiency(cov, grams_, eps_) : 0.0;
      r.metrics.secrecy = secrecy_capacity(cov, grams_, qos_.sigma_s2);
      r.metrics.bound_only = true;
    }
    r.achieved_objective =
        scalarized_objective(weights_, utopia_, r.metrics.efficiency, r.metrics.transmit_power);
    return r;
  }

  const GramSet& grams_;
  const QosTargets& qos_;
  std::span<const double> eps_;
  Weights weights_;
  UtopiaValues utopia_;
  AllocatorOptions options_;
  FeasibilityCache* feasibility_;
  std::map<ProgramKey, SolveReport> cache_;
};

}  // namespace

SolveReport solve_scheme(Scheme scheme, const GramSet& grams, const QosTargets& qos,
                         std::span<const double> eps, const Weights& weights,
                         const UtopiaValues& utopia, const AllocatorOptions& options) {
  FeasibilityCache feasibility;
  return SchemeSolver(grams, qos, eps, weights, utopia, options, &feasibility).run(scheme);
}

SolveReport solve_relaxed_p3(const GramSet& grams, const QosTargets& qos, std::span<const double> eps,
                             const Weights& weights, const UtopiaValues& utopia,
                             const AllocatorOptions& options) {
  return solve_scheme(Scheme::kRelaxedP3, grams, qos, eps, weights, utopia, options);
}

SolveReport suboptimal1(const GramSet& grams, const QosTargets& qos, std::span<const double> eps,
                        const Weights& weights, const UtopiaValues& utopia,
                        const AllocatorOptions& options) {
  return solve_scheme(Scheme::kSuboptimal1, grams, qos, eps, weights, utopia, options);
}

SolveReport suboptimal2(const GramSet& grams, const QosTargets& qos, std::span<const double> eps,
                        const Weights& weights, const UtopiaValues& utopia,
                        const AllocatorOptions& options) {
  return solve_scheme(Scheme::kSuboptimal2, grams, qos, eps, weights, utopia, options);
}

SolveReport baseline1(const GramSet& grams, const QosTargets& qos, std::span<const double> eps,
                      const Weights& weights, const UtopiaValues& utopia,
                      const AllocatorOptions& options) {
  return solve_scheme(Scheme::kBaseline1, grams, qos, eps, weights, utopia, options);
}

SolveReport baseline2(const GramSet& grams, const QosTargets& qos, std::span<const double> eps,
                      const Weights& weights, const UtopiaValues& utopia,
                      const AllocatorOptions& options) {
  return solve_scheme(Scheme::kBaseline2, grams, qos, eps, weights, utopia, options);
}

ParetoSweep pareto_sweep(const GramSet& grams, const QosTargets& qos, std::span<const double> eps,
                         std::span<const Weights> grid, std::span<const Scheme> schemes,
                         const AllocatorOptions& options) {
  if (grid.empty()) throw DomainError("pareto_sweep: empty weight grid");
  if (schemes.empty()) throw DomainError("pareto_sweep: no schemes selected");
  ParetoSweep out;
  out.utopia = compute_utopia(grams, qos, eps, options);
  out.points.reserve(grid.size() * schemes.size());
  FeasibilityCache feasibility;
  for (const Weights& w : grid) {
    SchemeSolver solver(grams, qos, eps, w, out.utopia, options, &feasibility);
    for (Scheme s : schemes) {
      ParetoPoint p;
      p.weights = w;
      p.scheme = s;
      try {
        p.report = solver.run(s);
        p.feasible = true;
        p.transmit_power = p.report->metrics.transmit_power;
        p.efficiency = p.report->metrics.efficiency;
      } catch (const InfeasibleError& e) {
        p.failure = std::string("infeasible: ") + e.certificate();
      } catch (const SolverError& e) {
        p.failure = e.what();
      } catch (const RecoveryError& e) {
        p.failure = e.what();
      }
      out.points.push_back(std::move(p));
    }
  }
  return out;
}

int count_monotonicity_violations(std::span<const ParetoPoint> points, Scheme scheme, double slack) {
  std::vector<const ParetoPoint*> sel;
  for (const auto& p : points) {
    if (p.scheme == scheme && p.feasible) sel.push_back(&p);
  }
  std::stable_sort(sel.begin(), sel.end(), [](const ParetoPoint* a, const ParetoPoint* b) {
    return a->weights.lambda2 < b->weights.lambda2;
  });
  int violations = 0;
  for (std::size_t i = 1; i < sel.size(); ++i) {
    if (sel[i]->transmit_power > sel[i - 1]->transmit_power + slack ||
        sel[i]->efficiency > sel[i - 1]->efficiency + slack) {
      ++violations;
    }
  }
  return violations;
}

}  // namespace swipt
