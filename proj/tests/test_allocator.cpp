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
#include <random>

#include <doctest.h>

#include "instances.hpp"
#include "swipt/allocator.hpp"
#include "swipt/errors.hpp"
#include "swipt/linalg.hpp"
#include "swipt/metrics.hpp"
#include "swipt/oracle.hpp"

using namespace swipt;
using swipt::testing::default_setup;
using swipt::testing::feasible_instances;
using swipt::testing::Instance;

namespace {

// Desired receiver h = (1, 1), no idle receivers, Gamma = 10, sigma^2 = 1.
struct SingleReceiver {
  GramSet grams;
  QosTargets qos;
  std::vector<double> eps;

  SingleReceiver() {
    CVec h(2);
    h << 1.0, 1.0;
    grams.h = outer_product(h);
    qos.gamma_tol = {};
    qos.sigma_s2 = 1.0;
    qos.p_max = 100.0;
  }
};

CVec random_vec(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(nd(rng), nd(rng));
  return v;
}

double frobenius(const CMat& a) { return a.norm(); }

// Harvesting objective of the transformed variables: -sum eps Tr(G (W + V)).
double f1_bar(const GramSet& grams, std::span<const double> eps, const CMat& w, const CMat& v) {
  double s = 0.0;
  for (std::size_t k = 0; k < grams.g.size(); ++k)
    s += eps[k] * (trace_product(grams.g[k], w) + trace_product(grams.g[k], v));
  return -s;
}

const std::vector<Weights> kCorpusWeights{{0.0, 1.0}, {0.25, 0.75}, {0.5, 0.5}, {0.9, 0.1},
                                          {1.0, 0.0}};

struct Corpus {
  swipt::testing::Setup setup = default_setup();
  std::vector<Instance> instances = feasible_instances(setup, 8, 7000);
};

const Corpus& corpus() {
  static const Corpus c;
  return c;
}

}  // namespace

TEST_CASE("scheme names round-trip") {
  for (Scheme s : all_schemes()) {
    const auto parsed = parse_scheme(to_string(s));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == s);
  }
  CHECK_FALSE(parse_scheme("Relaxed").has_value());
  CHECK(all_schemes().size() == 5);
}

TEST_CASE("weights validation and uniform grid") {
  CHECK_NOTHROW(Weights{0.3, 0.7}.validate());
  CHECK_THROWS_AS((Weights{0.6, 0.6}.validate()), DomainError);
  CHECK_THROWS_AS((Weights{-0.1, 1.1}.validate()), DomainError);
  const auto grid = uniform_weights(11);
  REQUIRE(grid.size() == 11);
  CHECK(grid.front().lambda1 == 1.0);
  CHECK(grid.front().lambda2 == 0.0);
  CHECK(grid.back().lambda1 == 0.0);
  CHECK(grid.back().lambda2 == 1.0);
  for (const auto& w : grid) CHECK(w.lambda1 + w.lambda2 == doctest::Approx(1.0).epsilon(1e-15));
  const auto one = uniform_weights(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].lambda2 == 1.0);
  CHECK_THROWS_AS(uniform_weights(0), DomainError);
}

TEST_CASE("P2 with a single receiver is solved by MRT at Gamma sigma^2 / ||h||^2") {
  SingleReceiver s;
  const auto r = solve_single_objective(s.grams, s.qos, s.eps, ProblemKind::kP2);
  CHECK(r.value == doctest::Approx(5.0).epsilon(1e-6));
  const Allocation a = recover(r.solution);
  CHECK(transmit_power(a) == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(std::abs(a.w(0) - a.w(1)) <= 1e-6 * a.w.norm());
  CHECK(a.v.trace().real() <= 1e-6 * 5.0);
  const auto f = feasibility_residuals(a, s.grams, s.qos);
  CHECK(f.feasible);
  CHECK(std::abs(f.c1_margin) <= 1e-6 * s.qos.gamma_req);
}

TEST_CASE("P1 without idle receivers is rejected") {
  SingleReceiver s;
  ProblemSpec spec;
  spec.kind = ProblemKind::kP1;
  CHECK_THROWS_AS(build_transformed(s.grams, s.qos, s.eps, spec), DomainError);
  CHECK_THROWS_AS(solve_single_objective(s.grams, s.qos, s.eps, ProblemKind::kP1), DomainError);
  // The utopia point then anchors only the power objective.
  const UtopiaValues u = compute_utopia(s.grams, s.qos, s.eps);
  CHECK(u.f1_star == 0.0);
  CHECK(u.f2_star == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("P3 weights off the simplex are rejected") {
  const auto& c = corpus();
  REQUIRE(!c.instances.empty());
  ProblemSpec spec;
  spec.kind = ProblemKind::kP3;
  spec.utopia = c.instances[0].utopia;
  spec.weights = {0.7, 0.7};
  CHECK_THROWS_AS(build_transformed(c.instances[0].grams, c.setup.qos, c.setup.eps(), spec),
                  DomainError);
  CHECK_THROWS_AS(solve_relaxed_p3(c.instances[0].grams, c.setup.qos, c.setup.eps(), {1.5, -0.5},
                                   c.instances[0].utopia),
                  DomainError);
}

TEST_CASE("single-receiver baseline2 matches the MRT closed form at the power endpoint") {
  SingleReceiver s;
  const UtopiaValues u = compute_utopia(s.grams, s.qos, s.eps);
  const SolveReport r = baseline2(s.grams, s.qos, s.eps, {0.0, 1.0}, u);
  REQUIRE(r.recovered.has_value());
  CHECK(r.metrics.transmit_power == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(r.eigen_ratio == 0.0);
}

TEST_CASE("check_rank_one threshold semantics") {
  std::mt19937_64 rng(11);
  const CVec w = random_vec(rng, 4);
  RankCheck rc = check_rank_one(outer_product(w));
  CHECK(rc.rank_one);
  CHECK(rc.eigen_ratio <= 1e-14);
  CHECK_FALSE(rc.degenerate);

  rc = check_rank_one(CMat::Identity(2, 2));
  CHECK_FALSE(rc.rank_one);
  CHECK(rc.eigen_ratio == doctest::Approx(1.0));

  CMat d = CMat::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 9e-7;
  rc = check_rank_one(d, 1e-6);
  CHECK(rc.rank_one);
  CHECK(rc.eigen_ratio == doctest::Approx(9e-7));
  d(1, 1) = 1.1e-6;
  CHECK_FALSE(check_rank_one(d, 1e-6).rank_one);

  rc = check_rank_one(CMat::Zero(3, 3));
  CHECK(rc.degenerate);
  CHECK_FALSE(rc.rank_one);
  CHECK(rc.eigen_ratio == 0.0);
}

TEST_CASE("recover inverts the change of variables") {
  TransformedSolution t;
  t.w_bar = CMat::Zero(2, 2);
  t.w_bar(0, 0) = 0.5;
  t.v_bar = CMat::Zero(2, 2);
  t.v_bar(0, 0) = 0.25;
  t.v_bar(1, 1) = 0.25;
  t.xi = 0.1;
  const Allocation a = recover(t);
  CHECK(a.w(0).real() == doctest::Approx(std::sqrt(5.0)));
  CHECK(a.w(0).imag() == 0.0);
  CHECK(std::abs(a.w(1)) <= 1e-12);
  CHECK(a.v(0, 0).real() == doctest::Approx(2.5));
  CHECK(a.v(1, 1).real() == doctest::Approx(2.5));
  CHECK(transmit_power(a) == doctest::Approx(10.0));
  CHECK(transmit_power(a) == doctest::Approx(1.0 / t.xi));
}

TEST_CASE("recover reconstructs complex rank-one beams with a fixed phase") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const CVec w0 = random_vec(rng, 5);
    TransformedSolution t;
    t.xi = 0.05 + 0.1 * trial;
    t.w_bar = t.xi * outer_product(w0);
    t.v_bar = CMat::Zero(5, 5);
    const Allocation a = recover(t);
    CHECK(frobenius(outer_product(a.w) - t.w_bar / t.xi) <= 1e-8 * frobenius(t.w_bar / t.xi));
    Eigen::Index arg = 0;
    a.w.cwiseAbs().maxCoeff(&arg);
    CHECK(a.w(arg).imag() == 0.0);
    CHECK(a.w(arg).real() >= 0.0);
    // The phase convention makes recovery independent of the input phase.
    TransformedSolution rotated = t;
    rotated.w_bar = t.xi * outer_product(std::polar(1.0, 0.7 * trial) * w0);
    CHECK((recover(rotated).w - a.w).norm() <= 1e-10 * a.w.norm());
  }
}

TEST_CASE("recover rejects xi = 0 and a zero beam") {
  TransformedSolution t;
  t.w_bar = CMat::Identity(2, 2) * 0.5;
  t.v_bar = CMat::Zero(2, 2);
  t.xi = 0.0;
  CHECK_THROWS_AS(recover(t), RecoveryError);
  t.xi = 1.0;
  t.w_bar = CMat::Zero(2, 2);
  CHECK_THROWS_AS(recover(t), RecoveryError);
}

TEST_CASE("reduce_rank keeps the constrained traces and lowers the rank") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const CVec a = random_vec(rng, 4), b = random_vec(rng, 4), c = random_vec(rng, 4);
    const CMat w = outer_product(a) + outer_product(b) + 0.5 * outer_product(c);
    const std::vector<CMat> cons{outer_product(random_vec(rng, 4)),
                                 outer_product(random_vec(rng, 4)), CMat::Identity(4, 4)};
    const CMat r = reduce_rank(w, cons);
    // Three real trace constraints allow rank one (1 < 3 < 4).
    CHECK(check_rank_one(r, 1e-9).rank_one);
    for (const CMat& m : cons) {
      CHECK(trace_product(m, r) == doctest::Approx(trace_product(m, w)).epsilon(1e-10));
    }
    CHECK(min_eigenvalue(r) >= -1e-12 * max_eigenvalue(r));
    // The result stays inside the range of the input.
    Eigen::SelfAdjointEigenSolver<CMat> es(w);
    const CVec null = es.eigenvectors().col(0);
    CHECK(std::abs(quad_form(null, r)) <= 1e-10 * r.trace().real());
  }
  // With r^2 trace constraints a rank-r matrix may not move.
  const CVec a = random_vec(rng, 3), b = random_vec(rng, 3);
  const CMat w = outer_product(a) + outer_product(b);
  const std::vector<CMat> four{outer_product(random_vec(rng, 3)), outer_product(random_vec(rng, 3)),
                               outer_product(random_vec(rng, 3)), CMat::Identity(3, 3)};
  const CMat r = reduce_rank(w, four);
  for (const CMat& m : four)
    CHECK(trace_product(m, r) == doctest::Approx(trace_product(m, w)).epsilon(1e-10));
}

TEST_CASE("utopia values and P2 endpoint on random instances") {
  const auto& c = corpus();
  REQUIRE(c.instances.size() == 8);
  const auto eps = c.setup.eps();
  for (const Instance& inst : c.instances) {
    CHECK(inst.utopia.f2_star > 0.0);
    CHECK(inst.utopia.f1_star <= 0.0);
    // Harvesting cannot beat the strongest idle channel direction.
    double bound = 0.0;
    for (std::size_t k = 0; k < inst.grams.g.size(); ++k)
      bound += eps[k] * max_eigenvalue(inst.grams.g[k]);
    CHECK(inst.utopia.f1_star >= -bound * (1.0 + 1e-9));

    const auto p2 = solve_single_objective(inst.grams, c.setup.qos, eps, ProblemKind::kP2);
    CHECK(p2.value == doctest::Approx(inst.utopia.f2_star).epsilon(1e-9));
    const RankCheck rc = check_rank_one(p2.solution.w_bar);
    CHECK(rc.eigen_ratio <= 1e-6);
    const Allocation a = recover(p2.solution);
    CHECK(transmit_power(a) == doctest::Approx(p2.value).epsilon(1e-6));
  }
}

TEST_CASE("relaxed P3 at lambda = (0, 1) coincides with P2") {
  const auto& c = corpus();
  const auto eps = c.setup.eps();
  for (const Instance& inst : c.instances) {
    const SolveReport r = solve_relaxed_p3(inst.grams, c.setup.qos, eps, {0.0, 1.0}, inst.utopia);
    CHECK(r.rank_one);
    REQUIRE(r.recovered.has_value());
    CHECK(r.metrics.transmit_power == doctest::Approx(inst.utopia.f2_star).epsilon(1e-6));
    CHECK(std::abs(r.tau) <= 1e-6 * inst.utopia.f2_star);
    // Suboptimal 1 differs only in the efficiency row, inactive here.
    const SolveReport s1 = suboptimal1(inst.grams, c.setup.qos, eps, {0.0, 1.0}, inst.utopia);
    CHECK(s1.tau == doctest::Approx(r.tau).epsilon(1e-6).scale(inst.utopia.f2_star));
  }
}

TEST_CASE("scheme properties over the instance corpus") {
  const auto& c = corpus();
  const auto eps = c.setup.eps();
  const double floor = secrecy_floor(c.setup.qos);
  int recovered = 0, infeasible_restricted = 0;
  for (const Instance& inst : c.instances) {
    for (const Weights& w : kCorpusWeights) {
      CAPTURE(inst.seed);
      CAPTURE(w.lambda1);
      const double scale = w.lambda1 * std::abs(inst.utopia.f1_star) + w.lambda2 * inst.utopia.f2_star;
      std::vector<std::optional<SolveReport>> reports;
      for (Scheme s : all_schemes()) {
        try {
          reports.push_back(solve_scheme(s, inst.grams, c.setup.qos, eps, w, inst.utopia));
        } catch (const InfeasibleError&) {
          // Only the restricted structures may lack an allocation.
          CHECK((s == Scheme::kBaseline1 || s == Scheme::kBaseline2));
          ++infeasible_restricted;
          reports.push_back(std::nullopt);
        }
      }
      for (const auto& opt : reports) {
        if (!opt) continue;
        const SolveReport& r = *opt;
        const std::string scheme_name(to_string(r.scheme));
        CAPTURE(scheme_name);
        const TransformedSolution& t = r.transformed;
        CHECK(t.status == sdp::SolveStatus::kOptimal);
        // Normalization constraint is active.
        CHECK(std::abs(t.w_bar.trace().real() + t.v_bar.trace().real() - 1.0) <= 1e-6);
        CHECK(t.xi >= 0.0);
        // Inequality multipliers are non-negative up to 1e-9 of the
        // certificate's own magnitude (they are reported in original units).
        const DualCertificate& d = t.certificate;
        double dual_scale = std::max({1.0, std::abs(d.beta), std::abs(d.alpha), std::abs(d.mu),
                                      std::abs(d.kappa1), std::abs(d.kappa2), std::abs(d.nu)});
        for (double th : d.theta) dual_scale = std::max(dual_scale, std::abs(th));
        const double dual_tol = -1e-9 * dual_scale;
        CHECK(d.beta >= dual_tol);
        for (double th : d.theta) CHECK(th >= dual_tol);
        CHECK(d.alpha >= dual_tol);
        CHECK(d.mu >= dual_tol);
        CHECK(d.kappa1 >= dual_tol);
        CHECK(d.kappa2 >= dual_tol);
        CHECK(d.nu >= dual_tol);
        if (d.y.size() > 0) CHECK(min_eigenvalue(d.y) >= -1e-9 * std::max(1.0, d.y.norm()));
        if (d.z.size() > 0) CHECK(min_eigenvalue(d.z) >= -1e-9 * std::max(1.0, d.z.norm()));
        CHECK(r.eigen_ratio >= 0.0);
        CHECK(r.eigen_ratio <= 1.0);

        // Epigraph tightness on the program actually solved.
        const bool sub1 = r.branch == "suboptimal1";
        const double f1 = sub1 ? f1_bar(inst.grams, eps, CMat::Zero(t.w_bar.rows(), t.w_bar.cols()),
                                        t.v_bar)
                               : f1_bar(inst.grams, eps, t.w_bar, t.v_bar);
        double top = -1e300;
        if (w.lambda1 > 0.0) top = std::max(top, w.lambda1 * (f1 - inst.utopia.f1_star));
        if (w.lambda2 > 0.0) top = std::max(top, w.lambda2 * (1.0 / t.xi - inst.utopia.f2_star));
        CHECK(std::abs(r.tau - top) <= 1e-6);
        CHECK(std::abs(r.tau - top) <= 1e-6 * scale);

        if (r.prop2_holds) CHECK(r.raw_eigen_ratio <= 1e-6);
        CHECK(r.recovered.has_value() == (r.rank_one || r.scheme == Scheme::kBaseline2 ||
                                          r.branch == "suboptimal1"));
        if (r.recovered) {
          ++recovered;
          const Allocation& a = *r.recovered;
          CHECK(transmit_power(a) == doctest::Approx(1.0 / t.xi).epsilon(1e-6));
          CHECK(r.metrics.transmit_power == doctest::Approx(transmit_power(a)).epsilon(1e-12));
          const auto f = feasibility_residuals(a, inst.grams, c.setup.qos, 1e-6);
          CHECK(f.feasible);
          CHECK(secrecy_capacity(a, inst.grams, c.setup.qos.sigma_s2) >= floor - 1e-6);
          CHECK_FALSE(r.metrics.bound_only);
        } else {
          CHECK(r.metrics.bound_only);
        }
      }

      auto tau = [&](Scheme s) { return reports[static_cast<int>(s)]->tau; };
      const double relaxed = tau(Scheme::kRelaxedP3);
      CHECK(relaxed <= tau(Scheme::kSuboptimal2) + 1e-7);
      CHECK(tau(Scheme::kSuboptimal2) <= tau(Scheme::kSuboptimal1) + 1e-9);
      if (reports[3]) CHECK(relaxed <= tau(Scheme::kBaseline1) + 1e-7);
      if (reports[4]) CHECK(relaxed <= tau(Scheme::kBaseline2) + 1e-7);

      // Suboptimal 1 is rank one by construction.
      CHECK(reports[1]->raw_eigen_ratio <= 1e-6);
      // Suboptimal 2 follows the relaxed rank test.
      const SolveReport& rel = *reports[0];
      const SolveReport& s2 = *reports[2];
      if (rel.rank_one) {
        CHECK(s2.branch == "relaxed");
        CHECK(s2.tau == rel.tau);
      } else {
        CHECK(s2.branch == "suboptimal1");
        CHECK(s2.tau == reports[1]->tau);
      }
      if (reports[3]) {
        // Null-space noise leaves the desired link untouched.
        const SolveReport& b1 = *reports[3];
        CHECK(std::abs(trace_product(inst.grams.h, b1.transformed.v_bar)) <=
              1e-12 * inst.grams.h.trace().real());
      }
      if (reports[4]) CHECK(reports[4]->eigen_ratio == 0.0);
    }
  }
  MESSAGE("recovered allocations checked: " << recovered
                                            << ", restricted-infeasible solves: " << infeasible_restricted);
  CHECK(recovered > 100);
}

TEST_CASE("pareto sweep endpoints, marking and determinism") {
  const auto setup = default_setup();
  const auto eps = setup.eps();
  const auto insts = feasible_instances(setup, 6, 7100);
  REQUIRE(insts.size() == 6);

  const std::vector<Weights> endpoint{{0.0, 1.0}};
  const std::vector<Scheme> relaxed{Scheme::kRelaxedP3};
  const ParetoSweep one = pareto_sweep(insts[0].grams, setup.qos, eps, endpoint, relaxed);
  REQUIRE(one.points.size() == 1);
  CHECK(one.points[0].feasible);
  CHECK(one.points[0].transmit_power == doctest::Approx(one.utopia.f2_star).epsilon(1e-6));

  const auto grid = uniform_weights(6);
  const auto schemes = all_schemes();
  bool saw_marked = false;
  int violations = 0;
  for (const Instance& inst : insts) {
    const ParetoSweep s = pareto_sweep(inst.grams, setup.qos, eps, grid, schemes);
    REQUIRE(s.points.size() == grid.size() * schemes.size());
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      const ParetoPoint& p = s.points[i];
      CHECK(p.scheme == schemes[i % schemes.size()]);
      CHECK(p.weights.lambda1 == grid[i / schemes.size()].lambda1);
      if (p.feasible) {
        REQUIRE(p.report.has_value());
        CHECK(p.transmit_power == p.report->metrics.transmit_power);
        CHECK(p.efficiency == p.report->metrics.efficiency);
      } else {
        CHECK_FALSE(p.failure.empty());
        saw_marked = true;
      }
    }
    violations += count_monotonicity_violations(s.points, Scheme::kRelaxedP3, 1e-9);
  }
  MESSAGE("trade-off monotonicity violations (relaxed, 6 instances): " << violations);

  // Bitwise reproducible.
  const ParetoSweep a = pareto_sweep(insts[1].grams, setup.qos, eps, grid, schemes);
  const ParetoSweep b = pareto_sweep(insts[1].grams, setup.qos, eps, grid, schemes);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].feasible == b.points[i].feasible);
    CHECK(a.points[i].transmit_power == b.points[i].transmit_power);
    CHECK(a.points[i].efficiency == b.points[i].efficiency);
  }
  // Marking is exercised when some restricted structure is infeasible; over
  // several default draws at least one MRT instance fails.
  if (!saw_marked) {
    for (std::uint64_t seed = 7200; seed < 7300 && !saw_marked; ++seed) {
      const GramSet g = gram_matrices(sample_channels(seed, setup.system));
      try {
        const ParetoSweep s = pareto_sweep(g, setup.qos, eps, endpoint, schemes);
        for (const auto& p : s.points) saw_marked = saw_marked || !p.feasible;
      } catch (const InfeasibleError&) {
      }
    }
  }
  CHECK(saw_marked);
}

TEST_CASE("an eavesdropper collinear with the desired receiver makes the instance infeasible") {
  GramSet g;
  CVec h(2);
  h << 1.0, 0.5;
  g.h = outer_product(h);
  g.g = {outer_product(h)};
  QosTargets q;
  q.gamma_tol = {0.1};
  q.sigma_s2 = 1e-3;
  q.p_max = 10.0;
  const std::vector<double> eps{0.5};
  CHECK_THROWS_AS(check_feasible(g, q, eps), InfeasibleError);
  CHECK_THROWS_AS(compute_utopia(g, q, eps), InfeasibleError);
  const std::vector<Weights> grid{{0.5, 0.5}};
  const std::vector<Scheme> schemes{Scheme::kRelaxedP3};
  CHECK_THROWS_AS(pareto_sweep(g, q, eps, grid, schemes), InfeasibleError);
}

TEST_CASE("monotonicity counter on hand-made points") {
  std::vector<ParetoPoint> pts;
  auto add = [&](double l2, double tp, double eff, bool feasible = true) {
    ParetoPoint p;
    p.weights = {1.0 - l2, l2};
    p.scheme = Scheme::kRelaxedP3;
    p.feasible = feasible;
    p.transmit_power = tp;
    p.efficiency = eff;
    pts.push_back(p);
  };
  add(0.0, 0.10, 0.5);
  add(0.5, 0.05, 0.4);
  add(1.0, 0.01, 0.1);
  CHECK(count_monotonicity_violations(pts, Scheme::kRelaxedP3) == 0);
  add(0.75, 0.06, 0.2);  // power rises between 0.5 and 0.75
  CHECK(count_monotonicity_violations(pts, Scheme::kRelaxedP3) == 1);
  add(0.8, 1.0, 1.0, false);  // infeasible points are skipped
  CHECK(count_monotonicity_violations(pts, Scheme::kRelaxedP3) == 1);
  CHECK(count_monotonicity_violations(pts, Scheme::kBaseline1) == 0);
}

TEST_CASE("near-degenerate endgames reach full accuracy") {
  // Draws whose power-endpoint programs end with an ill-conditioned Newton
  // system (nearly parallel constraint rows on a rank-one face).
  const auto setup = default_setup();
  const std::vector<double> eps = setup.eps();
  for (std::uint64_t seed : {20006u, 20047u, 20204u, 20467u, 20769u}) {
    CAPTURE(seed);
    const GramSet g = gram_matrices(sample_channels(seed, setup.system));
    ProblemSpec spec;
    spec.kind = ProblemKind::kP2;
    const auto tp = build_transformed(g, setup.qos, eps, spec);
    const sdp::SolverOptions opt;
    const auto sol = sdp::solve(tp.program, opt);
    REQUIRE(sol.status == sdp::SolveStatus::kOptimal);
    CHECK(sol.primal_infeasibility <= opt.feas_tol);
    CHECK(sol.dual_infeasibility <= opt.feas_tol);
    CHECK(sol.duality_gap <= opt.gap_tol);
  }
}
