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

#include "swipt/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "swipt/errors.hpp"
#include "swipt/linalg.hpp"
#include "swipt/sdp_conformance.hpp"
#include "swipt/units.hpp"

namespace swipt {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr const char* kBoundCaveat =
    "Utopia values F1* and F2* are optima of the relaxed single-objective problems, so they are "
    "bounds and the weighted sweep approximates the trade-off. Relaxed-scheme rows whose beam "
    "covariance is not rank one are scored from the covariance and are bounds, not achievable "
    "values.";

// Fixed-order pairwise summation.
double pairwise_sum(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

double mean(const std::vector<double>& x) {
  if (x.empty()) return kNaN;
  return pairwise_sum(x.data(), x.size()) / static_cast<double>(x.size());
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// JSON number, or null when not finite.
json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string csv_field(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

struct Outcome {
  bool feasible = false;
  double tp = 0.0;
  double eff = 0.0;
  double csec = 0.0;
  bool rank_one = false;
  bool prop2 = false;
};

enum class DrawState { kSolved, kInfeasible, kFailed };

struct Draw {
  DrawState state = DrawState::kFailed;
  std::vector<Outcome> outcomes;  // weight-major, then scheme
  std::vector<int> violations;    // per scheme
};

Draw solve_draw(const ExperimentConfig& config, const std::vector<Weights>& grid,
                const std::vector<double>& eps, std::uint64_t index) {
  Draw d;
  d.outcomes.resize(grid.size() * config.schemes.size());
  try {
    const GramSet grams =
        gram_matrices(sample_channels(realization_seed(config.seed, index), config.system));
    const ParetoSweep sweep = pareto_sweep(grams, config.qos, eps, grid, config.schemes);
    for (std::size_t i = 0; i < sweep.points.size(); ++i) {
      const ParetoPoint& p = sweep.points[i];
      Outcome& o = d.outcomes[i];
      o.feasible = p.feasible && p.report.has_value();
      if (!o.feasible) continue;
      o.tp = p.report->metrics.transmit_power;
      o.eff = p.report->metrics.efficiency;
      o.csec = p.report->metrics.secrecy;
      o.rank_one = p.report->rank_one;
      o.prop2 = p.report->prop2_holds;
    }
    for (Scheme s : config.schemes) d.violations.push_back(count_monotonicity_violations(sweep.points, s));
    d.state = DrawState::kSolved;
  } catch (const InfeasibleError&) {
    d.state = DrawState::kInfeasible;
  } catch (const std::runtime_error&) {
    d.state = DrawState::kFailed;
  }
  return d;
}

json report_json(const SolveReport& r) {
  const TransformedSolution& t = r.transformed;
  const DualCertificate& d = t.certificate;
  json duals = {{"beta", d.beta},     {"theta", d.theta},   {"alpha", d.alpha},
                {"mu", d.mu},         {"nu", d.nu},         {"kappa1", d.kappa1},
                {"kappa2", d.kappa2}};
  if (d.y.size() > 0) duals["y_min_eigenvalue"] = min_eigenvalue(d.y);
  if (d.z.size() > 0) duals["z_min_eigenvalue"] = min_eigenvalue(d.z);
  json j = {{"branch", r.branch},
            {"tau", r.tau},
            {"achieved_objective", jnum(r.achieved_objective)},
            {"eigen_ratio", r.eigen_ratio},
            {"raw_eigen_ratio", r.raw_eigen_ratio},
            {"rank_one", r.rank_one},
            {"degenerate", r.degenerate},
            {"prop2_holds", r.prop2_holds},
            {"xi", t.xi},
            {"trace_sum", t.w_bar.trace().real() + t.v_bar.trace().real()},
            {"iterations", t.iterations},
            {"duality_gap", t.duality_gap},
            {"metrics",
             {{"transmit_power_w", r.metrics.transmit_power},
              {"transmit_power_dbm", watt_to_dbm(r.metrics.transmit_power)},
              {"efficiency_pct", r.metrics.efficiency * 100.0},
              {"secrecy_bps_hz", r.metrics.secrecy},
              {"bound_only", r.metrics.bound_only}}},
            {"duals", duals}};
  if (r.recovered) {
    json w = json::array();
    for (Eigen::Index i = 0; i < r.recovered->w.size(); ++i) {
      w.push_back({r.recovered->w(i).real(), r.recovered->w(i).imag()});
    }
    j["beamformer"] = w;
  }
  return j;
}

std::vector<double> to_std(const RVec& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

TradeoffTable run_montecarlo(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const std::vector<Weights> grid = config.lambda_grid();
  const std::vector<double> eps = config.eps();
  const int n = config.realizations;
  std::vector<Draw> draws(static_cast<std::size_t>(n));
  if (options.parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = 0; r < n; ++r) draws[r] = solve_draw(config, grid, eps, static_cast<std::uint64_t>(r));
  } else {
    for (int r = 0; r < n; ++r) draws[r] = solve_draw(config, grid, eps, static_cast<std::uint64_t>(r));
  }

  TradeoffTable table;
  table.realizations = n;
  for (const Draw& d : draws) {
    if (d.state == DrawState::kInfeasible) ++table.infeasible_draws;
    if (d.state == DrawState::kFailed) ++table.failed_draws;
  }
  const std::size_t ns = config.schemes.size();
  table.monotonicity_violations.assign(ns, 0);
  table.draws_with_violations.assign(ns, 0);
  for (const Draw& d : draws) {
    if (d.state != DrawState::kSolved) continue;
    for (std::size_t s = 0; s < ns; ++s) {
      table.monotonicity_violations[s] += d.violations[s];
      table.draws_with_violations[s] += d.violations[s] > 0 ? 1 : 0;
    }
  }
  for (std::size_t l = 0; l < grid.size(); ++l) {
    // Realizations solved by every scheme at this weight, in index order.
    std::vector<const Draw*> common;
    for (const Draw& d : draws) {
      if (d.state != DrawState::kSolved) continue;
      bool all = true;
      for (std::size_t s = 0; s < ns; ++s) all = all && d.outcomes[l * ns + s].feasible;
      if (all) common.push_back(&d);
    }
    for (std::size_t s = 0; s < ns; ++s) {
      TradeoffRow row;
      row.weights = grid[l];
      row.scheme = config.schemes[s];
      for (const Draw& d : draws) {
        if (d.state == DrawState::kSolved && d.outcomes[l * ns + s].feasible) ++row.n_feasible;
      }
      row.n_infeasible = n - row.n_feasible;
      row.n_averaged = static_cast<int>(common.size());
      std::vector<double> tp, eff, csec, r1, p2;
      for (const Draw* d : common) {
        const Outcome& o = d->outcomes[l * ns + s];
        tp.push_back(o.tp);
        eff.push_back(o.eff);
        csec.push_back(o.csec);
        r1.push_back(o.rank_one ? 1.0 : 0.0);
        p2.push_back(o.prop2 ? 1.0 : 0.0);
      }
      row.avg_tp_w = mean(tp);
      row.avg_tp_dbm = common.empty() ? kNaN : watt_to_dbm(row.avg_tp_w);
      row.avg_eff_pct = common.empty() ? kNaN : mean(eff) * 100.0;
      row.avg_csec = mean(csec);
      row.rank1_rate = mean(r1);
      row.prop2_rate = mean(p2);
      table.rows.push_back(row);
    }
  }
  return table;
}

std::string to_csv(const TradeoffTable& table) {
  std::ostringstream out;
  out << "lambda1,lambda2,scheme,avg_tp_dbm,avg_tp_w,avg_eff_pct,avg_csec_bps_hz,rank1_rate,"
         "prop2_rate,n_feasible,n_infeasible\n";
  for (const TradeoffRow& r : table.rows) {
    out << num(r.weights.lambda1) << ',' << num(r.weights.lambda2) << ',' << to_string(r.scheme)
        << ',' << num(r.avg_tp_dbm) << ',' << num(r.avg_tp_w) << ',' << num(r.avg_eff_pct) << ','
        << num(r.avg_csec) << ',' << num(r.rank1_rate) << ',' << num(r.prop2_rate) << ','
        << r.n_feasible << ',' << r.n_infeasible << '\n';
  }
  return out.str();
}

std::string metadata_json(const ExperimentConfig& config, const TradeoffTable& table) {
  json grid = json::array();
  for (const Weights& w : config.lambda_grid()) grid.push_back({w.lambda1, w.lambda2});
  json schemes = json::array();
  for (Scheme s : config.schemes) schemes.push_back(to_string(s));
  json empty = json::array();
  for (const TradeoffRow& r : table.rows) {
    if (r.n_averaged == 0) empty.push_back({{"lambda1", r.weights.lambda1}, {"scheme", to_string(r.scheme)}});
  }
  json mono = json::array();
  for (std::size_t s = 0; s < table.monotonicity_violations.size(); ++s) {
    mono.push_back({{"scheme", to_string(config.schemes[s])},
                    {"violations", table.monotonicity_violations[s]},
                    {"draws_with_violations", table.draws_with_violations[s]}});
  }
  json doc = {{"config_hash", config_hash(config)},
              {"seed", config.seed},
              {"realizations", table.realizations},
              {"infeasible_draws", table.infeasible_draws},
              {"failed_draws", table.failed_draws},
              {"discard_rate",
               static_cast<double>(table.infeasible_draws + table.failed_draws) / table.realizations},
              {"bandwidth_hz", config.bandwidth},
              {"lambda_grid", grid},
              {"schemes", schemes},
              {"rows_without_common_draws", empty},
              {"averaging",
               "per weight, over the realizations solved by every selected scheme; avg_tp_dbm is "
               "the dBm value of avg_tp_w"},
              {"bound_caveat", kBoundCaveat},
              {"monotonicity_soft_check", mono},
              {"config", json::parse(config_to_json(config))}};
  return doc.dump(2) + "\n";
}

void write_outputs(const ExperimentConfig& config, const TradeoffTable& table) {
  auto write = [](const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot write '" + path + "'");
    out << text;
  };
  write(config.output, to_csv(table));
  write(config.output + ".meta.json", metadata_json(config, table));
}

std::string sweep_csv(const ParetoSweep& sweep) {
  std::ostringstream out;
  out << "lambda1,lambda2,scheme,feasible,tp_w,tp_dbm,eff_pct,csec_bps_hz,tau,eigen_ratio,"
         "rank_one,bound_only,branch,failure\n";
  for (const ParetoPoint& p : sweep.points) {
    out << num(p.weights.lambda1) << ',' << num(p.weights.lambda2) << ',' << to_string(p.scheme)
        << ',' << (p.feasible ? 1 : 0) << ',';
    if (p.feasible && p.report) {
      const SolveReport& r = *p.report;
      out << num(r.metrics.transmit_power) << ',' << num(watt_to_dbm(r.metrics.transmit_power))
          << ',' << num(r.metrics.efficiency * 100.0) << ',' << num(r.metrics.secrecy) << ','
          << num(r.tau) << ',' << num(r.eigen_ratio) << ',' << (r.rank_one ? 1 : 0) << ','
          << (r.metrics.bound_only ? 1 : 0) << ',' << r.branch << ",\n";
    } else {
      out << "nan,nan,nan,nan,nan,nan,0,0,," << csv_field(p.failure) << '\n';
    }
  }
  return out.str();
}

SingleReport run_single(const ExperimentConfig& config, std::uint64_t seed,
                        const Weights& weights) {
  config.validate();
  weights.validate();
  SingleReport rep;
  rep.seed = seed;
  rep.weights = weights;
  rep.channels = sample_channels(seed, config.system);
  const GramSet grams = gram_matrices(rep.channels);
  const std::vector<double> eps = config.eps();
  try {
    rep.utopia = compute_utopia(grams, config.qos, eps);
    rep.feasible = true;
  } catch (const InfeasibleError& e) {
    rep.failure = std::string(e.what()) +
                  (e.certificate().empty() ? "" : " [" + e.certificate() + "]");
    return rep;
  }
  for (Scheme s : config.schemes) {
    SchemeDetail d;
    d.scheme = s;
    d.recovery_error = kNaN;
    try {
      SolveReport r = solve_scheme(s, grams, config.qos, eps, weights, rep.utopia);
      d.feasible = true;
      d.w_spectrum = eigenvalues_desc(r.transformed.w_bar);
      d.v_spectrum = eigenvalues_desc(r.transformed.v_bar);
      if (r.recovered) {
        d.feasibility = feasibility_residuals(*r.recovered, grams, config.qos);
        const double expected = 1.0 / r.transformed.xi;
        d.recovery_error = std::abs(transmit_power(*r.recovered) - expected) / expected;
      }
      d.report = std::move(r);
    } catch (const std::runtime_error& e) {
      d.failure = e.what();
    }
    rep.schemes.push_back(std::move(d));
  }
  return rep;
}

std::string format_text(const SingleReport& rep) {
  std::ostringstream out;
  out << "seed " << rep.seed << ", lambda = (" << num(rep.weights.lambda1) << ", "
      << num(rep.weights.lambda2) << ")\n";
  out << "distances [m]:";
  for (double d : rep.channels.distances) out << ' ' << num(d);
  out << '\n';
  if (!rep.feasible) {
    out << "instance infeasible: " << rep.failure << '\n';
    return out.str();
  }
  out << "utopia: F1* = " << num(rep.utopia.f1_star) << ", F2* = " << num(rep.utopia.f2_star)
      << " W\n";
  for (const SchemeDetail& d : rep.schemes) {
    out << '\n' << to_string(d.scheme) << ":\n";
    if (!d.feasible) {
      out << "  no solution: " << d.failure << '\n';
      continue;
    }
    const SolveReport& r = *d.report;
    out << "  branch " << r.branch << ", tau " << num(r.tau) << ", achieved "
        << num(r.achieved_objective) << '\n';
    out << "  transmit power " << num(r.metrics.transmit_power) << " W ("
        << num(watt_to_dbm(r.metrics.transmit_power)) << " dBm), efficiency "
        << num(r.metrics.efficiency * 100.0) << " %, secrecy " << num(r.metrics.secrecy)
        << " bit/s/Hz" << (r.metrics.bound_only ? " (bounds)" : "") << '\n';
    out << "  eigen ratio " << num(r.eigen_ratio) << " (solver " << num(r.raw_eigen_ratio)
        << "), rank one " << (r.rank_one ? "yes" : "no") << ", sufficient condition "
        << (r.prop2_holds ? "holds" : "does not hold") << '\n';
    out << "  W spectrum:";
    for (double v : to_std(d.w_spectrum)) out << ' ' << num(v);
    out << "\n  V spectrum:";
    for (double v : to_std(d.v_spectrum)) out << ' ' << num(v);
    out << '\n';
    const DualCertificate& c = r.transformed.certificate;
    out << "  duals: beta " << num(c.beta) << ", theta";
    for (double t : c.theta) out << ' ' << num(t);
    out << ", alpha " << num(c.alpha) << ", mu " << num(c.mu) << ", kappa " << num(c.kappa1)
        << ' ' << num(c.kappa2) << '\n';
    if (d.feasibility) {
      const FeasibilityReport& f = *d.feasibility;
      out << "  margins: C1 " << num(f.c1_margin) << ", C2";
      for (double m : f.c2_margins) out << ' ' << num(m);
      out << ", C3 " << num(f.c3_margin) << " W, C4 " << num(f.c4_min_eigenvalue) << " -> "
          << (f.feasible ? "feasible" : "VIOLATED") << '\n';
      out << "  power recovery error " << num(d.recovery_error) << '\n';
    }
  }
  return out.str();
}

std::string to_json(const SingleReport& rep) {
  json doc = {{"seed", rep.seed},
              {"lambda1", rep.weights.lambda1},
              {"lambda2", rep.weights.lambda2},
              {"distances", rep.channels.distances},
              {"feasible", rep.feasible}};
  if (!rep.feasible) {
    doc["failure"] = rep.failure;
    return doc.dump(2) + "\n";
  }
  doc["utopia"] = {{"f1_star", rep.utopia.f1_star}, {"f2_star", rep.utopia.f2_star}};
  json schemes = json::array();
  for (const SchemeDetail& d : rep.schemes) {
    json j = {{"scheme", to_string(d.scheme)}, {"feasible", d.feasible}};
    if (!d.feasible) {
      j["failure"] = d.failure;
    } else {
      j["report"] = report_json(*d.report);
      j["w_spectrum"] = to_std(d.w_spectrum);
      j["v_spectrum"] = to_std(d.v_spectrum);
      j["recovery_error"] = jnum(d.recovery_error);
      if (d.feasibility) {
        const FeasibilityReport& f = *d.feasibility;
        j["feasibility"] = {{"c1_margin", f.c1_margin},
                            {"c2_margins", f.c2_margins},
                            {"c3_margin", f.c3_margin},
                            {"c4_min_eigenvalue", f.c4_min_eigenvalue},
                            {"feasible", f.feasible}};
      }
    }
    schemes.push_back(j);
  }
  doc["schemes"] = schemes;
  return doc.dump(2) + "\n";
}

bool SelftestReport::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const SelftestCheck& c) { return c.passed; });
}

SelftestReport selftest(const SelftestOptions& options) {
  AllocatorOptions alloc;
  if (options.corrupt_tolerance > 0.0) {
    alloc.solver.feas_tol = options.corrupt_tolerance;
    alloc.solver.gap_tol = options.corrupt_tolerance;
    alloc.solver.polish_target = 1.0;
  }
  SelftestReport rep;
  auto add = [&](std::string name, int failures, int total, std::string extra = {}) {
    std::ostringstream d;
    d << failures << " of " << total << " failed";
    if (!extra.empty()) d << "; " << extra;
    rep.checks.push_back({std::move(name), total > 0 && failures == 0, d.str()});
  };

  {
    int failed = 0, total = 0;
    std::string first;
    for (const auto& r : sdp::run_conformance(alloc.solver)) {
      ++total;
      if (!r.passed) {
        ++failed;
        if (first.empty()) first = "first: " + r.name;
      }
    }
    add("solver conformance", failed, total, first);
  }

  // Default-configuration draws.
  ExperimentConfig config;
  const std::vector<double> eps = config.eps();
  const double floor = secrecy_floor(config.qos);
  const std::vector<Weights> weights{{0.9, 0.1}, {0.5, 0.5}, {0.1, 0.9}};
  int solves = 0, solve_fail = 0, p2_total = 0, p2_fail = 0, eq_fail = 0, rec_total = 0,
      rec_fail = 0, eq_total = 0, suff_total = 0, suff_fail = 0, order_total = 0, order_fail = 0,
      floor_fail = 0, feas_fail = 0;
  int found = 0;
  for (std::uint64_t seed = 9000; found < options.instances && seed < 9000 + 20ull * options.instances;
       ++seed) {
    const GramSet grams = gram_matrices(sample_channels(seed, config.system));
    UtopiaValues u;
    try {
      u = compute_utopia(grams, config.qos, eps, alloc);
    } catch (const InfeasibleError&) {
      continue;
    } catch (const std::runtime_error&) {
      ++solve_fail;
      ++solves;
      continue;
    }
    ++found;
    try {
      ++p2_total;
      const auto p2 = solve_single_objective(grams, config.qos, eps, ProblemKind::kP2, alloc);
      if (!(check_rank_one(p2.solution.w_bar).eigen_ratio <= 1e-6)) ++p2_fail;
    } catch (const std::runtime_error&) {
      ++p2_fail;
    }
    for (const Weights& w : weights) {
      std::vector<std::optional<SolveReport>> r;
      for (Scheme s : all_schemes()) {
        ++solves;
        try {
          r.push_back(solve_scheme(s, grams, config.qos, eps, w, u, alloc));
        } catch (const InfeasibleError&) {
          if (s != Scheme::kBaseline1 && s != Scheme::kBaseline2) ++solve_fail;
          r.push_back(std::nullopt);
        } catch (const std::runtime_error&) {
          ++solve_fail;
          r.push_back(std::nullopt);
        }
      }
      for (const auto& o : r) {
        if (!o) continue;
        const TransformedSolution& t = o->transformed;
        ++eq_total;
        if (std::abs(t.w_bar.trace().real() + t.v_bar.trace().real() - 1.0) > 1e-6) ++eq_fail;
        if (o->scheme == Scheme::kRelaxedP3) {
          ++suff_total;
          if (o->prop2_holds && o->raw_eigen_ratio > 1e-6) ++suff_fail;
        }
        if (o->recovered && o->rank_one) {
          ++rec_total;
          const double expected = 1.0 / t.xi;
          if (std::abs(transmit_power(*o->recovered) - expected) > 1e-6 * expected) ++rec_fail;
        }
        if (o->recovered) {
          if (secrecy_capacity(*o->recovered, grams, config.qos.sigma_s2) < floor - 1e-6) ++floor_fail;
          if (!feasibility_residuals(*o->recovered, grams, config.qos).feasible) ++feas_fail;
        }
      }
      if (r[0] && r[1] && r[2]) {
        ++order_total;
        const double rel = r[0]->tau, s1 = r[1]->tau, s2 = r[2]->tau;
        bool ok = rel <= s2 + 1e-7 && s2 <= s1 + 1e-7;
        if (r[3]) ok = ok && rel <= r[3]->tau + 1e-7;
        if (r[4]) ok = ok && rel <= r[4]->tau + 1e-7;
        if (!ok) ++order_fail;
      }
    }
  }
  add("solves complete", solve_fail, std::max(solves, 1));
  add("power-endpoint rank one", p2_fail, p2_total);
  add("normalization equality", eq_fail, eq_total);
  add("sufficient condition implies rank one", suff_fail, suff_total);
  add("power recovery identity", rec_fail, rec_total);
  add("scheme ordering", order_fail, order_total);
  add("secrecy floor", floor_fail, std::max(rec_total, 1));
  add("recovered feasibility", feas_fail, std::max(rec_total, 1));

  // Two-antenna draws against the grid oracle.
  {
    ExperimentConfig tiny;
    tiny.system.num_antennas = 2;
    tiny.set_receivers(2);
    const std::vector<double> teps = tiny.eps();
    const Weights w{0.5, 0.5};
    int total = 0, bracket_fail = 0, agree_fail = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 5000; total < options.tiny_instances && seed < 5200; ++seed) {
      const GramSet grams = gram_matrices(sample_channels(seed, tiny.system));
      UtopiaValues u;
      try {
        u = compute_utopia(grams, tiny.qos, teps, alloc);
      } catch (const InfeasibleError&) {
        continue;
      } catch (const std::runtime_error&) {
        ++total;
        ++bracket_fail;
        ++agree_fail;
        continue;
      }
      ++total;
      const OracleResult o = grid_oracle(grams, tiny.qos, teps, w, u);
      try {
        const SolveReport relaxed = solve_relaxed_p3(grams, tiny.qos, teps, w, u, alloc);
        const SolveReport s2 = suboptimal2(grams, tiny.qos, teps, w, u, alloc);
        if (!o.feasible || relaxed.tau > o.objective + 1e-9) ++bracket_fail;
        const double rel = std::abs(s2.achieved_objective - o.objective) / std::abs(o.objective);
        worst = std::max(worst, rel);
        if (!(rel <= 1e-3)) ++agree_fail;
      } catch (const std::runtime_error&) {
        ++bracket_fail;
        ++agree_fail;
      }
    }
    add("oracle bracket", bracket_fail, total);
    add("oracle agreement", agree_fail, total, "worst relative gap " + num(worst));
  }
  return rep;
}

}  // namespace swipt
