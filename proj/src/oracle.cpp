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

#include "swipt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "swipt/errors.hpp"
#include "swipt/linalg.hpp"

namespace swipt {

FeasibilityReport feasibility_residuals(const Allocation& alloc, const GramSet& grams,
                                        const QosTargets& qos, double tolerance) {
  FeasibilityReport r;
  r.tolerance = tolerance;
  r.c1_margin = sinr_desired(alloc, grams.h, qos.sigma_s2) - qos.gamma_req;
  bool ok = r.c1_margin >= -tolerance * qos.gamma_req;
  for (std::size_t k = 0; k < grams.g.size(); ++k) {
    const double target = k < qos.gamma_tol.size() ? qos.gamma_tol[k] : 0.0;
    const double m = target - sinr_idle(alloc, grams.g[k], qos.sigma_s2);
    r.c2_margins.push_back(m);
    ok = ok && m >= -tolerance * target;
  }
  r.c3_margin = qos.p_max - transmit_power(alloc);
  r.c4_min_eigenvalue = alloc.v.size() > 0 ? min_eigenvalue(alloc.v) : 0.0;
  ok = ok && r.c3_margin >= -tolerance * qos.p_max;
  ok = ok && r.c4_min_eigenvalue >= -tolerance * qos.p_max;
  r.feasible = ok;
  return r;
}

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxIdle = 2;
constexpr int kMaxVertices = 12;

// Local refinement: box half-width in grid steps, points per half side,
// number of halvings before stopping, and a cap on the total levels.
constexpr double kRefineSpan = 2.0;
constexpr int kRefineHalfPoints = 4;
constexpr int kRefineShrinks = 60;
constexpr int kRefineLevels = 2000;
constexpr std::size_t kRefineStarts = 4;
constexpr std::size_t kProfileStarts = 8;

// Powers normalized by the transmit power: x = v1 / P, y = v2 / P and the
// beam share 1 - x - y. All constraints are half-planes in (x, y).
struct Pt {
  double x = 0.0, y = 0.0;
};

// c + a x + b y.
struct Affine {
  double c = 0.0, a = 0.0, b = 0.0;
  double at(Pt p) const { return c + a * p.x + b * p.y; }
};

struct Best {
  double value = std::numeric_limits<double>::infinity();
  Pt at;
  bool found() const { return value < std::numeric_limits<double>::infinity(); }
};

// Clips a convex polygon against f <= 0.
int clip(const Pt* in, int n, const Affine& f, Pt* out) {
  int m = 0;
  for (int k = 0; k < n; ++k) {
    const Pt& p = in[k];
    const Pt& q = in[(k + 1) % n];
    const double dp = f.at(p);
    const double dq = f.at(q);
    if (dp <= 0.0) out[m++] = p;
    if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
      const double s = dp / (dp - dq);
      out[m++] = {p.x + s * (q.x - p.x), p.y + s * (q.y - p.y)};
    }
  }
  return m;
}

Affine negate(const Affine& f) { return {-f.c, -f.a, -f.b}; }

class Polygon {
 public:
  Polygon() {
    pts_[0] = {0.0, 0.0};
    pts_[1] = {1.0, 0.0};
    pts_[2] = {0.0, 1.0};
    n_ = 3;
  }
  void clip(const Affine& f) {
    if (n_ == 0) return;
    Pt out[kMaxVertices];
    n_ = swipt::clip(pts_, n_, f, out);
    std::copy(out, out + n_, pts_);
  }
  int size() const { return n_; }
  const Pt* points() const { return pts_; }

 private:
  Pt pts_[kMaxVertices];
  int n_ = 0;
};

// Scalarization data shared by both searches.
struct Objective {
  double lambda1 = 0.0, lambda2 = 0.0;
  double f1_star = 0.0, f2_star = 0.0;
  double c1 = 0.0;     // Gamma_req sigma^2: transmit power = c1 / t
  double t_min = 0.0;  // c1 / P_max

  double value(double efficiency, double t) const {
    double v = -std::numeric_limits<double>::infinity();
    if (lambda1 > 0.0) v = lambda1 * (-efficiency - f1_star);
    if (lambda2 > 0.0) v = std::max(v, lambda2 * (c1 / std::max(t, t_min) - f2_star));
    return v;
  }

  // Minimum of value(eff(p), t(p)) over a convex polygon on which t > 0.
  // Along an edge the efficiency term is affine and the power term is
  // monotone, so the edge minimum is at an end or where the two cross.
  void minimize(const Polygon& poly, const Affine& eff, const Affine& t, Best* best) const {
    const int m = poly.size();
    const Pt* pts = poly.points();
    auto consider = [&](Pt p) {
      const double v = value(eff.at(p), t.at(p));
      if (v < best->value) {
        best->value = v;
        best->at = p;
      }
    };
    for (int k = 0; k < m; ++k) consider(pts[k]);
    if (!(lambda1 > 0.0 && lambda2 > 0.0)) return;
    for (int k = 0; k < m; ++k) {
      const Pt p = pts[k];
      const Pt q = pts[(k + 1) % m];
      const double fp = lambda1 * (-eff.at(p) - f1_star) + lambda2 * f2_star;
      const double fq = lambda1 * (-eff.at(q) - f1_star) + lambda2 * f2_star;
      const double tp = t.at(p), tq = t.at(q);
      const double bf = fq - fp, bt = tq - tp;
      // (fp + bf s)(tp + bt s) = lambda2 c1.
      const double qa = bf * bt;
      const double qb = fp * bt + bf * tp;
      const double qc = fp * tp - lambda2 * c1;
      double roots[2];
      int nr = 0;
      if (qa == 0.0) {
        if (qb != 0.0) roots[nr++] = -qc / qb;
      } else {
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc >= 0.0) {
          const double qq = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
          roots[nr++] = qq / qa;
          if (qq != 0.0) roots[nr++] = qc / qq;
        }
      }
      for (int r = 0; r < nr; ++r) {
        const double s = roots[r];
        if (s > 0.0 && s < 1.0) consider({p.x + s * (q.x - p.x), p.y + s * (q.y - p.y)});
      }
    }
  }
};

CVec unit(double angle, double phase) {
  CVec u(2);
  u(0) = std::cos(angle);
  u(1) = std::sin(angle) * std::polar(1.0, phase);
  return u;
}

// A point of the angle space together with its optimal power split.
struct Candidate {
  std::array<double, 4> angles{};
  GridIndex index{};
  Best best;
};

// Pattern search over shrinking local grids in the angles flagged in
// `active`: recenter and widen on improvement, halve otherwise.
template <class Space>
Candidate polish(const Space& space, Candidate c, const std::array<bool, 4>& active) {
  const int dims = space.dims();
  std::array<double, 4> width{}, initial{};
  for (int d = 0; d < dims; ++d)
    initial[d] = width[d] = active[d] ? kRefineSpan * space.step(d) : 0.0;
  const int nh = kRefineHalfPoints;
  const int side = 2 * nh + 1;
  int total = 1;
  for (int d = 0; d < dims; ++d)
    if (active[d]) total *= side;
  int shrinks = 0;
  for (int level = 0; level < kRefineLevels && shrinks < kRefineShrinks; ++level) {
    Candidate local = c;
    for (int k = 0; k < total; ++k) {
      Candidate trial = c;
      int rem = k;
      for (int d = 0; d < dims; ++d) {
        if (!active[d]) continue;
        trial.angles[d] += width[d] * ((rem % side) - nh) / nh;
        rem /= side;
      }
      trial.best = Best{};
      space.solve(trial.angles, &trial.best);
      if (trial.best.value < local.best.value) local = trial;
    }
    if (local.best.value < c.best.value) {
      c = local;
      for (int d = 0; d < dims; ++d) width[d] = std::min(2.0 * width[d], initial[d]);
    } else {
      for (int d = 0; d < dims; ++d) width[d] *= 0.5;
      ++shrinks;
    }
  }
  return c;
}

// Shared driver: grid scan, then local polishing. `Space` supplies dims(),
// grid_size(), grid_point(), solve(), step(), allocation() and
// profile_groups(); when the latter is non-empty the grid is first refined
// along the beam angle within each group (one group per noise-basis angle),
// and the local minima of that profile seed the final polish.
template <class Space>
OracleResult run_search(const Space& space, bool refine, bool parallel) {
  const std::int64_t n = space.grid_size();
  std::vector<Candidate> grid(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
  for (std::int64_t i = 0; i < n; ++i) {
    Candidate c = space.grid_point(i);
    space.solve(c.angles, &c.best);
    grid[static_cast<std::size_t>(i)] = c;
  }

  OracleResult out;
  out.directions = n;
  // First strict minimum in grid order, so ties go to the smallest index.
  std::int64_t arg = -1;
  for (std::int64_t i = 0; i < n; ++i) {
    const Candidate& c = grid[static_cast<std::size_t>(i)];
    if (c.best.found() && (arg < 0 || c.best.value < grid[static_cast<std::size_t>(arg)].best.value))
      arg = i;
  }
  if (arg < 0) return out;
  Candidate best = grid[static_cast<std::size_t>(arg)];
  out.feasible = true;
  out.index = best.index;
  out.grid_objective = best.best.value;

  if (refine) {
    std::vector<Candidate> seeds;
    const std::vector<std::vector<std::int64_t>> groups = space.profile_groups();
    if (groups.empty()) {
      std::vector<std::int64_t> order;
      for (std::int64_t i = 0; i < n; ++i)
        if (grid[static_cast<std::size_t>(i)].best.found()) order.push_back(i);
      std::stable_sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
        return grid[static_cast<std::size_t>(a)].best.value <
               grid[static_cast<std::size_t>(b)].best.value;
      });
      for (std::size_t k = 0; k < order.size() && k < kRefineStarts; ++k)
        seeds.push_back(grid[static_cast<std::size_t>(order[k])]);
    } else {
      // Best beam angle per group, polished along the beam angle only.
      const int ng = static_cast<int>(groups.size());
      std::vector<Candidate> profile(ng);
#pragma omp parallel for schedule(dynamic, 4) if (parallel)
      for (int gi = 0; gi < ng; ++gi) {
        Candidate c;
        for (std::int64_t i : groups[gi]) {
          const Candidate& g = grid[static_cast<std::size_t>(i)];
          if (g.best.value < c.best.value) c = g;
        }
        if (c.best.found()) c = polish(space, c, {true, false, false, false});
        profile[gi] = c;
      }
      // Local minima of the profile, best first.
      std::vector<int> minima;
      for (int gi = 0; gi < ng; ++gi) {
        const double v = profile[gi].best.value;
        if (!profile[gi].best.found()) continue;
        const bool left = gi == 0 || v <= profile[gi - 1].best.value;
        const bool right = gi + 1 == ng || v <= profile[gi + 1].best.value;
        if (left && right) minima.push_back(gi);
      }
      std::stable_sort(minima.begin(), minima.end(), [&](int a, int b) {
        return profile[a].best.value < profile[b].best.value;
      });
      for (std::size_t k = 0; k < minima.size() && k < kProfileStarts; ++k)
        seeds.push_back(profile[minima[k]]);
    }
    std::vector<Candidate> polished(seeds.size());
    const int ns = static_cast<int>(seeds.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (int k = 0; k < ns; ++k) polished[k] = polish(space, seeds[k], {true, true, true, true});
    for (const Candidate& c : polished)
      if (c.best.value < best.best.value) best = c;
  }
  out.argument = space.allocation(best);
  out.objective = best.best.value;
  return out;
}

// Coordinates in which h = ||h|| e1: e1 = h / ||h||, e2 orthogonal to it.
struct Frame {
  CVec e1, e2;
  double h_norm2 = 0.0;

  explicit Frame(const CMat& h) {
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    e1 = es.eigenvectors().col(1);
    e2.resize(2);
    e2(0) = -std::conj(e1(1));
    e2(1) = std::conj(e1(0));
    h_norm2 = h.trace().real();
  }
  CVec direction(double angle, double phase) const {
    return std::cos(angle) * e1 + std::sin(angle) * std::polar(1.0, phase) * e2;
  }
};

// A 2x2 Hermitian matrix [[a, c], [c*, d]] and its quadratic form on
// (cos angle, sin angle e^{i phase}).
struct Herm2 {
  double a = 0.0, d = 0.0;
  Complex c;

  Herm2() = default;
  Herm2(const CMat& m, const CVec& b1, const CVec& b2)
      : a(quad_form(b1, m)), d(quad_form(b2, m)), c((b1.adjoint() * m * b2)(0, 0)) {}
  double gain(double cs, double sn, double phase) const {
    return a * cs * cs + d * sn * sn + 2.0 * cs * sn * (c * std::polar(1.0, phase)).real();
  }
};

// At most one idle receiver. With G written in the frame as
// [[a, c], [c*, d]], a unit vector at polar angle phi has
//   u^H H u = ||h||^2 cos^2 phi,
//   u^H G u = a cos^2 phi + d sin^2 phi + 2 cos phi sin phi Re(e^{i psi} c),
// so the phases only move the idle-receiver gains inside an interval. For
// the noise basis the best phase maximizes the gain on u1 (more harvesting
// and more masking at once; the other ordering is the mirrored angle). For
// the beam, harvesting and the tolerable SINR pull in opposite directions;
// the beam gain enters linearly as z = (1 - x - y) u^H G u, which is
// optimized exactly on the polygon. Only the polar angles are searched.
class PlanarSpace {
 public:
  PlanarSpace(const GramSet& grams, const QosTargets& qos, std::span<const double> eps,
              const Objective& obj, const OracleOptions& opt)
      : frame_(grams.h), obj_(obj), opt_(opt), gamma_(qos.gamma_req) {
    idle_ = !grams.g.empty();
    if (idle_) {
      const CMat& g = grams.g[0];
      ga_ = quad_form(frame_.e1, g);
      gd_ = quad_form(frame_.e2, g);
      gc_ = (frame_.e1.adjoint() * g * frame_.e2)(0, 0);
      eps_ = eps[0];
      tol_ = qos.gamma_tol[0];
    }
    const int r = opt.resolution;
    phis_ = opt.beam == BeamStructure::kMrt ? 1 : r + 1;
    thetas_ = opt.noise == NoiseStructure::kNullSpace ? 1 : r + 1;
  }

  int dims() const { return 2; }
  std::int64_t grid_size() const { return static_cast<std::int64_t>(phis_) * thetas_; }
  std::vector<std::vector<std::int64_t>> profile_groups() const {
    std::vector<std::vector<std::int64_t>> groups(thetas_);
    for (std::int64_t k = 0; k < grid_size(); ++k) groups[k % thetas_].push_back(k);
    return groups;
  }
  double step(int) const { return kHalfPi / opt_.resolution; }

  Candidate grid_point(std::int64_t k) const {
    const int i = static_cast<int>(k / thetas_);
    const int b = static_cast<int>(k % thetas_);
    Candidate c;
    c.index = {i, 0, b, 0};
    c.angles[0] = opt_.beam == BeamStructure::kMrt ? 0.0 : kHalfPi * i / opt_.resolution;
    c.angles[1] =
        opt_.noise == NoiseStructure::kNullSpace ? kHalfPi : kHalfPi * b / opt_.resolution;
    return c;
  }

  void solve(std::array<double, 4>& angles, Best* best) const {
    // Restricted structures pin their angle.
    if (opt_.beam == BeamStructure::kMrt) angles[0] = 0.0;
    if (opt_.noise == NoiseStructure::kNullSpace) angles[1] = kHalfPi;
    const Gains s = gains(angles[0], angles[1]);
    // t = (1 - x - y) hw - Gamma (x h1 + y h2)
    const Affine t{s.hw, -s.hw - gamma_ * s.h1, -s.hw - gamma_ * s.h2};
    Polygon poly;
    poly.clip({obj_.t_min - t.c, -t.a, -t.b});
    if (opt_.noise == NoiseStructure::kNullSpace) poly.clip({0.0, 0.0, 1.0});
    if (!idle_) {
      obj_.minimize(poly, {}, t, best);
      return;
    }
    // Noise gain on the idle receiver and the largest beam gain it tolerates:
    // Gamma z <= Gamma Gamma_tol gv + Gamma_tol t.
    const Affine gv{0.0, s.g1, s.g2};
    const Affine z_cap{tol_ * gv.c + tol_ / gamma_ * t.c, tol_ * gv.a + tol_ / gamma_ * t.a,
                       tol_ * gv.b + tol_ / gamma_ * t.b};
    const Affine z_min{s.gmin, -s.gmin, -s.gmin};
    const Affine z_max{s.gmax, -s.gmax, -s.gmax};
    poly.clip({z_min.c - z_cap.c, z_min.a - z_cap.a, z_min.b - z_cap.b});
    if (poly.size() == 0) return;
    // Where z_max <= z_cap the beam takes its largest gain, elsewhere the cap.
    const Affine split{z_max.c - z_cap.c, z_max.a - z_cap.a, z_max.b - z_cap.b};
    Polygon low = poly, high = poly;
    low.clip(split);
    high.clip(negate(split));
    auto efficiency = [&](const Affine& z) {
      return Affine{eps_ * (z.c + gv.c), eps_ * (z.a + gv.a), eps_ * (z.b + gv.b)};
    };
    if (low.size() > 0) obj_.minimize(low, efficiency(z_max), t, best);
    if (high.size() > 0) obj_.minimize(high, efficiency(z_cap), t, best);
  }

  Allocation allocation(const Candidate& c) const {
    const Gains s = gains(c.angles[0], c.angles[1]);
    const Pt p = c.best.at;
    const double pbar = 1.0 - p.x - p.y;
    const double t = s.hw * pbar - gamma_ * (s.h1 * p.x + s.h2 * p.y);
    const double total = obj_.c1 / std::max(t, obj_.t_min);
    double psi = 0.0;
    double chi = 0.0;
    if (idle_) {
      chi = -std::arg(gc_);
      // Beam gain actually used: the largest one allowed by the cap.
      const double gv = s.g1 * p.x + s.g2 * p.y;
      double gw = s.gmax;
      if (pbar > 0.0) gw = std::min(s.gmax, (tol_ * gv + tol_ / gamma_ * t) / pbar);
      const double cs = std::cos(c.angles[0]) * std::sin(c.angles[0]);
      const double base = ga_ * std::cos(c.angles[0]) * std::cos(c.angles[0]) +
                          gd_ * std::sin(c.angles[0]) * std::sin(c.angles[0]);
      const double mag = 2.0 * cs * std::abs(gc_);
      if (mag > 0.0) {
        const double ratio = std::clamp((gw - base) / mag, -1.0, 1.0);
        psi = std::acos(ratio) - std::arg(gc_);
      }
    }
    const CVec u = frame_.direction(c.angles[0], psi);
    const CVec u1 = frame_.direction(c.angles[1], chi);
    const CVec u2 = frame_.direction(c.angles[1] + kHalfPi, chi);
    Allocation a;
    a.w = std::sqrt(std::max(0.0, pbar * total)) * u;
    a.v = hermitian_part(p.x * total * (u1 * u1.adjoint()) + p.y * total * (u2 * u2.adjoint()));
    return a;
  }

 private:
  struct Gains {
    double hw, h1, h2, g1, g2, gmin, gmax;
  };

  Gains gains(double phi, double theta) const {
    Gains s{};
    const double cp = std::cos(phi), sp = std::sin(phi);
    const double ct = std::cos(theta), st = std::sin(theta);
    s.hw = frame_.h_norm2 * cp * cp;
    s.h1 = frame_.h_norm2 * ct * ct;
    s.h2 = frame_.h_norm2 * st * st;
    if (idle_) {
      const double c = std::abs(gc_);
      const double base_w = ga_ * cp * cp + gd_ * sp * sp;
      const double swing_w = 2.0 * std::abs(cp * sp) * c;
      s.gmin = std::max(0.0, base_w - swing_w);
      s.gmax = base_w + swing_w;
      s.g1 = ga_ * ct * ct + gd_ * st * st + 2.0 * std::abs(ct * st) * c;
      s.g2 = std::max(0.0, ga_ + gd_ - s.g1);
    }
    return s;
  }

  Frame frame_;
  Objective obj_;
  OracleOptions opt_;
  double gamma_;
  bool idle_ = false;
  double ga_ = 0.0, gd_ = 0.0;
  Complex gc_{0.0, 0.0};
  double eps_ = 0.0, tol_ = 0.0;
  int phis_ = 1, thetas_ = 1;
};

// Two idle receivers: the phases no longer reduce to intervals, so all four
// angles are gridded (beam phi, psi; noise-basis theta, chi).
class FullSpace {
 public:
  FullSpace(const GramSet& grams, const QosTargets& qos, std::span<const double> eps,
            const Objective& obj, const OracleOptions& opt)
      : grams_(grams), eps_(eps), frame_(grams.h), obj_(obj), opt_(opt),
        gamma_(qos.gamma_req), tol_(qos.gamma_tol) {
    const int r = opt.resolution;
    beam_ = {r + 1, r};
    noise_ = {r / 2 + 1, r};
    if (opt.beam == BeamStructure::kMrt) beam_ = {1, 1};
    if (opt.noise == NoiseStructure::kNullSpace) noise_ = {1, 1};
    CVec a1 = CVec::Zero(2), a2 = CVec::Zero(2);
    a1(0) = 1.0;
    a2(1) = 1.0;
    const bool mrt = opt.beam == BeamStructure::kMrt;
    const CVec& b1 = mrt ? frame_.e1 : a1;
    const CVec& b2 = mrt ? frame_.e2 : a2;
    beam_h_ = Herm2(grams.h, b1, b2);
    for (const CMat& g : grams.g) {
      beam_g_.emplace_back(g, b1, b2);
      noise_g_.emplace_back(g, frame_.e1, frame_.e2);
    }
  }

  int dims() const { return 4; }
  std::vector<std::vector<std::int64_t>> profile_groups() const { return {}; }
  std::int64_t grid_size() const {
    return static_cast<std::int64_t>(beam_[0]) * beam_[1] * noise_[0] * noise_[1];
  }
  double step(int d) const {
    return (d % 2 == 0 ? kHalfPi : kTwoPi) / opt_.resolution;
  }

  Candidate grid_point(std::int64_t k) const {
    Candidate c;
    const int cc = static_cast<int>(k % noise_[1]);
    k /= noise_[1];
    const int b = static_cast<int>(k % noise_[0]);
    k /= noise_[0];
    const int j = static_cast<int>(k % beam_[1]);
    const int i = static_cast<int>(k / beam_[1]);
    c.index = {i, j, b, cc};
    const double r = opt_.resolution;
    c.angles = {kHalfPi * i / r, kTwoPi * j / r, kHalfPi * b / r, kTwoPi * cc / r};
    return c;
  }

  void solve(std::array<double, 4>& angles, Best* best) const {
    if (opt_.beam == BeamStructure::kMrt) angles[0] = angles[1] = 0.0;
    if (opt_.noise == NoiseStructure::kNullSpace) {
      angles[2] = kHalfPi;
      angles[3] = 0.0;
    }
    // Beam gains in the antenna basis (frame basis for MRT), noise-basis
    // gains in the frame; u2 is u1 rotated by pi/2 at the same phase.
    const double bc = std::cos(angles[0]), bs = std::sin(angles[0]);
    const double nc = std::cos(angles[2]), ns = std::sin(angles[2]);
    const double hw = beam_h_.gain(bc, bs, angles[1]);
    const double h1 = frame_.h_norm2 * nc * nc;
    const double h2 = frame_.h_norm2 * ns * ns;
    const Affine t{hw, -hw - gamma_ * h1, -hw - gamma_ * h2};
    Polygon poly;
    poly.clip({obj_.t_min - t.c, -t.a, -t.b});
    if (opt_.noise == NoiseStructure::kNullSpace) poly.clip({0.0, 0.0, 1.0});
    Affine eff;
    for (std::size_t k = 0; k < grams_.g.size() && poly.size() > 0; ++k) {
      const double gw = beam_g_[k].gain(bc, bs, angles[1]);
      const double g1 = noise_g_[k].gain(nc, ns, angles[3]);
      const double g2 = noise_g_[k].gain(-ns, nc, angles[3]);
      // Gamma ((1 - x - y) gw - Gamma_tol (x g1 + y g2)) - Gamma_tol t <= 0
      const double tk = tol_[k];
      poly.clip({gamma_ * gw - tk * t.c, -gamma_ * gw - gamma_ * tk * g1 - tk * t.a,
                 -gamma_ * gw - gamma_ * tk * g2 - tk * t.b});
      eff.c += eps_[k] * gw;
      eff.a += eps_[k] * (g1 - gw);
      eff.b += eps_[k] * (g2 - gw);
    }
    if (poly.size() == 0) return;
    obj_.minimize(poly, eff, t, best);
  }

  Allocation allocation(const Candidate& c) const {
    const CVec u = beam_dir(c.angles);
    const CVec u1 = frame_.direction(c.angles[2], c.angles[3]);
    const CVec u2 = frame_.direction(c.angles[2] + kHalfPi, c.angles[3]);
    const Pt p = c.best.at;
    const double pbar = 1.0 - p.x - p.y;
    const double t = quad_form(u, grams_.h) * pbar -
                     gamma_ * (quad_form(u1, grams_.h) * p.x + quad_form(u2, grams_.h) * p.y);
    const double total = obj_.c1 / std::max(t, obj_.t_min);
    Allocation a;
    a.w = std::sqrt(std::max(0.0, pbar * total)) * u;
    a.v = hermitian_part(p.x * total * (u1 * u1.adjoint()) + p.y * total * (u2 * u2.adjoint()));
    return a;
  }

 private:
  // Beam directions are taken in the antenna basis, so phi = 0 is not MRT;
  // the MRT restriction uses the frame instead.
  CVec beam_dir(const std::array<double, 4>& a) const {
    if (opt_.beam == BeamStructure::kMrt) return frame_.e1;
    return unit(a[0], a[1]);
  }

  const GramSet& grams_;
  std::span<const double> eps_;
  Frame frame_;
  Objective obj_;
  OracleOptions opt_;
  double gamma_;
  std::vector<double> tol_;
  std::array<int, 2> beam_{}, noise_{};
  Herm2 beam_h_;
  std::vector<Herm2> beam_g_, noise_g_;
};

OracleResult search(const GramSet& grams, const QosTargets& qos, std::span<const double> eps,
                    const Weights& weights, const UtopiaValues& utopia,
                    const OracleOptions& opt, bool parallel) {
  if (grams.num_antennas() != 2) throw DomainError("grid oracle needs two antennas");
  if (grams.g.size() > static_cast<std::size_t>(kMaxIdle))
    throw DomainError("grid oracle supports at most two idle receivers");
  if (opt.resolution < 64 || opt.resolution % 2 != 0)
    throw DomainError("grid oracle resolution must be even and at least 64");
  if (eps.size() != grams.g.size()) throw DomainError("harvesting efficiency count mismatch");
  weights.validate();
  qos.validate(grams.g.size());

  Objective obj;
  obj.lambda1 = weights.lambda1;
  obj.lambda2 = weights.lambda2;
  obj.f1_star = utopia.f1_star;
  obj.f2_star = utopia.f2_star;
  obj.c1 = qos.gamma_req * qos.sigma_s2;
  obj.t_min = obj.c1 / qos.p_max;

  OracleResult out;
  if (grams.g.size() <= 1) {
    out = run_search(PlanarSpace(grams, qos, eps, obj, opt), opt.refine, parallel);
  } else {
    out = run_search(FullSpace(grams, qos, eps, obj, opt), opt.refine, parallel);
  }
  if (out.feasible) {
    // Report the value of the reconstructed allocation itself.
    const double eff = grams.g.empty() ? 0.0 : harvesting_efficiency(out.argument, grams, eps);
    out.objective = scalarized_objective(weights, utopia, eff, transmit_power(out.argument));
  }
  return out;
}

}  // namespace

OracleResult grid_oracle(const GramSet& grams, const QosTargets& qos, std::span<const double> eps,
                         const Weights& weights, const UtopiaValues& utopia,
                         const OracleOptions& options) {
  return search(grams, qos, eps, weights, utopia, options, true);
}

OracleResult grid_oracle_serial(const GramSet& grams, const QosTargets& qos,
                                std::span<const double> eps, const Weights& weights,
                                const UtopiaValues& utopia, const OracleOptions& options) {
  return search(grams, qos, eps, weights, utopia, options, false);
}

}  // namespace swipt
