#pragma once

// Brute-force projection onto C~_alpha, independent of the closed form.
//
// Only the norms of the blocks matter: with u = s u0 and v = t v0 (s, t >= 0)
// the problem becomes
//
//   minimize (|u| - |u0|)^2 + (|v| - |v0|)^2 + beta^2 (gamma - gamma0)^2
//   subject to |u|^2 - |v|^2 = 2 alpha gamma
//
// a two-dimensional surface in (|u|, |v|, gamma). It is searched on three
// charts, each eliminating one coordinate through the constraint:
//
//   norms         (|u|, |v|)   -> gamma
//   u_norm_gamma  (|u|, gamma) -> |v| = sqrt(|u|^2 - 2 alpha gamma)
//   v_norm_gamma  (|v|, gamma) -> |u| = sqrt(|v|^2 + 2 alpha gamma)
//
// A chart is badly conditioned where its eliminated coordinate is steep
// (gamma for large beta |u| / alpha, a square root near zero); the three
// are complementary, and every evaluated point is feasible, so the best of
// them is a valid upper bound on the distance.
//
// Each chart: a (grid + 1)^2 lattice over a box that provably contains the
// minimizer, then alternating golden-section refinement inside the cell
// around the best lattice point.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "hypar/core.hpp"

namespace hypar {

enum class OracleChart { norms, u_norm_gamma, v_norm_gamma };

struct OracleResult {
  double s_star = 1.0;  // |u| / |u0|, or |u| itself when u0 = 0
  double t_star = 1.0;  // |v| / |v0|, or |v| itself when v0 = 0
  double gamma_star = 0.0;
  double distance = 0.0;
  int grid_steps = 0;
  int refine_iterations = 0;
  double tolerance = 0.0;  // optimality slack: 5 h (1 + |p0|), h = cell width
  Point minimizer;
  OracleChart chart = OracleChart::norms;
};

namespace detail {

inline constexpr int kRefineRounds = 60;
inline constexpr int kGoldenSteps = 48;  // 0.618^48 < 1e-9

struct Reduced {
  double nu0, nv0, g0, alpha, beta;

  double cost(double nu, double nv, double g) const {
    const double du = nu - nu0;
    const double dv = nv - nv0;
    const double dg = beta * (g - g0);
    return du * du + dv * dv + dg * dg;
  }
};

struct SurfacePoint {
  double nu = 0.0;
  double nv = 0.0;
  double gamma = 0.0;
  double cost = std::numeric_limits<double>::infinity();
};

struct Box {
  double lo0, hi0, lo1, hi1;
};

template <class Chart>
SurfacePoint golden_line(const Chart& chart, double lo, double hi,
                         double fixed, bool first_axis) {
  auto eval = [&](double c) {
    return first_axis ? chart(c, fixed) : chart(fixed, c);
  };
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  SurfacePoint fc = eval(c), fd = eval(d);
  SurfacePoint best = fc.cost <= fd.cost ? fc : fd;
  for (int i = 0; i < kGoldenSteps; ++i) {
    if (fc.cost <= fd.cost) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = eval(c);
      if (fc.cost < best.cost) best = fc;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = eval(d);
      if (fd.cost < best.cost) best = fd;
    }
  }
  // Endpoints cover minimizers on the box boundary (e.g. |u| = 0).
  for (double e : {lo, hi}) {
    SurfacePoint fe = eval(e);
    if (fe.cost < best.cost) best = fe;
  }
  return best;
}

// `chart(c0, c1)` returns the surface point with chart coordinates (c0, c1);
// `coords(sp)` recovers them.
template <class Chart, class Coords>
SurfacePoint search_chart(const Chart& chart, const Coords& coords,
                          const Box& box, int grid, int& rounds) {
  const double h0 = (box.hi0 - box.lo0) / grid;
  const double h1 = (box.hi1 - box.lo1) / grid;
  SurfacePoint best;
  int bi = 0, bj = 0;
  for (int i = 0; i <= grid; ++i) {
    const double c0 = box.lo0 + h0 * i;
    for (int j = 0; j <= grid; ++j) {
      const SurfacePoint sp = chart(c0, box.lo1 + h1 * j);
      if (sp.cost < best.cost) {
        best = sp;
        bi = i;
        bj = j;
      }
    }
  }
  if (!std::isfinite(best.cost)) return best;

  const double lo0 = box.lo0 + h0 * std::max(bi - 1, 0);
  const double hi0 = box.lo0 + h0 * std::min(bi + 1, grid);
  const double lo1 = box.lo1 + h1 * std::max(bj - 1, 0);
  const double hi1 = box.lo1 + h1 * std::min(bj + 1, grid);
  auto [c0, c1] = coords(best);
  rounds = 0;
  for (int r = 0; r < kRefineRounds; ++r) {
    ++rounds;
    const double before = best.cost;
    SurfacePoint s0 = golden_line(chart, lo0, hi0, c1, true);
    if (s0.cost < best.cost) {
      best = s0;
      c0 = coords(best).first;
    }
    SurfacePoint s1 = golden_line(chart, lo1, hi1, c0, false);
    if (s1.cost < best.cost) {
      best = s1;
      c1 = coords(best).second;
    }
    if (best.cost == before && r > 0) break;
  }
  return best;
}

inline Vector direction_of(const Vector& v, double norm) {
  if (norm > 0.0) return vec::divided(v, norm);
  Vector e(v.size(), 0.0);
  if (!e.empty()) e[0] = 1.0;
  return e;
}

}  // namespace detail

inline OracleResult oracle_project_tilde(const Point& p0,
                                         const ProblemParams& params,
                                         int grid = 2000) {
  if (grid < 100) throw std::invalid_argument("oracle grid must be >= 100");
  require_dimension(p0, params);
  const double alpha = params.alpha();
  const double beta = params.beta();
  const detail::Reduced red{vec::norm(p0.x), vec::norm(p0.y), p0.gamma, alpha,
                            beta};
  const double nu0 = red.nu0, nv0 = red.nv0, g0 = red.g0;

  // Upper bound d0 on the distance from three explicit feasible points.
  double d0 = beta * std::fabs(g0 - (nu0 * nu0 - nv0 * nv0) / (2.0 * alpha));
  if (const double r = nu0 * nu0 - 2.0 * alpha * g0; r >= 0.0) {
    d0 = std::min(d0, std::fabs(std::sqrt(r) - nv0));
  }
  if (const double r = nv0 * nv0 + 2.0 * alpha * g0; r >= 0.0) {
    d0 = std::min(d0, std::fabs(std::sqrt(r) - nu0));
  }

  OracleResult res;
  res.grid_steps = grid;
  if (d0 == 0.0) {
    res.minimizer = p0;
    res.s_star = nu0 > 0.0 ? 1.0 : 0.0;
    res.t_star = nv0 > 0.0 ? 1.0 : 0.0;
    res.gamma_star = g0;
    return res;
  }

  const detail::Box norms_box{std::max(0.0, nu0 - d0), nu0 + d0,
                              std::max(0.0, nv0 - d0), nv0 + d0};
  const double glo = g0 - d0 / beta, ghi = g0 + d0 / beta;

  auto chart_norms = [&](double nu, double nv) {
    const double g = (nu * nu - nv * nv) / (2.0 * alpha);
    return detail::SurfacePoint{nu, nv, g, red.cost(nu, nv, g)};
  };
  auto chart_u = [&](double nu, double g) {
    const double r = nu * nu - 2.0 * alpha * g;
    if (r < 0.0) return detail::SurfacePoint{};
    const double nv = std::sqrt(r);
    return detail::SurfacePoint{nu, nv, g, red.cost(nu, nv, g)};
  };
  auto chart_v = [&](double nv, double g) {
    const double r = nv * nv + 2.0 * alpha * g;
    if (r < 0.0) return detail::SurfacePoint{};
    const double nu = std::sqrt(r);
    return detail::SurfacePoint{nu, nv, g, red.cost(nu, nv, g)};
  };

  int rounds_a = 0, rounds_b = 0, rounds_c = 0;
  const detail::SurfacePoint sa = detail::search_chart(
      chart_norms,
      [](const detail::SurfacePoint& s) { return std::pair{s.nu, s.nv}; },
      norms_box, grid, rounds_a);
  const detail::SurfacePoint sb = detail::search_chart(
      chart_u,
      [](const detail::SurfacePoint& s) { return std::pair{s.nu, s.gamma}; },
      detail::Box{norms_box.lo0, norms_box.hi0, glo, ghi}, grid, rounds_b);
  const detail::SurfacePoint sc = detail::search_chart(
      chart_v,
      [](const detail::SurfacePoint& s) { return std::pair{s.nv, s.gamma}; },
      detail::Box{norms_box.lo1, norms_box.hi1, glo, ghi}, grid, rounds_c);

  detail::SurfacePoint best = sa;
  res.chart = OracleChart::norms;
  res.refine_iterations = rounds_a;
  if (sb.cost < best.cost) {
    best = sb;
    res.chart = OracleChart::u_norm_gamma;
    res.refine_iterations = rounds_b;
  }
  if (sc.cost < best.cost) {
    best = sc;
    res.chart = OracleChart::v_norm_gamma;
    res.refine_iterations = rounds_c;
  }

  res.s_star = nu0 > 0.0 ? best.nu / nu0 : best.nu;
  res.t_star = nv0 > 0.0 ? best.nv / nv0 : best.nv;
  res.gamma_star = best.gamma;
  res.minimizer = {vec::scaled(detail::direction_of(p0.x, nu0), best.nu),
                   vec::scaled(detail::direction_of(p0.y, nv0), best.nv),
                   best.gamma};
  res.distance = std::sqrt(best.cost);
  const double cell = 2.0 * d0 / grid;
  res.tolerance = 5.0 * cell * (1.0 + weighted_norm(p0, params));
  return res;
}

inline double oracle_distance(const Point& p0, const ProblemParams& params,
                              int grid = 2000) {
  return oracle_project_tilde(p0, params, grid).distance;
}

}  // namespace hypar
