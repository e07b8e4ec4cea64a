#pragma once

// Projections onto the alpha -> 0 limits of the two quadrics:
//
//   C~ = {(u, v) : |u| = |v|}       C = {(x, y) : <x, y> = 0} = A C~
//
// For |u| = |v| = r fixed the best u is r u0/|u0| and the best v is
// r v0/|v0|, leaving (r - |u0|)^2 + (r - |v0|)^2, minimized at the average
// m = (|u0| + |v0|)/2. A zero block is free on the sphere of radius m.
//
// The convergence report measures, for a decreasing sequence of alpha, how
// far the sampled members of P_{C_alpha}(p0) are from P_{C x R}(p0) =
// P_C(x0, y0) x {gamma0}.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "hypar/core.hpp"
#include "hypar/proj_c.hpp"
#include "hypar/proj_tilde.hpp"
#include "hypar/transform.hpp"

namespace hypar {

inline constexpr double kCrossZeroEps = 1e-9;

// Result has gamma = 0.
inline ProjectionSet project_cross_tilde(const Vector& u0, const Vector& v0,
                                         double eps = kCrossZeroEps) {
  if (u0.size() != v0.size()) {
    throw DimensionError("cross projection blocks have different lengths");
  }
  const std::size_t n = u0.size();
  const double nu = vec::norm(u0);
  const double nv = vec::norm(v0);
  const double zero_tol = eps * (1.0 + std::hypot(nu, nv));
  const bool u_zero = nu <= zero_tol;
  const bool v_zero = nv <= zero_tol;
  const double m = 0.5 * (nu + nv);
  const Vector zeros(n, 0.0);

  if (u_zero && v_zero) return ProjectionSet::singleton({zeros, zeros, 0.0});
  if (u_zero) {
    return ProjectionSet::sphere(SetKind::sphere_first_slot,
                                 {zeros, vec::scaled(v0, m / nv), 0.0}, m);
  }
  if (v_zero) {
    return ProjectionSet::sphere(SetKind::sphere_second_slot,
                                 {vec::scaled(u0, m / nu), zeros, 0.0}, m);
  }
  return ProjectionSet::singleton(
      {vec::scaled(u0, m / nu), vec::scaled(v0, m / nv), 0.0});
}

inline ProjectionSetC project_cross(const Vector& x0, const Vector& y0,
                                    double eps = kCrossZeroEps) {
  const Point t = apply_at({x0, y0, 0.0});
  return to_c_coordinates(project_cross_tilde(t.x, t.y, eps));
}

// Exact beta-weighted distance from q to every member of s.
inline double distance_to_set(const ProjectionSet& s, const Point& q,
                              double beta) {
  require_consistent(q);
  const double dg = beta * (q.gamma - s.point.gamma);
  double fixed_sq = 0.0;
  double free_gap = 0.0;
  switch (s.kind) {
    case SetKind::singleton:
      fixed_sq = vec::norm_sq(vec::sub(q.x, s.point.x)) +
                 vec::norm_sq(vec::sub(q.y, s.point.y));
      break;
    case SetKind::sphere_first_slot:
      fixed_sq = vec::norm_sq(vec::sub(q.y, s.point.y));
      free_gap = vec::norm(q.x) - s.radius;
      break;
    case SetKind::sphere_second_slot:
      fixed_sq = vec::norm_sq(vec::sub(q.x, s.point.x));
      free_gap = vec::norm(q.y) - s.radius;
      break;
  }
  return std::sqrt(fixed_sq + free_gap * free_gap + dg * dg);
}

inline double distance_to_set(const ProjectionSetC& s, const Point& q,
                              double beta) {
  return distance_to_set(to_tilde_coordinates(s), apply_at(q), beta);
}

struct ConvergenceRow {
  double alpha = 0.0;
  double max_dist = 0.0;
  CaseLabel case_label = CaseLabel::a;
  bool gamma_axis = false;
};

// x0 = y0 = 0 with gamma0 != 0: P_{C_alpha}(p0) does not approach p0 as a
// fixed-point slice, so such rows are flagged.
inline bool on_gamma_axis(const Point& p0, const ProblemParams& params) {
  const double tol = zero_threshold(p0, params);
  return vec::norm(p0.x) <= tol && vec::norm(p0.y) <= tol && p0.gamma != 0.0;
}

// `params` supplies beta, n and tolerances; its alpha is replaced by each
// entry of `alphas`, which must be positive and strictly decreasing.
inline std::vector<ConvergenceRow> convergence_report(
    const Point& p0, std::span<const double> alphas, const ProblemParams& params,
    std::size_t samples = 0) {
  require_dimension(p0, params);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0)) {
      throw std::invalid_argument("convergence alphas must be positive");
    }
    if (i > 0 && !(alphas[i] < alphas[i - 1])) {
      throw std::invalid_argument("convergence alphas must be strictly decreasing");
    }
  }
  if (samples == 0) samples = 2 * params.n();

  ProjectionSetC limit = project_cross(p0.x, p0.y, params.eps_case());
  limit.point.gamma = p0.gamma;
  const bool flag = on_gamma_axis(p0, params);

  std::vector<ConvergenceRow> rows;
  rows.reserve(alphas.size());
  for (double alpha : alphas) {
    const ProblemParams pa = params.with_alpha(alpha);
    const ProjectionOutcomeC out = project_c(p0, pa);
    double worst = 0.0;
    for (const Point& m : sample_members(out.set, samples)) {
      worst = std::fmax(worst, distance_to_set(limit, m, params.beta()));
    }
    rows.push_back({alpha, worst, out.case_label, flag});
  }
  return rows;
}

}  // namespace hypar
