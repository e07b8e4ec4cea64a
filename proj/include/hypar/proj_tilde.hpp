#pragma once

// Exact projection onto C~_alpha = {(u, v, gamma) : |u|^2 - |v|^2 = 2 alpha
// gamma} in the beta-weighted norm. The projection is a singleton except in
// the branches where one block of the query vanishes, where it can be a
// whole sphere of nearest points in the vanished block.
//
// Branch map (s = alpha / beta^2):
//   a    u0 != 0, v0 != 0               lambda from g, singleton
//   b-a  u0 == 0, alpha(g0 - s) < -|v0|^2/8   lambda from g1, singleton
//   b-b  u0 == 0, otherwise             sphere in u around (0, v0/2, g0 - s)
//   c-a  v0 == 0, alpha(g0 + s) >  |u0|^2/8   lambda from g2, singleton
//   c-b  v0 == 0, otherwise             sphere in v around (u0/2, 0, g0 + s)
//   d-a  u0 == v0 == 0, alpha g0 >  alpha s   sphere in u around (0, 0, g0 - s)
//   d-b  u0 == v0 == 0, |alpha g0| <= alpha s singleton (0, 0, 0)
//   d-c  u0 == v0 == 0, alpha g0 < -alpha s   sphere in v around (0, 0, g0 + s)

#include <algorithm>
#include <cmath>
#include <optional>
#include <string_view>
#include <vector>

#include "hypar/core.hpp"
#include "hypar/rootfind.hpp"

namespace hypar {

enum class SetKind { singleton, sphere_first_slot, sphere_second_slot };

enum class CaseLabel { a, b_a, b_b, c_a, c_b, d_a, d_b, d_c };

inline std::string_view to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::a: return "a";
    case CaseLabel::b_a: return "b-a";
    case CaseLabel::b_b: return "b-b";
    case CaseLabel::c_a: return "c-a";
    case CaseLabel::c_b: return "c-b";
    case CaseLabel::d_a: return "d-a";
    case CaseLabel::d_b: return "d-b";
    case CaseLabel::d_c: return "d-c";
  }
  return "?";
}

inline std::optional<CaseLabel> case_label_from_string(std::string_view s) {
  for (CaseLabel c : {CaseLabel::a, CaseLabel::b_a, CaseLabel::b_b,
                      CaseLabel::c_a, CaseLabel::c_b, CaseLabel::d_a,
                      CaseLabel::d_b, CaseLabel::d_c}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

// A singleton, or {point with the free slot replaced by w : |w| = radius}.
// For sphere kinds the free slot of `point` is stored as the zero vector.
struct ProjectionSet {
  SetKind kind = SetKind::singleton;
  Point point;
  double radius = 0.0;

  static ProjectionSet singleton(Point p) {
    return {SetKind::singleton, std::move(p), 0.0};
  }

  // Collapses to a singleton when the radius does not exceed `collapse`.
  static ProjectionSet sphere(SetKind kind, Point fixed, double radius,
                              double collapse = 0.0) {
    if (kind == SetKind::singleton || !(radius > collapse)) {
      return singleton(std::move(fixed));
    }
    return {kind, std::move(fixed), radius};
  }

  bool is_singleton() const { return kind == SetKind::singleton; }
};

template <class Set>
struct Outcome {
  Set set;
  std::optional<double> multiplier;
  CaseLabel case_label = CaseLabel::a;
  double distance = 0.0;
  std::optional<RootReport> root;  // present when a scalar equation was solved
};

using ProjectionOutcome = Outcome<ProjectionSet>;

namespace detail {

// +e1, -e1, +e2, -e2, ...
inline Vector sphere_direction(std::size_t n, std::size_t j) {
  Vector d(n, 0.0);
  d[(j / 2) % n] = (j % 2 == 0) ? 1.0 : -1.0;
  return d;
}

inline std::size_t member_count(std::size_t n, std::size_t k) {
  return std::min(k, 2 * n);
}

}  // namespace detail

// Materializes up to k members: the point itself for a singleton, otherwise
// the fixed components with the free slot set to radius * (+-e_i).
inline std::vector<Point> sample_members(const ProjectionSet& s,
                                         std::size_t k) {
  if (k == 0) return {};
  if (s.is_singleton()) return {s.point};
  const std::size_t n = s.point.dim();
  std::vector<Point> out;
  const std::size_t count = detail::member_count(n, k);
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    Point m = s.point;
    Vector w = vec::scaled(detail::sphere_direction(n, j), s.radius);
    if (s.kind == SetKind::sphere_first_slot) {
      m.x = std::move(w);
    } else {
      m.y = std::move(w);
    }
    out.push_back(std::move(m));
  }
  return out;
}

// Max-norm residual of the stationarity system
//   (1 + l) u = u0,  (1 - l) v = v0,  beta^2 (gamma - gamma0) = l alpha,
//   |u|^2 - |v|^2 = 2 alpha gamma.
inline double check_kkt(const Point& p0, const Point& candidate, double lambda,
                        const ProblemParams& params) {
  require_dimension(p0, params);
  require_dimension(candidate, params);
  double r = 0.0;
  for (std::size_t i = 0; i < p0.dim(); ++i) {
    r = std::fmax(r, std::fabs((1.0 + lambda) * candidate.x[i] - p0.x[i]));
    r = std::fmax(r, std::fabs((1.0 - lambda) * candidate.y[i] - p0.y[i]));
  }
  const double b2 = params.beta() * params.beta();
  r = std::fmax(r, std::fabs(b2 * (candidate.gamma - p0.gamma) -
                             lambda * params.alpha()));
  r = std::fmax(r, std::fabs(residual_ctilde(candidate, params)));
  return r;
}

// Absolute threshold below which a block of p0 counts as zero.
inline double zero_threshold(const Point& p0, const ProblemParams& params) {
  return params.eps_case() * (1.0 + weighted_norm(p0, params));
}

inline ProjectionOutcome project_tilde(const Point& p0,
                                       const ProblemParams& params) {
  require_dimension(p0, params);
  const std::size_t n = params.n();
  const double alpha = params.alpha();
  const double shift = params.gamma_shift();
  const double g0 = p0.gamma;
  const double zero_tol = zero_threshold(p0, params);

  const double a = vec::norm_sq(p0.x);
  const double b = vec::norm_sq(p0.y);
  const bool u_zero = std::sqrt(a) <= zero_tol;
  const bool v_zero = std::sqrt(b) <= zero_tol;
  const Vector zeros(n, 0.0);

  ProjectionOutcome out;
  if (!u_zero && !v_zero) {
    const RootReport r = solve_quintic_norms(a, b, params, g0);
    out.set = ProjectionSet::singleton(
        {vec::divided(p0.x, r.one_plus), vec::divided(p0.y, r.one_minus),
         g0 + r.lambda * shift});
    out.multiplier = r.lambda;
    out.root = r;
    out.case_label = CaseLabel::a;
  } else if (u_zero && !v_zero) {
    const double t = alpha * (g0 - shift);
    if (t < -b / 8.0) {
      const RootReport r = solve_cubic_g1(b, params, g0);
      out.set = ProjectionSet::singleton(
          {zeros, vec::divided(p0.y, r.one_minus), g0 + r.lambda * shift});
      out.multiplier = r.lambda;
      out.root = r;
      out.case_label = CaseLabel::b_a;
    } else {
      const double radius = std::sqrt(std::max(0.0, 2.0 * t + b / 4.0));
      out.set = ProjectionSet::sphere(SetKind::sphere_first_slot,
                                      {zeros, vec::scaled(p0.y, 0.5), g0 - shift},
                                      radius, zero_tol);
      out.multiplier = -1.0;
      out.case_label = CaseLabel::b_b;
    }
  } else if (!u_zero && v_zero) {
    const double s = alpha * (g0 + shift);
    if (s > a / 8.0) {
      const RootReport r = solve_cubic_g2(a, params, g0);
      out.set = ProjectionSet::singleton(
          {vec::divided(p0.x, r.one_plus), zeros, g0 + r.lambda * shift});
      out.multiplier = r.lambda;
      out.root = r;
      out.case_label = CaseLabel::c_a;
    } else {
      const double radius = std::sqrt(std::max(0.0, -2.0 * s + a / 4.0));
      out.set = ProjectionSet::sphere(SetKind::sphere_second_slot,
                                      {vec::scaled(p0.x, 0.5), zeros, g0 + shift},
                                      radius, zero_tol);
      out.multiplier = 1.0;
      out.case_label = CaseLabel::c_b;
    }
  } else {
    const double ag = alpha * g0;
    const double k = alpha * shift;
    if (ag > k) {
      const double radius = std::sqrt(std::max(0.0, 2.0 * alpha * (g0 - shift)));
      out.set = ProjectionSet::sphere(SetKind::sphere_first_slot,
                                      {zeros, zeros, g0 - shift}, radius,
                                      zero_tol);
      out.multiplier = -1.0;
      out.case_label = CaseLabel::d_a;
    } else if (ag < -k) {
      const double radius =
          std::sqrt(std::max(0.0, -2.0 * alpha * (g0 + shift)));
      out.set = ProjectionSet::sphere(SetKind::sphere_second_slot,
                                      {zeros, zeros, g0 + shift}, radius,
                                      zero_tol);
      out.multiplier = 1.0;
      out.case_label = CaseLabel::d_c;
    } else {
      out.set = ProjectionSet::singleton({zeros, zeros, 0.0});
      out.multiplier = -g0 / shift;
      out.case_label = CaseLabel::d_b;
    }
  }
  out.distance = weighted_distance(p0, sample_members(out.set, 1).front(), params);
  return out;
}

}  // namespace hypar
