#pragma once

// Projection onto C_alpha = {<x, y> = alpha gamma}, computed by conjugating
// the standard-form projection with the rotation A:
//
//   P_{C_alpha} = A o P_{C~_alpha} o A^T
//
// A sphere of free u (v fixed) maps to base + (w, w, 0)/sqrt(2); a sphere of
// free v maps to base + (w, -w, 0)/sqrt(2), |w| = radius.

#include <vector>

#include "hypar/core.hpp"
#include "hypar/proj_tilde.hpp"
#include "hypar/transform.hpp"

namespace hypar {

enum class SetKindC { singleton, sphere_diag_plus, sphere_diag_minus };

struct ProjectionSetC {
  SetKindC kind = SetKindC::singleton;
  Point point;  // base point for sphere kinds
  double radius = 0.0;

  bool is_singleton() const { return kind == SetKindC::singleton; }
};

using ProjectionOutcomeC = Outcome<ProjectionSetC>;

enum class CaseFamily { a, b, c, d };

inline ProjectionSetC to_c_coordinates(const ProjectionSet& s) {
  ProjectionSetC out;
  out.point = apply_a(s.point);
  out.radius = s.radius;
  switch (s.kind) {
    case SetKind::singleton: out.kind = SetKindC::singleton; break;
    case SetKind::sphere_first_slot: out.kind = SetKindC::sphere_diag_plus; break;
    case SetKind::sphere_second_slot: out.kind = SetKindC::sphere_diag_minus; break;
  }
  return out;
}

inline ProjectionSet to_tilde_coordinates(const ProjectionSetC& s) {
  ProjectionSet out;
  out.point = apply_at(s.point);
  out.radius = s.radius;
  switch (s.kind) {
    case SetKindC::singleton: out.kind = SetKind::singleton; break;
    case SetKindC::sphere_diag_plus: out.kind = SetKind::sphere_first_slot; break;
    case SetKindC::sphere_diag_minus: out.kind = SetKind::sphere_second_slot; break;
  }
  return out;
}

inline std::vector<Point> sample_members(const ProjectionSetC& s,
                                         std::size_t k) {
  if (k == 0) return {};
  if (s.is_singleton()) return {s.point};
  const std::size_t n = s.point.dim();
  const double sign = s.kind == SetKindC::sphere_diag_plus ? 1.0 : -1.0;
  std::vector<Point> out;
  const std::size_t count = detail::member_count(n, k);
  for (std::size_t j = 0; j < count; ++j) {
    const Vector w =
        vec::scaled(detail::sphere_direction(n, j), s.radius * kInvSqrt2);
    Point m = s.point;
    for (std::size_t i = 0; i < n; ++i) {
      m.x[i] += w[i];
      m.y[i] += sign * w[i];
    }
    out.push_back(std::move(m));
  }
  return out;
}

// x0 = -y0 <=> u0 = 0 and x0 = y0 <=> v0 = 0; the zero tests run on A^T p0
// with the same tolerance project_tilde uses.
inline CaseFamily dispatch_case_c(const Point& p0, const ProblemParams& params) {
  const Point t = apply_at(p0);
  const double tol = zero_threshold(t, params);
  const bool u_zero = vec::norm(t.x) <= tol;
  const bool v_zero = vec::norm(t.y) <= tol;
  if (u_zero && v_zero) return CaseFamily::d;
  if (u_zero) return CaseFamily::b;
  if (v_zero) return CaseFamily::c;
  return CaseFamily::a;
}

inline ProjectionOutcomeC project_c(const Point& p0, const ProblemParams& params) {
  require_dimension(p0, params);
  ProjectionOutcome t = project_tilde(apply_at(p0), params);
  ProjectionOutcomeC out;
  out.set = to_c_coordinates(t.set);
  out.multiplier = t.multiplier;
  out.case_label = t.case_label;
  out.root = t.root;
  out.distance = weighted_distance(p0, sample_members(out.set, 1).front(), params);
  return out;
}

}  // namespace hypar
