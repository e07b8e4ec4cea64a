#pragma once

// The unitary map A : (u, v, gamma) -> (x, y, gamma), a rotation by pi/4
// about the gamma axis, and its adjoint.
//
//   x = (u - v) / sqrt(2),   y = (u + v) / sqrt(2)
//   u = (x + y) / sqrt(2),   v = (y - x) / sqrt(2)

#include "hypar/core.hpp"

namespace hypar {

inline constexpr double kInvSqrt2 = 0.70710678118654752440084436210484903928;

inline Point apply_a(const Point& uv) {
  require_consistent(uv);
  Point out{Vector(uv.x.size()), Vector(uv.x.size()), uv.gamma};
  for (std::size_t i = 0; i < uv.x.size(); ++i) {
    out.x[i] = (uv.x[i] - uv.y[i]) * kInvSqrt2;
    out.y[i] = (uv.x[i] + uv.y[i]) * kInvSqrt2;
  }
  return out;
}

inline Point apply_at(const Point& xy) {
  require_consistent(xy);
  Point out{Vector(xy.x.size()), Vector(xy.x.size()), xy.gamma};
  for (std::size_t i = 0; i < xy.x.size(); ++i) {
    out.x[i] = (xy.x[i] + xy.y[i]) * kInvSqrt2;
    out.y[i] = (xy.y[i] - xy.x[i]) * kInvSqrt2;
  }
  return out;
}

}  // namespace hypar
