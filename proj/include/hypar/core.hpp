#pragma once

// Geometric primitives shared by every projection routine: the carrier
// X x X x R with X = R^n, the beta-weighted norm, and the two constraint
// residuals
//
//   C_alpha       : <x, y>           = alpha * gamma
//   C~_alpha      : |u|^2 - |v|^2    = 2 * alpha * gamma

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypar {

using Vector = std::vector<double>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Tolerances {
  double feas = 1e-9;      // feasibility residual
  double root = 1e-12;     // scaled residual of the multiplier equations
  double eps_case = 1e-9;  // relative zero test used by case dispatch
};

class ProblemParams {
 public:
  ProblemParams(double alpha, double beta, std::size_t n, Tolerances tol = {})
      : alpha_(alpha), beta_(beta), n_(n), tol_(tol) {
    if (!std::isfinite(alpha) || alpha == 0.0) {
      throw ParameterError("alpha must be finite and nonzero (alpha != 0)");
    }
    if (!std::isfinite(beta) || !(beta > 0.0)) {
      throw ParameterError("beta must be finite and > 0");
    }
    if (n == 0) {
      throw ParameterError("dimension n must be >= 1");
    }
    if (!(tol.feas > 0.0) || !(tol.root > 0.0) || !(tol.eps_case > 0.0)) {
      throw ParameterError("all tolerances must be > 0");
    }
  }

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  std::size_t n() const { return n_; }
  const Tolerances& tolerances() const { return tol_; }
  double tol_feas() const { return tol_.feas; }
  double tol_root() const { return tol_.root; }
  double eps_case() const { return tol_.eps_case; }

  // alpha / beta^2, the gamma shift that appears in every branch.
  double gamma_shift() const { return alpha_ / (beta_ * beta_); }

  ProblemParams with_alpha(double alpha) const {
    return ProblemParams(alpha, beta_, n_, tol_);
  }

 private:
  double alpha_;
  double beta_;
  std::size_t n_;
  Tolerances tol_;
};

// A point (x, y, gamma); the same carrier holds (u, v, gamma) in standard
// form coordinates.
struct Point {
  Vector x;
  Vector y;
  double gamma = 0.0;

  std::size_t dim() const { return x.size(); }

  friend bool operator==(const Point&, const Point&) = default;
};

namespace vec {

inline double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm_sq(const Vector& a) { return dot(a, a); }

inline double norm(const Vector& a) { return std::sqrt(norm_sq(a)); }

inline Vector scaled(const Vector& a, double s) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

inline Vector divided(const Vector& a, double d) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] / d;
  return out;
}

inline Vector sub(const Vector& a, const Vector& b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Vector add(const Vector& a, const Vector& b) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline double max_abs(const Vector& a) {
  double m = 0.0;
  for (double v : a) m = std::fmax(m, std::fabs(v));
  return m;
}

}  // namespace vec

inline void require_consistent(const Point& p) {
  if (p.x.size() != p.y.size()) {
    throw DimensionError("point blocks have different lengths (" +
                         std::to_string(p.x.size()) + " vs " +
                         std::to_string(p.y.size()) + ")");
  }
}

inline void require_dimension(const Point& p, const ProblemParams& params) {
  require_consistent(p);
  if (p.x.size() != params.n()) {
    throw DimensionError("point dimension " + std::to_string(p.x.size()) +
                         " does not match n = " + std::to_string(params.n()));
  }
}

inline double weighted_norm(const Point& p, const ProblemParams& params) {
  require_dimension(p, params);
  const double bg = params.beta() * p.gamma;
  return std::sqrt(vec::norm_sq(p.x) + vec::norm_sq(p.y) + bg * bg);
}

inline double weighted_distance(const Point& p, const Point& q,
                                const ProblemParams& params) {
  require_dimension(p, params);
  require_dimension(q, params);
  double s = 0.0;
  for (std::size_t i = 0; i < p.x.size(); ++i) {
    const double dx = p.x[i] - q.x[i];
    const double dy = p.y[i] - q.y[i];
    s += dx * dx + dy * dy;
  }
  const double dg = params.beta() * (p.gamma - q.gamma);
  return std::sqrt(s + dg * dg);
}

// <x, y> - alpha * gamma
inline double residual_c(const Point& p, const ProblemParams& params) {
  require_dimension(p, params);
  return vec::dot(p.x, p.y) - params.alpha() * p.gamma;
}

// |u|^2 - |v|^2 - 2 * alpha * gamma
inline double residual_ctilde(const Point& p, const ProblemParams& params) {
  require_dimension(p, params);
  return vec::norm_sq(p.x) - vec::norm_sq(p.y) -
         2.0 * params.alpha() * p.gamma;
}

}  // namespace hypar
