#pragma once

// Scalar equations for the Lagrange multiplier lambda of the projection
// onto C~_alpha. With a = |u0|^2, b = |v0|^2, k = alpha^2 / beta^2:
//
//   g (l) = a / (1 + l)^2 - b / (1 - l)^2 - 2 l k - 2 alpha gamma0
//   g1(l) = b / (1 - l)^2 + 2 l k + 2 alpha gamma0
//   g2(l) = a / (1 + l)^2 - 2 l k - 2 alpha gamma0
//
// The first is the rational form of ((l^2 + 1) p - 2 l q) / (1 - l^2)^2 - ...
// with p = a - b, q = a + b. g and g2 are strictly decreasing on ]-1, 1[, g1
// strictly increasing; each has exactly one root there under the
// preconditions of the solver. Nothing here clears denominators.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hypar/core.hpp"

namespace hypar {

class RootFindError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RootReport {
  double lambda = 0.0;
  double bracket_lo = -1.0;
  double bracket_hi = 1.0;
  double residual = 0.0;  // |g(lambda)| / (sum of |terms| of g)
  int iterations = 0;
  // 1 + lambda and 1 - lambda, each to full relative precision.
  double one_plus = 1.0;
  double one_minus = 1.0;
};

namespace detail {

struct Multiplier {
  double lambda;
  double one_plus;
  double one_minus;
};

struct Eval {
  double value;
  double slope;  // d/dlambda
  double scale;
};

struct QuinticFn {
  double a, b, k, c;
  Eval operator()(const Multiplier& m) const {
    const double ip = 1.0 / m.one_plus;
    const double im = 1.0 / m.one_minus;
    const double tu = a * ip * ip;
    const double tv = b * im * im;
    return {tu - tv - 2.0 * m.lambda * k - 2.0 * c,
            -2.0 * tu * ip - 2.0 * tv * im - 2.0 * k,
            tu + tv + std::fabs(2.0 * m.lambda * k) + std::fabs(2.0 * c)};
  }
};

struct CubicG1Fn {
  double b, k, c;
  Eval operator()(const Multiplier& m) const {
    const double im = 1.0 / m.one_minus;
    const double tv = b * im * im;
    return {tv + 2.0 * m.lambda * k + 2.0 * c, 2.0 * tv * im + 2.0 * k,
            tv + std::fabs(2.0 * m.lambda * k) + std::fabs(2.0 * c)};
  }
};

struct CubicG2Fn {
  double a, k, c;
  Eval operator()(const Multiplier& m) const {
    const double ip = 1.0 / m.one_plus;
    const double tu = a * ip * ip;
    return {tu - 2.0 * m.lambda * k - 2.0 * c, -2.0 * tu * ip - 2.0 * k,
            tu + std::fabs(2.0 * m.lambda * k) + std::fabs(2.0 * c)};
  }
};

inline double scaled_residual(const Eval& e) {
  if (e.scale == 0.0) return std::fabs(e.value);
  return std::fabs(e.value) / e.scale;
}

inline constexpr int kIterationCap = 200;
inline constexpr int kNewtonSteps = 5;
inline constexpr double kRelativeWidth = 1e-13;

// Parametrizations of one half of ]-1, 1[ by a variable t in [0, 1/2]:
//   near_zero      t = |lambda|            (lambda in [0, 1/2] or [-1/2, 0])
//   from_minus_one t = 1 + lambda          (lambda in ]-1, -1/2])
//   from_plus_one  t = 1 - lambda          (lambda in [1/2, 1[)
// Each keeps lambda, 1 + lambda and 1 - lambda at full relative precision
// on its own range.
enum class Chart { near_zero_up, near_zero_down, from_minus_one, from_plus_one };

inline Multiplier in_chart(Chart c, double t) {
  switch (c) {
    case Chart::near_zero_up: return {t, 1.0 + t, 1.0 - t};
    case Chart::near_zero_down: return {-t, 1.0 - t, 1.0 + t};
    case Chart::from_minus_one: return {t - 1.0, t, 2.0 - t};
    case Chart::from_plus_one: return {1.0 - t, 2.0 - t, t};
  }
  return {0.0, 1.0, 1.0};
}

// d lambda / d t
inline double chart_orientation(Chart c) {
  return (c == Chart::near_zero_up || c == Chart::from_minus_one) ? 1.0 : -1.0;
}

// Finds the unique root of a strictly monotone g on ]-1, 1[. The sign of
// g(0) picks the half interval and the sign of g(+-1/2) the chart; the
// poles are evaluated directly (IEEE infinity where g blows up). Bisection
// runs in the chart variable down to relative width 1e-13, then up to five
// Newton steps kept inside the bracket, then plain bisection again if the
// tolerance is still missed.
template <class Fn>
RootReport solve_monotone(const Fn& g, bool decreasing, double tol) {
  const Eval at_zero = g(Multiplier{0.0, 1.0, 1.0});
  if (at_zero.value == 0.0) {
    return RootReport{0.0, -1.0, 1.0, 0.0, 0, 1.0, 1.0};
  }
  if (std::isnan(at_zero.value)) {
    throw RootFindError("multiplier equation is not finite at lambda = 0");
  }
  const bool zero_positive = at_zero.value > 0.0;
  const bool root_above_zero = zero_positive == decreasing;
  const double pole_lambda = root_above_zero ? 1.0 : -1.0;
  const Eval at_pole = g(Multiplier{pole_lambda, 1.0 + pole_lambda, 1.0 - pole_lambda});
  if (std::isnan(at_pole.value) || at_pole.value == 0.0 ||
      (at_pole.value > 0.0) == zero_positive) {
    throw RootFindError(
        "bracket endpoints fail to straddle zero (g(0) = " +
        std::to_string(at_zero.value) +
        ", g(pole) = " + std::to_string(at_pole.value) + ")");
  }
  const double half = 0.5 * pole_lambda;
  const Eval at_half = g(Multiplier{half, 1.0 + half, 1.0 - half});
  int iterations = 1;
  if (at_half.value == 0.0) {
    return RootReport{half, half - 0.25, half + 0.25, 0.0, iterations,
                      1.0 + half, 1.0 - half};
  }
  const bool near = (at_half.value > 0.0) != zero_positive;
  const Chart chart = near ? (root_above_zero ? Chart::near_zero_up
                                              : Chart::near_zero_down)
                           : (root_above_zero ? Chart::from_plus_one
                                              : Chart::from_minus_one);
  auto f = [&](double t) { return g(in_chart(chart, t)); };

  // Invariant: sign(f(lo)) != sign(f(hi)).
  double lo = 0.0;
  double hi = 0.5;
  const bool lo_positive = near ? zero_positive : !zero_positive;
  double t = 0.25;
  Eval ft = at_zero;
  bool exact = false;
  while (iterations < kIterationCap) {
    t = 0.5 * (lo + hi);
    if (t <= lo || t >= hi) break;
    ft = f(t);
    ++iterations;
    if (ft.value == 0.0) {
      exact = true;
      break;
    }
    if ((ft.value > 0.0) == lo_positive) {
      lo = t;
    } else {
      hi = t;
    }
    if (hi - lo <= kRelativeWidth * hi) break;
  }

  double best_t = exact ? t : 0.5 * (lo + hi);
  Eval best = exact ? ft : f(best_t);
  auto consider = [&](double ct, const Eval& ce) {
    if (scaled_residual(ce) < scaled_residual(best)) {
      best = ce;
      best_t = ct;
    }
  };
  if (!exact) {
    const double orient = chart_orientation(chart);
    double cur_t = best_t;
    Eval cur = best;
    for (int step = 0; step < kNewtonSteps && iterations < kIterationCap;
         ++step) {
      if (cur.value == 0.0) break;
      const double slope = orient * cur.slope;
      if (!std::isfinite(slope) || slope == 0.0) break;
      const double next_t = cur_t - cur.value / slope;
      // The closed bracket is allowed: the root can sit in the last ulp.
      if (!(next_t >= lo && next_t <= hi)) break;
      cur_t = next_t;
      cur = f(cur_t);
      ++iterations;
      consider(cur_t, cur);
    }
    // Newton rejected or stalled: keep bisecting down to adjacent doubles.
    while (!(scaled_residual(best) <= tol) && iterations < kIterationCap) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) {
        consider(lo, f(lo));
        consider(hi, f(hi));
        iterations += 2;
        break;
      }
      const Eval fm = f(mid);
      ++iterations;
      consider(mid, fm);
      if (fm.value == 0.0) break;
      if ((fm.value > 0.0) == lo_positive) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }

  const Multiplier m = in_chart(chart, best_t);
  RootReport report;
  report.lambda = m.lambda;
  report.one_plus = m.one_plus;
  report.one_minus = m.one_minus;
  report.iterations = iterations;
  report.residual = scaled_residual(best);
  const double la = in_chart(chart, lo).lambda;
  const double lb = in_chart(chart, hi).lambda;
  report.bracket_lo = std::min(la, lb);
  report.bracket_hi = std::max(la, lb);
  // A root found on the bracket edge still has an open enclosure one ulp out.
  if (!(report.bracket_lo < report.lambda)) {
    report.bracket_lo = std::nextafter(report.lambda, -2.0);
  }
  if (!(report.lambda < report.bracket_hi)) {
    report.bracket_hi = std::nextafter(report.lambda, 2.0);
  }
  if (!(report.residual <= tol)) {
    throw RootFindError("multiplier equation not solved to tolerance: "
                        "scaled residual " +
                        std::to_string(report.residual) + " after " +
                        std::to_string(iterations) + " iterations");
  }
  return report;
}

inline QuinticFn quintic_fn(double u0_norm_sq, double v0_norm_sq,
                            const ProblemParams& params, double gamma0) {
  const double k = params.alpha() * params.gamma_shift();
  return {u0_norm_sq, v0_norm_sq, k, params.alpha() * gamma0};
}

inline CubicG1Fn cubic_g1_fn(double v0_norm_sq, const ProblemParams& params,
                             double gamma0) {
  return {v0_norm_sq, params.alpha() * params.gamma_shift(),
          params.alpha() * gamma0};
}

inline CubicG2Fn cubic_g2_fn(double u0_norm_sq, const ProblemParams& params,
                             double gamma0) {
  return {u0_norm_sq, params.alpha() * params.gamma_shift(),
          params.alpha() * gamma0};
}

inline Multiplier plain(double lambda) {
  return {lambda, 1.0 + lambda, 1.0 - lambda};
}

}  // namespace detail

// Function values, for diagnostics and monotonicity checks.
inline double quintic_g(double lambda, double p, double q,
                        const ProblemParams& params, double gamma0) {
  return detail::quintic_fn(0.5 * (q + p), 0.5 * (q - p), params, gamma0)(
             detail::plain(lambda))
      .value;
}

inline double cubic_g1(double lambda, double v0_norm_sq,
                       const ProblemParams& params, double gamma0) {
  return detail::cubic_g1_fn(v0_norm_sq, params, gamma0)(detail::plain(lambda))
      .value;
}

inline double cubic_g2(double lambda, double u0_norm_sq,
                       const ProblemParams& params, double gamma0) {
  return detail::cubic_g2_fn(u0_norm_sq, params, gamma0)(detail::plain(lambda))
      .value;
}

// Root of g in ]-1, 1[ given the block norms directly. Preferred over the
// (p, q) form because a = (q + p) / 2 cancels when |u0| << |v0|.
inline RootReport solve_quintic_norms(double u0_norm_sq, double v0_norm_sq,
                                      const ProblemParams& params,
                                      double gamma0) {
  if (!(u0_norm_sq > 0.0) || !(v0_norm_sq > 0.0)) {
    throw std::invalid_argument(
        "quintic multiplier equation needs u0 != 0 and v0 != 0");
  }
  return detail::solve_monotone(
      detail::quintic_fn(u0_norm_sq, v0_norm_sq, params, gamma0),
      /*decreasing=*/true, params.tol_root());
}

inline RootReport solve_quintic(double p, double q, const ProblemParams& params,
                                double gamma0) {
  if (!(q > 0.0) || !(std::fabs(p) < q)) {
    throw std::invalid_argument("solve_quintic requires q > 0 and |p| < q");
  }
  return solve_quintic_norms(0.5 * (q + p), 0.5 * (q - p), params, gamma0);
}

// Caller guarantees alpha (gamma0 - alpha / beta^2) < -|v0|^2 / 8, i.e.
// g1(-1) < 0; otherwise the bracket check throws.
inline RootReport solve_cubic_g1(double v0_norm_sq, const ProblemParams& params,
                                 double gamma0) {
  if (!(v0_norm_sq > 0.0)) {
    throw std::invalid_argument("solve_cubic_g1 requires |v0|^2 > 0");
  }
  return detail::solve_monotone(detail::cubic_g1_fn(v0_norm_sq, params, gamma0),
                                /*decreasing=*/false, params.tol_root());
}

// Caller guarantees alpha (gamma0 + alpha / beta^2) > |u0|^2 / 8.
inline RootReport solve_cubic_g2(double u0_norm_sq, const ProblemParams& params,
                                 double gamma0) {
  if (!(u0_norm_sq > 0.0)) {
    throw std::invalid_argument("solve_cubic_g2 requires |u0|^2 > 0");
  }
  return detail::solve_monotone(detail::cubic_g2_fn(u0_norm_sq, params, gamma0),
                                /*decreasing=*/true, params.tol_root());
}

}  // namespace hypar
