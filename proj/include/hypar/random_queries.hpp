#pragma once

// Seeded generators of random projection instances, shared by the
// oracle-check command and the test suites. Deterministic for a given seed
// on a given standard library.

#include <cmath>
#include <cstdint>
#include <random>

#include "hypar/core.hpp"

namespace hypar {

struct QueryRanges {
  double alpha_min = 0.1;  // |alpha| is log-uniform on [alpha_min, alpha_max]
  double alpha_max = 10.0;
  double beta_min = 0.1;   // beta is log-uniform on [beta_min, beta_max]
  double beta_max = 10.0;
  double scale_min = 0.1;  // per-query coordinate scale, log-uniform
  double scale_max = 10.0;
  // Fractions of queries with u0 = 0, v0 = 0, and both zero (standard form
  // blocks); the rest are generic.
  double frac_u_zero = 0.1;
  double frac_v_zero = 0.1;
  double frac_both_zero = 0.05;
};

struct Query {
  Point point;
  double alpha;
  double beta;
};

class QueryGenerator {
 public:
  explicit QueryGenerator(std::uint64_t seed, QueryRanges ranges = {})
      : rng_(seed), ranges_(ranges) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

  Vector normal_vector(std::size_t n, double scale) {
    Vector v(n);
    for (double& c : v) c = scale * normal();
    return v;
  }

  // Point in standard-form coordinates (u, v, gamma).
  Query next_tilde(std::size_t n) {
    Query q;
    q.alpha = log_uniform(ranges_.alpha_min, ranges_.alpha_max);
    if (uniform(0.0, 1.0) < 0.5) q.alpha = -q.alpha;
    q.beta = log_uniform(ranges_.beta_min, ranges_.beta_max);
    const double scale = log_uniform(ranges_.scale_min, ranges_.scale_max);
    q.point.x = normal_vector(n, scale);
    q.point.y = normal_vector(n, scale);
    q.point.gamma = scale * normal();
    const double pick = uniform(0.0, 1.0);
    if (pick < ranges_.frac_both_zero) {
      q.point.x.assign(n, 0.0);
      q.point.y.assign(n, 0.0);
      // spread gamma so all three d-branches occur
      q.point.gamma = uniform(-3.0, 3.0) * std::fabs(q.alpha) / (q.beta * q.beta);
    } else if (pick < ranges_.frac_both_zero + ranges_.frac_u_zero) {
      q.point.x.assign(n, 0.0);
    } else if (pick <
               ranges_.frac_both_zero + ranges_.frac_u_zero + ranges_.frac_v_zero) {
      q.point.y.assign(n, 0.0);
    }
    return q;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
  QueryRanges ranges_;
};

}  // namespace hypar
