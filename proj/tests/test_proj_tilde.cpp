#include <array>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "hypar/cross.hpp"
#include "hypar/proj_tilde.hpp"
#include "hypar/random_queries.hpp"
#include "test_support.hpp"

using namespace hypar;

namespace {

const ProblemParams kFive(5.0, 1.0, 1);

void expect_point_near(const Point& p, const Point& q, double tol) {
  ASSERT_EQ(p.dim(), q.dim());
  EXPECT_LE(testkit::max_abs_diff(p, q), tol)
      << "(" << p.x[0] << ", " << p.y[0] << ", " << p.gamma << ") vs ("
      << q.x[0] << ", " << q.y[0] << ", " << q.gamma << ")";
}

Point transform_blocks(const std::vector<Vector>& q1, const std::vector<Vector>& q2,
                       const Point& p) {
  return {testkit::apply(q1, p.x), testkit::apply(q2, p.y), p.gamma};
}

}  // namespace

TEST(ProjectTilde, GenericQuery) {
  const ProjectionOutcome o = project_tilde({{2.0}, {-3.0}, 4.0}, kFive);
  EXPECT_EQ(o.case_label, CaseLabel::a);
  ASSERT_TRUE(o.set.is_singleton());
  expect_point_near(o.set.point, {{4.20311}, {-1.96830}, 1.37919}, 1e-5);
  expect_point_near(o.set.point,
                    {{4.203107098524034}, {-1.968295300113814}, 1.379192289321299},
                    1e-12);
  ASSERT_TRUE(o.multiplier.has_value());
  EXPECT_NEAR(*o.multiplier, -0.52416, 5e-6);
  EXPECT_NEAR(o.distance, 3.575853538903287, 1e-12);
  ASSERT_TRUE(o.root.has_value());
}

TEST(ProjectTilde, FirstBlockZeroSingleton) {
  const ProjectionOutcome o = project_tilde({{0.0}, {-3.0}, 3.0}, kFive);
  EXPECT_EQ(o.case_label, CaseLabel::b_a);
  ASSERT_TRUE(o.set.is_singleton());
  expect_point_near(o.set.point, {{0.0}, {-1.80187}, -0.32467}, 1e-5);
  expect_point_near(o.set.point, {{0.0}, {-1.801872281142207}, -0.3246743717548620},
                    1e-12);
  EXPECT_NEAR(*o.multiplier, -0.66493, 5e-6);
  EXPECT_NEAR(o.distance, 3.533973642926467, 1e-12);
}

TEST(ProjectTilde, FirstBlockZeroSphere) {
  const ProjectionOutcome o = project_tilde({{0.0}, {std::sqrt(32.0)}, 6.0}, kFive);
  EXPECT_EQ(o.case_label, CaseLabel::b_b);
  ASSERT_EQ(o.set.kind, SetKind::sphere_first_slot);
  EXPECT_NEAR(o.set.radius, std::sqrt(18.0), 1e-12);
  expect_point_near(o.set.point, {{0.0}, {std::sqrt(8.0)}, 1.0}, 1e-12);
  const auto members = sample_members(o.set, 2);
  ASSERT_EQ(members.size(), 2u);
  expect_point_near(members[0], {{4.24264}, {2.82843}, 1.0}, 1e-5);
  expect_point_near(members[1], {{-4.24264}, {2.82843}, 1.0}, 1e-5);
}

TEST(ProjectTilde, BothBlocksZeroSphere) {
  const ProjectionOutcome o = project_tilde({{0.0}, {0.0}, 6.0}, kFive);
  EXPECT_EQ(o.case_label, CaseLabel::d_a);
  ASSERT_EQ(o.set.kind, SetKind::sphere_first_slot);
  EXPECT_NEAR(o.set.radius, std::sqrt(10.0), 1e-12);
  expect_point_near(o.set.point, {{0.0}, {0.0}, 1.0}, 1e-12);
  EXPECT_NEAR(o.distance, std::sqrt(35.0), 1e-12);
}

TEST(ProjectTilde, BothBlocksZeroOrigin) {
  const ProjectionOutcome o = project_tilde({{0.0}, {0.0}, 4.0}, kFive);
  EXPECT_EQ(o.case_label, CaseLabel::d_b);
  ASSERT_TRUE(o.set.is_singleton());
  EXPECT_EQ(o.set.point, (Point{{0.0}, {0.0}, 0.0}));
  EXPECT_DOUBLE_EQ(o.distance, 4.0);
  EXPECT_LE(check_kkt({{0.0}, {0.0}, 4.0}, o.set.point, *o.multiplier, kFive), 1e-15);
}

TEST(ProjectTilde, MirrorBranches) {
  // v-block analogues of the sphere cases, alpha negated
  const ProblemParams neg(-5.0, 1.0, 1);
  const ProjectionOutcome c = project_tilde({{std::sqrt(32.0)}, {0.0}, 6.0}, neg);
  EXPECT_EQ(c.case_label, CaseLabel::c_b);
  EXPECT_EQ(c.set.kind, SetKind::sphere_second_slot);
  EXPECT_NEAR(c.set.radius, std::sqrt(18.0), 1e-12);
  expect_point_near(c.set.point, {{std::sqrt(8.0)}, {0.0}, 1.0}, 1e-12);

  const ProjectionOutcome d = project_tilde({{0.0}, {0.0}, 6.0}, neg);
  EXPECT_EQ(d.case_label, CaseLabel::d_c);
  EXPECT_EQ(d.set.kind, SetKind::sphere_second_slot);
  EXPECT_NEAR(d.set.radius, std::sqrt(10.0), 1e-12);

  const ProjectionOutcome ca = project_tilde({{-3.0}, {0.0}, 3.0}, neg);
  EXPECT_EQ(ca.case_label, CaseLabel::c_a);
  expect_point_near(ca.set.point, {{-1.801872281142207}, {0.0}, -0.3246743717548620},
                    1e-12);
}

TEST(ProjectTilde, FeasiblePointsAreFixed) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 4;
    const ProblemParams params(t % 2 ? 1.5 : -0.7, 2.0, n);
    Point p = testkit::random_point(rng, n);
    p.gamma = (vec::norm_sq(p.x) - vec::norm_sq(p.y)) / (2.0 * params.alpha());
    const ProjectionOutcome o = project_tilde(p, params);
    ASSERT_TRUE(o.set.is_singleton());
    EXPECT_LE(testkit::max_abs_diff(o.set.point, p), 1e-12 * (1.0 + weighted_norm(p, params)));
    EXPECT_LE(o.distance, 1e-12 * (1.0 + weighted_norm(p, params)));
  }
  const Point exact{{1.0}, {1.0}, 0.0};
  const ProjectionOutcome o = project_tilde(exact, kFive);
  EXPECT_EQ(o.set.point, exact);
  EXPECT_EQ(o.distance, 0.0);
  EXPECT_EQ(*o.multiplier, 0.0);
}

TEST(ProjectTilde, DimensionMismatch) {
  EXPECT_THROW(project_tilde({{1.0, 2.0}, {1.0, 2.0}, 0.0}, kFive), DimensionError);
}

TEST(SampleMembers, Examples) {
  const auto one = sample_members(ProjectionSet::singleton({{0.0}, {0.0}, 0.0}), 3);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], (Point{{0.0}, {0.0}, 0.0}));

  const auto two = sample_members(
      ProjectionSet::sphere(SetKind::sphere_first_slot, {{0.0}, {0.0}, 1.0},
                            std::sqrt(10.0)),
      2);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_DOUBLE_EQ(two[0].x[0], std::sqrt(10.0));
  EXPECT_DOUBLE_EQ(two[1].x[0], -std::sqrt(10.0));
  EXPECT_EQ(two[1].gamma, 1.0);

  const auto plane = sample_members(
      ProjectionSet::sphere(SetKind::sphere_first_slot,
                            {{0.0, 0.0}, {0.0, 0.0}, 0.0}, 1.0),
      2);
  EXPECT_EQ(plane[0].x, (Vector{1.0, 0.0}));
  EXPECT_EQ(plane[1].x, (Vector{-1.0, 0.0}));

  const auto cycle = sample_members(
      ProjectionSet::sphere(SetKind::sphere_second_slot,
                            {{0.0, 0.0}, {0.0, 0.0}, 0.0}, 2.0),
      10);
  ASSERT_EQ(cycle.size(), 4u);
  EXPECT_EQ(cycle[2].y, (Vector{0.0, 2.0}));
  EXPECT_EQ(cycle[3].y, (Vector{0.0, -2.0}));
  EXPECT_TRUE(sample_members(ProjectionSet::singleton({{0.0}, {0.0}, 0.0}), 0).empty());
}

TEST(SphereConstruction, ZeroRadiusCollapses) {
  const ProjectionSet s =
      ProjectionSet::sphere(SetKind::sphere_first_slot, {{0.0}, {2.0}, -1.0}, 0.0);
  EXPECT_TRUE(s.is_singleton());
  EXPECT_EQ(s.point, (Point{{0.0}, {2.0}, -1.0}));
}

TEST(CheckKkt, Examples) {
  const Point printed{{4.20311}, {-1.96830}, 1.37919};
  EXPECT_LE(check_kkt({{2.0}, {-3.0}, 4.0}, printed, -0.52416, kFive), 1e-4);

  const Point feasible{{1.0}, {1.0}, 0.0};
  EXPECT_EQ(check_kkt(feasible, feasible, 0.0, kFive), 0.0);

  std::mt19937_64 rng(42);
  for (int t = 0; t < 50; ++t) {
    const Point p0 = testkit::random_point(rng, 1);
    const Point cand = testkit::random_point(rng, 1);
    EXPECT_GT(check_kkt(p0, cand, 0.3, kFive), 0.0);
  }
}

TEST(ProjectTilde, BoundaryCollapse) {
  // alpha = 2, beta = 1, |v0|^2 = 16: gamma0 = 1 puts
  // alpha (gamma0 - alpha/beta^2) = -2 = -|v0|^2/8 exactly.
  const ProblemParams params(2.0, 1.0, 1);
  const ProjectionOutcome o = project_tilde({{0.0}, {4.0}, 1.0}, params);
  EXPECT_EQ(o.case_label, CaseLabel::b_b);
  ASSERT_TRUE(o.set.is_singleton());
  EXPECT_EQ(o.set.point, (Point{{0.0}, {2.0}, -1.0}));

  // Approaching the threshold from either side lands on the same point.
  const ProjectionOutcome below = project_tilde({{0.0}, {4.0}, 1.0 - 1e-12}, params);
  EXPECT_EQ(below.case_label, CaseLabel::b_a);
  expect_point_near(below.set.point, o.set.point, 1e-5);
  const ProjectionOutcome above = project_tilde({{0.0}, {4.0}, 1.0 + 1e-12}, params);
  EXPECT_EQ(above.case_label, CaseLabel::b_b);
  EXPECT_LE(above.set.radius, 1e-5);
  EXPECT_NEAR(below.distance, o.distance, 1e-6);
  EXPECT_NEAR(above.distance, o.distance, 1e-6);

  // mirrored threshold for the v0 = 0 branch
  const ProjectionOutcome m = project_tilde({{4.0}, {0.0}, 1.0}, params.with_alpha(-2.0));
  ASSERT_TRUE(m.set.is_singleton());
  EXPECT_EQ(m.set.point, (Point{{2.0}, {0.0}, -1.0}));
}

TEST(ProjectTilde, NearZeroBlockAgreesWithGenericBranch) {
  // Under the default tolerance |u0| = 1e-12 routes to the u0 = 0 branch; with
  // a vanishing case tolerance the generic branch is forced instead.
  for (double g0 : {-3.0, 0.5, 4.0, 10.0}) {
    for (double alpha : {5.0, -2.0, 0.3}) {
      const ProblemParams dflt(alpha, 1.3, 2);
      const ProblemParams forced(alpha, 1.3, 2, Tolerances{1e-9, 1e-12, 1e-300});
      const Point p0{{1e-12, 0.0}, {-3.0, 1.0}, g0};
      const ProjectionOutcome routed = project_tilde(p0, dflt);
      const ProjectionOutcome generic = project_tilde(p0, forced);
      EXPECT_NE(routed.case_label, CaseLabel::a);
      EXPECT_EQ(generic.case_label, CaseLabel::a);
      EXPECT_NEAR(routed.distance, generic.distance, 1e-6);
      EXPECT_LE(distance_to_set(routed.set, generic.set.point, 1.3), 1e-6)
          << "g0=" << g0 << " alpha=" << alpha;
    }
  }
}

TEST(ProjectTildeProperties, FeasibleEquidistantKktAndConical) {
  QueryGenerator gen(43);
  int singletons = 0, spheres = 0;
  for (int t = 0; t < 3000; ++t) {
    const std::size_t n = std::array<std::size_t, 3>{1, 2, 5}[t % 3];
    const Query q = gen.next_tilde(n);
    const ProblemParams params(q.alpha, q.beta, n);
    const ProjectionOutcome o = project_tilde(q.point, params);
    const double np = weighted_norm(q.point, params);
    const auto members = sample_members(o.set, 2 * n);
    for (const Point& m : members) {
      EXPECT_LE(std::fabs(residual_ctilde(m, params)), params.tol_feas() * (1.0 + np * np))
          << "case " << to_string(o.case_label);
      EXPECT_NEAR(weighted_distance(q.point, m, params), o.distance, 1e-10 * (1.0 + np));
    }
    if (o.case_label == CaseLabel::a) {
      EXPECT_GT(*o.multiplier, -1.0);
      EXPECT_LT(*o.multiplier, 1.0);
    }
    if (!o.set.is_singleton()) {
      ++spheres;
      EXPECT_GT(o.set.radius, 0.0);
      continue;
    }
    ++singletons;
    if (o.root) {
      EXPECT_LE(check_kkt(q.point, o.set.point, *o.multiplier, params),
                params.tol_feas() * (1.0 + np * np))
          << "case " << to_string(o.case_label);
    }
    // Each block is a nonnegative multiple of the query's block.
    for (const auto& [blk, blk0] : {std::pair{&o.set.point.x, &q.point.x},
                                   std::pair{&o.set.point.y, &q.point.y}}) {
      const double n0 = vec::norm_sq(*blk0);
      if (n0 == 0.0) {
        EXPECT_EQ(vec::max_abs(*blk), 0.0);
        continue;
      }
      const double s = vec::dot(*blk, *blk0) / n0;
      EXPECT_GE(s, 0.0);
      EXPECT_LE(vec::max_abs(vec::sub(*blk, vec::scaled(*blk0, s))),
                1e-12 * (1.0 + vec::max_abs(*blk)));
    }
  }
  EXPECT_GT(singletons, 100);
  EXPECT_GT(spheres, 10);
}

TEST(ProjectTildeProperties, BlockwiseOrthogonalEquivariance) {
  QueryGenerator gen(44);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + t % 5;
    const Query q = gen.next_tilde(n);
    const ProblemParams params(q.alpha, q.beta, n);
    const auto q1 = testkit::random_orthogonal(gen.engine(), n);
    const auto q2 = testkit::random_orthogonal(gen.engine(), n);
    const ProjectionOutcome o = project_tilde(q.point, params);
    const ProjectionOutcome r =
        project_tilde(transform_blocks(q1, q2, q.point), params);
    const double scale = 1.0 + weighted_norm(q.point, params);
    ASSERT_EQ(o.set.kind, r.set.kind);
    EXPECT_EQ(o.case_label, r.case_label);
    EXPECT_NEAR(o.set.radius, r.set.radius, 1e-10 * scale);
    EXPECT_LE(testkit::max_abs_diff(transform_blocks(q1, q2, o.set.point), r.set.point),
              1e-10 * scale);
    EXPECT_NEAR(o.distance, r.distance, 1e-10 * scale);
  }
}

TEST(ProjectTildeProperties, SwapSymmetry) {
  QueryGenerator gen(45);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + t % 3;
    const Query q = gen.next_tilde(n);
    const ProblemParams params(q.alpha, q.beta, n);
    const ProjectionOutcome o = project_tilde(q.point, params);
    const ProjectionOutcome s = project_tilde({q.point.y, q.point.x, q.point.gamma},
                                              params.with_alpha(-q.alpha));
    const double scale = 1.0 + weighted_norm(q.point, params);
    const SetKind expected = o.set.kind == SetKind::singleton ? SetKind::singleton
                             : o.set.kind == SetKind::sphere_first_slot
                                 ? SetKind::sphere_second_slot
                                 : SetKind::sphere_first_slot;
    ASSERT_EQ(s.set.kind, expected);
    EXPECT_NEAR(o.set.radius, s.set.radius, 1e-10 * scale);
    const Point swapped{s.set.point.y, s.set.point.x, s.set.point.gamma};
    EXPECT_LE(testkit::max_abs_diff(o.set.point, swapped), 1e-10 * scale);
    if (o.multiplier && s.multiplier) {
      EXPECT_NEAR(*o.multiplier, -*s.multiplier, 1e-10);
    }
  }
}
