#include <gtest/gtest.h>

#include "hypar/json_io.hpp"

using namespace hypar;

TEST(JsonIo, PointRoundTrip) {
  const Point p{{1.5, -2.0}, {0.0, 3.25}, -7.0};
  EXPECT_EQ(point_from_json(point_to_json(p)), p);
  EXPECT_EQ(point_from_json(Json::parse(R"({"x":[2],"y":[-3],"gamma":4})")),
            (Point{{2.0}, {-3.0}, 4.0}));
}

TEST(JsonIo, PointValidation) {
  EXPECT_THROW(point_from_json(Json::parse("[1,2]")), std::invalid_argument);
  EXPECT_THROW(point_from_json(Json::parse(R"({"x":[1],"y":[1]})")), std::invalid_argument);
  EXPECT_THROW(point_from_json(Json::parse(R"({"x":1,"y":[1],"gamma":0})")),
               std::invalid_argument);
  EXPECT_THROW(point_from_json(Json::parse(R"({"x":[1],"y":[1],"gamma":"0"})")),
               std::invalid_argument);
  EXPECT_THROW(point_from_json(Json::parse(R"({"x":[1,2],"y":[1],"gamma":0})")),
               DimensionError);
}

TEST(JsonIo, ParamsRoundTrip) {
  const ProblemParams p(-2.0, 0.5, 3, Tolerances{1e-8, 1e-11, 1e-7});
  const ProblemParams q = params_from_json(params_to_json(p));
  EXPECT_EQ(q.alpha(), -2.0);
  EXPECT_EQ(q.beta(), 0.5);
  EXPECT_EQ(q.n(), 3u);
  EXPECT_EQ(q.tol_feas(), 1e-8);
  EXPECT_EQ(q.tol_root(), 1e-11);
  EXPECT_EQ(q.eps_case(), 1e-7);
  EXPECT_THROW(params_from_json(Json::parse(R"({"alpha":0,"beta":1,"n":1})")),
               ParameterError);
  EXPECT_THROW(params_from_json(Json::parse(R"({"alpha":1,"beta":1,"n":0})")),
               ParameterError);
}

TEST(JsonIo, OutcomeSchema) {
  const ProblemParams five(5.0, 1.0, 1);
  const Json single = outcome_to_json(project_tilde({{2.0}, {-3.0}, 4.0}, five), true);
  EXPECT_EQ(single.at("kind"), "singleton");
  EXPECT_TRUE(single.at("radius").is_null());
  EXPECT_NEAR(single.at("lambda").get<double>(), -0.52416, 5e-6);
  EXPECT_EQ(single.at("case"), "a");
  EXPECT_TRUE(single.at("root").is_object());
  EXPECT_EQ(single.at("root").at("iterations").get<int>() > 0, true);

  const Json sphere = outcome_to_json(project_tilde({{0.0}, {0.0}, 6.0}, five));
  EXPECT_EQ(sphere.at("kind"), "sphere_u");
  EXPECT_EQ(sphere.at("case"), "d-a");
  EXPECT_FALSE(sphere.contains("root"));
  EXPECT_NEAR(sphere.at("radius").get<double>(), std::sqrt(10.0), 1e-12);

  const Json c = outcome_to_json(project_c({{1.0}, {-1.0}, 2.0}, ProblemParams(1.0, 1.0, 1)));
  EXPECT_EQ(c.at("kind"), "sphere_diag_plus");
  EXPECT_EQ(kind_name(SetKindC::sphere_diag_minus), "sphere_diag_minus");
  EXPECT_EQ(kind_name(SetKind::sphere_second_slot), "sphere_v");
}

TEST(JsonIo, CaseLabelsRoundTrip) {
  for (CaseLabel c : {CaseLabel::a, CaseLabel::b_a, CaseLabel::b_b, CaseLabel::c_a,
                      CaseLabel::c_b, CaseLabel::d_a, CaseLabel::d_b, CaseLabel::d_c}) {
    EXPECT_EQ(case_label_from_string(to_string(c)), c);
  }
  EXPECT_FALSE(case_label_from_string("e").has_value());
}

TEST(JsonIo, OracleSchema) {
  const Json j = oracle_to_json(oracle_project_tilde({{2.0}, {-3.0}, 4.0},
                                                     ProblemParams(5.0, 1.0, 1), 200));
  for (const char* key : {"s_star", "t_star", "gamma_star", "distance", "grid_steps",
                          "refine_iterations", "tolerance", "chart", "minimizer"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}
