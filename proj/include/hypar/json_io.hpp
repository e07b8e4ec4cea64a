#pragma once

// JSON encodings (nlohmann/json):
//
//   point    {"x": [...], "y": [...], "gamma": g}
//   params   {"alpha": a, "beta": b, "n": n, "tol_feas"?, "tol_root"?, "eps_case"?}
//   outcome  {"kind": "singleton" | "sphere_u" | "sphere_v"
//                     | "sphere_diag_plus" | "sphere_diag_minus",
//             "point": {...}, "radius": r | null, "lambda": l | null,
//             "case": "a" | "b-a" | ..., "distance": d}

#include <string>

#include <json.hpp>

#include "hypar/core.hpp"
#include "hypar/oracle.hpp"
#include "hypar/proj_c.hpp"
#include "hypar/proj_tilde.hpp"
#include "hypar/rootfind.hpp"

namespace hypar {

using Json = nlohmann::json;

inline Json point_to_json(const Point& p) {
  return Json{{"x", p.x}, {"y", p.y}, {"gamma", p.gamma}};
}

inline Point point_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("point must be a JSON object");
  for (const char* key : {"x", "y", "gamma"}) {
    if (!j.contains(key)) {
      throw std::invalid_argument(std::string("point is missing \"") + key + "\"");
    }
  }
  if (!j.at("x").is_array() || !j.at("y").is_array()) {
    throw std::invalid_argument("point \"x\" and \"y\" must be arrays");
  }
  if (!j.at("gamma").is_number()) {
    throw std::invalid_argument("point \"gamma\" must be a number");
  }
  Point p{j.at("x").get<Vector>(), j.at("y").get<Vector>(),
          j.at("gamma").get<double>()};
  require_consistent(p);
  return p;
}

inline Json params_to_json(const ProblemParams& p) {
  return Json{{"alpha", p.alpha()},       {"beta", p.beta()},
              {"n", p.n()},               {"tol_feas", p.tol_feas()},
              {"tol_root", p.tol_root()}, {"eps_case", p.eps_case()}};
}

inline ProblemParams params_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("params must be a JSON object");
  Tolerances tol;
  if (j.contains("tol_feas")) tol.feas = j.at("tol_feas").get<double>();
  if (j.contains("tol_root")) tol.root = j.at("tol_root").get<double>();
  if (j.contains("eps_case")) tol.eps_case = j.at("eps_case").get<double>();
  const auto n = j.at("n").get<long long>();
  if (n < 1) throw ParameterError("dimension n must be >= 1");
  return ProblemParams(j.at("alpha").get<double>(), j.at("beta").get<double>(),
                       static_cast<std::size_t>(n), tol);
}

inline Json root_to_json(const RootReport& r) {
  return Json{{"lambda", r.lambda},         {"bracket_lo", r.bracket_lo},
              {"bracket_hi", r.bracket_hi}, {"residual", r.residual},
              {"iterations", r.iterations}, {"one_plus_lambda", r.one_plus},
              {"one_minus_lambda", r.one_minus}};
}

inline std::string kind_name(SetKind k) {
  switch (k) {
    case SetKind::singleton: return "singleton";
    case SetKind::sphere_first_slot: return "sphere_u";
    case SetKind::sphere_second_slot: return "sphere_v";
  }
  return "?";
}

inline std::string kind_name(SetKindC k) {
  switch (k) {
    case SetKindC::singleton: return "singleton";
    case SetKindC::sphere_diag_plus: return "sphere_diag_plus";
    case SetKindC::sphere_diag_minus: return "sphere_diag_minus";
  }
  return "?";
}

template <class Set>
Json outcome_to_json(const Outcome<Set>& o, bool with_root = false) {
  Json j{{"kind", kind_name(o.set.kind)},
         {"point", point_to_json(o.set.point)},
         {"radius", nullptr},
         {"lambda", nullptr},
         {"case", std::string(to_string(o.case_label))},
         {"distance", o.distance}};
  if (!o.set.is_singleton()) j["radius"] = o.set.radius;
  if (o.multiplier) j["lambda"] = *o.multiplier;
  if (with_root) j["root"] = o.root ? root_to_json(*o.root) : Json(nullptr);
  return j;
}

inline Json oracle_to_json(const OracleResult& r) {
  static constexpr const char* kCharts[] = {"norms", "u_norm_gamma",
                                            "v_norm_gamma"};
  return Json{{"s_star", r.s_star},
              {"t_star", r.t_star},
              {"gamma_star", r.gamma_star},
              {"distance", r.distance},
              {"grid_steps", r.grid_steps},
              {"refine_iterations", r.refine_iterations},
              {"tolerance", r.tolerance},
              {"chart", kCharts[static_cast<int>(r.chart)]},
              {"minimizer", point_to_json(r.minimizer)}};
}

}  // namespace hypar
