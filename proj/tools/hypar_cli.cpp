// hypar: projections onto rectangular hyperbolic paraboloids.
//
//   hypar project      --space {c|tilde} --alpha A --beta B --point JSON|@file
//   hypar figure       --out DIR [--grid G] [--extent E]
//   hypar oracle-check --trials N --seed S --n DIM [--grid G]
//   hypar converge     --point JSON --alpha-start A --alpha-ratio R --steps K
//
// Exit codes: 0 success, 1 check failure, 2 usage or input error.

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypar/hypar.hpp"
#include "hypar/json_io.hpp"
#include "hypar/random_queries.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

// Shortest representation that round-trips.
std::string num(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

hypar::Point read_point(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg.front() == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw InputError("cannot read point file " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  hypar::Json j;
  try {
    j = hypar::Json::parse(text);
  } catch (const hypar::Json::parse_error& e) {
    throw InputError(std::string("malformed point JSON: ") + e.what());
  }
  try {
    return hypar::point_from_json(j);
  } catch (const std::exception& e) {
    throw InputError(std::string("invalid point: ") + e.what());
  }
}

hypar::ProblemParams make_params(double alpha, double beta, std::size_t n,
                                 const hypar::Tolerances& tol) {
  try {
    return hypar::ProblemParams(alpha, beta, n, tol);
  } catch (const hypar::ParameterError& e) {
    throw InputError(e.what());
  }
}

struct ProjectArgs {
  std::string space = "tilde";
  double alpha = 0.0;
  double beta = 1.0;
  std::string point;
  std::size_t samples = 0;
  hypar::Tolerances tol;
  bool verbose = false;
};

int run_project(const ProjectArgs& a) {
  const hypar::Point p0 = read_point(a.point);
  if (p0.dim() == 0) throw InputError("point must have dimension >= 1");
  const hypar::ProblemParams params = make_params(a.alpha, a.beta, p0.dim(), a.tol);
  hypar::Json out;
  if (a.space == "tilde") {
    const auto o = hypar::project_tilde(p0, params);
    out = hypar::outcome_to_json(o, a.verbose);
    if (a.samples > 0) {
      out["members"] = hypar::Json::array();
      for (const auto& m : hypar::sample_members(o.set, a.samples)) {
        out["members"].push_back(hypar::point_to_json(m));
      }
    }
  } else {
    const auto o = hypar::project_c(p0, params);
    out = hypar::outcome_to_json(o, a.verbose);
    if (a.samples > 0) {
      out["members"] = hypar::Json::array();
      for (const auto& m : hypar::sample_members(o.set, a.samples)) {
        out["members"].push_back(hypar::point_to_json(m));
      }
    }
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

struct FigureArgs {
  std::string out;
  int grid = 41;
  double extent = 6.0;
  double alpha = 5.0;
  double beta = 1.0;
};

int run_figure(const FigureArgs& a) {
  namespace fs = std::filesystem;
  if (a.grid < 2) throw InputError("--grid must be >= 2");
  if (!(a.extent > 0.0)) throw InputError("--extent must be > 0");
  const hypar::ProblemParams params = make_params(a.alpha, a.beta, 1, {});

  std::error_code ec;
  fs::create_directories(a.out, ec);
  const fs::path dir(a.out);
  std::ofstream mesh(dir / "mesh.csv");
  std::ofstream seg(dir / "segments.csv");
  if (!mesh || !seg) throw InputError("cannot write to directory " + a.out);

  // Surface of the standard form at n = 1: z = (x^2 - y^2) / (2 alpha).
  mesh << "x,y,z\n";
  for (int i = 0; i < a.grid; ++i) {
    const double x = -a.extent + 2.0 * a.extent * i / (a.grid - 1);
    for (int j = 0; j < a.grid; ++j) {
      const double y = -a.extent + 2.0 * a.extent * j / (a.grid - 1);
      mesh << num(x) << "," << num(y) << ","
           << num((x * x - y * y) / (2.0 * a.alpha)) << "\n";
    }
  }

  const std::vector<hypar::Point> queries = {
      {{2.0}, {-3.0}, 4.0},
      {{0.0}, {-3.0}, 3.0},
      {{0.0}, {std::sqrt(32.0)}, 6.0},
      {{0.0}, {0.0}, 6.0},
      {{0.0}, {0.0}, 4.0},
  };
  seg << "qx,qy,qz,px,py,pz,case\n";
  for (const auto& q : queries) {
    const auto o = hypar::project_tilde(q, params);
    for (const auto& m : hypar::sample_members(o.set, 2)) {
      seg << num(q.x[0]) << "," << num(q.y[0]) << "," << num(q.gamma) << ","
          << num(m.x[0]) << "," << num(m.y[0]) << "," << num(m.gamma) << ","
          << hypar::to_string(o.case_label) << "\n";
    }
  }
  if (!mesh.flush() || !seg.flush()) {
    throw InputError("failed writing to directory " + a.out);
  }
  return kExitOk;
}

struct OracleCheckArgs {
  long long trials = 100;
  unsigned long long seed = 1;
  long long n = 2;
  int grid = 2000;
};

int run_oracle_check(const OracleCheckArgs& a) {
  if (a.trials < 1) throw InputError("--trials must be >= 1");
  if (a.n < 1) throw InputError("--n must be >= 1");
  if (a.grid < 100) throw InputError("--grid must be >= 100");
  hypar::QueryGenerator gen(a.seed);
  double max_disc = 0.0;
  double max_ratio = 0.0;
  long long failures = 0;
  for (long long t = 0; t < a.trials; ++t) {
    const hypar::Query q = gen.next_tilde(static_cast<std::size_t>(a.n));
    const hypar::ProblemParams params(q.alpha, q.beta, q.point.dim());
    const auto closed = hypar::project_tilde(q.point, params);
    const auto oracle = hypar::oracle_project_tilde(q.point, params, a.grid);
    const double disc = std::fabs(closed.distance - oracle.distance);
    max_disc = std::fmax(max_disc, disc);
    if (oracle.tolerance > 0.0) {
      max_ratio = std::fmax(max_ratio, disc / oracle.tolerance);
    }
    if (disc > oracle.tolerance) {
      ++failures;
      std::cerr << "trial " << t << ": closed " << num(closed.distance)
                << " oracle " << num(oracle.distance) << " slack "
                << num(oracle.tolerance) << "\n";
    }
  }
  std::cout << "trials=" << a.trials << " n=" << a.n << " grid=" << a.grid
            << " max_discrepancy=" << num(max_disc)
            << " max_discrepancy_over_slack=" << num(max_ratio)
            << " failures=" << failures << "\n";
  return failures == 0 ? kExitOk : kExitCheckFailed;
}

struct ConvergeArgs {
  std::string point;
  double alpha_start = 0.5;
  double alpha_ratio = 0.5;
  int steps = 20;
  double beta = 1.0;
  std::size_t samples = 0;
};

int run_converge(const ConvergeArgs& a) {
  const hypar::Point p0 = read_point(a.point);
  if (p0.dim() == 0) throw InputError("point must have dimension >= 1");
  if (!(a.alpha_start > 0.0)) throw InputError("--alpha-start must be > 0");
  if (!(a.alpha_ratio > 0.0 && a.alpha_ratio < 1.0)) {
    throw InputError("--alpha-ratio must lie in ]0, 1[");
  }
  if (a.steps < 1) throw InputError("--steps must be >= 1");
  const hypar::ProblemParams params =
      make_params(a.alpha_start, a.beta, p0.dim(), {});
  std::vector<double> alphas;
  double alpha = a.alpha_start;
  for (int k = 0; k < a.steps; ++k, alpha *= a.alpha_ratio) alphas.push_back(alpha);
  const auto rows = hypar::convergence_report(p0, alphas, params, a.samples);
  if (!rows.empty() && rows.front().gamma_axis) {
    std::cerr << "warning: query lies on the gamma axis; distances need not "
                 "vanish for a fixed query point\n";
  }
  std::cout << "alpha,max_dist,case_label,flag\n";
  for (const auto& r : rows) {
    std::cout << num(r.alpha) << "," << num(r.max_dist) << ","
              << hypar::to_string(r.case_label) << ","
              << (r.gamma_axis ? "gamma-axis" : "") << "\n";
  }
  return kExitOk;
}

void add_tolerance_flags(CLI::App* cmd, hypar::Tolerances& tol) {
  cmd->add_option("--tol-feas", tol.feas, "feasibility tolerance");
  cmd->add_option("--tol-root", tol.root, "multiplier equation tolerance");
  cmd->add_option("--eps-case", tol.eps_case, "relative zero test for dispatch");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projections onto rectangular hyperbolic paraboloids"};
  app.require_subcommand(1);

  ProjectArgs pa;
  auto* project = app.add_subcommand("project", "project one point, print JSON");
  project->add_option("--space", pa.space, "c: <x,y> = alpha gamma; tilde: standard form")
      ->check(CLI::IsMember({"c", "tilde"}));
  project->add_option("--alpha", pa.alpha, "constraint scale, nonzero")->required();
  project->add_option("--beta", pa.beta, "gamma-axis weight, > 0");
  project->add_option("--point", pa.point, "point JSON or @file")->required();
  project->add_option("--samples", pa.samples, "also print up to k set members");
  project->add_flag("--verbose", pa.verbose, "include the root-finder report");
  add_tolerance_flags(project, pa.tol);

  FigureArgs fa;
  auto* figure = app.add_subcommand("figure", "write mesh.csv and segments.csv");
  figure->add_option("--out", fa.out, "output directory")->required();
  figure->add_option("--grid", fa.grid, "mesh points per axis");
  figure->add_option("--extent", fa.extent, "mesh half-width");
  figure->add_option("--alpha", fa.alpha, "constraint scale");
  figure->add_option("--beta", fa.beta, "gamma-axis weight");

  OracleCheckArgs oa;
  auto* oracle = app.add_subcommand("oracle-check", "closed form vs brute force");
  oracle->add_option("--trials", oa.trials, "number of random instances");
  oracle->add_option("--seed", oa.seed, "random seed");
  oracle->add_option("--n", oa.n, "dimension of each block");
  oracle->add_option("--grid", oa.grid, "oracle lattice steps per axis");

  ConvergeArgs ca;
  auto* converge = app.add_subcommand("converge", "alpha -> 0 sweep, print CSV");
  converge->add_option("--point", ca.point, "point JSON or @file (C coordinates)")
      ->required();
  converge->add_option("--alpha-start", ca.alpha_start, "first alpha, > 0");
  converge->add_option("--alpha-ratio", ca.alpha_ratio, "ratio between steps, in ]0,1[");
  converge->add_option("--steps", ca.steps, "number of alphas");
  converge->add_option("--beta", ca.beta, "gamma-axis weight, > 0");
  converge->add_option("--samples", ca.samples, "members sampled per outcome");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*project) return run_project(pa);
    if (*figure) return run_figure(fa);
    if (*oracle) return run_oracle_check(oa);
    if (*converge) return run_converge(ca);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
