// Command-line front end: classify a point of the (theta, lambda) plane,
// tabulate the lambda-curves, sweep grids to CSV, solve the general-k branch
// equation, and run the verification suites.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sostree/compat.hpp"
#include "sostree/general_solver.hpp"
#include "sostree/k2.hpp"
#include "sostree/sweep.hpp"
#include "sostree/verify.hpp"

namespace {

using sostree::format_double;
using json = nlohmann::json;

const char* branch_name(sostree::k2::Branch b) {
  switch (b) {
    case sostree::k2::Branch::kCubic: return "cubic";
    case sostree::k2::Branch::kQuarticXi1: return "quartic-xi1";
    case sostree::k2::Branch::kQuarticXi2: return "quartic-xi2";
    case sostree::k2::Branch::kCollision: return "collision";
  }
  return "?";
}

const char* sign_name(sostree::k2::RootSign s) {
  switch (s) {
    case sostree::k2::RootSign::kNone: return "none";
    case sostree::k2::RootSign::kMinus: return "minus";
    case sostree::k2::RootSign::kPlus: return "plus";
  }
  return "?";
}

struct GridSpec {
  sostree::SweepJob job;
};

// "t0:t1:n,l0:l1:n"
GridSpec parse_grid(const std::string& text) {
  GridSpec spec;
  double values[4];
  int steps[2];
  if (std::sscanf(text.c_str(), "%lf:%lf:%d,%lf:%lf:%d", &values[0], &values[1],
                  &steps[0], &values[2], &values[3], &steps[1]) != 6)
    throw CLI::ValidationError("--grid expects t0:t1:n,l0:l1:n");
  spec.job.theta_min = values[0];
  spec.job.theta_max = values[1];
  spec.job.theta_steps = steps[0];
  spec.job.lambda_min = values[2];
  spec.job.lambda_max = values[3];
  spec.job.lambda_steps = steps[1];
  return spec;
}

int run_classify(double theta, double lambda, int k, int m, bool as_json,
                 bool with_oracle, double tol) {
  if (k != 2) throw CLI::ValidationError("classify supports k == 2 only");
  if (m != 2) throw CLI::ValidationError("classify supports m == 2 only");
  auto cls = sostree::k2::classify(theta, lambda);
  if (as_json) {
    for (const auto& s : cls.solutions) {
      json rec = {
          {"theta", theta},
          {"lambda", lambda},
          {"region", cls.region},
          {"count", cls.tisgm_count},
          {"boundary", cls.boundary_flag},
          {"index", s.measure_index},
          {"branch", branch_name(s.branch)},
          {"sign", sign_name(s.sign)},
          {"x", s.x},
          {"y", s.y},
          {"z0", s.z0()},
          {"z1", s.z1()},
          {"multiplicity", s.multiplicity},
          {"residual1", s.residual1},
          {"residual2", s.residual2},
      };
      std::cout << rec.dump() << "\n";
    }
  } else {
    std::cout << "theta=" << format_double(theta)
              << " lambda=" << format_double(lambda) << " region=" << cls.region
              << " count=" << cls.tisgm_count
              << " boundary=" << (cls.boundary_flag ? 1 : 0) << "\n";
    for (const auto& s : cls.solutions) {
      std::cout << "  mu" << s.measure_index << " branch=" << branch_name(s.branch)
                << " x=" << format_double(s.x) << " y=" << format_double(s.y)
                << " z0=" << format_double(s.z0())
                << " z1=" << format_double(s.z1()) << " mult=" << s.multiplicity
                << " res=(" << format_double(s.residual1) << ","
                << format_double(s.residual2) << ")\n";
    }
  }
  bool ok = true;
  for (const auto& s : cls.solutions)
    if (std::abs(s.residual1) > tol || std::abs(s.residual2) > tol) ok = false;
  if (!ok) {
    std::cerr << "error: solution residual above tol " << format_double(tol)
              << "\n";
    return 3;
  }
  if (with_oracle) {
    int oracle = sostree::k2::sturm_oracle_count(theta, lambda);
    std::cout << "oracle_count=" << oracle << "\n";
    if (!cls.boundary_flag && oracle != cls.tisgm_count) {
      std::cerr << "error: classifier count " << cls.tisgm_count
                << " disagrees with oracle " << oracle << "\n";
      return 2;
    }
  }
  return 0;
}

int run_curves(double theta, int k, bool general, bool as_json) {
  auto curves = sostree::k2::lambda_curves(theta);
  json rec = {{"theta", theta},
              {"lambda3", curves.lambda3},
              {"lambda4", curves.lambda4},
              {"theta1", sostree::k2::theta1()},
              {"theta2", sostree::k2::theta2()},
              {"theta3", sostree::k2::theta3()},
              {"theta4", sostree::k2::theta4()},
              {"theta_c_prime", sostree::k2::theta_c_prime()},
              {"lambda_tilde", sostree::k2::lambda_tilde()}};
  if (curves.lambda1) rec["lambda1"] = *curves.lambda1;
  if (curves.lambda2) rec["lambda2"] = *curves.lambda2;
  if (general) {
    rec["theta_c"] = sostree::theta_c(k);
    if (theta < sostree::theta_c(k)) {
      auto stars = sostree::lambda_star(theta, k);
      rec["lambda_star1"] = stars.lambda1;
      rec["lambda_star2"] = stars.lambda2;
    }
  }
  if (as_json) {
    std::cout << rec.dump() << "\n";
  } else {
    for (auto it = rec.begin(); it != rec.end(); ++it)
      std::cout << it.key() << "="
                << (it->is_number() ? format_double(it->get<double>())
                                    : it->dump())
                << "\n";
  }
  return 0;
}

int run_sweep(sostree::SweepJob job, const std::string& out_path,
              const std::string& mode, int k) {
  job.k = k;
  if (mode == "classify")
    job.mode = sostree::SweepJob::Mode::kClassify;
  else if (mode == "count")
    job.mode = sostree::SweepJob::Mode::kCount;
  else if (mode == "curves")
    job.mode = sostree::SweepJob::Mode::kCurves;
  else
    throw CLI::ValidationError("--mode must be classify, count or curves");

  std::string curves = sostree::curves_csv(job);
  std::string stem = out_path;
  if (auto pos = stem.rfind(".csv"); pos != std::string::npos && pos == stem.size() - 4)
    stem.resize(pos);
  auto write_file = [](const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
  };
  if (job.mode == sostree::SweepJob::Mode::kCurves) {
    write_file(out_path, curves);
    std::cout << "wrote " << out_path << "\n";
    return 0;
  }
  write_file(out_path, sostree::sweep_csv(job));
  std::string curves_path = stem + "_curves.csv";
  write_file(curves_path, curves);
  std::cout << "wrote " << out_path << " and " << curves_path << "\n";
  return 0;
}

int run_solve(double theta, double lambda, int k, bool as_json) {
  auto roots = sostree::solve_z0eq1_branch(theta, lambda, k);
  int bound = sostree::tisgm_lower_bound(theta, lambda, k);
  bool unique = sostree::uniqueness_regime(theta);
  if (as_json) {
    for (const auto& r : roots) {
      json rec = {{"theta", theta},          {"lambda", lambda},
                  {"k", k},                  {"z0", 1.0},
                  {"z1", r.z1},              {"multiplicity", r.multiplicity},
                  {"residual", r.residual},  {"tisgm_lower_bound", bound},
                  {"unique_regime", unique}};
      std::cout << rec.dump() << "\n";
    }
  } else {
    std::cout << "theta=" << format_double(theta)
              << " lambda=" << format_double(lambda) << " k=" << k
              << " branch_roots=" << roots.size()
              << " tisgm_lower_bound=" << bound
              << " unique_regime=" << (unique ? 1 : 0) << "\n";
    for (const auto& r : roots)
      std::cout << "  z1=" << format_double(r.z1) << " mult=" << r.multiplicity
                << " residual=" << format_double(r.residual) << "\n";
  }
  return 0;
}

int run_verify(const std::string& level) {
  auto lvl = sostree::verify::Level::kQuick;
  if (level == "full")
    lvl = sostree::verify::Level::kFull;
  else if (level != "quick")
    throw CLI::ValidationError("verify level must be quick or full");
  auto results = sostree::verify::run_all(lvl);
  int failures = 0;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail
              << "\n";
    if (!r.pass) ++failures;
  }
  if (failures > 0) {
    std::cerr << "error: " << failures << " verification checks failed\n";
    return 1;
  }
  std::cout << "all " << results.size() << " checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TISGM solver for the three-state SOS model on a Cayley tree"};
  app.set_config("--config");
  app.require_subcommand(1);
  app.failure_message([](const CLI::App*, const CLI::Error& e) {
    return std::string("error: ") + e.what() + "\n";
  });

  double theta = 0.0, lambda = 0.0, tol = 1e-10;
  int k = 2, m = 2;
  bool as_json = false, with_oracle = false, general = false;
  std::string out_path, grid_text, mode = "classify", level = "quick";

  auto* classify = app.add_subcommand("classify", "solutions at one point");
  classify->add_option("--theta", theta)->required()->check(CLI::PositiveNumber);
  classify->add_option("--lambda", lambda)->required()->check(CLI::PositiveNumber);
  classify->add_option("--k", k);
  classify->add_option("--m", m);
  classify->add_option("--tol", tol)->check(CLI::PositiveNumber);
  classify->add_flag("--json", as_json);
  classify->add_flag("--oracle", with_oracle);

  auto* curves = app.add_subcommand("curves", "lambda-curves and thresholds");
  curves->add_option("--theta", theta)->required()->check(CLI::PositiveNumber);
  curves->add_option("--k", k);
  curves->add_flag("--general", general);
  curves->add_flag("--json", as_json);

  auto* sweep = app.add_subcommand("sweep", "grid sweep to CSV");
  sweep->add_option("--grid", grid_text, "t0:t1:n,l0:l1:n")->required();
  sweep->add_option("--out", out_path)->required();
  sweep->add_option("--mode", mode, "classify|count|curves");
  sweep->add_option("--k", k);

  auto* solve = app.add_subcommand("solve", "general-k branch roots");
  solve->add_option("--theta", theta)->required()->check(CLI::PositiveNumber);
  solve->add_option("--lambda", lambda)->required()->check(CLI::PositiveNumber);
  solve->add_option("--k", k)->check(CLI::Range(2, 15));
  solve->add_flag("--json", as_json);

  auto* verify = app.add_subcommand("verify", "run self-check suites");
  verify->add_option("level", level, "quick|full");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(classify))
      return run_classify(theta, lambda, k, m, as_json, with_oracle, tol);
    if (app.got_subcommand(curves)) return run_curves(theta, k, general, as_json);
    if (app.got_subcommand(sweep))
      return run_sweep(parse_grid(grid_text).job, out_path, mode, k);
    if (app.got_subcommand(solve)) return run_solve(theta, lambda, k, as_json);
    if (app.got_subcommand(verify)) return run_verify(level);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
