#include "sostree/k2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sostree/polyroots.hpp"

namespace sostree::k2 {

namespace {

constexpr double kCurveBandRel = 1e-9;     // lambda distance to a curve
constexpr double kThetaBandRel = 1e-12;    // theta pinned to theta4
constexpr double kCollisionTol = 1e-9;     // |x - 1| for the lambda4 merge

void require_positive(double v, const char* name) {
  if (!(v > 0) || !std::isfinite(v))
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

bool within_band(double lambda, const std::optional<double>& curve) {
  return curve && std::abs(lambda - *curve) <= kCurveBandRel * std::abs(*curve);
}

bool within_band(double lambda, double curve) {
  return curve > 0 && std::abs(lambda - curve) <= kCurveBandRel * curve;
}

}  // namespace

double theta1() {
  // positive root of 71 t^4 - 38 t^2 - 1 = 0
  double t2 = (38.0 + std::sqrt(38.0 * 38.0 + 4.0 * 71.0)) / (2.0 * 71.0);
  return std::sqrt(t2);
}

double theta2() { return 1.0 / std::sqrt(17.0); }
double theta3() { return 1.0 / std::sqrt(7.0); }
double theta4() { return 1.0 / std::sqrt(19.0); }
double theta_c_prime() { return 1.0 / std::sqrt(3.0); }
double lambda_tilde() { return 54.0 * std::sqrt(17.0) / 289.0; }

LambdaCurves lambda_curves(double theta) {
  require_positive(theta, "theta");
  LambdaCurves curves;
  curves.theta = theta;
  double t2 = theta * theta;
  curves.lambda3 = (t2 * t2 + 2.0 * t2 + 1.0) / (4.0 * theta);
  curves.lambda4 = 4.0 * theta * (1.0 - 3.0 * t2);
  double disc = (1.0 - theta) * (1.0 + theta) * std::pow(1.0 - 17.0 * t2, 3);
  if (theta <= theta2() && disc >= 0.0) {
    double s = std::sqrt(disc);
    double base = -71.0 * t2 * t2 + 38.0 * t2 + 1.0;
    curves.lambda1 = (base - s) / (16.0 * theta);
    curves.lambda2 = (base + s) / (16.0 * theta);
    if (std::abs(theta - theta4()) <= kThetaBandRel * theta4())
      curves.ordering = CurveOrdering::kAtTheta4;
    else if (theta < theta4())
      curves.ordering = CurveOrdering::kBelowTheta4;
    else
      curves.ordering = CurveOrdering::kAboveTheta4;
  }
  return curves;
}

double fixed_point_residual1(double x, double y, double theta) {
  double den = theta * theta * x * x + theta * y * y + 1.0;
  return x - (x * x + theta * y * y + theta * theta) / den;
}

double fixed_point_residual2(double x, double y, double theta, double lambda) {
  double den = theta * theta * x * x + theta * y * y + 1.0;
  return y - std::sqrt(lambda) * (theta * x * x + y * y + theta) / den;
}

namespace {

FixedPointSolution make_solution(double x, double y, Branch branch,
                                 RootSign sign, int mult, int index,
                                 double theta, double lambda) {
  FixedPointSolution s;
  s.x = x;
  s.y = y;
  s.branch = branch;
  s.sign = sign;
  s.multiplicity = mult;
  s.measure_index = index;
  s.residual1 = fixed_point_residual1(x, y, theta);
  s.residual2 = fixed_point_residual2(x, y, theta, lambda);
  return s;
}

double cubic_eval(double y, double theta, double zeta) {
  return ((theta * y - zeta) * y + theta * theta + 1.0) * y -
         2.0 * zeta * theta;
}

double polish_cubic(double y, double theta, double zeta) {
  for (int i = 0; i < 12; ++i) {
    double d = 3.0 * theta * y * y - 2.0 * zeta * y + theta * theta + 1.0;
    if (d == 0.0) break;
    double step = cubic_eval(y, theta, zeta) / d;
    y -= step;
    if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(y))) break;
  }
  return y;
}

}  // namespace

std::vector<FixedPointSolution> cubic_branch(double theta, double lambda) {
  require_positive(theta, "theta");
  require_positive(lambda, "lambda");
  double zeta = std::sqrt(lambda);
  LambdaCurves curves = lambda_curves(theta);
  bool on1 = within_band(lambda, curves.lambda1);
  bool on2 = within_band(lambda, curves.lambda2);

  std::vector<double> ys;
  std::vector<int> mults;
  if (on1 && on2) {
    // theta = theta2, lambda = lambda_tilde: the three roots coincide
    ys = {zeta / (3.0 * theta)};
    mults = {3};
  } else if (on1 || on2) {
    // tangency: the double root is the derivative root where the cubic
    // vanishes; the remaining simple root follows from the root product
    double disc = zeta * zeta - 3.0 * theta * (theta * theta + 1.0);
    double sq = std::sqrt(std::max(disc, 0.0));
    double c1 = (zeta - sq) / (3.0 * theta);
    double c2 = (zeta + sq) / (3.0 * theta);
    double yd = (std::abs(cubic_eval(c1, theta, zeta)) <
                 std::abs(cubic_eval(c2, theta, zeta)))
                    ? c1
                    : c2;
    double ys_simple = polish_cubic(2.0 * zeta / (yd * yd), theta, zeta);
    ys = {yd, ys_simple};
    mults = {2, 1};
  } else {
    auto roots = poly::cubic_real_roots(theta, -zeta, theta * theta + 1.0,
                                        -2.0 * zeta * theta);
    for (const auto& r : roots) {
      if (r.value <= 0) continue;  // cannot occur: no nonpositive roots
      ys.push_back(polish_cubic(r.value, theta, zeta));
      mults.push_back(r.multiplicity);
    }
  }

  // descending order carries the measure indices 1, 2, 3
  std::vector<std::size_t> order(ys.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ys[a] > ys[b]; });
  std::vector<FixedPointSolution> out;
  int index = 1;
  for (std::size_t i : order)
    out.push_back(make_solution(1.0, ys[i], Branch::kCubic, RootSign::kNone,
                                mults[i], index++, theta, lambda));
  return out;
}

namespace {

// y from theta y^2 = (1 - theta^2) x - theta^2 (x^2 + 1); negative radicand
// means the x-root does not lift to a solution.
std::optional<double> lift_y(double x, double theta) {
  double rhs = (1.0 - theta * theta) * x - theta * theta * (x * x + 1.0);
  if (rhs <= 0) return std::nullopt;
  return std::sqrt(rhs / theta);
}

void push_xi_pair(std::vector<FixedPointSolution>& out, double xi,
                  Branch branch, int index_minus, int mult, double theta,
                  double lambda) {
  // x + 1/x = xi >= 2; the additive form then its reciprocal keeps the
  // product at exactly 1
  double xplus = 0.5 * (xi + std::sqrt(std::max(xi * xi - 4.0, 0.0)));
  double xminus = 1.0 / xplus;
  if (auto y = lift_y(xminus, theta))
    out.push_back(make_solution(xminus, *y, branch, RootSign::kMinus, mult,
                                index_minus, theta, lambda));
  if (auto y = lift_y(xplus, theta))
    out.push_back(make_solution(xplus, *y, branch, RootSign::kPlus, mult,
                                index_minus + 1, theta, lambda));
}

}  // namespace

std::vector<FixedPointSolution> quartic_branch(double theta, double lambda) {
  require_positive(theta, "theta");
  require_positive(lambda, "lambda");
  std::vector<FixedPointSolution> out;
  if (theta >= theta_c_prime()) return out;

  LambdaCurves curves = lambda_curves(theta);
  bool on3 = within_band(lambda, curves.lambda3);
  bool on4 = within_band(lambda, curves.lambda4);
  double t2 = theta * theta;

  if (on3) {
    // xi-quadratic tangency: xi1 = xi2, each lifted pair is a double root
    double xi = (1.0 - 3.0 * t2) / (2.0 * t2);
    if (xi < 2.0 - 1e-12) return out;
    if (xi <= 2.0 + 1e-12) {
      // theta = theta3 corner (lambda3 = lambda4): single x = 1 solution
      if (auto y = lift_y(1.0, theta))
        out.push_back(make_solution(1.0, *y, Branch::kQuarticXi2,
                                    RootSign::kNone, 2, 0, theta, lambda));
      return out;
    }
    push_xi_pair(out, xi, Branch::kQuarticXi2, 6, 2, theta, lambda);
    return out;
  }
  if (lambda > curves.lambda3) return out;

  double R = t2 * t2 + 2.0 * t2 + 1.0 - 4.0 * theta * lambda;
  double sq = std::sqrt(std::max(R, 0.0));
  double xi1 = (1.0 - 3.0 * t2 - sq) / (2.0 * t2);
  double xi2 = (1.0 - 3.0 * t2 + sq) / (2.0 * t2);
  bool pin1 = on4 && theta < theta3();  // which xi the lambda4 band pins to 2
  bool pin2 = on4 && theta >= theta3();

  if (pin1) {
    if (auto y = lift_y(1.0, theta))
      out.push_back(make_solution(1.0, *y, Branch::kQuarticXi1,
                                  RootSign::kNone, 2, 0, theta, lambda));
  } else if (xi1 >= 2.0) {
    push_xi_pair(out, xi1, Branch::kQuarticXi1, 4, 1, theta, lambda);
  }
  if (pin2) {
    if (auto y = lift_y(1.0, theta))
      out.push_back(make_solution(1.0, *y, Branch::kQuarticXi2,
                                  RootSign::kNone, 2, 0, theta, lambda));
  } else if (xi2 >= 2.0) {
    push_xi_pair(out, xi2, Branch::kQuarticXi2, 6, 1, theta, lambda);
  }
  return out;
}

namespace {

std::string region_label(double theta, double lambda,
                         const LambdaCurves& curves, bool on1, bool on2,
                         bool on3, bool on4) {
  double th2 = theta2(), th3 = theta3(), thc = theta_c_prime(), th4 = theta4();
  bool at4 = std::abs(theta - th4) <= kThetaBandRel * th4;
  if (theta < th4 && !at4) {
    if (on2) return "1(b)";
    if (on1) return "1(e)";
    if (on3) return "1(f)";
    if (on4) return "1(c)";
    if (lambda < *curves.lambda1) return "1(f)";
    if (lambda < curves.lambda4) return "1(c)";
    if (lambda < *curves.lambda2) return "1(a)";
    if (lambda < curves.lambda3) return "1(d)";
    return "1(g)";
  }
  if (at4) {
    if (on1 || on2) return "2(c)";
    if (on3) return "2(d)";
    if (lambda < *curves.lambda1) return "2(d)";
    if (lambda < *curves.lambda2) return "2(a)";
    if (lambda < curves.lambda3) return "2(b)";
    return "2(e)";
  }
  if (theta < th2) {
    if (on1 || on2) return "3(c)";
    if (on3 || on4) return "3(d)";
    if (lambda < *curves.lambda1) return "3(d)";
    if (lambda < *curves.lambda2) return "3(a)";
    if (lambda <= curves.lambda4) return "3(d)";
    if (lambda < curves.lambda3) return "3(b)";
    return "3(e)";
  }
  if (theta < th3) {
    if (on3 || on4) return "4(b)";
    if (lambda <= curves.lambda4) return "4(b)";
    if (lambda < curves.lambda3) return "4(a)";
    return "4(c)";
  }
  if (theta < thc) {
    if (on4) return "5(b)";
    if (lambda < curves.lambda4) return "5(a)";
    return "5(b)";
  }
  return "6";
}

}  // namespace

PhaseClassification classify(double theta, double lambda) {
  require_positive(theta, "theta");
  require_positive(lambda, "lambda");
  LambdaCurves curves = lambda_curves(theta);
  bool on1 = within_band(lambda, curves.lambda1);
  bool on2 = within_band(lambda, curves.lambda2);
  bool on3 = within_band(lambda, curves.lambda3);
  bool on4 = theta < theta_c_prime() && within_band(lambda, curves.lambda4);

  PhaseClassification cls;
  cls.solutions = cubic_branch(theta, lambda);
  for (const auto& q : quartic_branch(theta, lambda)) {
    if (std::abs(q.x - 1.0) < kCollisionTol) {
      // the x = 1 quartic solution coincides with a cubic root; keep one
      // entry, tagged as the collision, under the cubic root's index
      auto nearest =
          std::min_element(cls.solutions.begin(), cls.solutions.end(),
                           [&](const FixedPointSolution& a,
                               const FixedPointSolution& b) {
                             return std::abs(a.y - q.y) < std::abs(b.y - q.y);
                           });
      if (nearest != cls.solutions.end() &&
          std::abs(nearest->y - q.y) <= 1e-6 * std::max(1.0, q.y)) {
        nearest->branch = Branch::kCollision;
        continue;
      }
    }
    cls.solutions.push_back(q);
  }
  cls.tisgm_count = static_cast<int>(cls.solutions.size());
  for (const auto& s : cls.solutions) cls.measure_indices.push_back(s.measure_index);
  std::sort(cls.measure_indices.begin(), cls.measure_indices.end());
  cls.boundary_flag = on1 || on2 || on3 || on4;
  cls.region = region_label(theta, lambda, curves, on1, on2, on3, on4);
  return cls;
}

TisgmCount count_tisgm(double theta, double lambda) {
  PhaseClassification cls = classify(theta, lambda);
  return {cls.tisgm_count, cls.measure_indices};
}

int sturm_oracle_count(double theta, double lambda) {
  require_positive(theta, "theta");
  require_positive(lambda, "lambda");
  double zeta = std::sqrt(lambda);
  poly::Polynomial cubic(
      {-2.0 * zeta * theta, theta * theta + 1.0, -zeta, theta});
  int count = poly::sturm_positive_count(cubic);

  double t2 = theta * theta;
  double t3 = t2 * theta;
  poly::Polynomial quartic({t3, theta * (3.0 * t2 - 1.0),
                            4.0 * t3 + lambda - 2.0 * theta,
                            theta * (3.0 * t2 - 1.0), t3});
  auto report = poly::isolate_and_refine(quartic, 1e-9);
  for (const auto& r : report.refined_roots) {
    if (r.value <= 0) continue;
    if (std::abs(r.value - 1.0) < kCollisionTol) continue;  // cubic twin
    double rhs = (1.0 - t2) * r.value - t2 * (r.value * r.value + 1.0);
    if (rhs > 0) ++count;
  }
  return count;
}

}  // namespace sostree::k2
