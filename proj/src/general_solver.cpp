#include "sostree/general_solver.hpp"

#include <cmath>
#include <algorithm>
#include <stdexcept>

#include "sostree/polyroots.hpp"

namespace sostree {

namespace {

constexpr double kCurveBandRel = 1e-9;

void require_positive(double v, const char* name) {
  if (!(v > 0) || !std::isfinite(v))
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

// evaluated in extended precision: the defect of a double-valued root is
// floored by ulp(z1), so the achievable bound is relative to max(1, z1)
double branch_residual(double z1, double theta, double lambda, int k) {
  long double t = theta, z = z1;
  long double r = (2.0L * t + z) / (t * t + t * z + 1.0L);
  return static_cast<double>(z - static_cast<long double>(lambda) * std::pow(r, k));
}

double polish_branch_root(double z1, double theta, double lambda, int k) {
  double best = z1;
  double best_res = std::abs(branch_residual(z1, theta, lambda, k));
  for (int i = 0; i < 60; ++i) {
    double den = theta * theta + theta * z1 + 1.0;
    double r = (2.0 * theta + z1) / den;
    double d = 1.0 - lambda * k * std::pow(r, k - 1) * (1.0 - theta * theta) /
                         (den * den);
    if (d == 0.0 || !std::isfinite(d)) break;
    double f = branch_residual(z1, theta, lambda, k);
    double step = f / d;
    z1 -= step;
    double res = std::abs(branch_residual(z1, theta, lambda, k));
    if (res < best_res) {
      best = z1;
      best_res = res;
    }
    if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(z1))) break;
  }
  return best;
}

// a x (b + x)^k - (1 + x)^k, cleared; positive roots are preserved since
// b + x > 0 on x > 0.
poly::Polynomial cleared_ab_poly(double a, double b, int k) {
  // binomial expansions of (b + x)^k and (1 + x)^k
  std::vector<double> bin(k + 1, 0.0);
  bin[0] = 1.0;
  for (int row = 1; row <= k; ++row)
    for (int j = row; j >= 1; --j) bin[j] += bin[j - 1];
  std::vector<double> c(k + 2, 0.0);
  for (int j = 0; j <= k; ++j) {
    c[j + 1] += a * bin[j] * std::pow(b, k - j);  // a x (b+x)^k
    c[j] -= bin[j];                               // -(1+x)^k
  }
  return poly::Polynomial(std::move(c));
}

}  // namespace

ABForm ab_transform(double theta, double lambda, int k) {
  require_positive(theta, "theta");
  require_positive(lambda, "lambda");
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  ABForm f;
  f.a = 2.0 * std::pow(theta, k + 1) / lambda;
  f.b = (1.0 + theta * theta) / (2.0 * theta * theta);
  return f;
}

NormalFormCount normal_form_root_count(double a, double b, int k) {
  require_positive(a, "a");
  require_positive(b, "b");
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  NormalFormCount res;
  double ratio = static_cast<double>(k + 1) / (k - 1);
  res.b0 = ratio * ratio;
  res.discriminant = (b - 1.0) * (k - 1.0) * (k - 1.0) * (b - res.b0);
  if (b <= res.b0) {
    res.count = 1;
    return res;
  }
  double half_sum = (b - 1.0) * (k - 1.0) - 2.0;
  double sq = std::sqrt(res.discriminant);
  double x2 = 0.5 * (half_sum + sq);
  double x1 = b / x2;  // product of the tangency quadratic's roots is b
  auto a_at = [&](double x) {
    return (1.0 / x) * std::pow((1.0 + x) / (b + x), k);
  };
  res.x1 = x1;
  res.x2 = x2;
  res.a1 = a_at(x1);
  res.a2 = a_at(x2);
  double d1 = std::abs(a - *res.a1) / *res.a1;
  double d2 = std::abs(a - *res.a2) / *res.a2;
  if (d1 <= kCurveBandRel || d2 <= kCurveBandRel) {
    res.count = 2;
    res.on_boundary = true;
  } else if (a > *res.a1 && a < *res.a2) {
    res.count = 3;
  } else {
    res.count = 1;
  }
  return res;
}

double theta_c(int k) {
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  double kk = static_cast<double>(k);
  return (kk - 1.0) / std::sqrt(kk * kk + 6.0 * kk + 1.0);
}

LambdaStars lambda_star(double theta, int k) {
  require_positive(theta, "theta");
  if (theta >= theta_c(k))
    throw std::domain_error("critical fields undefined: theta >= theta_c(k)");
  ABForm f = ab_transform(theta, 1.0, k);
  NormalFormCount lem = normal_form_root_count(f.a, f.b, k);
  LambdaStars stars;
  stars.lambda1 = 2.0 * std::pow(theta, k + 1) / *lem.a2;
  stars.lambda2 = 2.0 * std::pow(theta, k + 1) / *lem.a1;
  return stars;
}

std::vector<BranchRoot> solve_z0eq1_branch(double theta, double lambda, int k) {
  ABForm f = ab_transform(theta, lambda, k);
  NormalFormCount lem = normal_form_root_count(f.a, f.b, k);
  std::vector<BranchRoot> roots;

  auto push = [&](double x, int mult) {
    double z1 = polish_branch_root(2.0 * theta * x, theta, lambda, k);
    roots.push_back(
        {z1, mult, std::abs(branch_residual(z1, theta, lambda, k))});
  };

  if (lem.on_boundary) {
    // tangency: the double root sits at the tangency abscissa, the remaining
    // simple root on the other side of it
    double xd = (std::abs(f.a - *lem.a1) / *lem.a1 <= kCurveBandRel) ? *lem.x1
                                                                     : *lem.x2;
    poly::Polynomial p = cleared_ab_poly(f.a, f.b, k);
    poly::Polynomial q = p.deflate(xd).deflate(xd);
    auto rep = poly::isolate_and_refine(q, 1e-12);
    push(xd, 2);
    for (const auto& r : rep.refined_roots)
      if (std::abs(r.value - xd) > 1e-6 * std::max(1.0, xd))
        push(r.value, r.multiplicity);
  } else {
    auto rep = poly::isolate_and_refine(cleared_ab_poly(f.a, f.b, k), 1e-12);
    for (const auto& r : rep.refined_roots) push(r.value, r.multiplicity);
  }
  std::sort(roots.begin(), roots.end(),
            [](const BranchRoot& a, const BranchRoot& b) { return a.z1 < b.z1; });
  return roots;
}

int tisgm_lower_bound(double theta, double lambda, int k) {
  require_positive(theta, "theta");
  require_positive(lambda, "lambda");
  if (theta >= theta_c(k)) return 1;
  LambdaStars stars = lambda_star(theta, k);
  if (std::abs(lambda - stars.lambda1) <= kCurveBandRel * stars.lambda1 ||
      std::abs(lambda - stars.lambda2) <= kCurveBandRel * stars.lambda2)
    return 2;
  if (lambda > stars.lambda1 && lambda < stars.lambda2) return 3;
  return 1;
}

bool uniqueness_regime(double theta) {
  require_positive(theta, "theta");
  return theta >= 1.0;
}

}  // namespace sostree
