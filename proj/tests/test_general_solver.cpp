#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "sostree/general_solver.hpp"
#include "sostree/k2.hpp"
#include "sostree/polyroots.hpp"

using namespace sostree;

TEST_CASE("ab transform") {
  ABForm f = ab_transform(1.0, 1.0, 2);
  CHECK(f.a == doctest::Approx(2.0));
  CHECK(f.b == doctest::Approx(1.0));

  f = ab_transform(0.2, 1.0, 2);
  CHECK(f.a == doctest::Approx(0.016).epsilon(1e-15));
  CHECK(f.b == doctest::Approx(13.0).epsilon(1e-15));

  // b depends on theta only
  CHECK(ab_transform(0.2, 5.0, 4).b == doctest::Approx(13.0).epsilon(1e-15));

  // round trip recovers lambda exactly
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> tt(0.05, 2.0), ll(0.05, 8.0);
  for (int trial = 0; trial < 200; ++trial) {
    double theta = tt(rng), lambda = ll(rng);
    int k = 2 + static_cast<int>(rng() % 4);
    ABForm g = ab_transform(theta, lambda, k);
    CHECK(2.0 * std::pow(theta, k + 1) / g.a ==
          doctest::Approx(lambda).epsilon(1e-14));
  }

  CHECK_THROWS_AS(ab_transform(-1.0, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(ab_transform(1.0, 0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(ab_transform(1.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("tangency analysis of the branch equation") {
  // b0(2) = 9: unique solution for any a when b <= b0
  for (double a : {0.001, 0.016, 0.5, 10.0}) {
    CHECK(normal_form_root_count(a, 9.0, 2).count == 1);
    CHECK(normal_form_root_count(a, 4.0, 2).count == 1);
  }

  // b = 16, k = 2: x = (13 -+ sqrt(105))/2, thresholds frozen from the
  // closed forms
  auto res = normal_form_root_count(0.0155, 16.0, 2);
  CHECK(res.count == 3);
  CHECK(res.b0 == doctest::Approx(9.0));
  CHECK(res.discriminant == doctest::Approx(105.0).epsilon(1e-14));
  CHECK(*res.x1 == doctest::Approx((13.0 - std::sqrt(105.0)) / 2.0).epsilon(1e-14));
  CHECK(*res.x2 == doctest::Approx((13.0 + std::sqrt(105.0)) / 2.0).epsilon(1e-14));
  CHECK(*res.a1 == doctest::Approx(0.013588603046822596).epsilon(1e-12));
  CHECK(*res.a2 == doctest::Approx(0.017966572734427404).epsilon(1e-12));
  CHECK(*res.a1 < *res.a2);

  CHECK(normal_form_root_count(0.010, 16.0, 2).count == 1);
  CHECK(normal_form_root_count(0.020, 16.0, 2).count == 1);
  CHECK(normal_form_root_count(*res.a1, 16.0, 2).count == 2);
  CHECK(normal_form_root_count(*res.a2, 16.0, 2).count == 2);
  CHECK(normal_form_root_count(*res.a1, 16.0, 2).on_boundary);

  // sturm count on the cleared form a x (b+x)^2 - (1+x)^2 confirms all three
  auto cleared = [](double a, double b) {
    return poly::Polynomial(
        {-1.0, a * b * b - 2.0, 2.0 * a * b - 1.0, a});
  };
  CHECK(poly::sturm_positive_count(cleared(0.0155, 16.0)) == 3);
  CHECK(poly::sturm_positive_count(cleared(0.010, 16.0)) == 1);
  CHECK(poly::sturm_positive_count(cleared(0.016, 13.0)) ==
        normal_form_root_count(0.016, 13.0, 2).count);
}

TEST_CASE("critical temperature") {
  CHECK(theta_c(2) == doctest::Approx(1.0 / std::sqrt(17.0)).epsilon(1e-15));
  CHECK(theta_c(3) == doctest::Approx(2.0 / std::sqrt(28.0)).epsilon(1e-15));
  // b(theta_c) = b0 by construction
  for (int k : {2, 3, 4, 5, 7}) {
    double tc = theta_c(k);
    double b = (1.0 + tc * tc) / (2.0 * tc * tc);
    CHECK(b == doctest::Approx(std::pow((k + 1.0) / (k - 1.0), 2)).epsilon(1e-14));
  }
}

TEST_CASE("critical fields") {
  LambdaStars stars = lambda_star(0.2, 2);
  CHECK(stars.lambda1 == doctest::Approx(0.6965743741577959).epsilon(1e-12));
  CHECK(stars.lambda2 == doctest::Approx(0.8074256258422042).epsilon(1e-12));
  CHECK(stars.lambda1 < stars.lambda2);
  CHECK_THROWS_AS(lambda_star(0.3, 2), std::domain_error);

  // the k = 2 critical fields coincide with the cubic-discriminant curves
  for (int i = 1; i <= 200; ++i) {
    double theta = 0.01 + (k2::theta2() - 0.0101) * i / 201.0;
    LambdaStars s = lambda_star(theta, 2);
    auto curves = k2::lambda_curves(theta);
    CHECK(s.lambda1 == doctest::Approx(*curves.lambda1).epsilon(1e-10));
    CHECK(s.lambda2 == doctest::Approx(*curves.lambda2).epsilon(1e-10));
  }
}

TEST_CASE("branch roots") {
  auto roots = solve_z0eq1_branch(1.0, 1.0, 2);
  REQUIRE(roots.size() == 1);
  CHECK(roots[0].z1 == doctest::Approx(1.0).epsilon(1e-14));

  roots = solve_z0eq1_branch(0.1, 1.0, 2);
  CHECK(roots.size() == 3);

  for (const auto& r : solve_z0eq1_branch(0.2, 0.75, 2))
    CHECK(r.residual < 1e-12 * std::max(1.0, r.z1));

  // theta >= 1: single root for any field
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> tt(1.0, 4.0), ll(0.1, 10.0);
  for (int trial = 0; trial < 100; ++trial)
    CHECK(solve_z0eq1_branch(tt(rng), ll(rng), 2 + trial % 3).size() == 1);
}

TEST_CASE("branch root count matches tangency count away from the curves") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> tt(0.02, 1.5), ll(0.05, 3.0);
  int tested = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    double theta = tt(rng), lambda = ll(rng);
    int k = 2 + trial % 3;
    if (theta < theta_c(k)) {
      LambdaStars stars = lambda_star(theta, k);
      if (std::abs(lambda - stars.lambda1) < 1e-6 * stars.lambda1) continue;
      if (std::abs(lambda - stars.lambda2) < 1e-6 * stars.lambda2) continue;
    }
    ABForm f = ab_transform(theta, lambda, k);
    int expected = normal_form_root_count(f.a, f.b, k).count;
    auto roots = solve_z0eq1_branch(theta, lambda, k);
    CAPTURE(theta);
    CAPTURE(lambda);
    CAPTURE(k);
    CHECK(static_cast<int>(roots.size()) == expected);
    for (const auto& r : roots)
      CHECK(r.residual < 1e-12 * std::max(1.0, r.z1));
    ++tested;
  }
  CHECK(tested > 9900);
}

TEST_CASE("on-curve tangency roots") {
  LambdaStars stars = lambda_star(0.2, 2);
  auto roots = solve_z0eq1_branch(0.2, stars.lambda1, 2);
  REQUIRE(roots.size() == 2);
  int total_mult = 0;
  for (const auto& r : roots) total_mult += r.multiplicity;
  CHECK(total_mult == 3);
  CHECK(tisgm_lower_bound(0.2, stars.lambda1, 2) == 2);
}

TEST_CASE("measure-count lower bound") {
  CHECK(tisgm_lower_bound(0.5, 1.0, 2) == 1);    // theta above theta_c
  CHECK(tisgm_lower_bound(0.2, 0.75, 2) == 3);   // strictly between the fields
  CHECK(tisgm_lower_bound(0.2, 0.5, 2) == 1);
  CHECK(tisgm_lower_bound(0.2, 1.5, 2) == 1);
  CHECK(tisgm_lower_bound(1.7, 0.9, 3) == 1);
}

TEST_CASE("uniqueness regime flag") {
  CHECK(uniqueness_regime(1.5));
  CHECK(uniqueness_regime(1.0));
  CHECK(!uniqueness_regime(0.9));
  CHECK(solve_z0eq1_branch(2.0, 5.0, 3).size() == 1);

  // z0 = 1 solves the first fixed-point equation for any parameters, and the
  // factorized form shows it is the only solution once theta >= 1
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> tt(1.0, 3.0), zz(0.05, 10.0);
  for (int trial = 0; trial < 300; ++trial) {
    double theta = tt(rng), z0 = zz(rng), z1 = zz(rng);
    int k = 2 + trial % 4;
    double t2 = theta * theta;
    double E = z0 + theta * z1 + t2, F = t2 * z0 + theta * z1 + 1.0;
    double bracket = std::pow(F, k);
    for (int j = 0; j < k; ++j)
      bracket += (t2 - 1.0) * std::pow(E, j) * std::pow(F, k - 1 - j);
    CHECK(bracket > 0.0);  // only z0 = 1 can satisfy the cleared equation
  }
}
