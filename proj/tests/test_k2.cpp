#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "sostree/k2.hpp"
#include "sostree/polyroots.hpp"
#include "sostree/verify.hpp"

using namespace sostree;

TEST_CASE("threshold constants") {
  CHECK(k2::theta2() == doctest::Approx(0.2425).epsilon(3e-4));
  CHECK(k2::theta3() == doctest::Approx(0.3780).epsilon(3e-4));
  CHECK(k2::theta4() == doctest::Approx(0.2294).epsilon(3e-4));
  CHECK(k2::theta_c_prime() == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(k2::lambda_tilde() == doctest::Approx(0.7704).epsilon(2e-5));
  CHECK(k2::theta1() == doctest::Approx(0.7486).epsilon(1e-4));
  // theta1 solves 71 t^4 - 38 t^2 - 1 = 0
  double t = k2::theta1();
  CHECK(std::abs(71.0 * std::pow(t, 4) - 38.0 * t * t - 1.0) < 1e-12);
}

TEST_CASE("lambda curves") {
  auto at_t2 = k2::lambda_curves(k2::theta2());
  REQUIRE(at_t2.lambda1.has_value());
  CHECK(*at_t2.lambda1 == doctest::Approx(k2::lambda_tilde()).epsilon(1e-7));
  CHECK(*at_t2.lambda2 == doctest::Approx(k2::lambda_tilde()).epsilon(1e-7));

  auto at_t3 = k2::lambda_curves(k2::theta3());
  CHECK(at_t3.lambda3 == doctest::Approx(16.0 * std::sqrt(7.0) / 49.0).epsilon(1e-14));
  CHECK(at_t3.lambda4 == doctest::Approx(at_t3.lambda3).epsilon(1e-14));
  CHECK(!at_t3.lambda1.has_value());

  auto c = k2::lambda_curves(0.2);
  CHECK(*c.lambda1 == doctest::Approx(0.696574374157796).epsilon(1e-13));
  CHECK(*c.lambda2 == doctest::Approx(0.8074256258422042).epsilon(1e-13));
  CHECK(c.lambda3 == doctest::Approx(1.352).epsilon(1e-14));
  CHECK(c.lambda4 == doctest::Approx(0.704).epsilon(1e-14));
  CHECK(c.ordering == k2::CurveOrdering::kBelowTheta4);
  CHECK(*c.lambda1 < c.lambda4);
  CHECK(c.lambda4 < *c.lambda2);
  CHECK(*c.lambda2 < c.lambda3);

  // ordering flips across theta4
  auto above = k2::lambda_curves(0.235);
  CHECK(above.ordering == k2::CurveOrdering::kAboveTheta4);
  CHECK(*above.lambda2 < above.lambda4);
  CHECK(k2::lambda_curves(k2::theta4()).ordering == k2::CurveOrdering::kAtTheta4);

  // lambda3 - lambda4 = (1 - 7 theta^2)^2 / (4 theta)
  for (int i = 1; i < 400; ++i) {
    double theta = k2::theta_c_prime() * i / 400.0;
    auto curves = k2::lambda_curves(theta);
    double expected = std::pow(1.0 - 7.0 * theta * theta, 2) / (4.0 * theta);
    CHECK(curves.lambda3 - curves.lambda4 ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("cubic branch") {
  // single root above theta2
  auto one = k2::cubic_branch(0.5, 1.0);
  REQUIRE(one.size() == 1);
  CHECK(one[0].multiplicity == 1);
  CHECK(one[0].measure_index == 1);

  // three roots inside (lambda1, lambda2)
  auto three = k2::cubic_branch(0.1, 1.0);
  REQUIRE(three.size() == 3);
  CHECK(three[0].y > three[1].y);
  CHECK(three[1].y > three[2].y);
  CHECK(three[0].measure_index == 1);
  CHECK(three[2].measure_index == 3);

  // triple root at (theta2, lambda~)
  auto triple = k2::cubic_branch(k2::theta2(), k2::lambda_tilde());
  REQUIRE(triple.size() == 1);
  CHECK(triple[0].multiplicity == 3);
  CHECK(triple[0].y ==
        doctest::Approx(std::sqrt(k2::lambda_tilde()) / (3.0 * k2::theta2()))
            .epsilon(1e-12));

  // tangency on lambda1: a double and a simple root
  auto curves = k2::lambda_curves(0.2);
  auto tangent = k2::cubic_branch(0.2, *curves.lambda1);
  REQUIRE(tangent.size() == 2);
  int total_mult = 0;
  for (const auto& s : tangent) total_mult += s.multiplicity;
  CHECK(total_mult == 3);

  // every root solves the fixed-point system
  for (const auto& s : three) {
    CHECK(std::abs(s.residual1) < 1e-12);
    CHECK(std::abs(s.residual2) < 1e-12);
    CHECK(s.x == 1.0);
  }
}

TEST_CASE("quartic branch") {
  CHECK(k2::quartic_branch(0.6, 0.5).empty());  // theta above 1/sqrt(3)
  CHECK(k2::quartic_branch(0.2, 1.5).empty());  // lambda above lambda3

  auto four = k2::quartic_branch(0.2, 1.0);
  REQUIRE(four.size() == 4);
  double p45 = four[0].x * four[1].x;
  double p67 = four[2].x * four[3].x;
  CHECK(p45 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p67 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(four[0].measure_index == 4);
  CHECK(four[1].measure_index == 5);
  CHECK(four[2].measure_index == 6);
  CHECK(four[3].measure_index == 7);
  CHECK(four[0].sign == k2::RootSign::kMinus);
  CHECK(four[1].sign == k2::RootSign::kPlus);

  // theta in [theta3, theta_c'), small lambda: only the xi2 pair
  auto two = k2::quartic_branch(0.5, 0.3);
  REQUIRE(two.size() == 2);
  CHECK(two[0].branch == k2::Branch::kQuarticXi2);
  CHECK(two[1].branch == k2::Branch::kQuarticXi2);
  CHECK(k2::lambda_curves(0.5).lambda4 == doctest::Approx(0.5).epsilon(1e-15));

  // xi collapse on lambda3: two solutions of multiplicity 2
  auto curves = k2::lambda_curves(0.25);
  auto collapsed = k2::quartic_branch(0.25, curves.lambda3);
  REQUIRE(collapsed.size() == 2);
  CHECK(collapsed[0].multiplicity == 2);
  CHECK(collapsed[1].multiplicity == 2);
  double xi = (1.0 - 3.0 * 0.0625) / (2.0 * 0.0625);
  CHECK(collapsed[0].x + 1.0 / collapsed[0].x == doctest::Approx(xi).epsilon(1e-9));

  for (const auto& s : four) {
    CHECK(std::abs(s.residual1) < 1e-12);
    CHECK(std::abs(s.residual2) < 1e-12);
  }
}

TEST_CASE("classification counts") {
  CHECK(k2::classify(0.2, 0.75).tisgm_count == 7);
  CHECK(k2::classify(0.2, 0.75).region == "1(a)");
  CHECK(k2::classify(0.1, 1.0).tisgm_count == 7);
  CHECK(k2::classify(0.9, 2.0).tisgm_count == 1);
  CHECK(k2::classify(0.9, 2.0).region == "6");
  // lambda = 1 exceeds lambda3(0.3) ~ 0.99, so the quartic branch is empty
  CHECK(k2::classify(0.3, 1.0).tisgm_count == 1);
  CHECK(k2::classify(0.3, 1.0).region == "4(c)");
  CHECK(k2::sturm_oracle_count(0.3, 1.0) == 1);
  CHECK(k2::classify(0.3, 0.95).tisgm_count == 5);
  CHECK(k2::classify(0.2, 1.0).tisgm_count == 5);
  CHECK(k2::classify(0.2, 0.5).tisgm_count == 3);
  CHECK(k2::classify(0.45, 0.3).tisgm_count == 3);
  CHECK(k2::classify(0.45, 0.9).tisgm_count == 1);
}

TEST_CASE("measure indices follow the branch structure") {
  auto seven = k2::count_tisgm(0.2, 0.75);
  CHECK(seven.indices == std::vector<int>{1, 2, 3, 4, 5, 6, 7});

  auto curves = k2::lambda_curves(0.2);
  auto six = k2::count_tisgm(0.2, *curves.lambda2);
  CHECK(six.count == 6);
  CHECK(six.indices == std::vector<int>{1, 2, 4, 5, 6, 7});

  auto four = k2::count_tisgm(0.2, *curves.lambda1);
  CHECK(four.count == 4);
  CHECK(four.indices == std::vector<int>{1, 2, 6, 7});

  auto one = k2::count_tisgm(0.9, 3.0);
  CHECK(one.count == 1);
  CHECK(one.indices == std::vector<int>{1});

  auto five_low = k2::count_tisgm(0.2, 0.7);  // inside (lambda1, lambda4)
  CHECK(five_low.count == 5);
  CHECK(five_low.indices == std::vector<int>{1, 2, 3, 6, 7});

  auto five_high = k2::count_tisgm(0.2, 1.0);  // inside (lambda2, lambda3)
  CHECK(five_high.count == 5);
  CHECK(five_high.indices == std::vector<int>{1, 4, 5, 6, 7});
}

TEST_CASE("collision at lambda4 merges the x = 1 pair") {
  double theta = 0.3;
  double lambda4 = k2::lambda_curves(theta).lambda4;
  CHECK(lambda4 == doctest::Approx(0.876).epsilon(1e-15));
  auto cls = k2::classify(theta, lambda4);
  CHECK(cls.tisgm_count == 3);
  CHECK(cls.boundary_flag);
  CHECK(cls.region == "4(b)");
  int collisions = 0;
  for (const auto& s : cls.solutions)
    if (s.branch == k2::Branch::kCollision) ++collisions;
  CHECK(collisions == 1);
  // the common solution's y agrees with sqrt((1 - 3 theta^2)/theta)
  for (const auto& s : cls.solutions)
    if (s.branch == k2::Branch::kCollision)
      CHECK(s.y == doctest::Approx(std::sqrt((1.0 - 3.0 * theta * theta) / theta))
                       .epsilon(1e-12));

  // same merge below theta3 keeps five solutions
  double th = 0.2;
  auto cls2 = k2::classify(th, k2::lambda_curves(th).lambda4);
  CHECK(cls2.tisgm_count == 5);
  CHECK(cls2.region == "1(c)");
  CHECK(cls2.measure_indices == std::vector<int>{1, 2, 3, 6, 7});
}

TEST_CASE("boundary flag and bands") {
  auto curves = k2::lambda_curves(0.2);
  CHECK(k2::classify(0.2, curves.lambda3).boundary_flag);
  CHECK(k2::classify(0.2, curves.lambda3 * (1.0 + 1e-12)).boundary_flag);
  CHECK(!k2::classify(0.2, curves.lambda3 * (1.0 + 1e-6)).boundary_flag);
  CHECK(k2::classify(0.2, 0.75).boundary_flag == false);
}

TEST_CASE("classifier equals the sturm oracle off the curves") {
  for (int i = 1; i <= 60; ++i) {
    double theta = 1.2 * i / 60.0;
    auto curves = k2::lambda_curves(theta);
    for (int j = 1; j <= 60; ++j) {
      double lambda = 2.0 * j / 60.0;
      bool near_curve = false;
      for (double c : {curves.lambda1.value_or(-1.0), curves.lambda2.value_or(-1.0),
                       curves.lambda3, curves.lambda4})
        if (c > 0 && std::abs(lambda - c) < 1e-6 * c) near_curve = true;
      for (double t : {k2::theta2(), k2::theta3(), k2::theta_c_prime()})
        if (std::abs(theta - t) < 1e-6 * t) near_curve = true;
      if (near_curve) continue;
      CAPTURE(theta);
      CAPTURE(lambda);
      CHECK(k2::count_tisgm(theta, lambda).count ==
            k2::sturm_oracle_count(theta, lambda));
    }
  }
}

TEST_CASE("oracle-comparison machinery detects a corrupted classifier") {
  auto broken = [](double theta, double lambda) {
    int c = k2::count_tisgm(theta, lambda).count;
    // a lambda4 sign flip would lose the quartic pair below lambda4
    auto curves = k2::lambda_curves(theta);
    if (theta < k2::theta_c_prime() && lambda < curves.lambda4) return c - 2;
    return c;
  };
  auto result = verify::check_classifier_vs_oracle(20, 20, broken);
  CHECK(!result.pass);
  auto good = verify::check_classifier_vs_oracle(20, 20, [](double t, double l) {
    return k2::count_tisgm(t, l).count;
  });
  CHECK(good.pass);
}

TEST_CASE("counts at lambda = 1 step through 7, 5, 3, 1") {
  // the count changes where lambda2 and lambda3 cross 1; lambda3(theta) = 1
  // at the smaller positive root of theta^4 + 2 theta^2 - 4 theta + 1
  auto rep = poly::isolate_and_refine(
      poly::Polynomial({1.0, -4.0, 2.0, 0.0, 1.0}), 1e-13);
  REQUIRE(rep.refined_roots.size() >= 2);
  double theta_star = rep.refined_roots[0].value;
  CHECK(theta_star == doctest::Approx(0.2955977425).epsilon(1e-8));
  CHECK(k2::lambda_curves(theta_star).lambda3 == doctest::Approx(1.0).epsilon(1e-10));

  std::vector<int> sequence = {
      k2::count_tisgm(0.10, 1.0).count,        // below the lambda2 crossing
      k2::count_tisgm(0.20, 1.0).count,        // between the crossings
      k2::count_tisgm(theta_star, 1.0).count,  // on lambda3
      k2::count_tisgm(0.35, 1.0).count,        // above the lambda3 crossing
  };
  CHECK(sequence == std::vector<int>{7, 5, 3, 1});
}

TEST_CASE("solution residuals over the plane") {
  for (int i = 1; i <= 40; ++i) {
    double theta = 1.2 * i / 40.0;
    for (int j = 1; j <= 40; ++j) {
      double lambda = 2.0 * j / 40.0;
      for (const auto& s : k2::classify(theta, lambda).solutions) {
        CAPTURE(theta);
        CAPTURE(lambda);
        CHECK(std::abs(s.residual1) < 1e-10);
        CHECK(std::abs(s.residual2) < 1e-10);
        CHECK(s.y > 0);
        CHECK(s.x > 0);
      }
    }
  }
}
