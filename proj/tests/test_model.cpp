#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "sostree/model.hpp"

using namespace sostree;

TEST_CASE("ball construction") {
  FiniteBall b0 = build_ball(2, 0);
  CHECK(b0.vertex_count() == 1);
  CHECK(b0.edges.empty());

  FiniteBall b1 = build_ball(2, 1);
  CHECK(b1.vertex_count() == 4);  // root plus k+1 = 3 neighbours
  CHECK(b1.edges.size() == 3);
  CHECK(b1.successors[0].size() == 3);

  FiniteBall b2 = build_ball(2, 2);
  CHECK(b2.vertex_count() == 10);  // 1 + 3 + 6
  CHECK(b2.edges.size() == 9);
  CHECK(b2.sphere(2).size() == 6);
  // every non-root internal vertex has exactly k successors
  for (int v : b2.sphere(1)) CHECK(b2.successors[v].size() == 2);

  // |V_n| = 1 + (k+1)(k^n - 1)/(k - 1)
  for (int k : {2, 3, 4}) {
    for (int n : {1, 2, 3}) {
      FiniteBall b = build_ball(k, n);
      double expected =
          1.0 + (k + 1.0) * (std::pow(k, n) - 1.0) / (k - 1.0);
      CHECK(b.vertex_count() == static_cast<int>(expected));
      CHECK(b.edges.size() == b.level.size() - 1);  // tree: acyclic, connected
      for (int v = 1; v < b.vertex_count(); ++v)
        CHECK(b.level[v] == b.level[b.parent[v]] + 1);
    }
  }

  CHECK_THROWS_AS(build_ball(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_ball(2, -1), std::invalid_argument);
}

TEST_CASE("hamiltonian energy in reduced units") {
  ModelParams params = ModelParams::sos3(2, 0.7, 1.0);
  FiniteBall ball = build_ball(2, 1);

  Configuration zero;
  zero.spins = {0, 0, 0, 0};
  CHECK(hamiltonian_energy(zero, ball, params) == doctest::Approx(0.0));

  // root 0, leaves 1,1,1: weight theta^3
  Configuration cfg;
  cfg.spins = {0, 1, 1, 1};
  for (double theta : {0.3, 0.7, 1.4}) {
    ModelParams p = ModelParams::sos3(2, theta, 1.0);
    double w = std::exp(-hamiltonian_energy(cfg, ball, p));
    CHECK(w == doctest::Approx(std::pow(theta, 3)).epsilon(1e-13));
  }

  // root 2, leaves 0,0,0 at theta = 0.5: weight theta^6 = 0.015625
  Configuration steep;
  steep.spins = {2, 0, 0, 0};
  ModelParams half = ModelParams::sos3(2, 0.5, 1.0);
  CHECK(std::exp(-hamiltonian_energy(steep, ball, half)) ==
        doctest::Approx(0.015625).epsilon(1e-13));

  Configuration missing;
  missing.spins = {0, 1, -1, 0};
  CHECK_THROWS_AS(hamiltonian_energy(missing, ball, params), std::invalid_argument);
  Configuration bad;
  bad.spins = {0, 1, 3, 0};
  CHECK_THROWS_AS(hamiltonian_energy(bad, ball, params), std::out_of_range);
}

TEST_CASE("hamiltonian weight equals edge-vertex product") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> tt(0.2, 2.0), ll(0.3, 3.0);
  FiniteBall ball = build_ball(2, 2);
  for (int trial = 0; trial < 300; ++trial) {
    ModelParams params = ModelParams::sos3(2, tt(rng), ll(rng));
    Configuration cfg;
    cfg.spins.resize(ball.vertex_count());
    for (int& s : cfg.spins) s = static_cast<int>(rng() % 3);
    double via_energy = std::exp(-hamiltonian_energy(cfg, ball, params));
    double direct = 1.0;
    for (auto [a, b] : ball.edges)
      direct *= std::pow(params.theta, std::abs(cfg.spins[a] - cfg.spins[b]));
    for (int s : cfg.spins)
      if (s == 1) direct *= params.lambda();
    CHECK(via_energy == doctest::Approx(direct).epsilon(1e-11));
  }
}

TEST_CASE("recurrence map vanishes at theta = 1") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> uu(-6.0, 6.0);
  for (int trial = 0; trial < 1000; ++trial) {
    int m = 1 + trial % 4;
    std::vector<double> u(m);
    for (double& v : u) v = uu(rng);
    for (double f : recurrence_map(u, 1.0, m)) CHECK(std::abs(f) < 1e-12);
  }
}

TEST_CASE("recurrence map values for m = 2") {
  std::vector<double> u = {0.0, 0.0};
  auto F = recurrence_map(u, 0.5, 2);
  CHECK(F[0] == doctest::Approx(0.0));
  CHECK(F[1] == doctest::Approx(std::log(2.0 / 1.75)).epsilon(1e-14));

  // m = 3 at u = 0: middle components reduce to ln((1+theta)/(1+theta^2))
  std::vector<double> u3 = {0.0, 0.0, 0.0};
  auto F3 = recurrence_map(u3, 0.5, 3);
  CHECK(F3[0] == doctest::Approx(0.0));
  CHECK(F3[1] == doctest::Approx(std::log(1.5 / 1.25)).epsilon(1e-14));
  CHECK(F3[2] == doctest::Approx(std::log(1.5 / 1.25)).epsilon(1e-14));

  // exp(F) equals the two rational functions of (z0, z1)
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> zz(0.05, 20.0), tt(0.05, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    double z0 = zz(rng), z1 = zz(rng), theta = tt(rng);
    std::vector<double> h = {std::log(z0), std::log(z1)};
    auto f = recurrence_map(h, theta, 2);
    double den = theta * theta * z0 + theta * z1 + 1.0;
    CHECK(std::exp(f[0]) ==
          doctest::Approx((z0 + theta * z1 + theta * theta) / den).epsilon(1e-12));
    CHECK(std::exp(f[1]) ==
          doctest::Approx((theta * z0 + z1 + theta) / den).epsilon(1e-12));
  }

  CHECK_THROWS_AS(recurrence_map(u, -1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(recurrence_map(u, 1.0, 3), std::invalid_argument);
}

TEST_CASE("gibbs table at the root") {
  FiniteBall ball = build_ball(2, 0);
  // no field, unit law: uniform over the three spins
  auto t1 = gibbs_table(ball, ModelParams::sos3(2, 0.7, 1.0), BoundaryLaw(1.0, 1.0), 0);
  REQUIRE(t1.probs.size() == 3);
  for (double p : t1.probs) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  // lambda = 2 weights the middle spin: (1, 2, 1) / 4
  auto t2 = gibbs_table(ball, ModelParams::sos3(2, 0.7, 2.0), BoundaryLaw(1.0, 1.0), 0);
  CHECK(t2.probs[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(t2.probs[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(t2.probs[2] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("gibbs table normalization") {
  FiniteBall ball = build_ball(2, 2);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> zz(0.1, 8.0), tt(0.1, 2.5);
  for (int trial = 0; trial < 30; ++trial) {
    ModelParams params = ModelParams::sos3(2, tt(rng), zz(rng));
    BoundaryLaw law(zz(rng), zz(rng));
    for (int n : {0, 1, 2}) {
      auto table = gibbs_table(ball, params, law, n);
      long double sum = 0.0;
      for (double p : table.probs) sum += p;
      CHECK(std::abs(static_cast<double>(sum - 1.0L)) < 1e-14);
    }
  }
}

TEST_CASE("gibbs table enumeration cap") {
  FiniteBall ball = build_ball(2, 2);
  ModelParams params = ModelParams::sos3(2, 0.5, 1.0);
  CHECK_THROWS_AS(gibbs_table(ball, params, BoundaryLaw(1.0, 1.0), 2, 1000),
                  std::length_error);
}

TEST_CASE("parameter and law validation") {
  CHECK_THROWS_AS(ModelParams::sos3(1, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::sos3(2, -0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ModelParams::sos3(2, 0.5, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(BoundaryLaw(1.0, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(BoundaryLaw(0.0, 1.0), std::invalid_argument);
  // log view round-trips
  BoundaryLaw law(2.0, 0.5);
  CHECK(law.log_view()[0] == doctest::Approx(std::log(2.0)));
  CHECK(law.log_view()[1] == doctest::Approx(std::log(0.5)));
}
