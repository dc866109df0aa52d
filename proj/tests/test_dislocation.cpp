#include <doctest.h>

#include <cmath>

#include "mbt/chain.hpp"
#include "mbt/dislocation.hpp"
#include "mbt/splitting.hpp"

using namespace mbt;

namespace {
auto one = [](std::span<const double>) { return 1.0; };
}

TEST_CASE("binary Brownian measure: frozen functionals") {
  auto br = nu_br();
  // int (1 - s1) dnu = 2 sqrt(2/pi); phi(1) = sqrt(2 pi). Both values
  // come out of two independent quadrature rules that must agree.
  CHECK(br->integral(one) == doctest::Approx(2.0 * std::sqrt(2.0 / M_PI)).epsilon(1e-6));
  CHECK(br->phi(1.0) == doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-6));
  CHECK(br->phi(0.0) == 0.0);
  // mu(g == 1) = phi(1) (mass identity of the projected measure).
  CHECK(br->mu_integral([](double) { return 1.0; }) ==
        doctest::Approx(br->phi(1.0)).epsilon(1e-8));
}

TEST_CASE("Ford measure: quadrature vs importance-sampling Monte Carlo") {
  auto ford = nu_ford(0.5);
  double quad = ford->phi(1.0);
  // Proposal x = 1 - u^2/2 with density 1/sqrt(2(1-x)) on (1/2, 1).
  Rng rng(41);
  const int reps = 2000000;
  double acc = 0;
  for (int i = 0; i < reps; ++i) {
    double u = rng.next_double_pos();
    double x = 1.0 - 0.5 * u * u;
    double proposal = 1.0 / std::sqrt(2.0 * (1.0 - x));
    double y = 1.0 - x;
    double integrand = ((1.0 - x) * x + (1.0 - std::pow(y, 1.0)) * y) *
                       nu_ford_density(0.5, x);
    acc += integrand / proposal;
  }
  double mc = acc / reps;
  CHECK(std::abs(mc / quad - 1.0) < 1e-3);
  CHECK_THROWS_AS(nu_ford(1.2), std::invalid_argument);
}

TEST_CASE("nu_k(2) coincides with the Ford alpha=1/2 density") {
  for (double x : {0.55, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99}) {
    double s[2] = {x, 1.0 - x};
    CHECK(std::abs(nu_k_density(2, std::span<const double>(s, 2)) -
                   nu_ford_density(0.5, x)) < 1e-9);
  }
  auto k2 = nu_k(2);
  auto f12 = nu_ford(0.5);
  CHECK(k2->phi(1.0) == doctest::Approx(f12->phi(1.0)).epsilon(1e-8));
}

TEST_CASE("ternary measure: internal consistency and the k-ary limit") {
  auto k3 = nu_k(3);
  double phi1 = k3->phi(1.0);
  CHECK(phi1 > 0);
  CHECK(k3->mu_integral([](double) { return 1.0; }) ==
        doctest::Approx(phi1).epsilon(1e-5));
  // (H)-functional of the leaf-indexed k-ary family: the tree after n
  // growth steps carries m = 1 + (k-1)(n-1) leaves, so the m-indexed
  // rare-split limit is (k-1)^{1/k} nu_k.
  double limit = std::pow(2.0, 1.0 / 3.0) * k3->integral(one);
  auto family = family_kary(3);
  double h_small = hypothesis_h_functional(*family, 501, one, 1.0 / 3).value;
  double h_big = hypothesis_h_functional(*family, 2001, one, 1.0 / 3).value;
  CHECK(std::abs(h_big / limit - 1.0) < std::abs(h_small / limit - 1.0) + 0.001);
  CHECK(std::abs(h_big / limit - 1.0) < 0.01);
  CHECK_THROWS_AS(nu_k(5), std::invalid_argument);
}

TEST_CASE("phi is concave increasing on a grid") {
  for (const auto& nu : {nu_br(), nu_ford(0.3), nu_ford(0.5), nu_k(2)}) {
    double prev = 0, prev_inc = 1e300;
    for (double lam : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
      double v = nu->phi(lam);
      CHECK(v > prev);
      double inc = v - prev;
      CHECK(inc <= prev_inc + 1e-9);
      prev = v;
      prev_inc = inc;
    }
  }
}

TEST_CASE("stable measure simulation kernel") {
  Rng rng(42);
  for (int i = 0; i < 50; ++i) {
    auto m = stable_gap_partition(1.5, 1e-4, rng);
    CHECK(m.sum() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::is_sorted(m.s.rbegin(), m.s.rend()));
  }
  auto nu1 = nu_stable(1.5, 4000, 7);
  auto nu2 = nu_stable(1.5, 4000, 7);
  CHECK(nu1->phi(1.0) == nu2->phi(1.0));  // deterministic given the seed
  CHECK(nu1->phi(1.0) > 0);
  CHECK(nu1->integral(one) > 0);
}

TEST_CASE("mass partition validation") {
  CHECK_THROWS_AS(MassPartition({0.3, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(MassPartition({0.8, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(MassPartition({-0.1}), std::invalid_argument);
  CHECK(MassPartition({0.6, 0.4}).sum() == doctest::Approx(1.0));
}

TEST_CASE("limit laws: moments and the mu representation") {
  LimitLaw halfsplit;
  halfsplit.gamma = 1.0;
  halfsplit.phi = [](double lam) { return 1.0 - std::pow(2.0, -lam); };
  CHECK(halfsplit.phi(1.0) == doctest::Approx(0.5));
  CHECK(halfsplit.moment(1) == doctest::Approx(2.0));
  CHECK(halfsplit.moment(2) == doctest::Approx(16.0 / 3.0));
  CHECK(halfsplit.moment(3) == doctest::Approx(128.0 / 7.0));

  // phi for nu = delta_{(1/2,1/2)} via the generic mu route: mu is a
  // point mass of weight 2 * (1/2)(1/2) = 1/2 at x = 1/2, so
  // phi(lam) = (1 - 2^-lam)/(1 - 1/2) * (1/2) = 1 - 2^-lam.
  MuMeasure mu;
  mu.density = nullptr;
  LimitLaw via_mu = phi_from_mu(mu, 1.0);
  CHECK(via_mu.phi(3.0) == 0.0);  // atoms only, none set

  MuMeasure mu2;
  mu2.atom0 = 0.25;
  mu2.atom1 = 0.5;
  mu2.density = [](double) { return 1.0; };
  LimitLaw law2 = phi_from_mu(mu2, 1.0);
  // int_0^1 (1-x)/(1-x) dx = 1.
  CHECK(law2.phi(1.0) == doctest::Approx(0.25 + 0.5 + 1.0).epsilon(1e-9));

  auto br_law = phi_from_nu(nu_br(), 0.5);
  CHECK(br_law.moment(1) == doctest::Approx(1.0 / nu_br()->phi(0.5)).epsilon(1e-8));
}
