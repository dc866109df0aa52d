#include <doctest.h>

#include <cmath>
#include <map>

#include "mbt/chain.hpp"
#include "mbt/dislocation.hpp"
#include "mbt/mb.hpp"
#include "mbt/splitting.hpp"
#include "mbt/stats.hpp"

using namespace mbt;

TEST_CASE("transition law of the two-atom family") {
  MarkovChainSpec spec(family_basic(1.0), 1.0);
  auto p8 = spec.transition_pmf(8);
  CHECK(p8[8] == doctest::Approx(7.0 / 8).epsilon(1e-12));
  CHECK(p8[4] == doctest::Approx(1.0 / 8).epsilon(1e-12));
  auto p9 = spec.transition_pmf(9);
  CHECK(p9[9] == doctest::Approx(8.0 / 9).epsilon(1e-12));
  CHECK(p9[5] == doctest::Approx((1.0 / 9) * (5.0 / 9)).epsilon(1e-12));
  CHECK(p9[4] == doctest::Approx((1.0 / 9) * (4.0 / 9)).epsilon(1e-12));
  auto p1 = spec.transition_pmf(1);
  CHECK(p1[0] == 1.0);  // q_1(empty) = 1 for this family

  MarkovChainSpec halving(family_deterministic_halving(), 1.0);
  CHECK(halving.transition_pmf(2)[1] == doctest::Approx(1.0));

  // q_1((1)) = eta(1) for conditioned GW leaves
  auto gl = family_gw_leaves(builtin_offspring("geo2"), 32);
  MarkovChainSpec gw_spec(gl, 0.5);
  CHECK(gw_spec.transition_pmf(1)[1] == doctest::Approx(0.25).epsilon(1e-12));

  CHECK_THROWS_AS(
      MarkovChainSpec(family_gw_vertices(builtin_offspring("geo2"), 16), 0.5),
      std::invalid_argument);
}

TEST_CASE("size-biased step") {
  Rng rng(81);
  auto ford = family_ford(0.4);
  for (int i = 0; i < 50; ++i)
    CHECK(size_biased_step(*ford, 2, rng) == 1);

  auto basic = family_basic(1.0);
  const int reps = 100000;
  int stays = 0, fours = 0;
  for (int i = 0; i < reps; ++i) {
    uint64_t next = size_biased_step(*basic, 8, rng);
    if (next == 8) ++stays;
    if (next == 4) ++fours;
    CHECK((next == 8 || next == 4));
  }
  CHECK(std::abs(stays / double(reps) - 7.0 / 8) <
        3 * std::sqrt(7.0 / 64 / reps));
  CHECK(fours == reps - stays);

  // empirical law at i = 50 vs the enumerated transition pmf
  MarkovChainSpec spec(family_ford(0.3), 0.3);
  auto exact_m = spec.transition_pmf(50);
  std::map<uint64_t, double> exact(exact_m.begin(), exact_m.end());
  std::map<uint64_t, double> emp;
  const int reps2 = 1000000;
  for (int i = 0; i < reps2; ++i)
    emp[spec.step(50, rng)] += 1.0 / reps2;
  CHECK(total_variation(emp, exact) < 0.01);
}

TEST_CASE("absorption times") {
  Rng rng(82);
  MarkovChainSpec halving(family_deterministic_halving(), 1.0);
  for (int k = 1; k <= 10; ++k)
    CHECK(absorption_time(halving, 1ull << k, rng) == k + 1);

  MarkovChainSpec basic(family_basic(1.0), 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    uint64_t n = 2 + rng.below(1000);
    long long a = absorption_time(basic, n, rng);
    CHECK(a >= 1);
    CHECK(static_cast<double>(a) >=
          std::floor(std::log2(static_cast<double>(n))));
  }
  // Mean near 1/phi(1) = 2 at large n.
  const uint64_t n = 1ull << 20;
  const int reps = 3000;
  double acc = 0;
  for (int i = 0; i < reps; ++i)
    acc += static_cast<double>(absorption_time(basic, n, rng)) / n;
  CHECK(std::abs(acc / reps - 2.0) < 0.1);

  CHECK_THROWS_AS(absorption_time(basic, 1 << 16, rng, 3),
                  std::runtime_error);
}

TEST_CASE("absorption time is the marked-leaf height plus one in law") {
  Rng rng(83);
  auto ford = family_ford(0.5);
  MarkovChainSpec spec(ford, 0.5);
  const int reps = 100000;
  std::map<long long, double> via_chain, via_tree;
  for (int i = 0; i < reps; ++i) {
    via_chain[absorption_time(spec, 30, rng)] += 1.0 / reps;
    via_tree[static_cast<long long>(marked_spine_sizes(*ford, 30, rng).size())] +=
        1.0 / reps;
  }
  // |spine| = ht(star) + 1 = A_n.
  CHECK(total_variation(via_chain, via_tree) < 0.02);
}

TEST_CASE("rescaled path snapshots") {
  Rng rng(84);
  MarkovChainSpec basic(family_basic(1.0), 1.0);
  auto path = rescaled_path(basic, 1 << 16, {0.0, 0.5, 1.0, 2.0, 4.0}, rng);
  REQUIRE(path.size() == 5);
  CHECK(path[0] == 1.0);  // X(0)/n
  for (size_t i = 1; i < path.size(); ++i) {
    CHECK(path[i] <= path[i - 1] + 1e-12);
    CHECK(path[i] >= 0.0);
    CHECK(path[i] <= 1.0);
  }
  CHECK_THROWS_AS(rescaled_path(basic, 64, {1.0, 0.5}, rng),
                  std::invalid_argument);
}

TEST_CASE("rare-jump functional of the chain (H-prime)") {
  MarkovChainSpec basic(family_basic(0.6), 0.6);
  auto g_one = [](double) { return 1.0; };
  auto g_id = [](double x) { return x; };
  CHECK(hprime_functional(basic, 64, g_one) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(hprime_functional(basic, 64, g_id) == doctest::Approx(0.25).epsilon(1e-12));

  // Consistency with the projected measure of the Ford dislocation law.
  auto nu = nu_ford(0.4);
  MarkovChainSpec ford(family_ford(0.4), 0.4);
  for (auto g : {+[](double) { return 1.0; }, +[](double x) { return x; },
                 +[](double x) { return x * x; }}) {
    double lhs = hprime_functional(ford, 10000, g);
    double rhs = nu->mu_integral(g);
    CHECK(std::abs(lhs / rhs - 1.0) < 0.05);
  }

  // k-ary family against the ternary measure (leaf-indexed trees carry
  // the reindexing factor (k-1)^{1/k} relative to growth steps).
  auto k3 = nu_k(3);
  MarkovChainSpec kary(family_kary(3), 1.0 / 3.0);
  double lhs = hprime_functional(kary, 2001, g_one);
  double rhs = std::pow(2.0, 1.0 / 3.0) * k3->mu_integral(g_one);
  CHECK(std::abs(lhs / rhs - 1.0) < 0.01);
}

TEST_CASE("goodness-of-fit helpers") {
  Rng rng(85);
  // KS of an exponential sample against its own cdf.
  std::vector<double> sample;
  for (int i = 0; i < 10000; ++i) sample.push_back(-std::log(rng.next_double_pos()));
  double ks = ks_statistic(sample, [](double x) {
    return x <= 0 ? 0.0 : 1.0 - std::exp(-x);
  });
  CHECK(ks < 0.02);
  // Disjoint supports: distance 1.
  std::vector<double> far{10.0, 11.0, 12.0};
  double ks_far = ks_statistic(far, [](double x) {
    return std::min(std::max(x, 0.0), 1.0);
  });
  CHECK(ks_far == doctest::Approx(1.0));

  LimitLaw law;
  law.gamma = 1.0;
  law.phi = [](double lam) { return 1.0 - std::pow(2.0, -lam); };
  std::vector<double> twos(100, 2.0);
  auto rep = moment_compare(twos, law, 2);
  CHECK(rep.limit_moments[0] == doctest::Approx(2.0));
  CHECK(rep.sample_moments[0] == doctest::Approx(2.0));
  CHECK(rep.rel_errors[0] == doctest::Approx(0.0).epsilon(1e-12));
}
