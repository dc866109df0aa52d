#include <doctest.h>

#include <cmath>
#include <map>

#include "mbt/gw.hpp"
#include "mbt/mb.hpp"
#include "mbt/splitting.hpp"
#include "mbt/stats.hpp"

using namespace mbt;

TEST_CASE("deterministic halving builds the complete binary tree") {
  Rng rng(51);
  auto halving = family_deterministic_halving();
  for (int k = 1; k <= 6; ++k) {
    auto t = sample_mb_leaves(*halving, 1ull << k, rng);
    CHECK(leaf_count(t) == (1 << k));
    CHECK(height(t) == k);
    CHECK(t.n_vertices() == (1 << (k + 1)) - 1);
  }
}

TEST_CASE("leaf and vertex counts are exact on every draw") {
  Rng rng(52);
  auto ford = family_ford(0.3);
  auto basic = family_basic(1.0);
  for (int rep = 0; rep < 100; ++rep) {
    uint64_t n = 2 + rng.below(40);
    CHECK(leaf_count(sample_mb_leaves(*ford, n, rng)) ==
          static_cast<int>(n));
    CHECK(leaf_count(sample_mb_leaves(*basic, n, rng)) ==
          static_cast<int>(n));
  }
  auto gv = family_gw_vertices(builtin_offspring("geo2"), 128);
  for (int rep = 0; rep < 100; ++rep) {
    uint64_t n = 1 + rng.below(60);
    CHECK(sample_mb_vertices(*gv, n, rng).n_vertices() ==
          static_cast<int>(n));
  }
  CHECK(sample_mb_vertices(*gv, 1, rng).n_vertices() == 1);
  CHECK_THROWS_AS(sample_mb_leaves(*gv, 5, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_mb_vertices(*ford, 5, rng), std::invalid_argument);
}

TEST_CASE("geometric chain to the first branch point") {
  // For the two-atom family the root-to-first-branch distance is
  // Geometric(n^-alpha); at alpha = 1, n = 2^12 the mean is n.
  Rng rng(53);
  auto basic = family_basic(1.0);
  const uint64_t n = 1 << 12;
  const int reps = 1600;
  double acc = 0;
  for (int i = 0; i < reps; ++i) {
    auto t = sample_mb_leaves(*basic, n, rng);
    int v = 0;
    int d = 0;
    while (t.out_degree(v) == 1) {
      v = t.children(v)[0];
      ++d;
    }
    acc += d;
  }
  double mean = acc / reps;
  CHECK(std::abs(mean / static_cast<double>(n) - 1.0) < 0.08);
}

TEST_CASE("MB law of conditioned GW vertices matches direct conditioning") {
  Rng rng(54);
  auto geo = builtin_offspring("geo2");
  auto gv = family_gw_vertices(geo, 64);
  const int reps = 100000;
  std::map<std::string, double> mb_law, direct;
  for (int i = 0; i < reps; ++i) {
    mb_law[canonical_code(sample_mb_vertices(*gv, 5, rng)).code] += 1.0 / reps;
    direct[canonical_code(sample_gw_n_vertices(geo, 5, rng)).code] +=
        1.0 / reps;
  }
  CHECK(total_variation(mb_law, direct) < 0.01);
}

TEST_CASE("full unordered law matches the exact recursive computation") {
  // Exact law over canonical codes by dynamic programming on the
  // splitting probabilities (Ford alpha = 1/2, all stay-mass zero).
  auto ford = family_ford(0.5);
  std::vector<std::map<std::string, double>> law(7);
  law[1] = {{"()", 1.0}};
  for (uint64_t n = 2; n <= 6; ++n) {
    auto sup = ford->support(n);
    for (const auto& lam : *sup) {
      double q = ford->pmf(n, lam);
      // product over ordered tuples of sub-codes
      std::vector<std::pair<std::string, double>> acc{{"", q}};
      for (uint64_t part : lam.parts) {
        std::vector<std::pair<std::string, double>> next;
        for (const auto& [prefix, p] : acc)
          for (const auto& [code, pc] : law[part])
            next.emplace_back(prefix + "|" + code, p * pc);
        acc = std::move(next);
      }
      for (const auto& [multi, p] : acc) {
        // canonical glue: sort the collected sub-codes
        std::vector<std::string> parts;
        std::string cur;
        for (char c : multi) {
          if (c == '|') {
            if (!cur.empty()) parts.push_back(cur);
            cur.clear();
          } else {
            cur += c;
          }
        }
        if (!cur.empty()) parts.push_back(cur);
        std::sort(parts.begin(), parts.end());
        std::string glued = "(";
        for (auto& s : parts) glued += s;
        glued += ")";
        law[n][glued] += p;
      }
    }
  }
  double mass = 0;
  for (auto& [code, p] : law[6]) mass += p;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));

  Rng rng(55);
  const int reps = 1000000;
  std::map<std::string, double> emp;
  for (int i = 0; i < reps; ++i)
    emp[canonical_code(sample_mb_leaves(*ford, 6, rng)).code] += 1.0 / reps;
  CHECK(total_variation(emp, law[6]) < 0.01);
}

TEST_CASE("marked spine sizes: endpoints and monotonicity") {
  Rng rng(56);
  auto ford = family_ford(0.5);
  for (int rep = 0; rep < 300; ++rep) {
    uint64_t n = 2 + rng.below(50);
    auto spine = marked_spine_sizes(*ford, n, rng);
    CHECK(spine.front() == static_cast<long long>(n));
    CHECK(spine.back() == 1);
    CHECK(std::is_sorted(spine.rbegin(), spine.rend()));
  }
  CHECK(marked_spine_sizes(*ford, 1, rng) == std::vector<long long>{1});
}

TEST_CASE("node cap stops runaway recursion") {
  Rng rng(57);
  auto basic = family_basic(4.0);  // stays put with prob 1 - n^-4
  CHECK_THROWS_AS(sample_mb_leaves(*basic, 64, rng, 50),
                  ResourceCapError);
}
