#include <doctest.h>

#include <cmath>

#include "mbt/ensembles.hpp"
#include "mbt/metric.hpp"

using namespace mbt;

namespace {

RootedTree path_n(int n) {
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i - 1;
  return RootedTree::from_parents(parent);
}

}  // namespace

TEST_CASE("from_discrete distances and weights") {
  auto cherry = RootedTree::from_parents({-1, 0, 0});
  auto m = from_discrete(cherry, 1.0, WeightKind::LeafUniform);
  CHECK(m.dist[1][2] == 2.0);
  CHECK(m.dist[0][1] == 1.0);
  CHECK(m.weight[0] == 0.0);
  CHECK(m.weight[1] == doctest::Approx(0.5));
  m.validate();

  auto p3 = from_discrete(path_n(3), 0.5, WeightKind::VertexUniform);
  CHECK(p3.height() == doctest::Approx(1.0));
  p3.validate();

  std::vector<int> star(6, 0);
  star[0] = -1;
  auto st = from_discrete(RootedTree::from_parents(star), 1.0,
                          WeightKind::LeafUniform);
  for (int v = 1; v <= 5; ++v) CHECK(st.weight[v] == doctest::Approx(0.2));
  CHECK(st.weight[0] == 0.0);

  CHECK_THROWS_AS(from_discrete(RootedTree::single_vertex(), 1.0,
                                WeightKind::LeafUniform),
                  std::invalid_argument);
}

TEST_CASE("rooted GH: exact values on small references") {
  auto seg1 = from_discrete(path_n(2), 1.0, WeightKind::VertexUniform);
  auto seg2 = from_discrete(path_n(2), 2.0, WeightKind::VertexUniform);
  CHECK(gh_rooted(seg1, seg1) == 0.0);
  CHECK(gh_rooted(seg1, seg2) == doctest::Approx(0.5));  // (b - a)/2

  auto cherry = from_discrete(RootedTree::from_parents({-1, 0, 0}), 1.0,
                              WeightKind::VertexUniform);
  auto p3 = from_discrete(path_n(3), 1.0, WeightKind::VertexUniform);
  CHECK(gh_rooted(cherry, p3) == doctest::Approx(0.5));  // regression constant
  CHECK(gh_rooted(p3, cherry) == gh_rooted(cherry, p3));

  // cap
  auto big = from_discrete(path_n(8), 1.0, WeightKind::VertexUniform);
  CHECK_THROWS_AS(gh_rooted(big, big), std::invalid_argument);
  CHECK(gh_upper(big, big) == 0.0);
}

TEST_CASE("upper bounds dominate the exact distance") {
  Rng rng(91);
  // sizes up to 7 so the glued space exceeds the exact-Prokhorov cap and
  // the coupling bound branch runs too
  for (int rep = 0; rep < 200; ++rep) {
    auto a = from_discrete(sample_uniform_ordered(2 + rng.below(6), rng), 1.0,
                           WeightKind::VertexUniform);
    auto b = from_discrete(sample_uniform_ordered(2 + rng.below(6), rng), 1.0,
                           WeightKind::VertexUniform);
    double exact = gh_rooted(a, b);
    CHECK(gh_upper(a, b) >= exact - 1e-12);
    CHECK(ghp_upper(a, b) >= exact - 1e-12);
  }
}

TEST_CASE("prokhorov on a common finite space") {
  std::vector<std::vector<double>> d{{0.0, 0.5}, {0.5, 0.0}};
  std::vector<double> mu{1.0, 0.0}, nu{0.0, 1.0};
  CHECK(prokhorov(mu, mu, d) == 0.0);
  CHECK(prokhorov(mu, nu, d) == doctest::Approx(0.5).epsilon(1e-9));
  std::vector<std::vector<double>> dfar{{0.0, 3.0}, {3.0, 0.0}};
  CHECK(prokhorov(mu, nu, dfar) == doctest::Approx(1.0).epsilon(1e-9));

  std::vector<std::vector<double>> big(13, std::vector<double>(13, 0.0));
  std::vector<double> w(13, 1.0 / 13);
  CHECK_THROWS_AS(prokhorov(w, w, big), std::invalid_argument);
}

TEST_CASE("scaling identity is exact for dyadic factors") {
  Rng rng(92);
  for (int rep = 0; rep < 40; ++rep) {
    auto ta = sample_uniform_ordered(2 + rng.below(5), rng);
    auto tb = sample_uniform_ordered(2 + rng.below(5), rng);
    double base = gh_rooted(from_discrete(ta, 1.0, WeightKind::VertexUniform),
                            from_discrete(tb, 1.0, WeightKind::VertexUniform));
    for (double a : {0.5, 2.0}) {
      double scaled =
          gh_rooted(from_discrete(ta, a, WeightKind::VertexUniform),
                    from_discrete(tb, a, WeightKind::VertexUniform));
      CHECK(scaled == a * base);
    }
  }
}

TEST_CASE("height and diameter scale linearly") {
  auto t = path_n(5);
  auto m1 = from_discrete(t, 1.0, WeightKind::VertexUniform);
  auto m2 = from_discrete(t, 0.25, WeightKind::VertexUniform);
  CHECK(m2.height() == doctest::Approx(0.25 * m1.height()));
  CHECK(m2.diam() == doctest::Approx(0.25 * m1.diam()));
}
