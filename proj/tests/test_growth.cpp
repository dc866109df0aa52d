#include <doctest.h>

#include <map>
#include <set>

#include "mbt/growth.hpp"
#include "mbt/splitting.hpp"
#include "mbt/stats.hpp"

using namespace mbt;

TEST_CASE("first steps and counting identities") {
  Rng rng(61);
  auto t1 = grow_tree("remy", 1, rng);
  CHECK(t1.n_vertices() == 2);
  CHECK(leaf_count(t1) == 1);
  CHECK(t1.out_degree(0) == 1);

  // Step 2 has a single edge to choose: the shape is deterministic.
  auto code2 = canonical_code(grow_tree("remy", 2, rng));
  for (int i = 0; i < 20; ++i)
    CHECK(canonical_code(grow_tree("remy", 2, rng)) == code2);

  for (int rep = 0; rep < 40; ++rep) {
    uint64_t steps = 1 + rng.below(30);
    auto t = grow_tree("remy", steps, rng);
    CHECK(leaf_count(t) == static_cast<int>(steps));
    CHECK(t.n_vertices() == static_cast<int>(2 * steps));
  }
  for (uint64_t k : {2ull, 3ull, 4ull}) {
    for (int rep = 0; rep < 20; ++rep) {
      uint64_t steps = 1 + rng.below(20);
      auto t = grow_tree("kary:k=" + std::to_string(k), steps, rng);
      CHECK(leaf_count(t) == static_cast<int>(1 + (k - 1) * (steps - 1)));
    }
  }
  CHECK_THROWS_AS(GrowthRun::create("ford:alpha=1.5"), std::invalid_argument);
  CHECK_THROWS_AS(GrowthRun::create("marchal:beta=0.5"), std::invalid_argument);
  CHECK_THROWS_AS(GrowthRun::create("x"), std::invalid_argument);
}

TEST_CASE("nestedness: deleting the step additions recovers the snapshot") {
  Rng rng(62);
  for (const std::string model :
       {"remy", "ford:alpha=0.3", "kary:k=3", "marchal:beta=1.5"}) {
    auto run = GrowthRun::create(model);
    run.step(rng);
    std::string prev_code = canonical_code(run.tree()).code;
    for (int s = 2; s <= 25; ++s) {
      size_t old_size = run.parent_map().size();
      run.step(rng);
      const auto& added = run.history().back().added_vertices;
      const auto& raw = run.parent_map();
      REQUIRE(raw.size() == old_size + added.size());
      for (size_t i = 0; i < added.size(); ++i)
        CHECK(added[i] == static_cast<int>(old_size + i));
      // Undo: truncate the appended vertices; a vertex whose parent was
      // the new split vertex reattaches to that vertex's own parent.
      std::vector<int> undone(raw.begin(), raw.begin() + old_size);
      for (size_t v = 0; v < old_size; ++v)
        if (undone[v] >= static_cast<int>(old_size)) undone[v] = raw[undone[v]];
      CHECK(canonical_code(RootedTree::from_parents(undone)).code == prev_code);
      prev_code = canonical_code(run.tree()).code;
    }
  }
}

TEST_CASE("weight audits hold exactly at every step") {
  Rng rng(63);
  // Ford: pendant = m, inner = m - 1 (total weight m - alpha).
  auto ford = GrowthRun::create("ford:alpha=0.3");
  for (int s = 1; s <= 200; ++s) {
    ford.step(rng);
    auto a = ford.weight_audit();
    CHECK(a.pendant_edges == static_cast<long long>(ford.leaf_count()));
    CHECK(a.inner_edges == static_cast<long long>(ford.leaf_count()) - 1);
  }
  // Marchal: E - #{deg >= 3} = m and sum (deg - 1) = E - 1 give the
  // total weight m beta - 1 identically in beta.
  auto marchal = GrowthRun::create("marchal:beta=1.5");
  for (int s = 1; s <= 200; ++s) {
    marchal.step(rng);
    auto a = marchal.weight_audit();
    CHECK(a.edges - a.big_vertices ==
          static_cast<long long>(marchal.leaf_count()));
    CHECK(a.degree_excess_sum == a.edges - 1);
  }
}

TEST_CASE("ford at alpha = 1/2 is pathwise remy") {
  Rng rng_a(64), rng_b(64);
  auto a = GrowthRun::create("ford:alpha=0.5");
  auto b = GrowthRun::create("remy");
  for (int s = 0; s < 40; ++s) {
    a.step(rng_a);
    b.step(rng_b);
  }
  CHECK(a.tree().parents() == b.tree().parents());
}

TEST_CASE("marchal at beta = 2 grows binary trees with remy's law") {
  Rng rng(65);
  const int reps = 100000;
  std::map<std::string, double> marchal_law, remy_law;
  for (int i = 0; i < reps; ++i) {
    auto t = grow_tree("marchal:beta=2.0", 5, rng);
    for (int v = 0; v < t.n_vertices(); ++v)
      CHECK((t.out_degree(v) == 0 || t.out_degree(v) <= 2));
    marchal_law[canonical_code(t).code] += 1.0 / reps;
    remy_law[canonical_code(grow_tree("remy", 5, rng)).code] += 1.0 / reps;
  }
  CHECK(total_variation(marchal_law, remy_law) < 0.01);
}

TEST_CASE("root edge strip") {
  Rng rng(66);
  auto t1 = grow_tree("remy", 1, rng);
  CHECK(root_edge_strip(t1).n_vertices() == 1);
  auto t5 = grow_tree("remy", 5, rng);
  auto s5 = root_edge_strip(t5);
  CHECK(s5.n_vertices() == t5.n_vertices() - 1);
  CHECK(leaf_count(s5) == leaf_count(t5));
  auto cherry = RootedTree::from_parents({-1, 0, 0});
  CHECK_THROWS_AS(root_edge_strip(cherry), std::invalid_argument);
}

TEST_CASE("stripped ford root split law matches the splitting family") {
  Rng rng(67);
  auto family = family_ford(0.4);
  const int reps = 100000;
  std::map<IntPartition, double> emp;
  for (int i = 0; i < reps; ++i) {
    auto t = root_edge_strip(grow_tree("ford:alpha=0.4", 5, rng));
    emp[IntPartition(root_split_leaves(t))] += 1.0 / reps;
  }
  std::map<IntPartition, double> ref;
  auto sup = family->support(5);
  for (const auto& lam : *sup) ref[lam] = family->pmf(5, lam);
  CHECK(total_variation(emp, ref) < 0.01);
}
