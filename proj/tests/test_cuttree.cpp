#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>

#include "mbt/chain.hpp"
#include "mbt/cuttree.hpp"
#include "mbt/ensembles.hpp"
#include "mbt/splitting.hpp"
#include "mbt/stats.hpp"

using namespace mbt;

namespace {

// Independent forward-time reference: recursively split components along
// the deletion order and build the genealogy directly. Quadratic; for
// small validation instances only.
struct ForwardRef {
  const RootedTree& t;
  const std::vector<int>& order;  // deletion order (edge = child vertex)
  std::vector<int> cut_parent;
  long long root_cuts = 0;
  int next_id = 0;

  explicit ForwardRef(const RootedTree& t_, const std::vector<int>& order_)
      : t(t_), order(order_) {
    cut_parent.assign(2 * t.n_vertices() - 1, -1);
    next_id = t.n_vertices();
  }

  // Splits `members` (which contains the endpoints of edges in `edges`)
  // at the earliest edge; returns the cut-tree node representing it.
  int build(std::vector<int> members, std::vector<int> edges, int depth,
            bool has_root) {
    if (edges.empty()) {
      REQUIRE(members.size() == 1);
      if (has_root) root_cuts = depth;
      return members[0];
    }
    // earliest-deleted edge in this component
    int best = -1, best_pos = 1 << 30;
    for (int e : edges) {
      int pos = static_cast<int>(std::find(order.begin(), order.end(), e) -
                                 order.begin());
      if (pos < best_pos) {
        best_pos = pos;
        best = e;
      }
    }
    // split members by the side of `best` (child side = subtree of best)
    std::vector<char> in_sub(t.n_vertices(), 0);
    std::vector<int> stack{best};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      in_sub[v] = 1;
      for (int c : t.children(v)) stack.push_back(c);
    }
    std::vector<int> ma, mb, ea, eb;
    for (int v : members) (in_sub[v] ? ma : mb).push_back(v);
    for (int e : edges) {
      if (e == best) continue;
      (in_sub[e] ? ea : eb).push_back(e);
    }
    int node = next_id++;
    int ca = build(ma, ea, depth + 1, false);
    int cb = build(mb, eb, depth + 1, has_root);
    cut_parent[ca] = node;
    cut_parent[cb] = node;
    return node;
  }

  CutTreeResult result() {
    std::vector<int> members(t.n_vertices());
    std::iota(members.begin(), members.end(), 0);
    std::vector<int> edges(t.n_vertices() - 1);
    std::iota(edges.begin(), edges.end(), 1);
    build(members, edges, 0, true);
    std::vector<int> old_of_new;
    auto ct = RootedTree::from_parents_tracked(cut_parent, &old_of_new);
    std::vector<int> leaf_vertex(ct.n_vertices(), -1);
    for (int v = 0; v < ct.n_vertices(); ++v)
      if (old_of_new[v] < t.n_vertices()) leaf_vertex[v] = old_of_new[v];
    return CutTreeResult{std::move(ct), std::move(leaf_vertex), root_cuts};
  }
};

// Canonical serialization of a leaf-labelled binary genealogy.
std::string labeled_code(const RootedTree& t, const std::vector<int>& leaf_vertex,
                         int v) {
  if (t.out_degree(v) == 0) return "L" + std::to_string(leaf_vertex[v]);
  std::vector<std::string> kids;
  for (int c : t.children(v)) kids.push_back(labeled_code(t, leaf_vertex, c));
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (auto& k : kids) out += k + ",";
  out += ")";
  return out;
}

}  // namespace

TEST_CASE("single edge and the two-path") {
  Rng rng(71);
  auto edge = RootedTree::from_parents({-1, 0});
  auto r = cut_tree(edge, rng);
  CHECK(r.tree.n_vertices() == 3);
  CHECK(r.tree.out_degree(0) == 2);
  CHECK(r.cuts_to_isolate_root == 1);

  auto p3 = RootedTree::from_parents({-1, 0, 1});
  const int reps = 100000;
  int twos = 0;
  for (int i = 0; i < reps; ++i) {
    long long c = cuts_to_isolate_root(p3, rng);
    CHECK(c >= 1);
    CHECK(c <= 2);
    twos += c == 2;
  }
  double sigma = std::sqrt(0.25 * reps);
  CHECK(std::abs(twos - reps / 2.0) < 3 * sigma);
}

TEST_CASE("cut tree structure and the root-depth identity") {
  Rng rng(72);
  for (int rep = 0; rep < 100; ++rep) {
    uint64_t n = 2 + rng.below(40);
    auto base = sample_cayley(n, rng).tree;
    auto r = cut_tree(base, rng);
    int leaves = 0, internals = 0;
    for (int v = 0; v < r.tree.n_vertices(); ++v) {
      if (r.tree.out_degree(v) == 0) {
        ++leaves;
        CHECK(r.leaf_vertex[v] >= 0);
      } else {
        CHECK(r.tree.out_degree(v) == 2);
        ++internals;
        CHECK(r.leaf_vertex[v] == -1);
      }
    }
    CHECK(leaves == static_cast<int>(n));
    CHECK(internals == static_cast<int>(n) - 1);
    // depth of the root's leaf equals the cut count
    for (int v = 0; v < r.tree.n_vertices(); ++v)
      if (r.leaf_vertex[v] == 0)
        CHECK(static_cast<long long>(r.tree.height(v)) ==
              r.cuts_to_isolate_root);
  }
}

TEST_CASE("worked 7-vertex instance against the forward reference") {
  // A fixed tree on 7 vertices and a fixed deletion order: the reverse
  // coalescence must reproduce the forward component genealogy exactly.
  auto base = RootedTree::from_parents({-1, 0, 0, 1, 1, 2, 4});
  std::vector<int> order{3, 6, 1, 5, 2, 4};
  auto fast = cut_tree_with_order(base, order);
  auto ref = ForwardRef(base, order).result();
  CHECK(labeled_code(fast.tree, fast.leaf_vertex, 0) ==
        labeled_code(ref.tree, ref.leaf_vertex, 0));
  CHECK(fast.cuts_to_isolate_root == ref.cuts_to_isolate_root);

  Rng rng(73);
  for (int rep = 0; rep < 200; ++rep) {
    uint64_t n = 2 + rng.below(8);
    auto t = sample_cayley(n, rng).tree;
    std::vector<int> ord(n - 1);
    std::iota(ord.begin(), ord.end(), 1);
    for (size_t i = ord.size(); i > 1; --i)
      std::swap(ord[i - 1], ord[rng.below(i)]);
    auto a = cut_tree_with_order(t, ord);
    auto b = ForwardRef(t, ord).result();
    CHECK(labeled_code(a.tree, a.leaf_vertex, 0) ==
          labeled_code(b.tree, b.leaf_vertex, 0));
    CHECK(a.cuts_to_isolate_root == b.cuts_to_isolate_root);
  }
}

TEST_CASE("hand-worked 7-vertex genealogy") {
  // Tree: 0 -> {1,2}, 1 -> {3,4}, 2 -> {5}, 4 -> {6}; deletion order
  // 3, 6, 1, 5, 2, 4 (edges named by child). Worked out by hand:
  //   cut 3: {3} | {0,1,2,4,5,6}     (root split 1)
  //   cut 6: {6} | {0,1,2,4,5}       (root split 2)
  //   cut 1: {1,4} | {0,2,5}         (root split 3)
  //   cut 5: {5} | {0,2}             (root split 4)
  //   cut 2: {2} | {0}               (root split 5, root isolated)
  //   cut 4: {1} | {4}
  auto base = RootedTree::from_parents({-1, 0, 0, 1, 1, 2, 4});
  auto r = cut_tree_with_order(base, {3, 6, 1, 5, 2, 4});
  CHECK(r.cuts_to_isolate_root == 5);
  std::vector<int> depth_of_leaf(7, -1);
  for (int v = 0; v < r.tree.n_vertices(); ++v)
    if (r.leaf_vertex[v] >= 0) depth_of_leaf[r.leaf_vertex[v]] = r.tree.height(v);
  CHECK(depth_of_leaf == std::vector<int>{5, 4, 5, 1, 4, 4, 2});
  // leaves 0 and 2 are siblings, as are 1 and 4
  auto parent_of_leaf = [&](int vertex) {
    for (int v = 0; v < r.tree.n_vertices(); ++v)
      if (r.leaf_vertex[v] == vertex) return r.tree.parent(v);
    return -1;
  };
  CHECK(parent_of_leaf(0) == parent_of_leaf(2));
  CHECK(parent_of_leaf(1) == parent_of_leaf(4));
  CHECK(parent_of_leaf(0) != parent_of_leaf(1));
}

TEST_CASE("cut-tree leaf depths match the leaf chain of the split family") {
  // The cut tree is Markov-Branching with the displayed first-split
  // laws, so the depth of a uniformly marked leaf plus one is
  // distributed as the chain absorption time A_n. (For Cayley bases the
  // root's own leaf works too by exchangeability; recursive-tree
  // vertices are not exchangeable, so the marked leaf must be uniform.)
  Rng rng(76);
  const uint64_t n = 8;
  const int reps = 30000;
  for (const std::string base : {"cayley", "recursive"}) {
    auto family =
        base == "cayley" ? family_cut_cayley() : family_cut_recursive();
    MarkovChainSpec spec(family, 0.5);
    std::map<long long, double> via_cuts, via_chain;
    for (int i = 0; i < reps; ++i) {
      RootedTree t = base == "cayley" ? sample_cayley(n, rng).tree
                                      : sample_recursive(n, rng).tree;
      auto r = cut_tree(t, rng);
      std::vector<int> cut_leaves;
      for (int v = 0; v < r.tree.n_vertices(); ++v)
        if (r.leaf_vertex[v] >= 0) cut_leaves.push_back(v);
      int marked = cut_leaves[rng.below(cut_leaves.size())];
      via_cuts[r.tree.height(marked) + 1] += 1.0 / reps;
      via_chain[absorption_time(spec, n, rng)] += 1.0 / reps;
    }
    CHECK(total_variation(via_cuts, via_chain) < 0.02);
  }
}

TEST_CASE("first-split law matches the displayed formulas") {
  Rng rng(74);
  auto to_map = [](const std::map<std::pair<uint64_t, uint64_t>, double>& in) {
    std::map<IntPartition, double> out;
    for (auto& [k, v] : in) out[IntPartition({k.first, k.second})] = v;
    return out;
  };
  for (const std::string base : {"cayley", "recursive"}) {
    auto family =
        base == "cayley" ? family_cut_cayley() : family_cut_recursive();
    auto emp = to_map(first_split_law(base, 3, 100000, rng));
    std::map<IntPartition, double> ref;
    auto sup = family->support(3);
    for (const auto& lam : *sup) ref[lam] = family->pmf(3, lam);
    CHECK(total_variation(emp, ref) < 0.01);
  }
  auto law2 = first_split_law("cayley", 2, 100, rng);
  REQUIRE(law2.size() == 1);
  CHECK(law2.begin()->first == std::make_pair(uint64_t{1}, uint64_t{1}));
}

TEST_CASE("Pitman recursivity: components are uniform Cayley trees") {
  Rng rng(75);
  const uint64_t n = 6;
  const int reps = 100000;
  // Conditional shape law of the detached component given its size.
  std::map<int, std::map<std::string, double>> cond;
  std::map<int, double> size_count;
  for (int i = 0; i < reps; ++i) {
    auto t = sample_cayley(n, rng).tree;
    int child = 1 + static_cast<int>(rng.below(n - 1));
    // detached component = subtree of `child`, rooted at child
    std::vector<int> sub{child};
    std::vector<int> map_to(t.n_vertices(), -1);
    map_to[child] = 0;
    std::vector<int> parent{-1};
    for (size_t qi = 0; qi < sub.size(); ++qi)
      for (int c : t.children(sub[qi])) {
        map_to[c] = static_cast<int>(sub.size());
        parent.push_back(map_to[sub[qi]]);
        sub.push_back(c);
      }
    auto comp = RootedTree::from_parents(parent);
    cond[comp.n_vertices()][canonical_code(comp).code] += 1;
    size_count[comp.n_vertices()] += 1;
  }
  // Reference: shape law of uniform rooted labelled trees of size k, by
  // brute enumeration of parent assignments.
  for (int k = 3; k <= 5; ++k) {
    std::map<std::string, double> ref;
    double total = 0;
    std::vector<int> p(k);
    std::function<void(int)> gen = [&](int v) {
      if (v == k) {
        int roots = 0;
        for (int x : p) roots += x == -1;
        if (roots != 1) return;
        try {
          auto t = RootedTree::from_parents(p);
          ref[canonical_code(t).code] += 1;
          total += 1;
        } catch (const std::exception&) {
        }
        return;
      }
      for (int q = -1; q < k; ++q) {
        if (q == v) continue;
        p[v] = q;
        gen(v + 1);
      }
    };
    gen(0);
    for (auto& [c, w] : ref) w /= total;
    std::vector<double> obs, probs;
    for (auto& [code, w] : ref) {
      obs.push_back(cond[k].count(code) ? cond[k][code] : 0.0);
      probs.push_back(w);
    }
    CHECK(chi_square_pvalue(obs, probs, size_count[k]) > 0.001);
  }
}
