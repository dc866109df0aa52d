#include "mbt/cuttree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mbt/ensembles.hpp"

namespace mbt {

namespace {

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int x) {
    while (up[x] != x) {
      up[x] = up[up[x]];
      x = up[x];
    }
    return x;
  }
  void unite(int a, int b) { up[find(a)] = find(b); }
};

std::vector<int> uniform_edge_order(const RootedTree& t, Rng& rng) {
  std::vector<int> order(t.n_vertices() - 1);
  std::iota(order.begin(), order.end(), 1);  // edge = child vertex
  for (size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng.below(i)]);
  return order;
}

}  // namespace

CutTreeResult cut_tree_with_order(const RootedTree& t,
                                  const std::vector<int>& deletion_order) {
  const int n = t.n_vertices();
  if (static_cast<int>(deletion_order.size()) != n - 1)
    throw std::invalid_argument("cut_tree: deletion order must cover all edges");
  if (n == 1) {
    CutTreeResult r{RootedTree::single_vertex(), {0}, 0};
    return r;
  }
  // Reverse-time coalescence: process deletions backwards as insertions;
  // each insertion creates the component node whose children are the two
  // pieces it splits into at that (forward) time.
  std::vector<int> cut_parent(2 * n - 1, -1);
  std::vector<int> repr(n);  // input component root -> current cut node
  std::iota(repr.begin(), repr.end(), 0);
  UnionFind uf(n);
  long long root_cuts = 0;
  int next_node = n;
  for (int i = n - 2; i >= 0; --i) {
    int child = deletion_order[i];
    if (child <= 0 || child >= n)
      throw std::invalid_argument("cut_tree: bad edge id in deletion order");
    int a = uf.find(child);
    int b = uf.find(t.parent(child));
    if (a == b) throw std::invalid_argument("cut_tree: repeated edge");
    int root_comp = uf.find(0);
    if (root_comp == a || root_comp == b) ++root_cuts;
    int node = next_node++;
    cut_parent[repr[a]] = node;
    cut_parent[repr[b]] = node;
    uf.unite(a, b);
    repr[uf.find(a)] = node;
  }
  std::vector<int> old_of_new;
  RootedTree ct = RootedTree::from_parents_tracked(cut_parent, &old_of_new);
  std::vector<int> leaf_vertex(ct.n_vertices(), -1);
  for (int v = 0; v < ct.n_vertices(); ++v)
    if (old_of_new[v] < n) leaf_vertex[v] = old_of_new[v];
  return CutTreeResult{std::move(ct), std::move(leaf_vertex), root_cuts};
}

CutTreeResult cut_tree(const RootedTree& t, Rng& rng) {
  return cut_tree_with_order(t, uniform_edge_order(t, rng));
}

long long cuts_to_isolate_root(const RootedTree& t, Rng& rng) {
  const int n = t.n_vertices();
  if (n == 1) return 0;
  auto order = uniform_edge_order(t, rng);
  UnionFind uf(n);
  long long cuts = 0;
  for (int i = n - 2; i >= 0; --i) {
    int child = order[i];
    int a = uf.find(child);
    int b = uf.find(t.parent(child));
    int root_comp = uf.find(0);
    if (root_comp == a || root_comp == b) ++cuts;
    uf.unite(a, b);
  }
  return cuts;
}

std::map<std::pair<uint64_t, uint64_t>, double> first_split_law(
    const std::string& base, uint64_t n, uint64_t reps, Rng& rng) {
  if (n < 2) throw std::invalid_argument("first_split_law: n >= 2");
  std::map<std::pair<uint64_t, uint64_t>, double> law;
  for (uint64_t r = 0; r < reps; ++r) {
    RootedTree t = base == "cayley"     ? sample_cayley(n, rng).tree
                   : base == "recursive" ? sample_recursive(n, rng).tree
                                         : throw std::invalid_argument(
                                               "first_split_law: base must be "
                                               "cayley or recursive");
    // First cut only: component sizes are (subtree size, rest).
    int child = 1 + static_cast<int>(rng.below(n - 1));
    std::vector<uint64_t> size(n, 1);
    for (int v = static_cast<int>(n) - 1; v >= 1; --v)
      size[t.parent(v)] += size[v];
    uint64_t k = size[child];
    auto key = std::make_pair(std::max(k, n - k), std::min(k, n - k));
    law[key] += 1.0;
  }
  for (auto& [k, v] : law) v /= static_cast<double>(reps);
  return law;
}

}  // namespace mbt
