#include "mbt/mb.hpp"

namespace mbt {

namespace {

struct Task {
  int parent;
  uint64_t size;
};

// Worklist construction shared by both index conventions. A task
// (parent, m) creates the root of an L_m / V_m subtree under parent.
RootedTree build_mb(const SplittingFamily& family, uint64_t n, Rng& rng,
                    uint64_t node_cap, bool leaves_indexed) {
  if (n == 0) throw std::invalid_argument("sample_mb: n >= 1");
  std::vector<int> parent;
  std::vector<Task> todo{{-1, n}};
  auto new_vertex = [&](int par) {
    if (parent.size() >= node_cap)
      throw ResourceCapError(
          "mb sampler: node cap exceeded (family " + family.spec() +
          " may have q_n((n)) too close to 1)");
    parent.push_back(par);
    return static_cast<int>(parent.size()) - 1;
  };
  while (!todo.empty()) {
    Task t = todo.back();
    todo.pop_back();
    if (t.size == 1) {
      if (leaves_indexed) {
        // Line tree with Geometric(q_1(empty)) edges.
        uint64_t edges = rng.geometric(family.q1_empty());
        int v = new_vertex(t.parent);
        for (uint64_t e = 0; e < edges; ++e) v = new_vertex(v);
      } else {
        new_vertex(t.parent);
      }
      continue;
    }
    int v = new_vertex(t.parent);
    IntPartition lam = leaves_indexed ? family.sample(t.size, rng)
                                      : family.sample(t.size - 1, rng);
    for (uint64_t part : lam.parts) todo.push_back({v, part});
  }
  return RootedTree::from_parents(parent);
}

}  // namespace

RootedTree sample_mb_leaves(const SplittingFamily& family, uint64_t n,
                            Rng& rng, uint64_t node_cap) {
  if (family.index() != SplittingFamily::Index::Leaves)
    throw std::invalid_argument("sample_mb_leaves: family " + family.spec() +
                                " is vertex-indexed");
  return build_mb(family, n, rng, node_cap, true);
}

RootedTree sample_mb_vertices(const SplittingFamily& family, uint64_t n,
                              Rng& rng, uint64_t node_cap) {
  if (family.index() != SplittingFamily::Index::Vertices)
    throw std::invalid_argument("sample_mb_vertices: family " + family.spec() +
                                " is leaf-indexed");
  return build_mb(family, n, rng, node_cap, false);
}

std::vector<long long> marked_spine_sizes(const SplittingFamily& family,
                                          uint64_t n, Rng& rng) {
  RootedTree t = sample_mb_leaves(family, n, rng);
  if (t.n_vertices() == 1) return {1};  // degenerate n = 1 line tree
  int leaf = uniform_leaf(t, rng);
  return sizes_along_spine(t, leaf);
}

}  // namespace mbt
