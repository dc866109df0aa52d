#pragma once

// Finite rooted trees as parent/children arrays, canonical isomorphism
// codes, gluing and elementary statistics.
//
// Vertices are dense integers 0..n-1 with the root at index 0 after
// construction (builders may work in any order and then normalize).
// Trees are immutable value types once built; all randomized helpers
// take an explicit Rng stream.

#include <string>
#include <vector>

#include "mbt/rng.hpp"

namespace mbt {

class RootedTree {
 public:
  // Builds from a parent array (parent[root] == -1). Validates that the
  // input encodes a single connected acyclic rooted tree and renumbers
  // vertices in BFS order with the root at 0, preserving child order.
  static RootedTree from_parents(const std::vector<int>& parent);

  // Same, also reporting the renumbering: (*old_id)[v] is the input
  // index of normalized vertex v.
  static RootedTree from_parents_tracked(const std::vector<int>& parent,
                                         std::vector<int>* old_id);

  static RootedTree single_vertex() { return from_parents({-1}); }

  int n_vertices() const { return static_cast<int>(parent_.size()); }
  int n_edges() const { return n_vertices() - 1; }
  int root() const { return 0; }
  int parent(int v) const { return parent_[v]; }
  const std::vector<int>& parents() const { return parent_; }
  const std::vector<int>& children(int v) const { return children_[v]; }
  int out_degree(int v) const { return static_cast<int>(children_[v].size()); }
  // Graph degree (neighbor count).
  int degree(int v) const { return out_degree(v) + (v == 0 ? 0 : 1); }
  // A leaf is a non-root vertex of degree 1; the single-vertex tree has
  // no leaf under this convention.
  bool is_leaf(int v) const { return v != 0 && out_degree(v) == 0; }

  int height(int v) const { return depth_[v]; }

 private:
  RootedTree() = default;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<int> depth_;
};

// Root-preserving isomorphism invariant: balanced-parenthesis encoding
// with child codes sorted lexicographically. Two trees have equal codes
// iff they are root-preserving isomorphic.
struct CanonicalCode {
  std::string code;
  bool operator==(const CanonicalCode& o) const { return code == o.code; }
  bool operator!=(const CanonicalCode& o) const { return code != o.code; }
  bool operator<(const CanonicalCode& o) const { return code < o.code; }
};

CanonicalCode canonical_code(const RootedTree& t);

// New root whose children are the roots of the inputs, in order.
// Rejects an empty list.
RootedTree glue(const std::vector<RootedTree>& subtrees);

int height(const RootedTree& t);
int diameter(const RootedTree& t);
int leaf_count(const RootedTree& t);
std::vector<int> leaves_of(const RootedTree& t);
// Multiset of out-degrees, sorted descending.
std::vector<int> degree_profile(const RootedTree& t);

// Uniformly chosen leaf index; rejects leafless (single-vertex) trees.
int uniform_leaf(const RootedTree& t, Rng& rng);

// Leaf counts of the subtrees rooted along the root -> leaf path:
// entry k is the number of leaves among descendants of the marked
// leaf's ancestor at height k. Starts at leaf_count(t), non-increasing,
// ends at 1.
std::vector<long long> sizes_along_spine(const RootedTree& t, int leaf);

}  // namespace mbt
