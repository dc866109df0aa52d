#pragma once

// Dynamical tree-growth algorithms: Remy's uniform edge grafting and its
// Ford, k-ary and Marchal extensions. A growth run produces a nested
// sequence of trees on one randomness source; per-step metadata records
// which vertices each step added.

#include <cstdint>
#include <string>
#include <vector>

#include "mbt/rng.hpp"
#include "mbt/tree.hpp"

namespace mbt {

struct GrowthStep {
  std::vector<int> added_vertices;  // original ids created by this step
};

class GrowthRun {
 public:
  // model: "remy", "ford:alpha=A", "kary:k=K", "marchal:beta=B".
  static GrowthRun create(const std::string& model);

  // One growth step; step 1 creates the root-edge tree.
  void step(Rng& rng);
  void run_to(uint64_t n_steps, Rng& rng);

  uint64_t steps_done() const { return steps_; }
  // Snapshot of the current tree (root has out-degree 1).
  RootedTree tree() const;
  // Raw parent array over stable original ids (steps only append).
  const std::vector<int>& parent_map() const { return parent_of_; }
  const std::vector<GrowthStep>& history() const { return history_; }

  // Integer weight audit: for Ford, total edge weight of T_m equals
  // m(1-alpha) + (m-1) alpha = m - alpha with m = #leaves (checked via
  // the two category counts); for Marchal it equals
  // E(beta-1) + sum_{deg >= 3}(deg-1-beta) = m beta - 1. Returns the
  // pair of integer coefficients (constant term, beta/alpha term) so
  // tests can verify the identity in exact arithmetic.
  struct WeightAudit {
    long long pendant_edges = 0;
    long long inner_edges = 0;
    long long edges = 0;
    long long big_vertices = 0;        // degree >= 3 count (Marchal)
    long long degree_excess_sum = 0;   // sum (deg - 1) over degree >= 3
  };
  WeightAudit weight_audit() const;

  uint64_t leaf_count() const { return n_leaves_; }

 private:
  enum class Model { Remy, Ford, Kary, Marchal };
  Model model_ = Model::Remy;
  double alpha_ = 0.5;   // Ford
  double beta_ = 2.0;    // Marchal
  uint64_t kary_k_ = 2;  // k-ary

  // Edge list by original vertex ids; edge e = (child_of_[e] -> its parent).
  std::vector<int> parent_of_;            // original-id parent array
  std::vector<int> degree_;               // graph degree by original id
  std::vector<int> pendant_edges_;        // edges whose child is a leaf
  std::vector<int> inner_edges_;          // all other edges
  std::vector<int> edge_class_pos_;       // position within its class
  std::vector<int8_t> edge_is_pendant_;
  uint64_t steps_ = 0;
  uint64_t n_leaves_ = 0;
  std::vector<GrowthStep> history_;

  // Marchal: vertices grouped by degree; a Fenwick array over degree
  // buckets carries count_d * max(0, d-1-beta) for logarithmic selection.
  std::vector<std::vector<int>> degree_members_;  // degree -> vertices
  std::vector<int> degree_pos_;                   // vertex -> index in bucket
  std::vector<double> degree_weight_fen_;
  void fen_add(size_t degree, double delta);
  double fen_total() const;
  size_t fen_find(double target) const;
  double bucket_weight(size_t d) const;

  void add_edge(int child, bool pendant);
  void reclass_edge(int child, bool pendant);
  int pick_edge_uniform(Rng& rng);
  int pick_edge_ford(Rng& rng);
  // Returns vertex id (graft target) or -1 with *edge set (split target).
  int pick_marchal(Rng& rng, int* edge_child);
  void set_degree(int v, int d);
  void graft_on_edge(int edge_child, uint64_t new_leaves, GrowthStep& meta);
  void graft_on_vertex(int v, GrowthStep& meta);
};

// Convenience: grow `model` for n_steps and return the final tree.
RootedTree grow_tree(const std::string& model, uint64_t n_steps, Rng& rng);

// Re-roots at the root's unique child and drops the old root (the
// MB-sequence normalization for growth models). Rejects trees whose
// root degree is not 1.
RootedTree root_edge_strip(const RootedTree& t);

// Leaf-count partition of the root split (sorted descending): the
// sizes lambda of the subtrees above the root.
std::vector<uint64_t> root_split_leaves(const RootedTree& t);
std::vector<uint64_t> root_split_vertices(const RootedTree& t);

}  // namespace mbt
