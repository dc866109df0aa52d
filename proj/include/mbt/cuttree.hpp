#pragma once

// Uniform random edge deletion and the genealogy of the components it
// creates (the cut-tree), plus the first-cut split law used to validate
// the displayed splitting formulas.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mbt/rng.hpp"
#include "mbt/tree.hpp"

namespace mbt {

struct CutTreeResult {
  // Binary genealogy: n leaves (one per vertex of the input, labelled by
  // leaf_vertex), n-1 internal nodes (one per deletion, in coalescence
  // order); rooted at the component holding all of the input.
  RootedTree tree;
  // For each cut-tree vertex, the input vertex it represents (-1 for
  // internal component nodes).
  std::vector<int> leaf_vertex;
  // Deletions that happened inside the root's current component before
  // the root was isolated; equals the depth of the root's leaf.
  long long cuts_to_isolate_root = 0;
};

// Runs the full deletion procedure with a uniform edge order drawn
// up front; the genealogy is built by reverse-time coalescence with a
// union-find structure.
CutTreeResult cut_tree(const RootedTree& t, Rng& rng);

// Deterministic variant replaying a given deletion order (edges are
// identified by their child vertex).
CutTreeResult cut_tree_with_order(const RootedTree& t,
                                  const std::vector<int>& deletion_order);

// Count of cuts to isolate the root without building the genealogy.
long long cuts_to_isolate_root(const RootedTree& t, Rng& rng);

// Empirical pmf of the first-cut component sizes {k, n-k} over `reps`
// runs of the deletion procedure on fresh base trees.
// base: "cayley" (uniform rooted labelled) or "recursive".
std::map<std::pair<uint64_t, uint64_t>, double> first_split_law(
    const std::string& base, uint64_t n, uint64_t reps, Rng& rng);

}  // namespace mbt
