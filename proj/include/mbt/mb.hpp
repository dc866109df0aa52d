#pragma once

// Recursive construction of Markov-Branching trees from splitting
// families, by leaf count or vertex count.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mbt/splitting.hpp"
#include "mbt/tree.hpp"

namespace mbt {

struct ResourceCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tree with exactly n leaves (n >= 2; n = 1 yields the geometric line
// tree, whose single endpoint is the leaf and which degenerates to a
// lone root when the cemetery fires immediately). Throws
// ResourceCapError past node_cap nodes -- a symptom of q_n((n)) ~ 1.
RootedTree sample_mb_leaves(const SplittingFamily& family, uint64_t n,
                            Rng& rng, uint64_t node_cap = 10'000'000);

// Tree with exactly n vertices.
RootedTree sample_mb_vertices(const SplittingFamily& family, uint64_t n,
                              Rng& rng, uint64_t node_cap = 10'000'000);

// Samples a tree with n leaves, marks a uniform leaf, and returns the
// leaf counts along its ancestral line (the X_n chain path without the
// trailing zeros).
std::vector<long long> marked_spine_sizes(const SplittingFamily& family,
                                          uint64_t n, Rng& rng);

}  // namespace mbt
