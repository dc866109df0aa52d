#pragma once

// Exact uniform samplers and counting oracles for the classical
// combinatorial tree families, plus brute-force enumerators used as
// test oracles.

#include <cstdint>
#include <vector>

#include "mbt/bigint.hpp"
#include "mbt/tree.hpp"

namespace mbt {

// Rooted ordered trees with n vertices: C(2n-2, n-1) / n.
BigInt count_ordered(uint64_t n);
// Unrooted trees on n labelled vertices: n^(n-2) (Cayley); n = 1 -> 1.
BigInt count_labeled(uint64_t n);
// Rooted trees on n labelled vertices: n^(n-1); n = 1 -> 1.
BigInt count_labeled_rooted(uint64_t n);

// t_1..t_n_max: rooted unordered unlabeled trees by vertex count
// (Euler-transform recurrence).
std::vector<BigInt> otter_counts(uint64_t n_max);

// A rooted tree together with original vertex labels (labels[v] is the
// label carried by normalized vertex v).
struct LabeledRootedTree {
  RootedTree tree;
  std::vector<int> labels;
};

// Uniform rooted ordered tree with n vertices (cycle-lemma on a
// shuffled step multiset; exact).
RootedTree sample_uniform_ordered(uint64_t n, Rng& rng);

// Uniform rooted tree on n labelled vertices (uniform Pruefer sequence,
// then a uniform root). Labels are 0..n-1.
LabeledRootedTree sample_cayley(uint64_t n, Rng& rng);

// Uniform rooted unordered unlabeled tree with n vertices, by the
// classical recursive decomposition over (subtree size, multiplicity)
// choices. Weights use exact big integers for n <= polya_exact_cap()
// and long-double arithmetic beyond (relative weight error ~1e-18,
// far below any statistical resolution used here).
RootedTree sample_polya(uint64_t n, Rng& rng);
uint64_t polya_exact_cap();
uint64_t polya_max_n();

// Uniform random recursive tree: vertex i attaches to a uniform vertex
// among 0..i-1; labels are insertion order (so label sequences increase
// along every root-to-leaf path).
LabeledRootedTree sample_recursive(uint64_t n, Rng& rng);

// Exhaustive enumerators (test oracles); guarded to n <= 10.
std::vector<RootedTree> enumerate_ordered(uint64_t n);
std::vector<CanonicalCode> enumerate_unordered(uint64_t n);

}  // namespace mbt
