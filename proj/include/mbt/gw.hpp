#pragma once

// Galton--Watson tree sampling, exact size distributions, and
// conditioning on a vertex or leaf count.
//
// "Leaves" of a GW tree are its out-degree-0 vertices (the root counts
// when childless); this is the convention under which conditioned GW
// trees are Markov-Branching.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mbt/rng.hpp"
#include "mbt/tree.hpp"

namespace mbt {

// Conditioning on a size with zero probability (e.g. even vertex counts
// for the pure-binary law).
struct ImpossibleConditioning : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class OffspringLaw {
 public:
  // pmf entries 0..support_max (analytic tails truncated where the
  // remaining mass is below 1e-15). Mean must be 1 within 1e-9 and
  // eta(1) < 1.
  OffspringLaw(std::string name, std::vector<double> pmf,
               double variance, bool variance_finite = true,
               bool require_critical = true);

  const std::string& name() const { return name_; }
  double pmf(uint64_t k) const {
    return k < pmf_.size() ? pmf_[k] : 0.0;
  }
  uint64_t support_max() const { return pmf_.size() - 1; }
  double mean() const { return mean_; }
  double variance() const { return variance_; }
  bool variance_finite() const { return variance_finite_; }

  uint64_t sample(Rng& rng) const;

 private:
  std::string name_;
  std::vector<double> pmf_;
  std::vector<double> cdf_;
  double mean_ = 0;
  double variance_ = 0;
  bool variance_finite_ = true;
};

// Built-in critical laws: "geo2" (Geometric(1/2)), "poisson1",
// "binary" ({0,2} with probability 1/2 each), "leafless-binary"
// (eta(0) = 2 - sqrt(2), eta(i) = (1 - 2^{-1/2})^{i-1} for i >= 2).
OffspringLaw builtin_offspring(const std::string& name);

// Tail law eta(k) = kappa * k^{-1-alpha} for k >= 2, truncated at k_max
// with eta(0), eta(1) adjusted so that mass and mean are exact.
// Requires alpha in (1,2) and kappa small enough that eta(1) >= 0.
OffspringLaw stable_tail_offspring(double alpha, double kappa,
                                   uint64_t k_max = 1'000'000);

// Unconditioned GW tree; nullopt if the vertex count exceeds cap
// (overflow is a value, not a failure).
std::optional<RootedTree> sample_gw(const OffspringLaw& eta, Rng& rng,
                                    uint64_t cap);

// Exact P(#vertices = k) / P(#leaves = k), k = 1..n_max, by convolution
// dynamic programming over the root degree.
std::vector<double> size_pmf_vertices(const OffspringLaw& eta, uint64_t n_max);
std::vector<double> size_pmf_leaves(const OffspringLaw& eta, uint64_t n_max);
// Independent route for the vertex-count law: n^{-1} P(S_n = -1) for the
// random walk with increment law (eta(i+1), i >= -1).
std::vector<double> size_pmf_vertices_walk(const OffspringLaw& eta,
                                           uint64_t n_max);

// Exact conditional samplers. Vertex conditioning uses abort-early
// rejection with a total budget of 10^7 generated vertices, then falls
// back to the cycle-lemma construction; leaf conditioning is rejection
// only and reports failure at the budget. Impossible conditioning
// (zero-probability size) is rejected up front with a diagnostic.
RootedTree sample_gw_n_vertices(const OffspringLaw& eta, uint64_t n, Rng& rng);
RootedTree sample_gw_n_leaves(const OffspringLaw& eta, uint64_t n, Rng& rng);
// The cycle-lemma route on its own (the rejection fallback), exposed so
// tests can compare the two constructions.
RootedTree sample_gw_n_vertices_cycle_lemma(const OffspringLaw& eta,
                                            uint64_t n, Rng& rng);

// Out-degree-0 count (GW leaf convention).
int gw_leaf_count(const RootedTree& t);

}  // namespace mbt
