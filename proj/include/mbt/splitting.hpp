#pragma once

// Splitting distributions (q_n) / (p_n) on integer partitions: the
// two-atom and deterministic halving examples, the Ford / Remy / k-ary /
// Marchal growth-model families, conditioned Galton-Watson families, and
// the cut-tree families, plus the rare-macroscopic-splits functional.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mbt/gw.hpp"
#include "mbt/partition.hpp"
#include "mbt/rng.hpp"

namespace mbt {

class SplittingFamily {
 public:
  enum class Index { Leaves, Vertices };

  virtual ~SplittingFamily() = default;

  virtual Index index() const = 0;
  virtual std::string spec() const = 0;

  // pmf at size n (n >= 2 for the partition laws; see q1 accessors for
  // the n = 1 boundary of leaf-indexed families).
  virtual double pmf(uint64_t n, const IntPartition& lambda) const = 0;
  virtual IntPartition sample(uint64_t n, Rng& rng) const = 0;

  // Probability of the trivial split (n); equals the stay-probability of
  // the size-biased chain.
  virtual double stay_prob(uint64_t n) const {
    return pmf(n, IntPartition::single_block(n));
  }
  // Draw conditioned on lambda != (n).
  virtual IntPartition sample_split(uint64_t n, Rng& rng) const;

  // Cemetery probability q_1(emptyset) for leaf-indexed families
  // (q_1((1)) = 1 - q_1(emptyset)).
  virtual double q1_empty() const;

  // Partitions with positive mass at size n, when enumerable at
  // reasonable cost; nullopt otherwise.
  virtual std::optional<std::vector<IntPartition>> support(uint64_t n) const;
};

using FamilyPtr = std::shared_ptr<const SplittingFamily>;

// q_n((n)) = 1 - n^{-alpha}, q_n((ceil(n/2), floor(n/2))) = n^{-alpha};
// q_1(empty) = 1.
FamilyPtr family_basic(double alpha);
// q_n((ceil(n/2), floor(n/2))) = 1 for n >= 2; q_1(empty) = 1.
FamilyPtr family_deterministic_halving();
// Ford's alpha-model root splits, alpha in (0,1), binary partitions.
FamilyPtr family_ford(double alpha);
// Remy's algorithm root splits (the alpha = 1/2 display).
FamilyPtr family_remy();
// k-ary growth root splits; sizes m in (k-1)N + 2 - k, partitions with k
// parts all congruent to 1 mod (k-1).
FamilyPtr family_kary(uint64_t k);
// Marchal's algorithm root splits, beta in (1,2].
FamilyPtr family_marchal(double beta);
// Conditioned Galton-Watson splits; size pmf tables are precomputed up
// to n_max at construction.
FamilyPtr family_gw_leaves(const OffspringLaw& eta, uint64_t n_max = 4096);
FamilyPtr family_gw_vertices(const OffspringLaw& eta, uint64_t n_max = 4096);
// First-cut component sizes of the uniform edge-deletion procedure.
FamilyPtr family_cut_cayley();
FamilyPtr family_cut_recursive();

// Family from a CLI-style spec string, e.g. "ford:alpha=0.4",
// "gw-vertices:offspring=poisson1", "basic:alpha=1", "kary:k=3".
FamilyPtr parse_family(const std::string& spec);

// n^gamma * sum_lambda q_n(lambda) (1 - lambda_1/n) f(lambda_1/n, ...).
// Exhaustive over the family support when enumerable; otherwise Monte
// Carlo with the reported standard error.
struct FunctionalEstimate {
  double value = 0;
  double std_error = 0;  // 0 for exhaustive evaluation
  bool exhaustive = true;
  uint64_t samples = 0;
};
FunctionalEstimate hypothesis_h_functional(
    const SplittingFamily& family, uint64_t n,
    const std::function<double(std::span<const double>)>& f, double gamma,
    Rng* rng = nullptr, uint64_t mc_samples = 200'000);

}  // namespace mbt
