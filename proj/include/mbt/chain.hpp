#pragma once

// The non-increasing leaf-count Markov chain of a Markov-Branching
// family: transitions p(i,j) = sum_lambda q_i(lambda) m_j(lambda) j/i,
// absorption times, the rescaled-path snapshots, the rare-jump
// functional, and the limiting Laplace exponents / exponential-
// functional moments they converge to.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "mbt/dislocation.hpp"
#include "mbt/splitting.hpp"

namespace mbt {

class MarkovChainSpec {
 public:
  MarkovChainSpec(FamilyPtr family, double gamma);

  const SplittingFamily& family() const { return *family_; }
  double gamma() const { return gamma_; }

  // Exact transition law p(i, .) by support enumeration (throws when the
  // family support at i is not enumerable). Keys are destination states.
  std::map<uint64_t, double> transition_pmf(uint64_t i) const;

  // One step from i: draw lambda ~ q_i, return a size-biased part
  // (P(part j of lambda) = lambda_j / i); from 1, falls to 0 with
  // probability q_1(empty).
  uint64_t step(uint64_t i, Rng& rng) const;

  double stay_prob(uint64_t i) const;
  // Conditional exit state (the chain moved: next < i).
  uint64_t exit_step(uint64_t i, Rng& rng) const;

 private:
  FamilyPtr family_;
  double gamma_;
};

MarkovChainSpec chain_from_family(FamilyPtr family, double gamma);

// Size-biased one-step sample without enumerating P_i.
uint64_t size_biased_step(const SplittingFamily& family, uint64_t i, Rng& rng);

// First hitting time of 0, simulated with geometric dwell fast-forward
// (the number of visited states is the cost, not the number of steps).
// Throws past step_cap steps.
long long absorption_time(const MarkovChainSpec& spec, uint64_t n, Rng& rng,
                          long long step_cap = 1'000'000'000);

// X_n(floor(n^gamma t)) / n on the given time grid (grid must be
// non-decreasing).
std::vector<double> rescaled_path(const MarkovChainSpec& spec, uint64_t n,
                                  const std::vector<double>& t_grid, Rng& rng);

// n^gamma * sum_k p(n,k) (1 - k/n) g(k/n), by exact enumeration.
double hprime_functional(const MarkovChainSpec& spec, uint64_t n,
                         const std::function<double(double)>& g);

// Limit law of A_n / n^gamma: the exponential functional of a
// subordinator with Laplace exponent phi; moment(k) =
// k! / prod_{j=1..k} phi(j gamma).
struct LimitLaw {
  std::function<double(double)> phi;
  double gamma = 1.0;
  double moment(int k) const;
};

LimitLaw phi_from_nu(const MeasurePtr& nu, double gamma);

// Measure mu on [0,1] given as atoms at 0 and 1 plus a density on (0,1):
// phi(lambda) = mu({0}) + mu({1}) lambda + int (1-x^lambda)/(1-x) mu(dx).
struct MuMeasure {
  double atom0 = 0;
  double atom1 = 0;
  std::function<double(double)> density;  // may be null
};
LimitLaw phi_from_mu(const MuMeasure& mu, double gamma);

// Kolmogorov-Smirnov sup distance of a sample to a cdf.
double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf);

struct MomentReport {
  std::vector<double> sample_moments;
  std::vector<double> limit_moments;
  std::vector<double> rel_errors;
};
MomentReport moment_compare(const std::vector<double>& sample,
                            const LimitLaw& law, int k_max);

}  // namespace mbt
