#include "mbt/gw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mbt {

namespace {
constexpr double kMeanTol = 1e-9;
constexpr uint64_t kRejectionBudget = 10'000'000;
}  // namespace

OffspringLaw::OffspringLaw(std::string name, std::vector<double> pmf,
                           double variance, bool variance_finite,
                           bool require_critical)
    : name_(std::move(name)),
      pmf_(std::move(pmf)),
      variance_(variance),
      variance_finite_(variance_finite) {
  if (pmf_.empty()) throw std::invalid_argument("offspring: empty pmf");
  double mass = 0, mean = 0;
  for (size_t k = 0; k < pmf_.size(); ++k) {
    if (pmf_[k] < 0) throw std::invalid_argument("offspring: negative mass");
    mass += pmf_[k];
    mean += static_cast<double>(k) * pmf_[k];
  }
  if (std::abs(mass - 1.0) > 1e-12)
    throw std::invalid_argument("offspring " + name_ + ": mass " +
                                std::to_string(mass) + " != 1");
  if (pmf_.size() > 1 && pmf_[1] >= 1.0)
    throw std::invalid_argument("offspring: eta(1) must be < 1");
  if (require_critical && std::abs(mean - 1.0) > kMeanTol)
    throw std::invalid_argument("offspring " + name_ + ": mean " +
                                std::to_string(mean) + " != 1");
  mean_ = mean;
  cdf_.resize(pmf_.size());
  double acc = 0;
  for (size_t k = 0; k < pmf_.size(); ++k) {
    acc += pmf_[k];
    cdf_[k] = acc;
  }
  cdf_.back() = 1.0;
}

uint64_t OffspringLaw::sample(Rng& rng) const {
  double u = rng.next_double();
  if (cdf_.size() <= 64) {
    for (size_t k = 0; k < cdf_.size(); ++k)
      if (u < cdf_[k]) return k;
    return cdf_.size() - 1;
  }
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.end()) --it;
  return static_cast<uint64_t>(it - cdf_.begin());
}

OffspringLaw builtin_offspring(const std::string& name) {
  if (name == "geo2" || name == "geometric") {
    // eta(k) = 2^{-k-1}: mean 1, variance 2. Tail beyond k = 60 is below
    // 1e-18 and dropped.
    std::vector<double> pmf;
    for (int k = 0; k <= 60; ++k) pmf.push_back(std::ldexp(1.0, -k - 1));
    return OffspringLaw("geo2", pmf, 2.0);
  }
  if (name == "poisson1" || name == "poisson") {
    std::vector<double> pmf;
    double term = std::exp(-1.0);
    for (int k = 0; k <= 40; ++k) {
      pmf.push_back(term);
      term /= (k + 1);
    }
    return OffspringLaw("poisson1", pmf, 1.0);
  }
  if (name == "binary") {
    return OffspringLaw("binary", {0.5, 0.0, 0.5}, 1.0);
  }
  if (name == "leafless-binary" || name == "leafless_binary") {
    // eta(0) = 2 - sqrt(2), eta(i) = (1 - 2^{-1/2})^{i-1} for i >= 2;
    // mean 1, variance 4(sqrt(2) - 1). Tail beyond i = 150 < 1e-79.
    const double r = 1.0 - 1.0 / std::sqrt(2.0);
    std::vector<double> pmf{2.0 - std::sqrt(2.0), 0.0};
    double term = r;
    for (int i = 2; i <= 150; ++i) {
      pmf.push_back(term);
      term *= r;
    }
    return OffspringLaw("leafless-binary", pmf, 4.0 * (std::sqrt(2.0) - 1.0));
  }
  throw std::invalid_argument("unknown offspring law: " + name);
}

OffspringLaw stable_tail_offspring(double alpha, double kappa, uint64_t k_max) {
  if (!(alpha > 1.0 && alpha < 2.0))
    throw std::invalid_argument("stable_tail: alpha in (1,2)");
  if (kappa <= 0) throw std::invalid_argument("stable_tail: kappa > 0");
  std::vector<double> pmf(k_max + 1, 0.0);
  double mass2 = 0, mean2 = 0;
  for (uint64_t k = 2; k <= k_max; ++k) {
    double p = kappa * std::pow(static_cast<double>(k), -1.0 - alpha);
    pmf[k] = p;
    mass2 += p;
    mean2 += static_cast<double>(k) * p;
  }
  // eta(1) = 1 - mean2, eta(0) = mean2 - mass2 makes mass and mean exact
  // at this truncation; this perturbation of the two lowest atoms is the
  // documented recentering of the truncated tail.
  double eta1 = 1.0 - mean2;
  double eta0 = mean2 - mass2;
  if (eta1 < 0 || eta0 < 0)
    throw std::invalid_argument(
        "stable_tail: kappa too large for a critical law at this truncation");
  pmf[0] = eta0;
  pmf[1] = eta1;
  return OffspringLaw("stable:alpha=" + std::to_string(alpha), pmf,
                      0.0, /*variance_finite=*/false);
}

std::optional<RootedTree> sample_gw(const OffspringLaw& eta, Rng& rng,
                                    uint64_t cap) {
  if (cap == 0) throw std::invalid_argument("sample_gw: cap >= 1");
  std::vector<int> parent{-1};
  std::vector<size_t> todo{0};
  while (!todo.empty()) {
    size_t v = todo.back();
    todo.pop_back();
    uint64_t c = eta.sample(rng);
    if (parent.size() + c > cap) return std::nullopt;
    for (uint64_t i = 0; i < c; ++i) {
      parent.push_back(static_cast<int>(v));
      todo.push_back(parent.size() - 1);
    }
  }
  return RootedTree::from_parents(parent);
}

std::vector<double> size_pmf_vertices(const OffspringLaw& eta, uint64_t n_max) {
  if (n_max == 0) throw std::invalid_argument("size_pmf: n_max >= 1");
  // v[n] = sum_{p>=1} eta(p) (v^{*p})[n-1] + eta(0) 1_{n=1}; subtree
  // sizes are >= 1, so (v^{*p})[n-1] only involves v[<= n-1] and the
  // table fills in one upward pass. conv[p] is the p-fold convolution.
  const uint64_t p_cap = std::min<uint64_t>(eta.support_max(), n_max);
  std::vector<double> v(n_max + 1, 0.0);
  std::vector<std::vector<double>> conv(
      p_cap + 1, std::vector<double>(n_max + 1, 0.0));
  conv[0][0] = 1.0;
  v[1] = eta.pmf(0);
  if (p_cap >= 1) conv[1][1] = v[1];
  for (uint64_t n = 2; n <= n_max; ++n) {
    double s = 0.0;
    for (uint64_t p = 1; p <= std::min<uint64_t>(p_cap, n - 1); ++p)
      s += eta.pmf(p) * conv[p][n - 1];
    v[n] = s;
    for (uint64_t p = 1; p <= p_cap; ++p) {
      double acc = 0.0;
      for (uint64_t m = 1; m + (p - 1) <= n; ++m)
        acc += v[m] * conv[p - 1][n - m];
      conv[p][n] = acc;
    }
  }
  return std::vector<double>(v.begin() + 1, v.end());
}

std::vector<double> size_pmf_leaves(const OffspringLaw& eta, uint64_t n_max) {
  if (n_max == 0) throw std::invalid_argument("size_pmf: n_max >= 1");
  // l[n] = P(#out-degree-0 vertices = n). A childless root gives one
  // leaf; for p >= 1 the subtree leaf counts add. The p = 1 term
  // self-references l[n] and is absorbed by the (1 - eta(1)) division.
  const double eta1 = eta.pmf(1);
  const uint64_t p_cap = std::min<uint64_t>(eta.support_max(), n_max);
  std::vector<double> l(n_max + 1, 0.0);
  std::vector<std::vector<double>> conv(
      p_cap + 1, std::vector<double>(n_max + 1, 0.0));
  conv[0][0] = 1.0;
  for (uint64_t n = 1; n <= n_max; ++n) {
    // conv[p][n] for p >= 2 only needs l[<= n-1].
    for (uint64_t p = 2; p <= p_cap; ++p) {
      double acc = 0.0;
      for (uint64_t m = 1; m + (p - 1) <= n && m < n; ++m)
        acc += l[m] * conv[p - 1][n - m];
      conv[p][n] = acc;
    }
    double s = (n == 1) ? eta.pmf(0) : 0.0;
    for (uint64_t p = 2; p <= std::min<uint64_t>(p_cap, n); ++p)
      s += eta.pmf(p) * conv[p][n];
    l[n] = s / (1.0 - eta1);
    if (p_cap >= 1) conv[1][n] = l[n];
  }
  return std::vector<double>(l.begin() + 1, l.end());
}

std::vector<double> size_pmf_vertices_walk(const OffspringLaw& eta,
                                           uint64_t n_max) {
  // Random-walk route: P(#vertices = n) = n^{-1} P(S_n = -1) with
  // increments (eta(i+1), i >= -1), i.e. n^{-1} P(sum of n offspring
  // draws = n-1).
  std::vector<double> conv{1.0};
  std::vector<double> out(n_max, 0.0);
  for (uint64_t n = 1; n <= n_max; ++n) {
    size_t cap = std::min<uint64_t>(conv.size() - 1 + eta.support_max(), n_max);
    std::vector<double> next(cap + 1, 0.0);
    for (size_t a = 0; a < conv.size(); ++a) {
      if (conv[a] == 0.0) continue;
      for (uint64_t k = 0; k <= eta.support_max() && a + k <= cap; ++k)
        next[a + k] += conv[a] * eta.pmf(k);
    }
    conv = std::move(next);
    if (n - 1 < conv.size()) out[n - 1] = conv[n - 1] / static_cast<double>(n);
  }
  return out;
}

int gw_leaf_count(const RootedTree& t) {
  int k = 0;
  for (int v = 0; v < t.n_vertices(); ++v)
    if (t.out_degree(v) == 0) ++k;
  return k;
}

// Cycle-lemma construction: offspring counts conditioned on summing to
// n-1 (rejection on the sum only), rotated so the Lukasiewicz path
// stays non-negative before the final step, then read as preorder
// degrees.
RootedTree sample_gw_n_vertices_cycle_lemma(const OffspringLaw& eta,
                                            uint64_t n, Rng& rng) {
  std::vector<uint64_t> deg(n);
  for (;;) {
    uint64_t sum = 0;
    bool over = false;
    for (uint64_t i = 0; i < n; ++i) {
      deg[i] = eta.sample(rng);
      sum += deg[i];
      if (sum > n - 1) {
        over = true;
        break;
      }
    }
    if (!over && sum == n - 1) break;
  }
  int64_t s = 0, smin = 0;
  size_t rot = 0;
  for (size_t i = 0; i < n; ++i) {
    s += static_cast<int64_t>(deg[i]) - 1;
    if (s < smin) {
      smin = s;
      rot = i + 1;
    }
  }
  rot %= n;
  std::vector<int> parent(n, -1);
  std::vector<int> stack{0};
  size_t next = 1;
  for (size_t i = 0; i < n; ++i) {
    int v = stack.back();
    stack.pop_back();
    uint64_t c = deg[(rot + i) % n];
    size_t first = next;
    next += c;
    for (uint64_t j = 0; j < c; ++j) {
      parent[first + j] = v;
      stack.push_back(static_cast<int>(first + c - 1 - j));
    }
  }
  return RootedTree::from_parents(parent);
}

RootedTree sample_gw_n_vertices(const OffspringLaw& eta, uint64_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("sample_gw_n_vertices: n >= 1");
  auto pmf = size_pmf_vertices(eta, n);
  if (pmf[n - 1] <= 0.0)
    throw ImpossibleConditioning(
        "sample_gw_n_vertices: P(#vertices = " + std::to_string(n) +
        ") = 0 for offspring law " + eta.name());
  uint64_t budget = kRejectionBudget;
  while (budget > 0) {
    std::vector<int> parent{-1};
    std::vector<size_t> todo{0};
    bool dead = false;
    while (!todo.empty()) {
      size_t v = todo.back();
      todo.pop_back();
      uint64_t c = eta.sample(rng);
      if (parent.size() + c > n) {  // exceeding n dooms the attempt
        dead = true;
        break;
      }
      for (uint64_t i = 0; i < c; ++i) {
        parent.push_back(static_cast<int>(v));
        todo.push_back(parent.size() - 1);
      }
    }
    budget -= std::min<uint64_t>(budget, parent.size() + 1);
    if (!dead && parent.size() == n) return RootedTree::from_parents(parent);
  }
  return sample_gw_n_vertices_cycle_lemma(eta, n, rng);
}

RootedTree sample_gw_n_leaves(const OffspringLaw& eta, uint64_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("sample_gw_n_leaves: n >= 1");
  auto pmf = size_pmf_leaves(eta, n);
  if (pmf[n - 1] <= 0.0)
    throw ImpossibleConditioning(
        "sample_gw_n_leaves: P(#leaves = " + std::to_string(n) +
        ") = 0 for offspring law " + eta.name());
  int64_t budget = static_cast<int64_t>(kRejectionBudget);
  while (budget > 0) {
    std::vector<int> parent{-1};
    std::vector<size_t> todo{0};
    uint64_t leaves = 0;
    bool dead = false;
    while (!todo.empty()) {
      size_t v = todo.back();
      todo.pop_back();
      uint64_t c = eta.sample(rng);
      if (c == 0) {
        if (++leaves > n) {  // exceeding n leaves dooms the attempt
          dead = true;
          break;
        }
        continue;
      }
      for (uint64_t i = 0; i < c; ++i) {
        parent.push_back(static_cast<int>(v));
        todo.push_back(parent.size() - 1);
      }
      if (static_cast<int64_t>(parent.size()) > budget) {
        throw std::runtime_error(
            "sample_gw_n_leaves: rejection budget exhausted");
      }
    }
    budget -= static_cast<int64_t>(parent.size() + 1);
    if (!dead && leaves == n) return RootedTree::from_parents(parent);
  }
  throw std::runtime_error("sample_gw_n_leaves: rejection budget exhausted");
}

}  // namespace mbt
