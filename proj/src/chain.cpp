#include "mbt/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace mbt {

MarkovChainSpec::MarkovChainSpec(FamilyPtr family, double gamma)
    : family_(std::move(family)), gamma_(gamma) {
  if (!family_) throw std::invalid_argument("chain: null family");
  if (family_->index() != SplittingFamily::Index::Leaves)
    throw std::invalid_argument("chain: leaf-indexed family required");
  if (!(gamma > 0)) throw std::invalid_argument("chain: gamma > 0");
}

MarkovChainSpec chain_from_family(FamilyPtr family, double gamma) {
  return MarkovChainSpec(std::move(family), gamma);
}

std::map<uint64_t, double> MarkovChainSpec::transition_pmf(uint64_t i) const {
  if (i == 0) return {{0, 1.0}};
  if (i == 1) {
    double qe = family_->q1_empty();
    return {{0, qe}, {1, 1.0 - qe}};
  }
  auto sup = family_->support(i);
  if (!sup)
    throw std::invalid_argument(
        "transition_pmf: family support not enumerable at i=" +
        std::to_string(i));
  std::map<uint64_t, double> p;
  for (const auto& lam : *sup) {
    double q = family_->pmf(i, lam);
    if (q <= 0) continue;
    // p(i,j) += q_i(lambda) m_j(lambda) j / i over the distinct parts.
    uint64_t prev = 0;
    for (size_t a = 0; a < lam.parts.size(); ++a) {
      uint64_t j = lam.parts[a];
      if (j == prev) continue;  // multiplicities handled via m_j below
      prev = j;
      double mj = static_cast<double>(lam.multiplicity(j));
      p[j] += q * mj * static_cast<double>(j) / static_cast<double>(i);
    }
  }
  return p;
}

uint64_t size_biased_step(const SplittingFamily& family, uint64_t i, Rng& rng) {
  if (i == 0) return 0;
  if (i == 1) return rng.bernoulli(family.q1_empty()) ? 0 : 1;
  IntPartition lam = family.sample(i, rng);
  // P(pick part a) = lambda_a / i.
  uint64_t u = rng.below(i);
  uint64_t acc = 0;
  for (uint64_t part : lam.parts) {
    acc += part;
    if (u < acc) return part;
  }
  return lam.parts.back();
}

uint64_t MarkovChainSpec::step(uint64_t i, Rng& rng) const {
  return size_biased_step(*family_, i, rng);
}

double MarkovChainSpec::stay_prob(uint64_t i) const {
  if (i == 0) return 1.0;
  if (i == 1) return 1.0 - family_->q1_empty();
  return family_->stay_prob(i);
}

uint64_t MarkovChainSpec::exit_step(uint64_t i, Rng& rng) const {
  if (i == 0) throw std::invalid_argument("exit_step: absorbed");
  if (i == 1) return 0;
  IntPartition lam = family_->sample_split(i, rng);
  uint64_t u = rng.below(i);
  uint64_t acc = 0;
  for (uint64_t part : lam.parts) {
    acc += part;
    if (u < acc) return part;
  }
  return lam.parts.back();  // unreachable: parts sum to i > u
}

long long absorption_time(const MarkovChainSpec& spec, uint64_t n, Rng& rng,
                          long long step_cap) {
  long long steps = 0;
  uint64_t state = n;
  while (state > 0) {
    double stay = spec.stay_prob(state);
    long long dwell = 1;
    if (stay > 0.0) {
      if (stay >= 1.0)
        throw std::runtime_error("absorption_time: absorbing state " +
                                 std::to_string(state) + " above 0");
      dwell += static_cast<long long>(rng.geometric(1.0 - stay));
    }
    steps += dwell;
    if (steps > step_cap)
      throw std::runtime_error("absorption_time: step cap exceeded");
    state = spec.exit_step(state, rng);
  }
  return steps;
}

std::vector<double> rescaled_path(const MarkovChainSpec& spec, uint64_t n,
                                  const std::vector<double>& t_grid, Rng& rng) {
  std::vector<long long> ticks;
  ticks.reserve(t_grid.size());
  const double scale = std::pow(static_cast<double>(n), spec.gamma());
  for (double t : t_grid) {
    if (t < 0) throw std::invalid_argument("rescaled_path: t >= 0");
    ticks.push_back(static_cast<long long>(std::floor(t * scale)));
  }
  if (!std::is_sorted(ticks.begin(), ticks.end()))
    throw std::invalid_argument("rescaled_path: grid must be non-decreasing");
  std::vector<double> out(ticks.size());
  uint64_t state = n;
  long long now = 0;  // chain time already consumed
  size_t gi = 0;
  while (gi < ticks.size()) {
    if (state == 0) {
      for (; gi < ticks.size(); ++gi) out[gi] = 0.0;
      break;
    }
    double stay = spec.stay_prob(state);
    long long dwell = 1;
    if (stay > 0.0) {
      if (stay >= 1.0)
        throw std::runtime_error("rescaled_path: absorbing state above 0");
      dwell += static_cast<long long>(rng.geometric(1.0 - stay));
    }
    // State holds for chain times [now, now + dwell).
    while (gi < ticks.size() && ticks[gi] < now + dwell) {
      out[gi] = static_cast<double>(state) / static_cast<double>(n);
      ++gi;
    }
    now += dwell;
    state = spec.exit_step(state, rng);
  }
  return out;
}

double hprime_functional(const MarkovChainSpec& spec, uint64_t n,
                         const std::function<double(double)>& g) {
  auto p = spec.transition_pmf(n);
  double acc = 0;
  for (const auto& [k, prob] : p) {
    double x = static_cast<double>(k) / static_cast<double>(n);
    acc += prob * (1.0 - x) * g(x);
  }
  return std::pow(static_cast<double>(n), spec.gamma()) * acc;
}

double LimitLaw::moment(int k) const {
  if (k < 1) throw std::invalid_argument("moment: k >= 1");
  double denom = 1.0;
  for (int j = 1; j <= k; ++j) denom *= phi(gamma * static_cast<double>(j));
  double num = 1.0;
  for (int j = 2; j <= k; ++j) num *= static_cast<double>(j);
  return num / denom;
}

LimitLaw phi_from_nu(const MeasurePtr& nu, double gamma) {
  LimitLaw law;
  law.gamma = gamma;
  law.phi = [nu](double lambda) { return nu->phi(lambda); };
  return law;
}

LimitLaw phi_from_mu(const MuMeasure& mu, double gamma) {
  LimitLaw law;
  law.gamma = gamma;
  MuMeasure m = mu;
  law.phi = [m](double lambda) {
    double v = m.atom0 + m.atom1 * lambda;
    if (m.density) {
      boost::math::quadrature::tanh_sinh<double> ts;
      v += ts.integrate(
          [&](double x) {
            if (x <= 0.0 || x >= 1.0) return 0.0;
            return (1.0 - std::pow(x, lambda)) / (1.0 - x) * m.density(x);
          },
          0.0, 1.0);
    }
    return v;
  };
  return law;
}

double ks_statistic(std::vector<double> sample,
                    const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double ks = 0;
  for (size_t i = 0; i < sample.size(); ++i) {
    double f = cdf(sample[i]);
    ks = std::max(ks, std::abs(f - static_cast<double>(i + 1) / n));
    ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
  }
  return ks;
}

MomentReport moment_compare(const std::vector<double>& sample,
                            const LimitLaw& law, int k_max) {
  if (sample.empty()) throw std::invalid_argument("moment_compare: empty");
  MomentReport r;
  for (int k = 1; k <= k_max; ++k) {
    double m = 0;
    for (double x : sample) m += std::pow(x, k);
    m /= static_cast<double>(sample.size());
    double lim = law.moment(k);
    r.sample_moments.push_back(m);
    r.limit_moments.push_back(lim);
    r.rel_errors.push_back(std::abs(m - lim) / std::abs(lim));
  }
  return r;
}

}  // namespace mbt
