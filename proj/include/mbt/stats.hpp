#pragma once

// Goodness-of-fit helpers shared by tests, the acceptance suite and the
// CLI summaries.

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace mbt {

// Pearson chi-square p-value for observed counts against expected
// probabilities (expected counts below min_expected are pooled).
inline double chi_square_pvalue(const std::vector<double>& observed,
                                const std::vector<double>& expected_probs,
                                double total, double min_expected = 5.0) {
  if (observed.size() != expected_probs.size() || observed.empty())
    throw std::invalid_argument("chi_square: size mismatch");
  double stat = 0;
  int dof = -1;
  double pool_obs = 0, pool_exp = 0;
  for (size_t i = 0; i < observed.size(); ++i) {
    double e = expected_probs[i] * total;
    if (e < min_expected) {
      pool_obs += observed[i];
      pool_exp += e;
      continue;
    }
    stat += (observed[i] - e) * (observed[i] - e) / e;
    ++dof;
  }
  if (pool_exp > 0) {
    stat += (pool_obs - pool_exp) * (pool_obs - pool_exp) / pool_exp;
    ++dof;
  }
  if (dof < 1) throw std::invalid_argument("chi_square: not enough cells");
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, stat));
}

// Total-variation distance between two pmfs over a shared key space.
template <class Key>
double total_variation(const std::map<Key, double>& p,
                       const std::map<Key, double>& q) {
  double tv = 0;
  auto it = p.begin();
  auto jt = q.begin();
  while (it != p.end() || jt != q.end()) {
    if (jt == q.end() || (it != p.end() && it->first < jt->first)) {
      tv += std::abs(it->second);
      ++it;
    } else if (it == p.end() || jt->first < it->first) {
      tv += std::abs(jt->second);
      ++jt;
    } else {
      tv += std::abs(it->second - jt->second);
      ++it;
      ++jt;
    }
  }
  return 0.5 * tv;
}

inline double mean_of(const std::vector<double>& xs) {
  double s = 0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline double variance_of(const std::vector<double>& xs) {
  double m = mean_of(xs);
  double s = 0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size());
}

// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_slope: need >= 2 points");
  double mx = mean_of(x), my = mean_of(y), num = 0, den = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

inline double median_of(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("median: empty");
  std::sort(xs.begin(), xs.end());
  size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace mbt
