#include "mbt/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace mbt {

namespace {

double log_binomial(uint64_t n, uint64_t k) {
  if (k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(static_cast<double>(n) + 1) -
         std::lgamma(static_cast<double>(k) + 1) -
         std::lgamma(static_cast<double>(n - k) + 1);
}

IntPartition binary_partition(uint64_t k, uint64_t n) {
  return IntPartition({std::max(k, n - k), std::min(k, n - k)});
}

}  // namespace

IntPartition SplittingFamily::sample_split(uint64_t n, Rng& rng) const {
  if (stay_prob(n) <= 0.0) return sample(n, rng);
  // Expected 1/(1 - stay) attempts; families with stay near 1 override.
  for (int tries = 0; tries < 1 << 20; ++tries) {
    IntPartition lam = sample(n, rng);
    if (!(lam.length() == 1 && lam.parts[0] == n)) return lam;
  }
  throw std::runtime_error("sample_split: rejection stalled at n=" +
                           std::to_string(n));
}

double SplittingFamily::q1_empty() const {
  throw std::logic_error("q1_empty: not a leaf-indexed family");
}

std::optional<std::vector<IntPartition>> SplittingFamily::support(
    uint64_t) const {
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Memoized table base for families with an enumerable support.

namespace {

struct Table {
  std::vector<IntPartition> part;
  std::vector<double> prob;
  std::vector<double> cum;
};

class TableFamily : public SplittingFamily {
 public:
  double pmf(uint64_t n, const IntPartition& lambda) const override {
    check_n(n);
    if (n == 1) return pmf1(lambda);
    auto t = table(n);
    for (size_t i = 0; i < t->part.size(); ++i)
      if (t->part[i] == lambda) return t->prob[i];
    return 0.0;
  }

  IntPartition sample(uint64_t n, Rng& rng) const override {
    check_n(n);
    if (n == 1) {
      if (index() == Index::Vertices || !rng.bernoulli(q1_empty()))
        return IntPartition::single_block(1);
      return IntPartition::cemetery();
    }
    auto t = table(n);
    double u = rng.next_double();
    auto it = std::upper_bound(t->cum.begin(), t->cum.end(), u);
    size_t i = std::min<size_t>(it - t->cum.begin(), t->part.size() - 1);
    return t->part[i];
  }

  std::optional<std::vector<IntPartition>> support(uint64_t n) const override {
    check_n(n);
    if (n == 1) return std::vector<IntPartition>{IntPartition::single_block(1)};
    if (!enumerable(n)) return std::nullopt;
    return table(n)->part;
  }

 protected:
  virtual void check_n(uint64_t n) const {
    if (n == 0) throw std::invalid_argument("splitting family: n >= 1");
  }
  // Whether the positive-mass support at n can be listed at sane cost.
  virtual bool enumerable(uint64_t) const { return true; }
  virtual double pmf1(const IntPartition& lambda) const {
    double qe = index() == Index::Leaves ? q1_empty() : 0.0;
    if (lambda.is_cemetery()) return qe;
    if (lambda.length() == 1 && lambda.parts[0] == 1) return 1.0 - qe;
    return 0.0;
  }
  // Positive-mass partitions with probabilities at size n >= 2.
  virtual Table build_table(uint64_t n) const = 0;

  std::shared_ptr<const Table> table(uint64_t n) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find(n);
      if (it != memo_.end()) return it->second;
    }
    auto t = std::make_shared<Table>(build_table(n));
    t->cum.resize(t->prob.size());
    double acc = 0;
    for (size_t i = 0; i < t->prob.size(); ++i) {
      acc += t->prob[i];
      t->cum[i] = acc;
    }
    std::lock_guard<std::mutex> lock(mu_);
    if (cached_entries_ + t->part.size() < kCacheCapEntries) {
      cached_entries_ += t->part.size();
      memo_.emplace(n, t);
    }
    return t;
  }

 private:
  static constexpr size_t kCacheCapEntries = 4'000'000;
  mutable std::mutex mu_;
  mutable std::unordered_map<uint64_t, std::shared_ptr<const Table>> memo_;
  mutable size_t cached_entries_ = 0;
};

// Binary families (Ford / Remy / cut-tree first splits) concentrate
// their mass near k = n-1, so a downward cumulative scan draws a
// partition in O(expected overshoot) without materializing the table.
// prob_of_k covers k in [k_floor, n-1]; leftover mass (the even-n
// symmetric term for the cut families, or scan dust) lands on k_floor.
IntPartition scan_binary_sample(
    uint64_t n, Rng& rng, uint64_t k_floor,
    const std::function<double(uint64_t)>& prob_of_k) {
  double u = rng.next_double();
  double acc = 0;
  for (uint64_t k = n - 1; k > k_floor; --k) {
    acc += prob_of_k(k);
    if (u < acc) return binary_partition(k, n);
  }
  return binary_partition(k_floor, n);
}

// ---------------------------------------------------------------------------

class BasicFamily final : public SplittingFamily {
 public:
  explicit BasicFamily(double alpha) : alpha_(alpha) {
    if (!(alpha > 0)) throw std::invalid_argument("basic: alpha > 0");
  }
  Index index() const override { return Index::Leaves; }
  std::string spec() const override {
    std::ostringstream os;
    os << "basic:alpha=" << alpha_;
    return os.str();
  }
  double q1_empty() const override { return 1.0; }

  double pmf(uint64_t n, const IntPartition& lam) const override {
    if (n == 0) throw std::invalid_argument("basic: n >= 1");
    if (n == 1) return lam.is_cemetery() ? 1.0 : 0.0;
    const double split = std::pow(static_cast<double>(n), -alpha_);
    if (lam.length() == 1 && lam.parts[0] == n) return 1.0 - split;
    if (lam == halving(n)) return split;
    return 0.0;
  }

  IntPartition sample(uint64_t n, Rng& rng) const override {
    if (n == 0) throw std::invalid_argument("basic: n >= 1");
    if (n == 1) return IntPartition::cemetery();
    if (rng.bernoulli(std::pow(static_cast<double>(n), -alpha_)))
      return halving(n);
    return IntPartition::single_block(n);
  }

  double stay_prob(uint64_t n) const override {
    return n <= 1 ? 0.0 : 1.0 - std::pow(static_cast<double>(n), -alpha_);
  }

  IntPartition sample_split(uint64_t n, Rng&) const override {
    if (n < 2) throw std::invalid_argument("sample_split: n >= 2");
    return halving(n);
  }

  std::optional<std::vector<IntPartition>> support(uint64_t n) const override {
    if (n == 1) return std::vector<IntPartition>{};
    return std::vector<IntPartition>{IntPartition::single_block(n), halving(n)};
  }

 private:
  static IntPartition halving(uint64_t n) {
    return IntPartition({(n + 1) / 2, n / 2});
  }
  double alpha_;
};

class HalvingFamily final : public SplittingFamily {
 public:
  Index index() const override { return Index::Leaves; }
  std::string spec() const override { return "halving"; }
  double q1_empty() const override { return 1.0; }
  double pmf(uint64_t n, const IntPartition& lam) const override {
    if (n == 0) throw std::invalid_argument("halving: n >= 1");
    if (n == 1) return lam.is_cemetery() ? 1.0 : 0.0;
    return lam == IntPartition({(n + 1) / 2, n / 2}) ? 1.0 : 0.0;
  }
  IntPartition sample(uint64_t n, Rng&) const override {
    if (n == 0) throw std::invalid_argument("halving: n >= 1");
    if (n == 1) return IntPartition::cemetery();
    return IntPartition({(n + 1) / 2, n / 2});
  }
  double stay_prob(uint64_t) const override { return 0.0; }
  std::optional<std::vector<IntPartition>> support(uint64_t n) const override {
    if (n == 1) return std::vector<IntPartition>{};
    return std::vector<IntPartition>{IntPartition({(n + 1) / 2, n / 2})};
  }
};

// ---------------------------------------------------------------------------

class FordFamily final : public TableFamily {
 public:
  explicit FordFamily(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("ford: alpha in (0,1)");
  }
  Index index() const override { return Index::Leaves; }
  std::string spec() const override {
    std::ostringstream os;
    os << "ford:alpha=" << alpha_;
    return os.str();
  }
  double q1_empty() const override { return 1.0; }
  double stay_prob(uint64_t) const override { return 0.0; }

  double pmf(uint64_t n, const IntPartition& lam) const override {
    check_n(n);
    if (n == 1) return pmf1(lam);
    if (lam.length() != 2 || lam.n() != n) return 0.0;
    return mass(n, lam.parts[0]);
  }

  IntPartition sample(uint64_t n, Rng& rng) const override {
    check_n(n);
    if (n <= kDirectScanCutoff) return TableFamily::sample(n, rng);
    return scan_binary_sample(n, rng, (n + 1) / 2,
                              [&](uint64_t k) { return mass(n, k); });
  }

 protected:
  Table build_table(uint64_t n) const override {
    Table t;
    for (uint64_t k = (n + 1) / 2; k <= n - 1; ++k) {
      t.part.push_back(binary_partition(k, n));
      t.prob.push_back(mass(n, k));
    }
    return t;
  }

 private:
  static constexpr uint64_t kDirectScanCutoff = 4096;
  double mass(uint64_t n, uint64_t k) const {
    const double a = alpha_;
    const double nn = static_cast<double>(n), kk = static_cast<double>(k);
    // (alpha/2) C(n,k) + (1-2 alpha) C(n-2,k-1), factored through
    // C(n-2,k-1) to avoid cancellation (the bracket is >= 1 - 2a/n > 0).
    double bracket =
        0.5 * a * nn * (nn - 1.0) / (kk * (nn - kk)) + (1.0 - 2.0 * a);
    double lg = std::lgamma(kk - a) + std::lgamma(nn - kk - a) -
                std::lgamma(nn - a) - std::lgamma(1.0 - a) +
                log_binomial(n - 2, k - 1) + std::log(bracket);
    double v = std::exp(lg);
    if (2 * k != n) v *= 2.0;
    return v;
  }
  double alpha_;
};

class RemyFamily final : public TableFamily {
 public:
  Index index() const override { return Index::Leaves; }
  std::string spec() const override { return "remy"; }
  double q1_empty() const override { return 1.0; }
  double stay_prob(uint64_t) const override { return 0.0; }

  double pmf(uint64_t n, const IntPartition& lam) const override {
    check_n(n);
    if (n == 1) return pmf1(lam);
    if (lam.length() != 2 || lam.n() != n) return 0.0;
    return mass(n, lam.parts[0]);
  }

  IntPartition sample(uint64_t n, Rng& rng) const override {
    check_n(n);
    if (n <= kDirectScanCutoff) return TableFamily::sample(n, rng);
    return scan_binary_sample(n, rng, (n + 1) / 2,
                              [&](uint64_t k) { return mass(n, k); });
  }

 protected:
  Table build_table(uint64_t n) const override {
    Table t;
    for (uint64_t k = (n + 1) / 2; k <= n - 1; ++k) {
      t.part.push_back(binary_partition(k, n));
      t.prob.push_back(mass(n, k));
    }
    return t;
  }

 private:
  static constexpr uint64_t kDirectScanCutoff = 4096;
  static double mass(uint64_t n, uint64_t k) {
    const double nn = static_cast<double>(n), kk = static_cast<double>(k);
    double lg = std::lgamma(kk - 0.5) + std::lgamma(nn - kk - 0.5) -
                std::lgamma(nn - 0.5) - std::lgamma(0.5) +
                log_binomial(n, k) + std::log(0.25);
    double v = std::exp(lg);
    if (2 * k != n) v *= 2.0;
    return v;
  }
};

// ---------------------------------------------------------------------------
// k-ary growth splits. Valid sizes are m = k + (k-1) s, s >= 0 (the tree
// after s+2 growth steps); partitions have k parts congruent to 1 mod
// k-1, written through their insertion counts l_i = (lambda_i-1)/(k-1).

class KaryFamily final : public TableFamily {
 public:
  explicit KaryFamily(uint64_t k) : k_(k) {
    if (k < 2) throw std::invalid_argument("kary: k >= 2");
  }
  Index index() const override { return Index::Leaves; }
  std::string spec() const override {
    return "kary:k=" + std::to_string(k_);
  }
  double q1_empty() const override { return 1.0; }
  double stay_prob(uint64_t) const override { return 0.0; }

 protected:
  void check_n(uint64_t n) const override {
    if (n == 0) throw std::invalid_argument("kary: n >= 1");
    if (n == 1) return;
    if (n < k_ || (n - k_) % (k_ - 1) != 0)
      throw std::invalid_argument("kary: size " + std::to_string(n) +
                                  " not of the form k + (k-1)s");
  }

  Table build_table(uint64_t m) const override {
    const uint64_t s = (m - k_) / (k_ - 1);  // total insertion count
    const uint64_t n = s + 2;                // growth steps
    const double inv_k = 1.0 / static_cast<double>(k_);
    // S(a) = sum_{j=1}^{a+1} a!/(a-j+1)! (n-j-1)!/(n-2)!, memoized over a.
    std::vector<double> S(s + 1);
    for (uint64_t a = 0; a <= s; ++a) {
      double term = 1.0, sum = 1.0;
      for (uint64_t j = 1; j <= a; ++j) {
        term *= static_cast<double>(a - j + 1) / static_cast<double>(n - j - 1);
        sum += term;
      }
      S[a] = sum;
    }
    const double log_pref =
        -std::log(static_cast<double>(k_)) -
        (static_cast<double>(k_) - 1.0) * std::lgamma(inv_k) +
        std::lgamma(static_cast<double>(n) - 1.0) -
        std::lgamma(inv_k + static_cast<double>(n) - 1.0);
    Table t;
    // Partitions of s into at most k parts (padded with zeros), i.e. the
    // insertion-count profiles.
    std::vector<uint64_t> l;
    enumerate_profiles(s, k_, s, l, [&](const std::vector<uint64_t>& prof) {
      double lg = log_pref;
      for (uint64_t li : prof)
        lg += std::lgamma(inv_k + static_cast<double>(li)) -
              std::lgamma(static_cast<double>(li) + 1.0);
      // Sum of S over distinct arrangements, grouped by the first entry.
      double mult_total = std::lgamma(static_cast<double>(k_));  // log (k-1)!
      std::unordered_map<uint64_t, uint64_t> mult;
      for (uint64_t li : prof) ++mult[li];
      double denom = 0;
      for (auto& [v, c] : mult) denom += std::lgamma(static_cast<double>(c) + 1.0);
      double arrange = 0;
      for (auto& [v, c] : mult)
        arrange += S[v] * static_cast<double>(c) *
                   std::exp(mult_total - denom);
      std::vector<uint64_t> parts;
      for (uint64_t li : prof) parts.push_back(1 + (k_ - 1) * li);
      std::sort(parts.begin(), parts.end(), std::greater<uint64_t>());
      t.part.push_back(IntPartition(parts));
      t.prob.push_back(std::exp(lg) * arrange);
      return true;
    });
    return t;
  }

 private:
  // Non-increasing profiles of `remaining` spread over exactly `slots`
  // entries (zeros allowed), each entry <= cap.
  template <class Fn>
  static bool enumerate_profiles(uint64_t remaining, uint64_t slots,
                                 uint64_t cap, std::vector<uint64_t>& acc,
                                 const Fn& fn) {
    if (slots == 0) {
      if (remaining != 0) return true;
      return fn(acc);
    }
    uint64_t hi = std::min(cap, remaining);
    for (uint64_t v = hi + 1; v-- > 0;) {
      if (remaining - v > v * slots) continue;  // cannot finish non-increasing
      acc.push_back(v);
      bool keep = enumerate_profiles(remaining - v, slots - 1, v, acc, fn);
      acc.pop_back();
      if (!keep) return false;
    }
    return true;
  }

  uint64_t k_;
};

// ---------------------------------------------------------------------------

class MarchalFamily final : public TableFamily {
 public:
  explicit MarchalFamily(double beta) : beta_(beta) {
    if (!(beta > 1.0 && beta <= 2.0))
      throw std::invalid_argument("marchal: beta in (1,2]");
  }
  Index index() const override { return Index::Leaves; }
  std::string spec() const override {
    std::ostringstream os;
    os << "marchal:beta=" << beta_;
    return os.str();
  }
  double q1_empty() const override { return 1.0; }
  double stay_prob(uint64_t) const override { return 0.0; }

  double pmf(uint64_t n, const IntPartition& lam) const override {
    if (n == 0) throw std::invalid_argument("marchal: n >= 1");
    if (n == 1) return lam.is_cemetery() ? 1.0 : 0.0;
    return mass(n, lam);
  }

 protected:
  bool enumerable(uint64_t n) const override { return n <= 40; }

  Table build_table(uint64_t n) const override {
    if (n > 40)
      throw std::invalid_argument(
          "marchal: exhaustive support limited to n <= 40");
    Table t;
    for_each_partition(n, [&](const IntPartition& lam) {
      double p = mass(n, lam);
      if (p > 0) {
        t.part.push_back(lam);
        t.prob.push_back(p);
      }
      return true;
    });
    return t;
  }

 private:
  double mass(uint64_t n, const IntPartition& lam) const {
    const size_t p = lam.length();
    if (p < 2) return 0.0;  // growth trees always branch at the root
    const double ib = 1.0 / beta_;
    // Gamma(p - beta) / Gamma(2 - beta) = prod_{i=2}^{p-1} (i - beta);
    // at beta = 2 this vanishes for p >= 3 (binary trees only).
    double ratio = 1.0;
    for (size_t i = 2; i + 1 <= p; ++i)
      ratio *= static_cast<double>(i) - beta_;
    if (ratio <= 0.0) return 0.0;
    double lg = std::lgamma(static_cast<double>(n) + 1.0);
    for (uint64_t part : lam.parts)
      lg -= std::lgamma(static_cast<double>(part) + 1.0);
    uint64_t run = 1;
    for (size_t i = 1; i <= p; ++i) {
      if (i < p && lam.parts[i] == lam.parts[i - 1]) {
        ++run;
      } else {
        lg -= std::lgamma(static_cast<double>(run) + 1.0);
        run = 1;
      }
    }
    lg += (2.0 - static_cast<double>(p)) * std::log(beta_) +
          std::lgamma(2.0 - ib) + std::log(ratio) -
          std::lgamma(static_cast<double>(n) - ib);
    for (uint64_t part : lam.parts)
      lg += std::lgamma(static_cast<double>(part) - ib) - std::lgamma(1.0 - ib);
    return std::exp(lg);
  }

  double beta_;
};

// ---------------------------------------------------------------------------

class GwFamilyBase : public TableFamily {
 public:
  GwFamilyBase(const OffspringLaw& eta, uint64_t n_max, bool leaves)
      : eta_(eta), leaves_(leaves) {
    size_pmf_ = leaves ? size_pmf_leaves(eta, n_max + 1)
                       : size_pmf_vertices(eta, n_max + 1);
  }

  Index index() const override {
    return leaves_ ? Index::Leaves : Index::Vertices;
  }
  std::string spec() const override {
    return std::string(leaves_ ? "gw-leaves" : "gw-vertices") +
           ":offspring=" + eta_.name();
  }
  double q1_empty() const override {
    if (!leaves_) return SplittingFamily::q1_empty();
    return 1.0 - eta_.pmf(1);
  }

  double stay_prob(uint64_t n) const override {
    if (n <= 1) return 0.0;
    if (leaves_) return eta_.pmf(1);  // lambda = (n): a single passthrough child
    return eta_.pmf(1) * size_prob(n) / size_prob(n + 1);
  }

  double pmf(uint64_t n, const IntPartition& lam) const override {
    if (n == 0) throw std::invalid_argument("gw family: n >= 1");
    if (n == 1) {
      if (leaves_)
        return lam.is_cemetery() ? q1_empty()
                                 : (lam.parts == std::vector<uint64_t>{1}
                                        ? eta_.pmf(1)
                                        : 0.0);
      return lam.parts == std::vector<uint64_t>{1} ? 1.0 : 0.0;
    }
    if (lam.is_cemetery() || lam.n() != n) return 0.0;
    const size_t p = lam.length();
    if (eta_.pmf(p) <= 0.0) return 0.0;
    const double denom = size_prob(leaves_ ? n : n + 1);
    if (denom <= 0.0) return 0.0;
    double lg = std::log(eta_.pmf(p)) +
                std::lgamma(static_cast<double>(p) + 1.0);
    uint64_t run = 1;
    for (size_t i = 1; i <= p; ++i) {
      if (i < p && lam.parts[i] == lam.parts[i - 1]) {
        ++run;
      } else {
        lg -= std::lgamma(static_cast<double>(run) + 1.0);
        run = 1;
      }
    }
    for (uint64_t part : lam.parts) {
      double sp = size_prob(part);
      if (sp <= 0.0) return 0.0;
      lg += std::log(sp);
    }
    lg -= std::log(denom);
    return std::exp(lg);
  }

  IntPartition sample(uint64_t n, Rng& rng) const override {
    if (n == 0) throw std::invalid_argument("gw family: n >= 1");
    if (n == 1) {
      if (leaves_ && rng.bernoulli(q1_empty())) return IntPartition::cemetery();
      return IntPartition::single_block(1);
    }
    // Exact draw: root split of a conditioned tree.
    RootedTree t = leaves_ ? sample_gw_n_leaves(eta_, n, rng)
                           : sample_gw_n_vertices(eta_, n + 1, rng);
    std::vector<uint64_t> parts;
    std::vector<uint64_t> size(t.n_vertices(), 0);
    for (int v = t.n_vertices() - 1; v >= 1; --v) {
      if (leaves_) {
        if (t.out_degree(v) == 0) size[v] += 1;
      } else {
        size[v] += 1;
      }
      size[t.parent(v)] += size[v];
    }
    for (int c : t.children(0)) parts.push_back(size[c]);
    std::sort(parts.begin(), parts.end(), std::greater<uint64_t>());
    return IntPartition(parts);
  }

 protected:
  void check_n(uint64_t n) const override {
    if (n == 0) throw std::invalid_argument("gw family: n >= 1");
    uint64_t need = leaves_ ? n : n + 1;
    if (need > size_pmf_.size())
      throw std::invalid_argument("gw family: size beyond precomputed table");
    if (n >= 2 && size_prob(need) <= 0.0)
      throw ImpossibleConditioning("gw family: impossible conditioning at n=" +
                                   std::to_string(n));
  }

  bool enumerable(uint64_t n) const override { return n <= 40; }

  Table build_table(uint64_t n) const override {
    if (n > 40)
      throw std::invalid_argument("gw family: exhaustive support limited to n <= 40");
    Table t;
    for_each_partition(n, [&](const IntPartition& lam) {
      double p = pmf(n, lam);
      if (p > 0) {
        t.part.push_back(lam);
        t.prob.push_back(p);
      }
      return true;
    });
    return t;
  }

  double size_prob(uint64_t sz) const {
    return (sz >= 1 && sz <= size_pmf_.size()) ? size_pmf_[sz - 1] : 0.0;
  }

  OffspringLaw eta_;
  bool leaves_;
  std::vector<double> size_pmf_;
};

class GwLeavesFamily final : public GwFamilyBase {
 public:
  GwLeavesFamily(const OffspringLaw& eta, uint64_t n_max)
      : GwFamilyBase(eta, n_max, true) {}
};

class GwVerticesFamily final : public GwFamilyBase {
 public:
  GwVerticesFamily(const OffspringLaw& eta, uint64_t n_max)
      : GwFamilyBase(eta, n_max, false) {}
};

// ---------------------------------------------------------------------------
// First-cut component-size laws. The displays cover n/2 < k <= n-1; the
// even-n symmetric partition receives half the displayed value (the two
// ordered contributions coincide), which is what normalization fixes.

class CutCayleyFamily final : public TableFamily {
 public:
  Index index() const override { return Index::Leaves; }
  std::string spec() const override { return "cut-cayley"; }
  double q1_empty() const override { return 1.0; }
  double stay_prob(uint64_t) const override { return 0.0; }

  double pmf(uint64_t n, const IntPartition& lam) const override {
    check_n(n);
    if (n == 1) return pmf1(lam);
    if (lam.length() != 2 || lam.n() != n) return 0.0;
    uint64_t k = lam.parts[0];
    if (k < n - k) return 0.0;
    return k == n - k ? 0.5 * mass(n, k) : mass(n, k);
  }

  IntPartition sample(uint64_t n, Rng& rng) const override {
    check_n(n);
    if (n <= kDirectScanCutoff) return TableFamily::sample(n, rng);
    return scan_binary_sample(n, rng, n / 2 + (n % 2),
                              [&](uint64_t k) {
                                return 2 * k == n ? 0.5 * mass(n, k)
                                                  : mass(n, k);
                              });
  }

 protected:
  Table build_table(uint64_t n) const override {
    Table t;
    for (uint64_t k = n / 2 + 1; k <= n - 1; ++k) {
      t.part.push_back(binary_partition(k, n));
      t.prob.push_back(mass(n, k));
    }
    if (n % 2 == 0) {
      t.part.push_back(binary_partition(n / 2, n));
      t.prob.push_back(0.5 * mass(n, n / 2));
    }
    return t;
  }

 private:
  static constexpr uint64_t kDirectScanCutoff = 4096;
  static double mass(uint64_t n, uint64_t k) {
    const double nn = static_cast<double>(n), kk = static_cast<double>(k);
    double lg = (nn - kk - 1.0) * std::log(nn - kk) -
                std::lgamma(nn - kk + 1.0) + (kk - 1.0) * std::log(kk) -
                std::lgamma(kk + 1.0) + std::lgamma(nn - 1.0) -
                (nn - 3.0) * std::log(nn);
    return std::exp(lg);
  }
};

class CutRecursiveFamily final : public TableFamily {
 public:
  Index index() const override { return Index::Leaves; }
  std::string spec() const override { return "cut-recursive"; }
  double q1_empty() const override { return 1.0; }
  double stay_prob(uint64_t) const override { return 0.0; }

  double pmf(uint64_t n, const IntPartition& lam) const override {
    check_n(n);
    if (n == 1) return pmf1(lam);
    if (lam.length() != 2 || lam.n() != n) return 0.0;
    uint64_t k = lam.parts[0];
    if (k < n - k) return 0.0;
    return k == n - k ? 0.5 * mass(n, k) : mass(n, k);
  }

  IntPartition sample(uint64_t n, Rng& rng) const override {
    check_n(n);
    if (n <= kDirectScanCutoff) return TableFamily::sample(n, rng);
    return scan_binary_sample(n, rng, n / 2 + (n % 2),
                              [&](uint64_t k) {
                                return 2 * k == n ? 0.5 * mass(n, k)
                                                  : mass(n, k);
                              });
  }

 protected:
  Table build_table(uint64_t n) const override {
    Table t;
    for (uint64_t k = n / 2 + 1; k <= n - 1; ++k) {
      t.part.push_back(binary_partition(k, n));
      t.prob.push_back(mass(n, k));
    }
    if (n % 2 == 0) {
      t.part.push_back(binary_partition(n / 2, n));
      t.prob.push_back(0.5 * mass(n, n / 2));
    }
    return t;
  }

 private:
  static constexpr uint64_t kDirectScanCutoff = 4096;
  static double mass(uint64_t n, uint64_t k) {
    const double nn = static_cast<double>(n), kk = static_cast<double>(k);
    return nn / (nn - 1.0) *
           (1.0 / (kk * (kk + 1.0)) +
            1.0 / ((nn - kk) * (nn - kk + 1.0)));
  }
};

}  // namespace

// ---------------------------------------------------------------------------

FamilyPtr family_basic(double alpha) {
  return std::make_shared<BasicFamily>(alpha);
}
FamilyPtr family_deterministic_halving() {
  return std::make_shared<HalvingFamily>();
}
FamilyPtr family_ford(double alpha) {
  return std::make_shared<FordFamily>(alpha);
}
FamilyPtr family_remy() { return std::make_shared<RemyFamily>(); }
FamilyPtr family_kary(uint64_t k) { return std::make_shared<KaryFamily>(k); }
FamilyPtr family_marchal(double beta) {
  return std::make_shared<MarchalFamily>(beta);
}
FamilyPtr family_gw_leaves(const OffspringLaw& eta, uint64_t n_max) {
  return std::make_shared<GwLeavesFamily>(eta, n_max);
}
FamilyPtr family_gw_vertices(const OffspringLaw& eta, uint64_t n_max) {
  return std::make_shared<GwVerticesFamily>(eta, n_max);
}
FamilyPtr family_cut_cayley() { return std::make_shared<CutCayleyFamily>(); }
FamilyPtr family_cut_recursive() {
  return std::make_shared<CutRecursiveFamily>();
}

FamilyPtr parse_family(const std::string& spec) {
  std::string name = spec;
  std::unordered_map<std::string, std::string> kv;
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    name = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("family spec: expected key=value in '" +
                                    item + "'");
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  auto num = [&](const std::string& key, double dflt,
                 bool required = false) {
    auto it = kv.find(key);
    if (it == kv.end()) {
      if (required)
        throw std::invalid_argument("family spec '" + name +
                                    "': missing parameter " + key);
      return dflt;
    }
    return std::stod(it->second);
  };
  auto offspring = [&]() {
    auto it = kv.find("offspring");
    if (it == kv.end())
      throw std::invalid_argument("family spec '" + name +
                                  "': missing offspring=<law>");
    if (it->second == "stable")
      return stable_tail_offspring(num("alpha", 0, true), num("kappa", 0, true));
    return builtin_offspring(it->second);
  };
  uint64_t nmax = static_cast<uint64_t>(num("nmax", 4096));

  if (name == "basic") return family_basic(num("alpha", 0, true));
  if (name == "halving") return family_deterministic_halving();
  if (name == "ford") return family_ford(num("alpha", 0, true));
  if (name == "remy") return family_remy();
  if (name == "kary")
    return family_kary(static_cast<uint64_t>(num("k", 0, true)));
  if (name == "marchal") return family_marchal(num("beta", 0, true));
  if (name == "gw-leaves") return family_gw_leaves(offspring(), nmax);
  if (name == "gw-vertices") return family_gw_vertices(offspring(), nmax);
  if (name == "cut-cayley") return family_cut_cayley();
  if (name == "cut-recursive") return family_cut_recursive();
  throw std::invalid_argument("unknown splitting family: " + name);
}

// ---------------------------------------------------------------------------

FunctionalEstimate hypothesis_h_functional(
    const SplittingFamily& family, uint64_t n,
    const std::function<double(std::span<const double>)>& f, double gamma,
    Rng* rng, uint64_t mc_samples) {
  if (n < 2) throw std::invalid_argument("hypothesis_h_functional: n >= 2");
  const double scale = std::pow(static_cast<double>(n), gamma);
  std::vector<double> fractions;
  auto eval = [&](const IntPartition& lam) {
    fractions.clear();
    for (uint64_t part : lam.parts)
      fractions.push_back(static_cast<double>(part) / static_cast<double>(n));
    double one_minus_s1 =
        1.0 - (fractions.empty() ? 0.0 : fractions.front());
    return one_minus_s1 * f(std::span<const double>(fractions));
  };

  if (auto sup = family.support(n)) {
    double total = 0;
    for (const auto& lam : *sup) total += family.pmf(n, lam) * eval(lam);
    return FunctionalEstimate{scale * total, 0.0, true,
                              static_cast<uint64_t>(sup->size())};
  }
  if (!rng)
    throw std::invalid_argument(
        "hypothesis_h_functional: Monte Carlo evaluation needs an Rng");
  double sum = 0, sumsq = 0;
  for (uint64_t i = 0; i < mc_samples; ++i) {
    double x = eval(family.sample(n, *rng));
    sum += x;
    sumsq += x * x;
  }
  double mean = sum / static_cast<double>(mc_samples);
  double var = std::max(0.0, sumsq / static_cast<double>(mc_samples) -
                                 mean * mean);
  double se = std::sqrt(var / static_cast<double>(mc_samples));
  return FunctionalEstimate{scale * mean, scale * se, false, mc_samples};
}

}  // namespace mbt
