#include "mbt/ensembles.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace mbt {

namespace {

BigInt binomial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

BigInt ipow(BigInt base, uint64_t e) {
  BigInt r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace

BigInt count_ordered(uint64_t n) {
  if (n == 0) throw std::invalid_argument("count_ordered: n >= 1");
  if (n == 1) return 1;
  return binomial(2 * n - 2, n - 1) / n;
}

BigInt count_labeled(uint64_t n) {
  if (n == 0) throw std::invalid_argument("count_labeled: n >= 1");
  if (n <= 2) return 1;
  return ipow(BigInt(n), n - 2);
}

BigInt count_labeled_rooted(uint64_t n) {
  if (n == 0) throw std::invalid_argument("count_labeled_rooted: n >= 1");
  if (n == 1) return 1;
  return ipow(BigInt(n), n - 1);
}

std::vector<BigInt> otter_counts(uint64_t n_max) {
  if (n_max == 0) throw std::invalid_argument("otter_counts: n_max >= 1");
  // t[n]: rooted unordered unlabeled trees with n vertices;
  // s[k] = sum_{d | k} d * t[d];  n * t[n+1] = sum_{k=1}^{n} s[k] * t[n+1-k].
  std::vector<BigInt> t(n_max + 1), s(n_max + 1);
  t[1] = 1;
  for (uint64_t n = 1; n < n_max; ++n) {
    s[n] = 0;
    for (uint64_t d = 1; d <= n; ++d)
      if (n % d == 0) s[n] += BigInt(d) * t[d];
    BigInt acc = 0;
    for (uint64_t k = 1; k <= n; ++k) acc += s[k] * t[n + 1 - k];
    t[n + 1] = acc / n;
  }
  return std::vector<BigInt>(t.begin() + 1, t.end());
}

// ---------------------------------------------------------------------------
// Uniform rooted ordered tree: shuffle n-1 up-steps and n down-steps, use
// the cycle lemma to pick the unique rotation that stays non-negative
// until the final step, and read the Dyck word as a contour.

RootedTree sample_uniform_ordered(uint64_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("sample_uniform_ordered: n >= 1");
  if (n == 1) return RootedTree::single_vertex();
  const uint64_t m = n - 1;
  std::vector<int8_t> step(2 * m + 1, -1);
  for (uint64_t i = 0; i < m; ++i) step[i] = 1;
  for (uint64_t i = step.size() - 1; i > 0; --i)
    std::swap(step[i], step[rng.below(i + 1)]);

  // First position of the running-sum minimum; the rotation starting
  // just there is the unique ballot-style one.
  int64_t sum = 0, min_sum = 0;
  size_t rot = 0;
  for (size_t i = 0; i < step.size(); ++i) {
    sum += step[i];
    if (sum < min_sum) {
      min_sum = sum;
      rot = i + 1;
    }
  }
  rot %= step.size();

  std::vector<int> parent;
  parent.reserve(n);
  parent.push_back(-1);
  int current = 0;
  for (size_t i = 0; i + 1 < step.size(); ++i) {  // drop the final down-step
    int8_t x = step[(rot + i) % step.size()];
    if (x == 1) {
      parent.push_back(current);
      current = static_cast<int>(parent.size()) - 1;
    } else {
      current = parent[current];
    }
  }
  return RootedTree::from_parents(parent);
}

// ---------------------------------------------------------------------------

namespace {

// BFS-normalizes a parent map given over labels, keeping the labels.
LabeledRootedTree normalize_labeled(const std::vector<int>& parent_by_label,
                                    int root_label) {
  const int n = static_cast<int>(parent_by_label.size());
  std::vector<std::vector<int>> kids(n);
  for (int v = 0; v < n; ++v)
    if (v != root_label) kids[parent_by_label[v]].push_back(v);
  std::vector<int> order{root_label};
  std::vector<int> newid(n, -1);
  newid[root_label] = 0;
  order.reserve(n);
  for (size_t qi = 0; qi < order.size(); ++qi)
    for (int c : kids[order[qi]]) {
      newid[c] = static_cast<int>(order.size());
      order.push_back(c);
    }
  if (static_cast<int>(order.size()) != n)
    throw std::logic_error("normalize_labeled: disconnected input");
  std::vector<int> parent(n);
  std::vector<int> labels(n);
  for (int v = 0; v < n; ++v) {
    int old = order[v];
    labels[v] = old;
    parent[v] = old == root_label ? -1 : newid[parent_by_label[old]];
  }
  return LabeledRootedTree{RootedTree::from_parents(parent), std::move(labels)};
}

}  // namespace

LabeledRootedTree sample_cayley(uint64_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("sample_cayley: n >= 1");
  if (n == 1)
    return LabeledRootedTree{RootedTree::single_vertex(), {0}};
  const int N = static_cast<int>(n);
  std::vector<int> parent_by_label(N, -1);
  int root = static_cast<int>(rng.below(n));
  if (n == 2) {
    parent_by_label[1 - root] = root;
    return normalize_labeled(parent_by_label, root);
  }
  std::vector<int> pruefer(N - 2);
  for (auto& a : pruefer) a = static_cast<int>(rng.below(n));
  std::vector<int> deg(N, 1);
  for (int a : pruefer) ++deg[a];
  // Standard linear decode: repeatedly join the smallest current leaf to
  // the next sequence entry.
  std::vector<std::pair<int, int>> edges;
  edges.reserve(N - 1);
  int ptr = 0;
  while (deg[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int a : pruefer) {
    edges.emplace_back(leaf, a);
    if (--deg[a] == 1 && a < ptr) {
      leaf = a;
    } else {
      ++ptr;
      while (deg[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(leaf, N - 1);

  // Orient away from the chosen root.
  std::vector<std::vector<int>> adj(N);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<int> stack{root};
  std::vector<char> seen(N, 0);
  seen[root] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        parent_by_label[w] = v;
        stack.push_back(w);
      }
  }
  return normalize_labeled(parent_by_label, root);
}

LabeledRootedTree sample_recursive(uint64_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("sample_recursive: n >= 1");
  std::vector<int> parent_by_label(n, -1);
  for (uint64_t i = 1; i < n; ++i)
    parent_by_label[i] = static_cast<int>(rng.below(i));
  return normalize_labeled(parent_by_label, 0);
}

// ---------------------------------------------------------------------------
// Uniform unordered rooted trees. Classical decomposition: with weight
// d * t_d * t_{m-jd}, the tree with m vertices is a random tree with
// m - jd vertices carrying j extra root-subtrees that are copies of one
// random tree with d vertices. Exact integer weights up to kExactCap;
// long-double weights beyond (t_n stays within long-double range for
// n <= 10000).

namespace {

constexpr uint64_t kPolyaExactCap = 1024;
constexpr uint64_t kPolyaMaxN = 10000;

struct PolyaTables {
  uint64_t n = 0;
  std::vector<BigInt> t, s;          // exact tier, up to min(n, kPolyaExactCap)
  std::vector<long double> tf, sf;   // float tier, up to n
};

std::shared_ptr<const PolyaTables> polya_tables(uint64_t n) {
  static std::mutex mu;
  static std::shared_ptr<const PolyaTables> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (cache && cache->n >= n) return cache;
  }
  auto tab = std::make_shared<PolyaTables>();
  tab->n = std::max<uint64_t>(n, 64);
  const uint64_t ncap = tab->n;
  const uint64_t ecap = std::min(ncap, kPolyaExactCap);
  tab->t.assign(ecap + 1, 0);
  tab->s.assign(ecap + 1, 0);
  tab->t[1] = 1;
  tab->tf.assign(ncap + 1, 0.0L);
  tab->sf.assign(ncap + 1, 0.0L);
  tab->tf[1] = 1.0L;
  for (uint64_t m = 1; m < ncap; ++m) {
    long double sf = 0.0L;
    for (uint64_t d = 1; d <= m; ++d)
      if (m % d == 0) sf += static_cast<long double>(d) * tab->tf[d];
    tab->sf[m] = sf;
    long double acc = 0.0L;
    for (uint64_t k = 1; k <= m; ++k) acc += tab->sf[k] * tab->tf[m + 1 - k];
    tab->tf[m + 1] = acc / static_cast<long double>(m);
    if (m < ecap) {
      BigInt sb = 0;
      for (uint64_t d = 1; d <= m; ++d)
        if (m % d == 0) sb += BigInt(d) * tab->t[d];
      tab->s[m] = sb;
      BigInt accb = 0;
      for (uint64_t k = 1; k <= m; ++k) accb += tab->s[k] * tab->t[m + 1 - k];
      tab->t[m + 1] = accb / m;
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  if (!cache || cache->n < n) cache = tab;
  return cache;
}

std::vector<uint64_t> divisors_desc(uint64_t k) {
  std::vector<uint64_t> d;
  for (uint64_t i = 1; i * i <= k; ++i)
    if (k % i == 0) {
      d.push_back(i);
      if (i != k / i) d.push_back(k / i);
    }
  std::sort(d.begin(), d.end(), std::greater<uint64_t>());
  return d;
}

struct PolyaBuilder {
  const PolyaTables& tab;
  bool exact;
  Rng& rng;
  std::vector<int> parent;

  int new_vertex(int par) {
    parent.push_back(par);
    return static_cast<int>(parent.size()) - 1;
  }

  int copy_subtree(int src, int par) {
    // src's descendants all have larger indices (children are created
    // after parents below), so a forward scan replays the structure.
    int dst = new_vertex(par);
    std::vector<int> map_to(parent.size(), -1);
    map_to[src] = dst;
    for (int v = src + 1; v < static_cast<int>(map_to.size()); ++v) {
      int p = parent[v];
      if (p >= src && map_to[p] != -1) map_to[v] = new_vertex(map_to[p]);
    }
    return dst;
  }

  // Chooses (k = j*d, then d | k) with weight d * t_d * t_{m-jd}.
  std::pair<uint64_t, uint64_t> select(uint64_t m) {
    if (exact) {
      BigInt total = BigInt(m - 1) * tab.t[m];
      BigInt u = uniform_below(total, rng);
      BigInt acc = 0;
      for (uint64_t k = m - 1;; --k) {
        acc += tab.s[k] * tab.t[m - k];
        if (acc > u || k == 1) {
          BigInt u2 = uniform_below(tab.s[k], rng);
          BigInt acc2 = 0;
          auto divs = divisors_desc(k);
          for (uint64_t d : divs) {
            acc2 += BigInt(d) * tab.t[d];
            if (acc2 > u2 || d == divs.back()) return {k, d};
          }
        }
      }
    }
    long double target =
        static_cast<long double>(rng.next_double()) *
        (static_cast<long double>(m - 1) * tab.tf[m]);
    long double acc = 0.0L;
    for (uint64_t k = m - 1;; --k) {
      acc += tab.sf[k] * tab.tf[m - k];
      if (acc > target || k == 1) {
        long double t2 = static_cast<long double>(rng.next_double()) * tab.sf[k];
        long double acc2 = 0.0L;
        auto divs = divisors_desc(k);
        for (uint64_t d : divs) {
          acc2 += static_cast<long double>(d) * tab.tf[d];
          if (acc2 > t2 || d == divs.back()) return {k, d};
        }
      }
    }
  }

  int build(uint64_t m, int par) {
    if (m == 1) return new_vertex(par);
    auto [k, d] = select(m);
    uint64_t j = k / d;
    int r = build(m - k, par);
    int first_copy = build(d, r);
    for (uint64_t c = 1; c < j; ++c) copy_subtree(first_copy, r);
    return r;
  }
};

}  // namespace

uint64_t polya_exact_cap() { return kPolyaExactCap; }
uint64_t polya_max_n() { return kPolyaMaxN; }

RootedTree sample_polya(uint64_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("sample_polya: n >= 1");
  if (n > kPolyaMaxN)
    throw std::invalid_argument("sample_polya: n exceeds supported maximum");
  if (n == 1) return RootedTree::single_vertex();
  auto tab = polya_tables(n);
  PolyaBuilder b{*tab, n <= kPolyaExactCap, rng, {}};
  b.parent.reserve(n);
  b.build(n, -1);
  return RootedTree::from_parents(b.parent);
}

// ---------------------------------------------------------------------------

namespace {

void gen_forests(uint64_t total, std::vector<std::vector<RootedTree>>& tree_memo,
                 std::vector<std::vector<std::vector<RootedTree>>>& forest_memo);

void gen_trees(uint64_t n, std::vector<std::vector<RootedTree>>& tree_memo,
               std::vector<std::vector<std::vector<RootedTree>>>& forest_memo) {
  if (!tree_memo[n].empty() || n == 0) return;
  if (n == 1) {
    tree_memo[1].push_back(RootedTree::single_vertex());
    return;
  }
  gen_forests(n - 1, tree_memo, forest_memo);
  for (const auto& forest : forest_memo[n - 1])
    tree_memo[n].push_back(glue(forest));
}

void gen_forests(uint64_t total, std::vector<std::vector<RootedTree>>& tree_memo,
                 std::vector<std::vector<std::vector<RootedTree>>>& forest_memo) {
  if (!forest_memo[total].empty() || total == 0) return;
  for (uint64_t first = 1; first <= total; ++first) {
    gen_trees(first, tree_memo, forest_memo);
    if (first == total) {
      for (const auto& t : tree_memo[first]) forest_memo[total].push_back({t});
    } else {
      gen_forests(total - first, tree_memo, forest_memo);
      for (const auto& t : tree_memo[first])
        for (const auto& rest : forest_memo[total - first]) {
          std::vector<RootedTree> f{t};
          f.insert(f.end(), rest.begin(), rest.end());
          forest_memo[total].push_back(std::move(f));
        }
    }
  }
}

}  // namespace

std::vector<RootedTree> enumerate_ordered(uint64_t n) {
  if (n == 0 || n > 10)
    throw std::invalid_argument("enumerate_ordered: 1 <= n <= 10");
  std::vector<std::vector<RootedTree>> tree_memo(n + 1);
  std::vector<std::vector<std::vector<RootedTree>>> forest_memo(n + 1);
  gen_trees(n, tree_memo, forest_memo);
  return tree_memo[n];
}

std::vector<CanonicalCode> enumerate_unordered(uint64_t n) {
  auto all = enumerate_ordered(n);
  std::vector<CanonicalCode> codes;
  codes.reserve(all.size());
  for (const auto& t : all) codes.push_back(canonical_code(t));
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  return codes;
}

}  // namespace mbt
