#include "mbt/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mbt {

double MeasuredMetricTree::height() const {
  double h = 0;
  for (double d : dist[root]) h = std::max(h, d);
  return h;
}

double MeasuredMetricTree::diam() const {
  double m = 0;
  for (const auto& row : dist)
    for (double d : row) m = std::max(m, d);
  return m;
}

void MeasuredMetricTree::validate() const {
  const int n = n_points();
  if (n == 0 || static_cast<int>(weight.size()) != n || root < 0 || root >= n)
    throw std::invalid_argument("metric tree: malformed");
  double wsum = 0;
  for (double w : weight) {
    if (w < -1e-15) throw std::invalid_argument("metric tree: negative weight");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > 1e-9)
    throw std::invalid_argument("metric tree: weights must sum to 1");
  for (int i = 0; i < n; ++i) {
    if (std::abs(dist[i][i]) > 1e-12)
      throw std::invalid_argument("metric tree: nonzero diagonal");
    for (int j = 0; j < n; ++j) {
      if (dist[i][j] < -1e-12 || std::abs(dist[i][j] - dist[j][i]) > 1e-12)
        throw std::invalid_argument("metric tree: not symmetric/nonnegative");
      for (int l = 0; l < n; ++l)
        if (dist[i][j] > dist[i][l] + dist[l][j] + 1e-12)
          throw std::invalid_argument("metric tree: triangle violated");
    }
  }
  // Four-point condition: the two largest of the three pairings agree.
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      for (int u = y + 1; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
          double s1 = dist[x][y] + dist[u][v];
          double s2 = dist[x][u] + dist[y][v];
          double s3 = dist[x][v] + dist[y][u];
          double mx = std::max({s1, s2, s3});
          double mid = s1 + s2 + s3 - mx - std::min({s1, s2, s3});
          if (mx - mid > 1e-9)
            throw std::invalid_argument("metric tree: four-point violated");
        }
}

MeasuredMetricTree from_discrete(const RootedTree& t, double edge_scale,
                                 WeightKind weights) {
  if (!(edge_scale > 0)) throw std::invalid_argument("from_discrete: scale > 0");
  const int n = t.n_vertices();
  MeasuredMetricTree m;
  m.root = 0;
  m.dist.assign(n, std::vector<double>(n, 0.0));
  // Graph distance via depths and pairwise LCA walk (fine at gh scales).
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int a = i, b = j;
      while (a != b) {
        if (t.height(a) >= t.height(b))
          a = t.parent(a);
        else
          b = t.parent(b);
      }
      double d = edge_scale *
                 static_cast<double>(t.height(i) + t.height(j) - 2 * t.height(a));
      m.dist[i][j] = m.dist[j][i] = d;
    }
  m.weight.assign(n, 0.0);
  if (weights == WeightKind::VertexUniform) {
    for (auto& w : m.weight) w = 1.0 / static_cast<double>(n);
  } else {
    auto ls = leaves_of(t);
    if (ls.empty())
      throw std::invalid_argument("from_discrete: leaf-uniform weights need a leaf");
    for (int v : ls) m.weight[v] = 1.0 / static_cast<double>(ls.size());
  }
  return m;
}

namespace {

using Pair = std::pair<int, int>;

double pair_distortion(const MeasuredMetricTree& a, const MeasuredMetricTree& b,
                       Pair p, Pair q) {
  return std::abs(a.dist[p.first][q.first] - b.dist[p.second][q.second]);
}

struct GhSolver {
  const MeasuredMetricTree& a;
  const MeasuredMetricTree& b;
  std::vector<int> a_todo, b_todo;
  std::vector<Pair> pairs;
  std::vector<Pair> best_pairs;
  double best = std::numeric_limits<double>::infinity();

  GhSolver(const MeasuredMetricTree& a_, const MeasuredMetricTree& b_)
      : a(a_), b(b_) {
    for (int v = 0; v < a.n_points(); ++v)
      if (v != a.root) a_todo.push_back(v);
    for (int v = 0; v < b.n_points(); ++v)
      if (v != b.root) b_todo.push_back(v);
    pairs.push_back({a.root, b.root});
  }

  void seed(double upper, std::vector<Pair> upper_pairs) {
    best = upper;
    best_pairs = std::move(upper_pairs);
  }

  double extend_cost(Pair cand, double cur) const {
    for (const Pair& p : pairs)
      cur = std::max(cur, pair_distortion(a, b, p, cand));
    return cur;
  }

  void solve(size_t idx, double cur) {
    if (cur >= best) return;
    if (idx == a_todo.size() + b_todo.size()) {
      best = cur;
      best_pairs = pairs;
      return;
    }
    if (idx < a_todo.size()) {
      int x = a_todo[idx];
      for (int y = 0; y < b.n_points(); ++y) {
        double nxt = extend_cost({x, y}, cur);
        if (nxt >= best) continue;
        pairs.push_back({x, y});
        solve(idx + 1, nxt);
        pairs.pop_back();
      }
    } else {
      int y = b_todo[idx - a_todo.size()];
      for (int x = 0; x < a.n_points(); ++x) {
        double nxt = extend_cost({x, y}, cur);
        if (nxt >= best) continue;
        pairs.push_back({x, y});
        solve(idx + 1, nxt);
        pairs.pop_back();
      }
    }
  }
};

// Greedy correspondence: match by height profile.
std::vector<Pair> greedy_pairs(const MeasuredMetricTree& a,
                               const MeasuredMetricTree& b) {
  std::vector<Pair> pairs{{a.root, b.root}};
  for (int x = 0; x < a.n_points(); ++x) {
    if (x == a.root) continue;
    int besty = b.root;
    double bestc = std::numeric_limits<double>::infinity();
    for (int y = 0; y < b.n_points(); ++y) {
      double c = std::abs(a.dist[a.root][x] - b.dist[b.root][y]);
      if (c < bestc) {
        bestc = c;
        besty = y;
      }
    }
    pairs.push_back({x, besty});
  }
  for (int y = 0; y < b.n_points(); ++y) {
    if (y == b.root) continue;
    int bestx = a.root;
    double bestc = std::numeric_limits<double>::infinity();
    for (int x = 0; x < a.n_points(); ++x) {
      double c = std::abs(a.dist[a.root][x] - b.dist[b.root][y]);
      if (c < bestc) {
        bestc = c;
        bestx = x;
      }
    }
    pairs.push_back({bestx, y});
  }
  return pairs;
}

double distortion_of(const MeasuredMetricTree& a, const MeasuredMetricTree& b,
                     const std::vector<Pair>& pairs) {
  double d = 0;
  for (size_t i = 0; i < pairs.size(); ++i)
    for (size_t j = i + 1; j < pairs.size(); ++j)
      d = std::max(d, pair_distortion(a, b, pairs[i], pairs[j]));
  return d;
}

std::pair<double, std::vector<Pair>> gh_exact_with_pairs(
    const MeasuredMetricTree& a, const MeasuredMetricTree& b) {
  if (a.n_points() > 7 || b.n_points() > 7)
    throw std::invalid_argument("gh_rooted: exact mode capped at 7 points");
  GhSolver s(a, b);
  auto greedy = greedy_pairs(a, b);
  s.seed(distortion_of(a, b, greedy) + 1e-15, greedy);
  s.solve(0, 0.0);
  return {s.best, s.best_pairs};
}

}  // namespace

double gh_rooted(const MeasuredMetricTree& a, const MeasuredMetricTree& b) {
  return 0.5 * gh_exact_with_pairs(a, b).first;
}

double gh_upper(const MeasuredMetricTree& a, const MeasuredMetricTree& b) {
  return 0.5 * distortion_of(a, b, greedy_pairs(a, b));
}

double prokhorov(const std::vector<double>& mu, const std::vector<double>& nu,
                 const std::vector<std::vector<double>>& dist) {
  const int n = static_cast<int>(dist.size());
  if (n > 12) throw std::invalid_argument("prokhorov: capped at 12 points");
  if (static_cast<int>(mu.size()) != n || static_cast<int>(nu.size()) != n)
    throw std::invalid_argument("prokhorov: size mismatch");
  double hi = 1.0;
  for (const auto& row : dist)
    for (double d : row) hi = std::max(hi, d);
  auto feasible = [&](double eps) {
    // Ball masks at radius eps.
    std::vector<uint32_t> ball(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (dist[i][j] <= eps) ball[i] |= 1u << j;
    for (uint32_t set = 1; set < (1u << n); ++set) {
      uint32_t grown = 0;
      double mu_s = 0, nu_s = 0;
      for (int i = 0; i < n; ++i)
        if (set & (1u << i)) {
          grown |= ball[i];
          mu_s += mu[i];
          nu_s += nu[i];
        }
      double mu_g = 0, nu_g = 0;
      for (int i = 0; i < n; ++i)
        if (grown & (1u << i)) {
          mu_g += mu[i];
          nu_g += nu[i];
        }
      if (mu_s > nu_g + eps + 1e-15 || nu_s > mu_g + eps + 1e-15) return false;
    }
    return true;
  };
  double lo = 0.0;
  if (feasible(0.0)) return 0.0;
  for (int it = 0; it < 80 && hi - lo > 1e-13 * (1.0 + hi); ++it) {
    double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

namespace {

double ghp_bound_for(const MeasuredMetricTree& a, const MeasuredMetricTree& b,
                     const std::vector<Pair>& pairs) {
  double dis = distortion_of(a, b, pairs);
  double eps0 = 0.5 * dis;
  const int na = a.n_points(), nb = b.n_points(), n = na + nb;
  // Glued semimetric with surcharge dis/2 across the correspondence.
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) d[i][j] = a.dist[i][j];
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) d[na + i][na + j] = b.dist[i][j];
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      double best = std::numeric_limits<double>::infinity();
      for (const Pair& p : pairs)
        best = std::min(best,
                        a.dist[i][p.first] + eps0 + b.dist[p.second][j]);
      d[i][na + j] = d[na + j][i] = best;
    }
  double prokh;
  if (n <= 12) {
    std::vector<double> mu(n, 0.0), nu(n, 0.0);
    for (int i = 0; i < na; ++i) mu[i] = a.weight[i];
    for (int j = 0; j < nb; ++j) nu[na + j] = b.weight[j];
    prokh = prokhorov(mu, nu, d);
  } else {
    // Ky-Fan bound from a greedy coupling along cheap cross pairs.
    std::vector<std::tuple<double, int, int>> cross;
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nb; ++j)
        cross.emplace_back(d[i][na + j], i, j);
    std::sort(cross.begin(), cross.end());
    std::vector<double> ra = a.weight, rb = b.weight;
    std::vector<std::pair<double, double>> moved;  // (distance, mass)
    for (auto& [dd, i, j] : cross) {
      double m = std::min(ra[i], rb[j]);
      if (m <= 0) continue;
      ra[i] -= m;
      rb[j] -= m;
      moved.emplace_back(dd, m);
    }
    std::sort(moved.begin(), moved.end(), std::greater<>());
    // Smallest eps with pi(d > eps) <= eps: scan thresholds descending.
    double best = std::numeric_limits<double>::infinity();
    double tail = 0;  // mass strictly above the current threshold
    for (size_t i = 0; i <= moved.size(); ++i) {
      double thresh = i < moved.size() ? moved[i].first : 0.0;
      best = std::min(best, std::max(thresh, tail));
      if (i < moved.size()) tail += moved[i].second;
    }
    prokh = best;
  }
  return std::max(eps0, prokh);
}

}  // namespace

double ghp_upper(const MeasuredMetricTree& a, const MeasuredMetricTree& b) {
  double best = std::numeric_limits<double>::infinity();
  best = std::min(best, ghp_bound_for(a, b, greedy_pairs(a, b)));
  if (a.n_points() <= 7 && b.n_points() <= 7) {
    auto [dis, pairs] = gh_exact_with_pairs(a, b);
    best = std::min(best, ghp_bound_for(a, b, pairs));
  }
  return best;
}

}  // namespace mbt
