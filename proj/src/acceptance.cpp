#include "mbt/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "mbt/chain.hpp"
#include "mbt/cuttree.hpp"
#include "mbt/dislocation.hpp"
#include "mbt/ensembles.hpp"
#include "mbt/growth.hpp"
#include "mbt/gw.hpp"
#include "mbt/mb.hpp"
#include "mbt/metric.hpp"
#include "mbt/splitting.hpp"
#include "mbt/stats.hpp"

namespace mbt::acceptance {

namespace {

using Result = CriterionResult;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// --- 1: counting oracles -------------------------------------------------

// All labelled trees on n vertices by edge-subset brute force.
uint64_t brute_labeled_trees(int n) {
  if (n == 1) return 1;
  std::vector<std::pair<int, int>> all_edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) all_edges.emplace_back(i, j);
  const int m = static_cast<int>(all_edges.size());
  uint64_t count = 0;
  std::vector<int> pick(n - 1);
  std::function<void(int, int)> rec = [&](int from, int depth) {
    if (depth == n - 1) {
      std::vector<int> up(n);
      for (int i = 0; i < n; ++i) up[i] = i;
      std::function<int(int)> find = [&](int x) {
        while (up[x] != x) x = up[x] = up[up[x]];
        return x;
      };
      int merges = 0;
      for (int e : pick) {
        int a = find(all_edges[e].first), b = find(all_edges[e].second);
        if (a == b) return;
        up[a] = b;
        ++merges;
      }
      if (merges == n - 1) ++count;
      return;
    }
    for (int e = from; e < m; ++e) {
      pick[depth] = e;
      rec(e + 1, depth + 1);
    }
  };
  rec(0, 0);
  return count;
}

Result criterion_counting() {
  Result r{1, "counting formulas vs brute-force enumeration + Otter ratio"};
  std::ostringstream why;
  bool ok = true;
  for (uint64_t n = 1; n <= 7; ++n) {
    auto ordered = enumerate_ordered(n);
    if (BigInt(ordered.size()) != count_ordered(n)) {
      ok = false;
      why << "count_ordered(" << n << ") mismatch; ";
    }
    auto codes = enumerate_unordered(n);
    auto otter = otter_counts(n);
    if (BigInt(codes.size()) != otter[n - 1]) {
      ok = false;
      why << "otter(" << n << ") mismatch; ";
    }
  }
  for (int n = 1; n <= 7; ++n) {
    uint64_t brute = brute_labeled_trees(n);
    if (BigInt(brute) != count_labeled(n)) {
      ok = false;
      why << "count_labeled(" << n << ") vs brute " << brute << "; ";
    }
    if (count_labeled_rooted(n) != count_labeled(n) * n) {
      ok = false;
      why << "count_labeled_rooted(" << n << ") != labeled * n; ";
    }
  }
  auto t = otter_counts(100);
  const double kappa = 2.9557, c_ref = 0.4399;
  double worst = 0;
  for (int n = 50; n <= 100; ++n) {
    double tn = t[n - 1].convert_to<double>();
    double ratio = tn * std::pow(n, 1.5) / std::pow(kappa, n);
    worst = std::max(worst, std::abs(ratio / c_ref - 1.0));
  }
  if (worst > 0.05) {
    ok = false;
    why << "otter ratio off by " << fmt(worst * 100) << "%; ";
  }
  r.passed = ok;
  r.detail = ok ? "n<=7 exact; otter ratio max dev " + fmt(worst * 100) + "%"
              : why.str();
  return r;
}

// --- 2: GW / combinatorial equivalences ----------------------------------

Result criterion_gw_equivalences() {
  Result r{2, "conditioned GW laws match uniform combinatorial ensembles"};
  Rng rng(202);
  const int reps = 100000;
  // geo(1/2) | 5 vertices: uniform over the 14 ordered shapes.
  auto geo = builtin_offspring("geo2");
  std::map<std::vector<int>, double> counts;
  for (int i = 0; i < reps; ++i)
    counts[sample_gw_n_vertices(geo, 5, rng).parents()] += 1;
  auto shapes = enumerate_ordered(5);
  std::vector<double> obs, probs;
  for (const auto& s : shapes) {
    obs.push_back(counts.count(s.parents()) ? counts[s.parents()] : 0.0);
    probs.push_back(1.0 / static_cast<double>(shapes.size()));
  }
  double pval = chi_square_pvalue(obs, probs, reps);

  // poisson(1) | 4 vertices: shape law of uniform rooted labelled trees.
  std::map<std::string, double> exact;
  int total_labeled = 0;
  for (int root = 0; root < 4; ++root) {
    int others[3], oi = 0;
    for (int v = 0; v < 4; ++v)
      if (v != root) others[oi++] = v;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) {
          std::vector<int> parent(4);
          parent[root] = -1;
          parent[others[0]] = a;
          parent[others[1]] = b;
          parent[others[2]] = c;
          if (a == others[0] || b == others[1] || c == others[2]) continue;
          try {
            auto t = RootedTree::from_parents(parent);
            exact[canonical_code(t).code] += 1;
            ++total_labeled;
          } catch (const std::exception&) {
          }
        }
  }
  for (auto& [k, v] : exact) v /= total_labeled;
  auto poisson = builtin_offspring("poisson1");
  std::map<std::string, double> emp;
  for (int i = 0; i < reps; ++i)
    emp[canonical_code(sample_gw_n_vertices(poisson, 4, rng)).code] +=
        1.0 / reps;
  double tv = total_variation(emp, exact);

  r.passed = pval > 0.01 && tv < 0.01 && total_labeled == 64;
  r.detail = "geo2|v=5 chi2 p=" + fmt(pval) + "; poisson|v=4 TV=" + fmt(tv) +
             " (64 labelled trees)";
  return r;
}

// --- 3: algorithm identities ---------------------------------------------

Result criterion_family_identities() {
  Result r{3, "ford(1/2) = remy = marchal(2) = kary(2) partitionwise"};
  auto ford = family_ford(0.5);
  auto remy = family_remy();
  auto marchal = family_marchal(2.0);
  auto kary = family_kary(2);
  double worst = 0;
  for (uint64_t n = 2; n <= 10; ++n)
    for_each_partition(n, [&](const IntPartition& lam) {
      double p0 = remy->pmf(n, lam);
      worst = std::max(worst, std::abs(ford->pmf(n, lam) - p0));
      worst = std::max(worst, std::abs(marchal->pmf(n, lam) - p0));
      worst = std::max(worst, std::abs(kary->pmf(n, lam) - p0));
      return true;
    });
  r.passed = worst < 1e-10;
  r.detail = "max partitionwise deviation " + fmt(worst);
  return r;
}

// --- 4: Remy vs binary GW -------------------------------------------------

Result criterion_remy_gw() {
  Result r{4, "stripped remy T_4 shape law = binary GW | 7 vertices"};
  Rng rng(404);
  const int reps = 100000;
  std::map<std::string, double> a, b;
  for (int i = 0; i < reps; ++i) {
    auto t = root_edge_strip(grow_tree("remy", 4, rng));
    a[canonical_code(t).code] += 1.0 / reps;
  }
  auto binary = builtin_offspring("binary");
  for (int i = 0; i < reps; ++i)
    b[canonical_code(sample_gw_n_vertices(binary, 7, rng)).code] += 1.0 / reps;
  double tv = total_variation(a, b);
  r.passed = tv < 0.01;
  r.detail = "TV = " + fmt(tv);
  return r;
}

// --- 5: growth-model root splits match their splitting families -----------

Result criterion_growth_splits() {
  Result r{5, "stripped growth root-splits match splitting families"};
  Rng rng(505);
  const int reps = 100000;
  std::ostringstream det;
  bool ok = true;
  struct Case {
    std::string model;
    FamilyPtr family;
    uint64_t steps;
  };
  std::vector<Case> cases{
      {"ford:alpha=0.3", family_ford(0.3), 6},
      {"ford:alpha=0.5", family_ford(0.5), 6},
      {"kary:k=3", family_kary(3), 4},
      {"marchal:beta=1.5", family_marchal(1.5), 6},
  };
  for (const auto& c : cases) {
    std::map<IntPartition, double> emp;
    uint64_t m = 0;
    for (int i = 0; i < reps; ++i) {
      auto t = root_edge_strip(grow_tree(c.model, c.steps, rng));
      auto parts = root_split_leaves(t);
      m = std::accumulate(parts.begin(), parts.end(), uint64_t{0});
      emp[IntPartition(parts)] += 1.0 / reps;
    }
    std::map<IntPartition, double> ref;
    auto sup = c.family->support(m);
    for (const auto& lam : *sup) ref[lam] = c.family->pmf(m, lam);
    double tv = total_variation(emp, ref);
    det << c.model << " (m=" << m << ") TV=" << fmt(tv) << "; ";
    ok = ok && tv < 0.01;
  }
  r.passed = ok;
  r.detail = det.str();
  return r;
}

// --- 6: marked-spine one-step law = chain transition law -------------------

Result criterion_chain_bridge() {
  Result r{6, "marked-spine one-step law matches p(i,.) from the family"};
  Rng rng(606);
  std::ostringstream det;
  bool ok = true;
  struct Case {
    FamilyPtr family;
    uint64_t i;
    int reps;
  };
  std::vector<Case> cases{{family_ford(0.5), 100, 1000000},
                          {family_basic(1.0), 64, 1000000}};
  for (const auto& c : cases) {
    MarkovChainSpec spec(c.family, 1.0);
    auto exact_map = spec.transition_pmf(c.i);
    std::map<uint64_t, double> exact(exact_map.begin(), exact_map.end());
    std::map<uint64_t, double> emp;
    for (int k = 0; k < c.reps; ++k) {
      auto spine = marked_spine_sizes(*c.family, c.i, rng);
      emp[static_cast<uint64_t>(spine[1])] += 1.0 / c.reps;
    }
    double tv = total_variation(emp, exact);
    det << c.family->spec() << " i=" << c.i << " TV=" << fmt(tv) << "; ";
    ok = ok && tv < 0.01;
  }
  r.passed = ok;
  r.detail = det.str();
  return r;
}

// --- 7: rare-split functional ----------------------------------------------

Result criterion_h_functional() {
  Result r{7, "rare-split functional: exact two-atom value and Ford limit"};
  auto one = [](std::span<const double>) { return 1.0; };
  bool ok = true;
  std::ostringstream det;
  auto basic = family_basic(1.0);
  for (uint64_t n : {4ull, 16ull, 64ull, 1024ull, 65536ull}) {
    double v = hypothesis_h_functional(*basic, n, one, 1.0).value;
    if (v != 0.5) {
      ok = false;
      det << "basic n=" << n << " gave " << fmt(v) << " != 0.5; ";
    }
  }
  for (double alpha : {0.3, 0.5}) {
    auto family = family_ford(alpha);
    double hn = hypothesis_h_functional(*family, 10000, one, alpha).value;
    double limit = nu_ford(alpha)->integral(one);
    double rel = std::abs(hn / limit - 1.0);
    det << "ford a=" << fmt(alpha) << " H_n=" << fmt(hn) << " limit="
        << fmt(limit) << " rel=" << fmt(rel * 100) << "%; ";
    ok = ok && rel < 0.05;
  }
  r.passed = ok;
  r.detail = det.str();
  return r;
}

// --- 8: absorption-time moments --------------------------------------------

Result criterion_absorption_moments() {
  Result r{8, "A_n/n moments for the two-atom family at n=2^20"};
  MarkovChainSpec spec(family_basic(1.0), 1.0);
  const uint64_t n = 1ull << 20;
  const int reps = 10000;
  Rng rng(808);
  std::vector<double> sample;
  sample.reserve(reps);
  for (int i = 0; i < reps; ++i)
    sample.push_back(static_cast<double>(absorption_time(spec, n, rng)) /
                     static_cast<double>(n));
  LimitLaw law;
  law.gamma = 1.0;
  law.phi = [](double lam) { return 1.0 - std::pow(2.0, -lam); };
  auto rep = moment_compare(sample, law, 3);
  bool ok = true;
  std::ostringstream det;
  for (int k = 0; k < 3; ++k) {
    det << "k=" << (k + 1) << ": " << fmt(rep.sample_moments[k]) << " vs "
        << fmt(rep.limit_moments[k]) << " (" << fmt(rep.rel_errors[k] * 100)
        << "%); ";
    ok = ok && rep.rel_errors[k] < 0.05;
  }
  r.passed = ok;
  r.detail = det.str();
  return r;
}

// --- 9: cut-tree laws -------------------------------------------------------

Result criterion_cut_tree() {
  Result r{9, "Rayleigh limit of root-isolation cuts + first-split laws"};
  Rng rng(909);
  const int reps = 10000;
  auto ks_at = [&](uint64_t n) {
    std::vector<double> rescaled;
    rescaled.reserve(reps);
    for (int i = 0; i < reps; ++i) {
      auto base = sample_cayley(n, rng).tree;
      rescaled.push_back(static_cast<double>(cuts_to_isolate_root(base, rng)) /
                         std::sqrt(static_cast<double>(n)));
    }
    return ks_statistic(rescaled, [](double x) {
      return x <= 0 ? 0.0 : 1.0 - std::exp(-0.5 * x * x);
    });
  };
  double ks = ks_at(1000);
  bool ok = ks < 0.05;
  std::ostringstream det;
  det << "KS(rayleigh, n=1000)=" << fmt(ks) << "; ";
  if (!ok) {
    // Finite-size context: the law does converge; the pinned (n, tol)
    // pair sits inside the O(1/sqrt(n)) bias regime.
    det << "[context: KS(n=4000)=" << fmt(ks_at(4000))
        << ", KS(n=16000)=" << fmt(ks_at(16000)) << "]; ";
  }
  for (const std::string base : {"cayley", "recursive"}) {
    auto family = base == "cayley" ? family_cut_cayley() : family_cut_recursive();
    for (uint64_t m : {3ull, 8ull, 12ull}) {
      auto emp_pairs = first_split_law(base, m, 100000, rng);
      std::map<IntPartition, double> emp;
      for (auto& [kv, p] : emp_pairs)
        emp[IntPartition({kv.first, kv.second})] = p;
      std::map<IntPartition, double> ref;
      auto sup = family->support(m);
      for (const auto& lam : *sup) ref[lam] = family->pmf(m, lam);
      double tv = total_variation(emp, ref);
      det << base << " n=" << m << " TV=" << fmt(tv) << "; ";
      ok = ok && tv < 0.01;
    }
  }
  r.passed = ok;
  r.detail = det.str();
  return r;
}

// --- 10: metric layer -------------------------------------------------------

Result criterion_metric() {
  Result r{10, "rooted GH pseudometric properties and exact scaling"};
  Rng rng(1010);
  std::vector<RootedTree> corpus;
  std::vector<MeasuredMetricTree> spaces;
  while (corpus.size() < 50) {
    uint64_t n = 2 + rng.below(5);  // 2..6 vertices
    auto t = sample_uniform_ordered(n, rng);
    corpus.push_back(t);
    spaces.push_back(from_discrete(t, 1.0, WeightKind::VertexUniform));
  }
  bool ok = true;
  std::ostringstream det;
  std::vector<std::vector<double>> d(50, std::vector<double>(50, 0.0));
  for (size_t i = 0; i < 50; ++i)
    for (size_t j = i; j < 50; ++j) {
      double ij = gh_rooted(spaces[i], spaces[j]);
      double ji = gh_rooted(spaces[j], spaces[i]);
      if (ij != ji) {
        ok = false;
        det << "asymmetry at (" << i << "," << j << "); ";
      }
      d[i][j] = d[j][i] = ij;
      bool iso = canonical_code(corpus[i]) == canonical_code(corpus[j]);
      if (iso != (ij == 0.0)) {
        ok = false;
        det << "zero<->isomorphism failed at (" << i << "," << j << "); ";
      }
    }
  // Triangle inequality on sampled triples.
  double worst_tri = 0;
  for (int s = 0; s < 4000; ++s) {
    size_t i = rng.below(50), j = rng.below(50), k = rng.below(50);
    worst_tri = std::max(worst_tri, d[i][j] - d[i][k] - d[k][j]);
  }
  if (worst_tri > 1e-9) {
    ok = false;
    det << "triangle violated by " << fmt(worst_tri) << "; ";
  }
  // Exact scaling for a in {1/2, 2} on a subsample.
  for (int s = 0; s < 30; ++s) {
    size_t i = rng.below(50), j = rng.below(50);
    for (double a : {0.5, 2.0}) {
      auto ai = from_discrete(corpus[i], a, WeightKind::VertexUniform);
      auto aj = from_discrete(corpus[j], a, WeightKind::VertexUniform);
      if (gh_rooted(ai, aj) != a * d[i][j]) {
        ok = false;
        det << "scaling failed (a=" << fmt(a) << ") at (" << i << "," << j
            << "); ";
      }
    }
  }
  r.passed = ok;
  if (ok)
    det << "symmetry exact, zero iff isomorphic, triangle slack "
        << fmt(worst_tri) << ", scaling exact";
  r.detail = det.str();
  return r;
}

// --- 11: CLI determinism ----------------------------------------------------

std::string run_cli(const std::string& bin, const std::string& args,
                    const std::string& tag) {
  std::string out = std::string("/tmp/mbt_accept_") + tag + ".out";
  std::string cmd = "'" + bin + "' " + args + " > " + out + " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  if (rc != 0) return "<exit " + std::to_string(rc) + ">";
  std::ifstream in(out, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result criterion_cli_determinism() {
  Result r{11, "CLI runs are byte-identical for fixed (config, seed)"};
  const char* bin = std::getenv("MBT_CLI_BIN");
  if (!bin || !*bin) {
    r.passed = false;
    r.detail = "MBT_CLI_BIN not set";
    return r;
  }
  struct Case {
    std::string name, args;
  };
  std::vector<Case> cases{
      {"mb", "mb sample --family ford:alpha=0.5 --n 300 --reps 40 --seed 7 "
             "--stat height"},
      {"chain", "chain absorb --family basic:alpha=1 --n 65536 --reps 64 "
                "--seed 11 --compare-moments 2"},
  };
  bool ok = true;
  std::ostringstream det;
  for (const auto& c : cases) {
    std::string a = run_cli(bin, c.args + " --threads 1", c.name + "_1");
    std::string b = run_cli(bin, c.args + " --threads 1", c.name + "_2");
    std::string c4 = run_cli(bin, c.args + " --threads 4", c.name + "_4");
    if (a.empty() || a != b || a != c4) {
      ok = false;
      det << c.name << " differs (rerun " << (a == b ? "ok" : "BAD")
          << ", threads " << (a == c4 ? "ok" : "BAD") << "); ";
    } else {
      det << c.name << " identical across reruns and 4 threads; ";
    }
  }
  r.passed = ok;
  r.detail = det.str();
  return r;
}

// --- 12: Polya height scaling ------------------------------------------------

Result criterion_polya_slope() {
  Result r{12, "uniform unordered trees: height median ~ sqrt(n)"};
  Rng rng(1212);
  std::vector<double> xs, ys;
  std::ostringstream det;
  for (int e = 8; e <= 13; ++e) {
    uint64_t n = 1ull << e;
    std::vector<double> hts;
    for (int i = 0; i < 201; ++i)
      hts.push_back(static_cast<double>(height(sample_polya(n, rng))));
    double med = median_of(hts);
    xs.push_back(std::log2(static_cast<double>(n)));
    ys.push_back(std::log2(med));
    det << "n=2^" << e << " med=" << med << "; ";
  }
  double slope = fit_slope(xs, ys);
  det << "slope=" << fmt(slope);
  r.passed = std::abs(slope - 0.5) < 0.05;
  r.detail = det.str();
  return r;
}

}  // namespace

std::vector<CriterionResult> run(const std::vector<int>& ids) {
  std::vector<std::pair<int, std::function<Result()>>> all{
      {1, criterion_counting},
      {2, criterion_gw_equivalences},
      {3, criterion_family_identities},
      {4, criterion_remy_gw},
      {5, criterion_growth_splits},
      {6, criterion_chain_bridge},
      {7, criterion_h_functional},
      {8, criterion_absorption_moments},
      {9, criterion_cut_tree},
      {10, criterion_metric},
      {11, criterion_cli_determinism},
      {12, criterion_polya_slope},
  };
  std::vector<CriterionResult> out;
  for (auto& [id, fn] : all) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), id) == ids.end())
      continue;
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back(CriterionResult{id, "criterion " + std::to_string(id),
                                    false, std::string("exception: ") + e.what()});
    }
  }
  return out;
}

int report(const std::vector<CriterionResult>& results) {
  int failures = 0;
  for (const auto& r : results) {
    std::printf("[%s] %2d  %s -- %s\n", r.passed ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.detail.c_str());
    if (!r.passed) ++failures;
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failures);
  return failures;
}

}  // namespace mbt::acceptance
