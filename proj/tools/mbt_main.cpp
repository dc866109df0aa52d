// Experiment orchestrator: seeded subcommands over the simulation
// library, CSV/JSON emission with a config digest in every header, and
// the acceptance-suite driver.
//
// Exit codes: 0 ok, 1 acceptance failures, 2 invalid arguments or family
// spec, 3 impossible conditioning, 4 resource caps.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mbt/acceptance.hpp"
#include "mbt/chain.hpp"
#include "mbt/cuttree.hpp"
#include "mbt/dislocation.hpp"
#include "mbt/ensembles.hpp"
#include "mbt/growth.hpp"
#include "mbt/gw.hpp"
#include "mbt/mb.hpp"
#include "mbt/metric.hpp"
#include "mbt/parallel.hpp"
#include "mbt/splitting.hpp"
#include "mbt/stats.hpp"
#include "mbt/tree_json.hpp"

namespace {

using nlohmann::json;

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct Emitter {
  std::ostream* out = &std::cout;
  std::ofstream file;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file: " + path);
    out = &file;
  }
  template <class T>
  Emitter& operator<<(const T& v) {
    *out << v;
    return *this;
  }
};

// Canonical config string and digest header shared by every run.
struct RunConfig {
  std::string subcommand;
  std::map<std::string, std::string> kv;
  uint64_t seed = 12345;
  int threads = 1;

  // Threads are an execution detail, not configuration: output must be
  // byte-identical for any --threads value.
  std::string canonical() const {
    std::ostringstream os;
    os << "cmd=" << subcommand;
    for (const auto& [k, v] : kv) os << ";" << k << "=" << v;
    os << ";seed=" << seed;
    return os.str();
  }
  void emit_header(Emitter& e) const {
    e << "# mbt " << subcommand << "\n";
    e << "# config-digest=" << hex64(fnv1a64(canonical())) << " seed=" << seed
      << "\n";
  }
  // Replica streams are derived from (seed, subcommand, i) so no stream
  // is reused across subcommands.
  uint64_t stream_seed() const { return seed ^ fnv1a64("stream:" + subcommand); }
};

// Applies config-file defaults to options the user did not pass.
void apply_config_defaults(CLI::App* cmd, const json& cfg) {
  for (auto* opt : cmd->get_options()) {
    if (opt->count() > 0) continue;
    auto lnames = opt->get_lnames();
    if (lnames.empty()) continue;
    std::string name = lnames.front();
    if (name.empty() || !cfg.contains(name)) continue;
    const auto& v = cfg.at(name);
    std::string text = v.is_string() ? v.get<std::string>() : v.dump();
    opt->add_result(text);
    opt->run_callback();
  }
}

mbt::OffspringLaw offspring_from_name(const std::string& name) {
  if (name.rfind("stable", 0) == 0) {
    // stable,alpha=A,kappa=K handled through parse_family's grammar; here
    // accept "stable:alpha=A,kappa=K".
    auto colon = name.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("stable offspring needs alpha=,kappa=");
    double alpha = 0, kappa = 0;
    std::stringstream ss(name.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) continue;
      auto key = item.substr(0, eq);
      double val = std::stod(item.substr(eq + 1));
      if (key == "alpha") alpha = val;
      if (key == "kappa") kappa = val;
    }
    return mbt::stable_tail_offspring(alpha, kappa);
  }
  return mbt::builtin_offspring(name);
}

// Known scaling limit (gamma, Laplace exponent) for family specs whose
// dislocation measure the library can evaluate.
std::optional<mbt::LimitLaw> known_limit_law(const std::string& spec) {
  using namespace mbt;
  auto colon = spec.find(':');
  std::string name = colon == std::string::npos ? spec : spec.substr(0, colon);
  auto param = [&](const std::string& key) -> std::optional<double> {
    if (colon == std::string::npos) return std::nullopt;
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq != std::string::npos && item.substr(0, eq) == key)
        return std::stod(item.substr(eq + 1));
    }
    return std::nullopt;
  };
  if (name == "basic") {
    auto a = param("alpha");
    if (!a) return std::nullopt;
    LimitLaw law;
    law.gamma = *a;
    law.phi = [](double lam) { return 1.0 - std::pow(2.0, -lam); };
    return law;
  }
  if (name == "ford") {
    auto a = param("alpha");
    if (!a) return std::nullopt;
    return phi_from_nu(nu_ford(*a), *a);
  }
  if (name == "kary") {
    auto k = param("k");
    if (!k || (*k != 2 && *k != 3)) return std::nullopt;
    // Leaf-indexed trees: m = 1 + (k-1)(n-1) leaves after n steps, so
    // the m-indexed limit measure is (k-1)^{1/k} nu_k.
    double kk = *k;
    double factor = std::pow(kk - 1.0, 1.0 / kk);
    auto base = nu_k(static_cast<uint64_t>(kk));
    LimitLaw law;
    law.gamma = 1.0 / kk;
    law.phi = [base, factor](double lam) { return factor * base->phi(lam); };
    return law;
  }
  if (name == "cut-cayley") {
    auto br = nu_br();
    LimitLaw law;
    law.gamma = 0.5;
    law.phi = [br](double lam) { return 0.5 * br->phi(lam); };
    return law;
  }
  return std::nullopt;
}

double default_gamma(const std::string& spec) {
  if (auto law = known_limit_law(spec)) return law->gamma;
  return 1.0;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace mbt;
  CLI::App app{"Markov-Branching random-tree simulation toolkit"};
  app.require_subcommand(1);

  uint64_t seed = 12345;
  if (const char* env = std::getenv("MBT_SEED")) seed = std::strtoull(env, nullptr, 10);
  int threads = 1;
  std::string config_path, out_path;
  app.add_option("--seed", seed, "RNG seed (default: MBT_SEED or 12345)");
  app.add_option("--threads", threads, "worker threads over replicas");
  app.add_option("--config", config_path, "JSON config file (flags override)");
  app.add_option("--out", out_path, "write emission to a file instead of stdout");

  // --- ensembles ---
  auto* ens = app.add_subcommand("ensembles", "counting and uniform sampling");
  auto* ens_count = ens->add_subcommand("count", "exact counts");
  std::string ens_family = "ordered";
  uint64_t ens_n = 0;
  ens_count->add_option("--family", ens_family,
                        "ordered|labeled|labeled-rooted|polya");
  ens_count->add_option("--n", ens_n, "size");
  auto* ens_sample = ens->add_subcommand("sample", "uniform draws");
  std::string ens_sfamily = "ordered";
  uint64_t ens_sn = 0, ens_reps = 1;
  ens_sample->add_option("--family", ens_sfamily,
                         "ordered|cayley|polya|recursive");
  ens_sample->add_option("--n", ens_sn, "size");
  ens_sample->add_option("--reps", ens_reps, "replicas");

  // --- gw ---
  auto* gw = app.add_subcommand("gw", "Galton-Watson trees");
  auto* gw_sample = gw->add_subcommand("sample", "sample (optionally conditioned)");
  std::string gw_offspring = "geo2", gw_condition = "none";
  uint64_t gw_reps = 1, gw_cap = 1000000;
  gw_sample->add_option("--offspring", gw_offspring,
                        "geo2|poisson1|binary|leafless-binary|stable:alpha=..,kappa=..");
  gw_sample->add_option("--condition", gw_condition,
                        "none|vertices=K|leaves=K");
  gw_sample->add_option("--cap", gw_cap, "overflow cap for unconditioned draws");
  gw_sample->add_option("--reps", gw_reps, "replicas");

  // --- mb ---
  auto* mb = app.add_subcommand("mb", "Markov-Branching trees");
  auto* mb_sample = mb->add_subcommand("sample", "sample MB trees");
  std::string mb_family, mb_index = "leaves", mb_stat = "height";
  uint64_t mb_n = 0, mb_reps = 1;
  mb_sample->add_option("--family", mb_family, "family spec, e.g. ford:alpha=0.5")
      ;
  mb_sample->add_option("--index", mb_index, "leaves|vertices");
  mb_sample->add_option("--n", mb_n, "size");
  mb_sample->add_option("--reps", mb_reps, "replicas");
  mb_sample->add_option("--stat", mb_stat, "height|diameter|spine|tree");

  // --- grow ---
  auto* grow = app.add_subcommand("grow", "dynamical growth models");
  std::string grow_model;
  uint64_t grow_steps = 0, grow_emit = 0;
  grow->add_option("--model", grow_model, "remy|ford:alpha=..|kary:k=..|marchal:beta=..")
      ;
  grow->add_option("--steps", grow_steps, "growth steps");
  grow->add_option("--emit-every", grow_emit, "emit snapshot every M steps (0: final only)");

  // --- cut ---
  auto* cut = app.add_subcommand("cut", "edge deletion and cut-trees");
  std::string cut_base = "cayley", cut_emit = "cuts";
  uint64_t cut_n = 0, cut_reps = 1;
  cut->add_option("--base", cut_base, "cayley|recursive");
  cut->add_option("--n", cut_n, "base tree size");
  cut->add_option("--reps", cut_reps, "replicas");
  cut->add_option("--emit", cut_emit, "cuts|first-split|cuttree-height");

  // --- chain ---
  auto* chain = app.add_subcommand("chain", "size-biased leaf chain");
  auto* chain_absorb = chain->add_subcommand("absorb", "absorption times");
  std::string chain_family;
  uint64_t chain_n = 0, chain_reps = 1;
  int chain_moments = 0;
  double chain_gamma = 0;
  chain_absorb->add_option("--family", chain_family, "family spec");
  chain_absorb->add_option("--n", chain_n, "start state");
  chain_absorb->add_option("--reps", chain_reps, "replicas");
  chain_absorb->add_option("--gamma", chain_gamma,
                           "scaling exponent (default: family's known gamma)");
  chain_absorb->add_option("--compare-moments", chain_moments,
                           "compare k moments against the known limit law");
  uint64_t chain_hist_bins = 0;
  chain_absorb->add_option("--hist-bins", chain_hist_bins,
                           "emit a fixed-width histogram of A_n/n^gamma");

  // --- metric ---
  auto* metric = app.add_subcommand("metric", "metric-tree distances");
  auto* metric_gh = metric->add_subcommand("gh", "rooted GH / GHP distances");
  std::string metric_a, metric_b, metric_weights = "vertex";
  double scale_a = 1.0, scale_b = 1.0;
  metric_gh->add_option("--a", metric_a, "tree JSON file");
  metric_gh->add_option("--b", metric_b, "tree JSON file");
  metric_gh->add_option("--scale-a", scale_a, "edge scale for a");
  metric_gh->add_option("--scale-b", scale_b, "edge scale for b");
  metric_gh->add_option("--weights", metric_weights, "leaf|vertex");

  // --- acceptance ---
  auto* acc = app.add_subcommand("acceptance", "acceptance criteria");
  auto* acc_run = acc->add_subcommand("run", "run the acceptance suite");
  std::string acc_suite = "all";
  acc_run->add_option("--suite", acc_suite, "all or comma-separated ids");

  // Global flags may appear after any subcommand.
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    a->fallthrough();
    for (auto* sub : a->get_subcommands({})) enable_fallthrough(sub);
  };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::invalid_argument("cannot read config: " + config_path);
      json cfg = json::parse(in);
      for (auto* sub :
           {ens_count, ens_sample, gw_sample, mb_sample, grow, cut,
            chain_absorb, metric_gh, acc_run})
        apply_config_defaults(sub, cfg);
      if (cfg.contains("seed") && app.get_option("--seed")->count() == 0)
        seed = cfg["seed"].get<uint64_t>();
      if (cfg.contains("threads") && app.get_option("--threads")->count() == 0)
        threads = cfg["threads"].get<int>();
    }
    if (threads < 1) throw std::invalid_argument("--threads must be >= 1");

    Emitter out;
    out.open(out_path);
    RunConfig rc;
    rc.seed = seed;
    rc.threads = threads;

    if (*ens_count) {
      rc.subcommand = "ensembles count";
      if (ens_n == 0) throw std::invalid_argument("--n is required");
      rc.kv = {{"family", ens_family}, {"n", std::to_string(ens_n)}};
      rc.emit_header(out);
      BigInt v = ens_family == "ordered"          ? count_ordered(ens_n)
                 : ens_family == "labeled"        ? count_labeled(ens_n)
                 : ens_family == "labeled-rooted" ? count_labeled_rooted(ens_n)
                 : ens_family == "polya"
                     ? otter_counts(ens_n).back()
                     : throw std::invalid_argument("unknown count family: " +
                                                   ens_family);
      out << v.str() << "\n";
      return 0;
    }

    if (*ens_sample) {
      rc.subcommand = "ensembles sample";
      if (ens_sn == 0) throw std::invalid_argument("--n is required");
      rc.kv = {{"family", ens_sfamily},
               {"n", std::to_string(ens_sn)},
               {"reps", std::to_string(ens_reps)}};
      rc.emit_header(out);
      auto rows = run_replicas<std::string>(
          ens_reps, rc.stream_seed(), threads, [&](uint64_t, Rng& rng) {
            if (ens_sfamily == "ordered")
              return tree_to_json(sample_uniform_ordered(ens_sn, rng));
            if (ens_sfamily == "polya")
              return tree_to_json(sample_polya(ens_sn, rng));
            if (ens_sfamily == "cayley" || ens_sfamily == "recursive") {
              auto lt = ens_sfamily == "cayley" ? sample_cayley(ens_sn, rng)
                                                : sample_recursive(ens_sn, rng);
              json j;
              j["parents"] = lt.tree.parents();
              j["labels"] = lt.labels;
              return j.dump();
            }
            throw std::invalid_argument("unknown sample family: " + ens_sfamily);
          });
      for (auto& row : rows) out << row << "\n";
      return 0;
    }

    if (*gw_sample) {
      rc.subcommand = "gw sample";
      rc.kv = {{"offspring", gw_offspring},
               {"condition", gw_condition},
               {"cap", std::to_string(gw_cap)},
               {"reps", std::to_string(gw_reps)}};
      rc.emit_header(out);
      OffspringLaw eta = offspring_from_name(gw_offspring);
      std::string mode = "none";
      uint64_t target = 0;
      if (gw_condition != "none") {
        auto eq = gw_condition.find('=');
        if (eq == std::string::npos)
          throw std::invalid_argument("--condition: use vertices=K or leaves=K");
        mode = gw_condition.substr(0, eq);
        target = std::stoull(gw_condition.substr(eq + 1));
        if (mode != "vertices" && mode != "leaves")
          throw std::invalid_argument("--condition: use vertices=K or leaves=K");
      }
      auto rows = run_replicas<std::string>(
          gw_reps, rc.stream_seed(), threads, [&](uint64_t, Rng& rng) {
            if (mode == "vertices")
              return tree_to_json(sample_gw_n_vertices(eta, target, rng));
            if (mode == "leaves")
              return tree_to_json(sample_gw_n_leaves(eta, target, rng));
            auto t = sample_gw(eta, rng, gw_cap);
            return t ? tree_to_json(*t) : std::string("{\"overflow\":true}");
          });
      for (auto& row : rows) out << row << "\n";
      return 0;
    }

    if (*mb_sample) {
      rc.subcommand = "mb sample";
      if (mb_family.empty()) throw std::invalid_argument("--family is required");
      if (mb_n == 0) throw std::invalid_argument("--n is required");
      rc.kv = {{"family", mb_family},
               {"index", mb_index},
               {"n", std::to_string(mb_n)},
               {"reps", std::to_string(mb_reps)},
               {"stat", mb_stat}};
      rc.emit_header(out);
      auto family = parse_family(mb_family);
      bool leaves = mb_index == "leaves";
      if (!leaves && mb_index != "vertices")
        throw std::invalid_argument("--index: leaves|vertices");
      auto rows = run_replicas<std::string>(
          mb_reps, rc.stream_seed(), threads, [&](uint64_t rep, Rng& rng) {
            RootedTree t = leaves ? sample_mb_leaves(*family, mb_n, rng)
                                  : sample_mb_vertices(*family, mb_n, rng);
            std::ostringstream os;
            if (mb_stat == "height") {
              os << rep << "," << height(t);
            } else if (mb_stat == "diameter") {
              os << rep << "," << diameter(t);
            } else if (mb_stat == "spine") {
              if (t.n_vertices() == 1) {
                os << rep << ",1";
              } else {
                auto spine = sizes_along_spine(t, uniform_leaf(t, rng));
                os << rep;
                for (auto x : spine) os << "," << x;
              }
            } else if (mb_stat == "tree") {
              os << tree_to_json(t);
            } else {
              throw std::invalid_argument("--stat: height|diameter|spine|tree");
            }
            return os.str();
          });
      if (mb_stat == "height" || mb_stat == "diameter")
        out << "replica," << mb_stat << "\n";
      for (auto& row : rows) out << row << "\n";
      return 0;
    }

    if (*grow) {
      rc.subcommand = "grow";
      if (grow_model.empty()) throw std::invalid_argument("--model is required");
      if (grow_steps == 0) throw std::invalid_argument("--steps is required");
      rc.kv = {{"model", grow_model},
               {"steps", std::to_string(grow_steps)},
               {"emit-every", std::to_string(grow_emit)}};
      rc.emit_header(out);
      Rng rng(seed);
      auto run = GrowthRun::create(grow_model);
      for (uint64_t s = 1; s <= grow_steps; ++s) {
        run.step(rng);
        if ((grow_emit > 0 && s % grow_emit == 0) || s == grow_steps) {
          json j;
          j["step"] = s;
          j["leaves"] = run.leaf_count();
          j["parents"] = run.tree().parents();
          out << j.dump() << "\n";
        }
      }
      return 0;
    }

    if (*cut) {
      rc.subcommand = "cut";
      if (cut_n == 0) throw std::invalid_argument("--n is required");
      rc.kv = {{"base", cut_base},
               {"n", std::to_string(cut_n)},
               {"reps", std::to_string(cut_reps)},
               {"emit", cut_emit}};
      rc.emit_header(out);
      if (cut_base != "cayley" && cut_base != "recursive")
        throw std::invalid_argument("--base: cayley|recursive");
      auto rows = run_replicas<std::string>(
          cut_reps, rc.stream_seed(), threads, [&](uint64_t rep, Rng& rng) {
            RootedTree base = cut_base == "cayley"
                                  ? sample_cayley(cut_n, rng).tree
                                  : sample_recursive(cut_n, rng).tree;
            std::ostringstream os;
            if (cut_emit == "cuts") {
              os << rep << "," << cuts_to_isolate_root(base, rng);
            } else if (cut_emit == "cuttree-height") {
              os << rep << "," << height(cut_tree(base, rng).tree);
            } else if (cut_emit == "first-split") {
              int child = 1 + static_cast<int>(rng.below(cut_n - 1));
              std::vector<uint64_t> size(cut_n, 1);
              for (int v = static_cast<int>(cut_n) - 1; v >= 1; --v)
                size[base.parent(v)] += size[v];
              uint64_t k = size[child];
              os << rep << "," << std::max(k, cut_n - k) << ","
                 << std::min(k, cut_n - k);
            } else {
              throw std::invalid_argument(
                  "--emit: cuts|first-split|cuttree-height");
            }
            return os.str();
          });
      out << (cut_emit == "first-split" ? "replica,k1,k2" : "replica,value")
          << "\n";
      for (auto& row : rows) out << row << "\n";
      return 0;
    }

    if (*chain_absorb) {
      rc.subcommand = "chain absorb";
      if (chain_family.empty()) throw std::invalid_argument("--family is required");
      if (chain_n == 0) throw std::invalid_argument("--n is required");
      rc.kv = {{"family", chain_family},
               {"n", std::to_string(chain_n)},
               {"reps", std::to_string(chain_reps)},
               {"gamma", std::to_string(chain_gamma)},
               {"compare-moments", std::to_string(chain_moments)}};
      rc.emit_header(out);
      auto family = parse_family(chain_family);
      double gamma = chain_gamma > 0 ? chain_gamma : default_gamma(chain_family);
      MarkovChainSpec spec(family, gamma);
      auto rows = run_replicas<long long>(
          chain_reps, rc.stream_seed(), threads,
          [&](uint64_t, Rng& rng) { return absorption_time(spec, chain_n, rng); });
      out << "replica,absorption_time\n";
      for (uint64_t i = 0; i < rows.size(); ++i)
        out << i << "," << rows[i] << "\n";
      std::vector<double> rescaled;
      rescaled.reserve(rows.size());
      double scale = std::pow(static_cast<double>(chain_n), gamma);
      for (auto a : rows) rescaled.push_back(static_cast<double>(a) / scale);
      json summary;
      summary["gamma"] = gamma;
      summary["mean"] = mean_of(rescaled);
      summary["var"] = variance_of(rescaled);
      // Self-consistency KS between the two half-samples.
      {
        std::vector<double> first(rescaled.begin(),
                                  rescaled.begin() + rescaled.size() / 2);
        std::vector<double> second(rescaled.begin() + rescaled.size() / 2,
                                   rescaled.end());
        std::sort(second.begin(), second.end());
        auto cdf2 = [&](double x) {
          return static_cast<double>(std::upper_bound(second.begin(),
                                                      second.end(), x) -
                                     second.begin()) /
                 static_cast<double>(second.size());
        };
        summary["ks"] = first.empty() ? 0.0 : ks_statistic(first, cdf2);
      }
      if (chain_hist_bins > 0) {
        double lo = rescaled.front(), hi = rescaled.front();
        for (double x : rescaled) {
          lo = std::min(lo, x);
          hi = std::max(hi, x);
        }
        double width = (hi - lo) / static_cast<double>(chain_hist_bins);
        if (width <= 0) width = 1.0;
        std::vector<uint64_t> bins(chain_hist_bins, 0);
        for (double x : rescaled) {
          auto b = static_cast<size_t>((x - lo) / width);
          bins[std::min<size_t>(b, chain_hist_bins - 1)] += 1;
        }
        summary["hist"] = {{"lo", lo}, {"bin_width", width}, {"counts", bins}};
      }
      if (chain_moments > 0) {
        auto law = known_limit_law(chain_family);
        if (law) {
          law->gamma = gamma;
          auto repm = moment_compare(rescaled, *law, chain_moments);
          summary["moment_errors"] = repm.rel_errors;
          summary["limit_moments"] = repm.limit_moments;
        } else {
          summary["moment_errors"] = nullptr;
        }
      }
      out << summary.dump() << "\n";
      return 0;
    }

    if (*metric_gh) {
      rc.subcommand = "metric gh";
      if (metric_a.empty() || metric_b.empty())
        throw std::invalid_argument("--a and --b are required");
      rc.kv = {{"a", metric_a},
               {"b", metric_b},
               {"scale-a", std::to_string(scale_a)},
               {"scale-b", std::to_string(scale_b)},
               {"weights", metric_weights}};
      rc.emit_header(out);
      WeightKind wk = metric_weights == "leaf" ? WeightKind::LeafUniform
                                               : WeightKind::VertexUniform;
      auto a = from_discrete(tree_from_json_file(metric_a), scale_a, wk);
      auto b = from_discrete(tree_from_json_file(metric_b), scale_b, wk);
      json j;
      if (a.n_points() <= 7 && b.n_points() <= 7)
        j["gh"] = gh_rooted(a, b);
      else
        j["gh"] = nullptr;
      j["gh_upper"] = gh_upper(a, b);
      j["ghp_upper"] = ghp_upper(a, b);
      out << j.dump() << "\n";
      return 0;
    }

    if (*acc_run) {
      // Let criterion 11 re-run this binary.
      setenv("MBT_CLI_BIN", argv[0], 0);
      std::vector<int> ids;
      if (acc_suite != "all") {
        std::stringstream ss(acc_suite);
        std::string item;
        while (std::getline(ss, item, ',')) ids.push_back(std::stoi(item));
      }
      auto results = mbt::acceptance::run(ids);
      int failures = mbt::acceptance::report(results);
      return failures > 0 ? 1 : 0;
    }

    std::cerr << "no subcommand action selected\n";
    return 2;
  } catch (const ImpossibleConditioning& e) {
    std::cerr << "error (impossible conditioning): " << e.what() << "\n";
    return 3;
  } catch (const ResourceCapError& e) {
    std::cerr << "error (resource cap): " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error (invalid argument): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
