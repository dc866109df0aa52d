// Python bindings over the main operations: counting, exact samplers,
// splitting families, the leaf chain, cut-trees and small-instance GH
// distances. Trees cross the boundary as parent arrays (the same
// interchange format as the CLI's JSON lines); randomized functions take
// an explicit seed.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mbt/chain.hpp"
#include "mbt/cuttree.hpp"
#include "mbt/dislocation.hpp"
#include "mbt/ensembles.hpp"
#include "mbt/growth.hpp"
#include "mbt/gw.hpp"
#include "mbt/mb.hpp"
#include "mbt/metric.hpp"
#include "mbt/splitting.hpp"
#include "mbt/tree.hpp"

namespace py = pybind11;
using namespace mbt;

namespace {

OffspringLaw offspring_by_name(const std::string& name) {
  return builtin_offspring(name);
}

py::object to_bigint(const BigInt& v) {
  return py::module_::import("builtins").attr("int")(v.str());
}

MeasuredMetricTree space_of(const std::vector<int>& parents, double scale,
                            const std::string& weights) {
  return from_discrete(RootedTree::from_parents(parents), scale,
                       weights == "leaf" ? WeightKind::LeafUniform
                                         : WeightKind::VertexUniform);
}

}  // namespace

PYBIND11_MODULE(_mbtrees, m) {
  m.doc() = "Markov-Branching random-tree simulation toolkit";

  // counting
  m.def("count_ordered", [](uint64_t n) { return to_bigint(count_ordered(n)); });
  m.def("count_labeled", [](uint64_t n) { return to_bigint(count_labeled(n)); });
  m.def("count_labeled_rooted",
        [](uint64_t n) { return to_bigint(count_labeled_rooted(n)); });
  m.def("otter_counts", [](uint64_t n) {
    py::list out;
    for (const auto& v : otter_counts(n)) out.append(to_bigint(v));
    return out;
  });

  // tree statistics on parent arrays
  m.def("height", [](const std::vector<int>& p) {
    return height(RootedTree::from_parents(p));
  });
  m.def("diameter", [](const std::vector<int>& p) {
    return diameter(RootedTree::from_parents(p));
  });
  m.def("leaf_count", [](const std::vector<int>& p) {
    return leaf_count(RootedTree::from_parents(p));
  });
  m.def("canonical_code", [](const std::vector<int>& p) {
    return canonical_code(RootedTree::from_parents(p)).code;
  });
  m.def("sizes_along_spine", [](const std::vector<int>& p, int leaf) {
    return sizes_along_spine(RootedTree::from_parents(p), leaf);
  });

  // uniform ensembles
  m.def("sample_uniform_ordered", [](uint64_t n, uint64_t seed) {
    Rng rng(seed);
    return sample_uniform_ordered(n, rng).parents();
  }, py::arg("n"), py::arg("seed"));
  m.def("sample_cayley", [](uint64_t n, uint64_t seed) {
    Rng rng(seed);
    auto lt = sample_cayley(n, rng);
    return py::make_tuple(lt.tree.parents(), lt.labels);
  }, py::arg("n"), py::arg("seed"));
  m.def("sample_polya", [](uint64_t n, uint64_t seed) {
    Rng rng(seed);
    return sample_polya(n, rng).parents();
  }, py::arg("n"), py::arg("seed"));
  m.def("sample_recursive", [](uint64_t n, uint64_t seed) {
    Rng rng(seed);
    auto lt = sample_recursive(n, rng);
    return py::make_tuple(lt.tree.parents(), lt.labels);
  }, py::arg("n"), py::arg("seed"));

  // Galton-Watson
  m.def("gw_size_pmf_vertices", [](const std::string& law, uint64_t n_max) {
    return size_pmf_vertices(offspring_by_name(law), n_max);
  });
  m.def("gw_size_pmf_leaves", [](const std::string& law, uint64_t n_max) {
    return size_pmf_leaves(offspring_by_name(law), n_max);
  });
  m.def("sample_gw_n_vertices",
        [](const std::string& law, uint64_t n, uint64_t seed) {
          Rng rng(seed);
          return sample_gw_n_vertices(offspring_by_name(law), n, rng).parents();
        }, py::arg("law"), py::arg("n"), py::arg("seed"));
  m.def("sample_gw_n_leaves",
        [](const std::string& law, uint64_t n, uint64_t seed) {
          Rng rng(seed);
          return sample_gw_n_leaves(offspring_by_name(law), n, rng).parents();
        }, py::arg("law"), py::arg("n"), py::arg("seed"));

  // splitting families
  m.def("family_pmf",
        [](const std::string& spec, uint64_t n, std::vector<uint64_t> parts) {
          return parse_family(spec)->pmf(n, IntPartition(std::move(parts)));
        });
  m.def("family_sample", [](const std::string& spec, uint64_t n, uint64_t seed) {
    Rng rng(seed);
    return parse_family(spec)->sample(n, rng).parts;
  }, py::arg("spec"), py::arg("n"), py::arg("seed"));
  m.def("family_support", [](const std::string& spec, uint64_t n) {
    auto sup = parse_family(spec)->support(n);
    py::list out;
    if (sup)
      for (const auto& lam : *sup) out.append(lam.parts);
    return out;
  });

  // Markov-Branching samplers
  m.def("sample_mb_leaves",
        [](const std::string& spec, uint64_t n, uint64_t seed) {
          Rng rng(seed);
          return sample_mb_leaves(*parse_family(spec), n, rng).parents();
        }, py::arg("spec"), py::arg("n"), py::arg("seed"));
  m.def("sample_mb_vertices",
        [](const std::string& spec, uint64_t n, uint64_t seed) {
          Rng rng(seed);
          return sample_mb_vertices(*parse_family(spec), n, rng).parents();
        }, py::arg("spec"), py::arg("n"), py::arg("seed"));
  m.def("marked_spine_sizes",
        [](const std::string& spec, uint64_t n, uint64_t seed) {
          Rng rng(seed);
          return marked_spine_sizes(*parse_family(spec), n, rng);
        }, py::arg("spec"), py::arg("n"), py::arg("seed"));

  // growth models
  m.def("grow", [](const std::string& model, uint64_t steps, uint64_t seed) {
    Rng rng(seed);
    return grow_tree(model, steps, rng).parents();
  }, py::arg("model"), py::arg("steps"), py::arg("seed"));
  m.def("root_edge_strip", [](const std::vector<int>& p) {
    return root_edge_strip(RootedTree::from_parents(p)).parents();
  });

  // cut-trees
  m.def("cuts_to_isolate_root",
        [](const std::vector<int>& p, uint64_t seed) {
          Rng rng(seed);
          return cuts_to_isolate_root(RootedTree::from_parents(p), rng);
        }, py::arg("parents"), py::arg("seed"));
  m.def("cut_tree", [](const std::vector<int>& p, uint64_t seed) {
    Rng rng(seed);
    auto r = cut_tree(RootedTree::from_parents(p), rng);
    return py::make_tuple(r.tree.parents(), r.leaf_vertex,
                          r.cuts_to_isolate_root);
  }, py::arg("parents"), py::arg("seed"));

  // leaf chain
  m.def("absorption_times",
        [](const std::string& spec, uint64_t n, uint64_t reps, uint64_t seed,
           double gamma) {
          MarkovChainSpec chain(parse_family(spec), gamma);
          std::vector<long long> out;
          out.reserve(reps);
          for (uint64_t i = 0; i < reps; ++i) {
            Rng rng = Rng::for_replica(seed, i);
            out.push_back(absorption_time(chain, n, rng));
          }
          return out;
        },
        py::arg("spec"), py::arg("n"), py::arg("reps"), py::arg("seed"),
        py::arg("gamma") = 1.0);
  m.def("chain_transition_pmf", [](const std::string& spec, uint64_t i) {
    MarkovChainSpec chain(parse_family(spec), 1.0);
    std::map<uint64_t, double> p = chain.transition_pmf(i);
    return p;
  });

  // metric layer
  m.def("gh_rooted",
        [](const std::vector<int>& a, double scale_a, const std::vector<int>& b,
           double scale_b, const std::string& weights) {
          return gh_rooted(space_of(a, scale_a, weights),
                           space_of(b, scale_b, weights));
        },
        py::arg("a"), py::arg("scale_a"), py::arg("b"), py::arg("scale_b"),
        py::arg("weights") = "vertex");
  m.def("gh_upper",
        [](const std::vector<int>& a, double scale_a, const std::vector<int>& b,
           double scale_b, const std::string& weights) {
          return gh_upper(space_of(a, scale_a, weights),
                          space_of(b, scale_b, weights));
        },
        py::arg("a"), py::arg("scale_a"), py::arg("b"), py::arg("scale_b"),
        py::arg("weights") = "vertex");

  // dislocation measures
  m.def("nu_phi", [](const std::string& which, double lambda) {
    if (which == "br") return nu_br()->phi(lambda);
    if (which.rfind("ford:", 0) == 0)
      return nu_ford(std::stod(which.substr(5)))->phi(lambda);
    throw std::invalid_argument("nu_phi: 'br' or 'ford:<alpha>'");
  });
}
