#include "mbt/growth.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mbt {


GrowthRun GrowthRun::create(const std::string& model) {
  GrowthRun g;
  std::string name = model;
  auto colon = model.find(':');
  std::string arg;
  if (colon != std::string::npos) {
    name = model.substr(0, colon);
    arg = model.substr(colon + 1);
  }
  auto param = [&](const std::string& key) {
    auto eq = arg.find('=');
    if (eq == std::string::npos || arg.substr(0, eq) != key)
      throw std::invalid_argument("growth model '" + name + "': expected " +
                                  key + "=<value>");
    return std::stod(arg.substr(eq + 1));
  };
  if (name == "remy") {
    g.model_ = Model::Remy;
  } else if (name == "ford") {
    g.model_ = Model::Ford;
    g.alpha_ = param("alpha");
    if (!(g.alpha_ >= 0.0 && g.alpha_ <= 1.0))
      throw std::invalid_argument("ford growth: alpha in [0,1]");
  } else if (name == "kary") {
    g.model_ = Model::Kary;
    g.kary_k_ = static_cast<uint64_t>(param("k"));
    if (g.kary_k_ < 2) throw std::invalid_argument("kary growth: k >= 2");
  } else if (name == "marchal") {
    g.model_ = Model::Marchal;
    g.beta_ = param("beta");
    if (!(g.beta_ > 1.0 && g.beta_ <= 2.0))
      throw std::invalid_argument("marchal growth: beta in (1,2]");
  } else {
    throw std::invalid_argument("unknown growth model: " + name);
  }
  return g;
}

double GrowthRun::bucket_weight(size_t d) const {
  return d >= 3 ? static_cast<double>(d) - 1.0 - beta_ : 0.0;
}

void GrowthRun::fen_add(size_t d, double delta) {
  if (delta == 0.0) return;
  if (d >= degree_weight_fen_.size())
    degree_weight_fen_.resize(std::max<size_t>(2 * d + 2, 16), 0.0);
  for (size_t i = d + 1; i <= degree_weight_fen_.size(); i += i & (~i + 1))
    degree_weight_fen_[i - 1] += delta;
}

double GrowthRun::fen_total() const {
  double s = 0;
  for (size_t i = degree_weight_fen_.size(); i > 0; i -= i & (~i + 1))
    s += degree_weight_fen_[i - 1];
  return s;
}

size_t GrowthRun::fen_find(double target) const {
  size_t pos = 0, mask = 1;
  while (mask * 2 <= degree_weight_fen_.size()) mask *= 2;
  for (; mask > 0; mask /= 2) {
    size_t next = pos + mask;
    if (next <= degree_weight_fen_.size() &&
        degree_weight_fen_[next - 1] < target) {
      target -= degree_weight_fen_[next - 1];
      pos = next;
    }
  }
  return pos;  // 0-based degree whose cumulative weight first exceeds target
}

void GrowthRun::set_degree(int v, int d) {
  while (static_cast<int>(degree_members_.size()) <= std::max(d, degree_[v]))
    degree_members_.push_back({});
  int old = degree_[v];
  if (old > 0) {
    auto& bucket = degree_members_[old];
    int pos = degree_pos_[v];
    bucket[pos] = bucket.back();
    degree_pos_[bucket.back()] = pos;
    bucket.pop_back();
    fen_add(old, -bucket_weight(old));
  }
  degree_[v] = d;
  degree_pos_[v] = static_cast<int>(degree_members_[d].size());
  degree_members_[d].push_back(v);
  fen_add(d, bucket_weight(d));
}

void GrowthRun::add_edge(int child, bool pendant) {
  if (static_cast<int>(edge_is_pendant_.size()) <= child)
    edge_is_pendant_.resize(child + 1, 0);
  edge_is_pendant_[child] = pendant;
  (pendant ? pendant_edges_ : inner_edges_).push_back(child);
}

int GrowthRun::pick_edge_uniform(Rng& rng) {
  uint64_t total = pendant_edges_.size() + inner_edges_.size();
  uint64_t i = rng.below(total);
  return i < pendant_edges_.size()
             ? pendant_edges_[i]
             : inner_edges_[i - pendant_edges_.size()];
}

int GrowthRun::pick_edge_ford(Rng& rng) {
  if (alpha_ == 0.5) return pick_edge_uniform(rng);  // equal weights
  double wp = static_cast<double>(pendant_edges_.size()) * (1.0 - alpha_);
  double wi = static_cast<double>(inner_edges_.size()) * alpha_;
  if (rng.next_double() * (wp + wi) < wp)
    return pendant_edges_[rng.below(pendant_edges_.size())];
  return inner_edges_[rng.below(inner_edges_.size())];
}

int GrowthRun::pick_marchal(Rng& rng, int* edge_child) {
  double edge_w =
      static_cast<double>(pendant_edges_.size() + inner_edges_.size()) *
      (beta_ - 1.0);
  double vertex_w = fen_total();
  double u = rng.next_double() * (edge_w + vertex_w);
  if (u < edge_w || vertex_w <= 0.0) {
    *edge_child = pick_edge_uniform(rng);
    return -1;
  }
  size_t d = fen_find(u - edge_w);
  // Guard against floating drift at bucket boundaries.
  while (d < degree_members_.size() &&
         (d < 3 || degree_members_[d].empty()))
    ++d;
  if (d >= degree_members_.size()) {
    for (d = degree_members_.size(); d-- > 3;)
      if (!degree_members_[d].empty()) break;
  }
  const auto& bucket = degree_members_[d];
  return bucket[rng.below(bucket.size())];
}

void GrowthRun::graft_on_edge(int edge_child, uint64_t new_leaves,
                              GrowthStep& meta) {
  int u = edge_child;
  int w = static_cast<int>(parent_of_.size());
  parent_of_.push_back(parent_of_[u]);
  parent_of_[u] = w;
  degree_pos_.push_back(0);
  degree_.push_back(0);
  set_degree(w, static_cast<int>(2 + new_leaves));
  add_edge(w, false);
  meta.added_vertices.push_back(w);
  for (uint64_t i = 0; i < new_leaves; ++i) {
    int leaf = static_cast<int>(parent_of_.size());
    parent_of_.push_back(w);
    degree_pos_.push_back(0);
    degree_.push_back(0);
    set_degree(leaf, 1);
    add_edge(leaf, true);
    meta.added_vertices.push_back(leaf);
  }
  n_leaves_ += new_leaves;
}

void GrowthRun::graft_on_vertex(int v, GrowthStep& meta) {
  int leaf = static_cast<int>(parent_of_.size());
  parent_of_.push_back(v);
  degree_pos_.push_back(0);
  degree_.push_back(0);
  set_degree(leaf, 1);
  set_degree(v, degree_[v] + 1);
  add_edge(leaf, true);
  meta.added_vertices.push_back(leaf);
  n_leaves_ += 1;
}

void GrowthRun::step(Rng& rng) {
  GrowthStep meta;
  if (steps_ == 0) {
    // Root-edge tree: one root, one leaf.
    parent_of_ = {-1, 0};
    degree_ = {0, 0};
    degree_pos_ = {0, 0};
    degree_members_.clear();
    set_degree(0, 1);
    set_degree(1, 1);
    add_edge(1, true);
    n_leaves_ = 1;
    meta.added_vertices = {0, 1};
    history_.push_back(std::move(meta));
    steps_ = 1;
    return;
  }
  uint64_t new_leaves = model_ == Model::Kary ? kary_k_ - 1 : 1;
  if (model_ == Model::Marchal) {
    int edge_child = -1;
    int v = pick_marchal(rng, &edge_child);
    if (v >= 0)
      graft_on_vertex(v, meta);
    else
      graft_on_edge(edge_child, 1, meta);
  } else {
    int e = model_ == Model::Ford ? pick_edge_ford(rng) : pick_edge_uniform(rng);
    graft_on_edge(e, new_leaves, meta);
  }
  history_.push_back(std::move(meta));
  ++steps_;
}

void GrowthRun::run_to(uint64_t n_steps, Rng& rng) {
  while (steps_ < n_steps) step(rng);
}

RootedTree GrowthRun::tree() const {
  if (steps_ == 0) throw std::logic_error("growth run: no steps yet");
  return RootedTree::from_parents(parent_of_);
}

GrowthRun::WeightAudit GrowthRun::weight_audit() const {
  WeightAudit a;
  a.pendant_edges = static_cast<long long>(pendant_edges_.size());
  a.inner_edges = static_cast<long long>(inner_edges_.size());
  a.edges = a.pendant_edges + a.inner_edges;
  for (size_t d = 3; d < degree_members_.size(); ++d) {
    a.big_vertices += static_cast<long long>(degree_members_[d].size());
    a.degree_excess_sum += static_cast<long long>(degree_members_[d].size()) *
                           (static_cast<long long>(d) - 1);
  }
  return a;
}

RootedTree grow_tree(const std::string& model, uint64_t n_steps, Rng& rng) {
  auto run = GrowthRun::create(model);
  run.run_to(n_steps, rng);
  return run.tree();
}

RootedTree root_edge_strip(const RootedTree& t) {
  if (t.out_degree(0) != 1)
    throw std::invalid_argument("root_edge_strip: root degree must be 1");
  const int n = t.n_vertices();
  std::vector<int> parent(n - 1);
  for (int v = 1; v < n; ++v)
    parent[v - 1] = t.parent(v) - 1;  // vertex 1 becomes the new root (-1)
  return RootedTree::from_parents(parent);
}

namespace {

std::vector<uint64_t> root_split(const RootedTree& t, bool leaves) {
  std::vector<uint64_t> size(t.n_vertices(), 0);
  for (int v = t.n_vertices() - 1; v >= 1; --v) {
    if (leaves) {
      if (t.out_degree(v) == 0) size[v] += 1;
    } else {
      size[v] += 1;
    }
    size[t.parent(v)] += size[v];
  }
  std::vector<uint64_t> parts;
  for (int c : t.children(0)) parts.push_back(size[c]);
  std::sort(parts.begin(), parts.end(), std::greater<uint64_t>());
  return parts;
}

}  // namespace

std::vector<uint64_t> root_split_leaves(const RootedTree& t) {
  return root_split(t, true);
}

std::vector<uint64_t> root_split_vertices(const RootedTree& t) {
  return root_split(t, false);
}

}  // namespace mbt
