#include "mbt/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace mbt {

RootedTree RootedTree::from_parents(const std::vector<int>& parent) {
  return from_parents_tracked(parent, nullptr);
}

RootedTree RootedTree::from_parents_tracked(const std::vector<int>& parent,
                                            std::vector<int>* old_id) {
  const int n = static_cast<int>(parent.size());
  if (n == 0) throw std::invalid_argument("tree: empty parent array");
  int root = -1;
  std::vector<std::vector<int>> kids(n);
  for (int v = 0; v < n; ++v) {
    int p = parent[v];
    if (p == -1) {
      if (root != -1) throw std::invalid_argument("tree: multiple roots");
      root = v;
    } else if (p < 0 || p >= n || p == v) {
      throw std::invalid_argument("tree: parent index out of range");
    } else {
      kids[p].push_back(v);
    }
  }
  if (root == -1) throw std::invalid_argument("tree: no root");

  // BFS renumber; also proves connectivity (and hence acyclicity, since
  // there are n-1 parent edges).
  std::vector<int> order;
  order.reserve(n);
  std::vector<int> newid(n, -1);
  order.push_back(root);
  newid[root] = 0;
  for (size_t qi = 0; qi < order.size(); ++qi) {
    int v = order[qi];
    for (int c : kids[v]) {
      newid[c] = static_cast<int>(order.size());
      order.push_back(c);
    }
  }
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("tree: parent array is not connected");
  if (old_id) *old_id = order;

  RootedTree t;
  t.parent_.assign(n, -1);
  t.children_.assign(n, {});
  t.depth_.assign(n, 0);
  for (int v = 0; v < n; ++v) {
    int old = order[v];
    if (old != root) {
      int p = newid[parent[old]];
      t.parent_[v] = p;
      t.children_[p].push_back(v);
      t.depth_[v] = t.depth_[p] + 1;
    }
  }
  return t;
}

RootedTree glue(const std::vector<RootedTree>& subtrees) {
  if (subtrees.empty()) throw std::invalid_argument("glue: empty subtree list");
  int total = 1;
  for (const auto& s : subtrees) total += s.n_vertices();
  std::vector<int> parent(total);
  parent[0] = -1;
  int offset = 1;
  for (const auto& s : subtrees) {
    for (int v = 0; v < s.n_vertices(); ++v)
      parent[offset + v] = s.parent(v) == -1 ? 0 : offset + s.parent(v);
    offset += s.n_vertices();
  }
  return RootedTree::from_parents(parent);
}

CanonicalCode canonical_code(const RootedTree& t) {
  const int n = t.n_vertices();
  std::vector<std::string> code(n);
  // Children appear after their parent in BFS numbering, so a reverse
  // sweep sees each child code before its parent needs it.
  for (int v = n - 1; v >= 0; --v) {
    std::vector<std::string> kid_codes;
    kid_codes.reserve(t.children(v).size());
    for (int c : t.children(v)) kid_codes.push_back(std::move(code[c]));
    std::sort(kid_codes.begin(), kid_codes.end());
    std::string s = "(";
    for (auto& k : kid_codes) s += k;
    s += ')';
    code[v] = std::move(s);
  }
  return CanonicalCode{std::move(code[0])};
}

int height(const RootedTree& t) {
  int h = 0;
  for (int v = 0; v < t.n_vertices(); ++v) h = std::max(h, t.height(v));
  return h;
}

int diameter(const RootedTree& t) {
  // For each vertex: the two largest downward heights among children.
  const int n = t.n_vertices();
  std::vector<int> down(n, 0);
  int diam = 0;
  for (int v = n - 1; v >= 0; --v) {
    int best1 = -1, best2 = -1;  // top two child down-heights
    for (int c : t.children(v)) {
      int d = down[c];
      if (d > best1) {
        best2 = best1;
        best1 = d;
      } else if (d > best2) {
        best2 = d;
      }
    }
    if (best1 >= 0) down[v] = best1 + 1;
    int through = 0;
    if (best1 >= 0) through += best1 + 1;
    if (best2 >= 0) through += best2 + 1;
    diam = std::max(diam, through);
  }
  return diam;
}

int leaf_count(const RootedTree& t) {
  int k = 0;
  for (int v = 1; v < t.n_vertices(); ++v)
    if (t.out_degree(v) == 0) ++k;
  return k;
}

std::vector<int> leaves_of(const RootedTree& t) {
  std::vector<int> out;
  for (int v = 1; v < t.n_vertices(); ++v)
    if (t.out_degree(v) == 0) out.push_back(v);
  return out;
}

std::vector<int> degree_profile(const RootedTree& t) {
  std::vector<int> d(t.n_vertices());
  for (int v = 0; v < t.n_vertices(); ++v) d[v] = t.out_degree(v);
  std::sort(d.begin(), d.end(), std::greater<int>());
  return d;
}

int uniform_leaf(const RootedTree& t, Rng& rng) {
  auto ls = leaves_of(t);
  if (ls.empty())
    throw std::invalid_argument("uniform_leaf: tree has no leaf");
  return ls[rng.below(ls.size())];
}

std::vector<long long> sizes_along_spine(const RootedTree& t, int leaf) {
  if (leaf <= 0 || leaf >= t.n_vertices() || t.out_degree(leaf) != 0)
    throw std::invalid_argument("sizes_along_spine: not a leaf");
  const int n = t.n_vertices();
  // Subtree leaf counts via one reverse sweep.
  std::vector<long long> sub(n, 0);
  for (int v = n - 1; v >= 1; --v) {
    if (t.out_degree(v) == 0) sub[v] = 1;
    sub[t.parent(v)] += sub[v];
  }
  std::vector<long long> out;
  for (int v = leaf; v != -1; v = t.parent(v)) out.push_back(sub[v]);
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace mbt
