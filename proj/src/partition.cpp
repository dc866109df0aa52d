#include "mbt/partition.hpp"

#include <algorithm>
#include <sstream>

namespace mbt {

IntPartition::IntPartition(std::vector<uint64_t> p) : parts(std::move(p)) {
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] == 0) throw std::invalid_argument("partition: zero part");
    if (i > 0 && parts[i] > parts[i - 1])
      throw std::invalid_argument("partition: parts must be non-increasing");
  }
}

uint64_t IntPartition::n() const {
  uint64_t s = 0;
  for (uint64_t p : parts) s += p;
  return s;
}

uint64_t IntPartition::multiplicity(uint64_t j) const {
  uint64_t m = 0;
  for (uint64_t p : parts) m += (p == j);
  return m;
}

std::string IntPartition::to_string() const {
  if (is_cemetery()) return "()";
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) os << ',';
    os << parts[i];
  }
  os << ')';
  return os.str();
}

void for_each_partition(uint64_t n,
                        const std::function<bool(const IntPartition&)>& visit) {
  if (n == 0) return;
  IntPartition lam;
  lam.parts = {n};
  for (;;) {
    if (!visit(lam)) return;
    // Next partition in decreasing lexicographic order: find the last
    // part > 1, decrement it, and refill greedily.
    auto& p = lam.parts;
    size_t i = p.size();
    while (i > 0 && p[i - 1] == 1) --i;
    if (i == 0) return;  // all ones: (1,...,1) was the last partition
    uint64_t rem = p.size() - i;  // number of trailing ones
    p.resize(i);
    p[i - 1] -= 1;
    rem += 1;
    uint64_t cap = p[i - 1];
    while (rem > 0) {
      uint64_t take = std::min(cap, rem);
      p.push_back(take);
      rem -= take;
    }
  }
}

std::vector<IntPartition> partitions_of(uint64_t n) {
  if (n > 60)
    throw std::invalid_argument("partitions_of: exhaustive use limited to n <= 60");
  std::vector<IntPartition> out;
  for_each_partition(n, [&](const IntPartition& lam) {
    out.push_back(lam);
    return true;
  });
  return out;
}

uint64_t partition_count(uint64_t n) {
  if (n > 60) throw std::invalid_argument("partition_count: n <= 60");
  // Euler DP.
  std::vector<uint64_t> p(n + 1, 0);
  p[0] = 1;
  for (uint64_t k = 1; k <= n; ++k)
    for (uint64_t m = k; m <= n; ++m) p[m] += p[m - k];
  return p[n];
}

}  // namespace mbt
