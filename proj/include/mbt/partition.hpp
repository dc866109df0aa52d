#pragma once

// Integer partitions: elements of P_n, the non-increasing positive
// sequences summing to n. The empty partition is allowed only as the
// n = 1 cemetery event of leaf-indexed splitting families.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbt {

struct IntPartition {
  std::vector<uint64_t> parts;  // non-increasing, all >= 1

  IntPartition() = default;
  explicit IntPartition(std::vector<uint64_t> p);
  static IntPartition cemetery() { return IntPartition{}; }
  static IntPartition single_block(uint64_t n) { return IntPartition({n}); }

  bool is_cemetery() const { return parts.empty(); }
  uint64_t n() const;
  size_t length() const { return parts.size(); }
  // m_j: number of parts equal to j.
  uint64_t multiplicity(uint64_t j) const;

  bool operator==(const IntPartition& o) const { return parts == o.parts; }
  bool operator<(const IntPartition& o) const { return parts < o.parts; }
  std::string to_string() const;
};

// Visits every partition of n exactly once, in decreasing lexicographic
// order, starting from (n). Stops early if the visitor returns false.
void for_each_partition(uint64_t n,
                        const std::function<bool(const IntPartition&)>& visit);

// Materialized partition list; guarded to n <= 60.
std::vector<IntPartition> partitions_of(uint64_t n);

uint64_t partition_count(uint64_t n);  // p(n), n <= 60

}  // namespace mbt
