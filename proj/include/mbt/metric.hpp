#pragma once

// Finite measured metric trees and rooted Gromov-Hausdorff /
// Gromov-Hausdorff-Prokhorov computation on small instances, through the
// correspondence characterization (root pair forced): gh equals half the
// minimal distortion over correspondences containing the root pair.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "mbt/tree.hpp"

namespace mbt {

struct MeasuredMetricTree {
  std::vector<std::vector<double>> dist;  // symmetric, zero diagonal
  int root = 0;
  std::vector<double> weight;  // probability vector

  int n_points() const { return static_cast<int>(dist.size()); }
  double height() const;
  double diam() const;
  // Metric axioms to 1e-12 and the four-point condition to 1e-9.
  void validate() const;
};

enum class WeightKind { LeafUniform, VertexUniform };

MeasuredMetricTree from_discrete(const RootedTree& t, double edge_scale,
                                 WeightKind weights);

// Exact rooted GH distance; both sides capped at 7 points.
double gh_rooted(const MeasuredMetricTree& a, const MeasuredMetricTree& b);
// Greedy correspondence upper bound, any size.
double gh_upper(const MeasuredMetricTree& a, const MeasuredMetricTree& b);

// Prokhorov distance between two weight vectors on one finite metric
// space (exact via bisection with subset checks; capped at 12 points).
double prokhorov(const std::vector<double>& mu, const std::vector<double>& nu,
                 const std::vector<std::vector<double>>& dist);

// Upper bound on rooted GHP: best over searched correspondences of
// max(half-distortion, root displacement, Prokhorov distance in the
// glued space). An upper bound only; not a metric claim.
double ghp_upper(const MeasuredMetricTree& a, const MeasuredMetricTree& b);

}  // namespace mbt
