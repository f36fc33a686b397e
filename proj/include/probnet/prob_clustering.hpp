#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "probnet/graph.hpp"

namespace probnet {

/// Closed-form clustering quantities for one node: expected triangle count,
/// expected coexisting neighbor pairs, and their ratio (the first-order
/// approximation of the expected clustering coefficient).
struct ClusteringReport {
  double expected_triangles = 0.0;
  double expected_combinations = 0.0;
  std::optional<double> coefficient;  // nullopt when expected_combinations == 0
};

// Sums run over ordered neighbor pairs (j, k), j != k, computed as twice the
// unordered sum; the ratio is identical under either convention. Only
// incident-edge pairs are touched, so cost per node is O(degree^2 log degree).
inline ClusteringReport clustering_report(const ProbabilisticGraph& pg, NodeId i) {
  if (i >= pg.node_count()) throw std::invalid_argument("unknown node");
  const auto nbrs = pg.neighbors(i);
  const auto probs = pg.neighbor_probabilities(i);
  double triangles = 0.0;
  double combinations = 0.0;
  for (std::size_t a = 0; a < nbrs.size(); ++a) {
    for (std::size_t b = a + 1; b < nbrs.size(); ++b) {
      const double both_incident = probs[a] * probs[b];
      combinations += both_incident;
      if (const auto closing = pg.probability(nbrs[a], nbrs[b]))
        triangles += both_incident * *closing;
    }
  }
  ClusteringReport report;
  report.expected_triangles = 2.0 * triangles;
  report.expected_combinations = 2.0 * combinations;
  if (report.expected_combinations > 0.0)
    report.coefficient = report.expected_triangles / report.expected_combinations;
  return report;
}

/// Expected number of triangles through node i (ordered-pair convention).
inline double expected_triangles(const ProbabilisticGraph& pg, NodeId i) {
  return clustering_report(pg, i).expected_triangles;
}

/// Expected number of coexisting neighbor pairs of node i (ordered-pair
/// convention).
inline double expected_combinations(const ProbabilisticGraph& pg, NodeId i) {
  return clustering_report(pg, i).expected_combinations;
}

/// Probabilistic clustering coefficient of node i, or nullopt when the
/// expected combination count is zero.
inline std::optional<double> prob_clustering_coefficient(const ProbabilisticGraph& pg, NodeId i) {
  return clustering_report(pg, i).coefficient;
}

inline std::vector<ClusteringReport> clustering_reports(const ProbabilisticGraph& pg) {
  std::vector<ClusteringReport> out;
  out.reserve(pg.node_count());
  for (NodeId i = 0; i < pg.node_count(); ++i) out.push_back(clustering_report(pg, i));
  return out;
}

}  // namespace probnet
