#pragma once

// Deterministic generators for randomized tests and the acceptance suite.
// The RNG here (std::mt19937_64) is independent of the library's own
// counter-based streams.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "probnet/graph.hpp"
#include "probnet/temporal_log.hpp"

namespace probnet::testing {

inline constexpr std::int64_t kDay = 86'400;

// Random spanning tree plus independent extra pairs; always connected.
inline DiscreteGraph random_connected_graph(std::mt19937_64& rng, std::size_t n, double density) {
  std::vector<Edge> edges;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (NodeId v = 1; v < n; ++v) {
    std::uniform_int_distribution<NodeId> attach(0, v - 1);
    edges.push_back({attach(rng), v});
  }
  std::set<std::pair<NodeId, NodeId>> present;
  for (const Edge& e : edges) present.emplace(e.u, e.v);
  for (NodeId u = 0; u + 1 < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (!present.count({u, v}) && coin(rng) < density) edges.push_back({u, v});
  return DiscreteGraph(n, edges);
}

// The certain-edge lift: every edge of g gets probability exactly 1, every
// other pair is absent. The only realizable graph of the result is g itself.
inline ProbabilisticGraph lift(const DiscreteGraph& g) {
  std::vector<ProbEdge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, 1.0});
  return ProbabilisticGraph(g.node_count(), edges);
}

// Uncertain graph with the requested number of distinct random pairs and
// probabilities uniform in [p_min, p_max].
inline ProbabilisticGraph random_prob_graph(std::mt19937_64& rng, std::size_t n,
                                            std::size_t edge_count, double p_min, double p_max) {
  std::set<std::pair<NodeId, NodeId>> pairs;
  std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(n - 1));
  const std::size_t max_pairs = n * (n - 1) / 2;
  while (pairs.size() < std::min(edge_count, max_pairs)) {
    NodeId u = node(rng), v = node(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    pairs.emplace(u, v);
  }
  std::uniform_real_distribution<double> prob(p_min, p_max);
  std::vector<ProbEdge> edges;
  for (const auto& [u, v] : pairs) edges.push_back({u, v, prob(rng)});
  return ProbabilisticGraph(n, edges);
}

inline TransactionLog make_log(
    const std::vector<std::tuple<std::string, std::string, std::int64_t>>& rows) {
  std::vector<RawTransaction> records;
  records.reserve(rows.size());
  for (const auto& [src, dst, ts] : rows) records.push_back({src, dst, ts});
  return ingest(records);
}

// Synthetic log with two activity phases over one year, designed so the
// recent and historical structures rank nodes differently:
//   - days 0..200 ("old"): a ring over all nodes plus busy stars around
//     hubs 0..4, with frequent repeat messages;
//   - days 352..364 ("recent"): stars around hubs n/2..n/2+4 plus sparse
//     bridges, no ring.
// Evaluated at day 365 with a 14-day window, the slice sees only the recent
// structure while the aggregate is dominated by the old one.
inline TransactionLog phase_shift_log(std::size_t n = 100) {
  std::vector<RawTransaction> records;
  auto node_name = [](std::size_t i) { return "n" + std::to_string(i); };
  auto add = [&](std::size_t a, std::size_t b, std::int64_t day) {
    records.push_back({node_name(a), node_name(b), day * kDay});
  };

  const std::size_t hub_b = n / 2;
  // Old phase: hub stars every 10 days, ring every 20 days.
  for (std::int64_t day = 0; day <= 200; day += 10) {
    for (std::size_t i = 5; i < n; ++i) add(i, i % 5, day);
    for (std::size_t h = 0; h < 5; ++h)
      for (std::size_t k = h + 1; k < 5; ++k) add(h, k, day);
    if (day % 20 == 0)
      for (std::size_t i = 0; i < n; ++i) add(i, (i + 1) % n, day);
  }
  // Recent phase: different hubs, message multiplicity varies per node.
  const std::int64_t recent_days[] = {352, 356, 360, 364};
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= hub_b && i < hub_b + 5) continue;
    const std::size_t copies = 1 + i % 3;
    for (std::size_t c = 0; c < copies; ++c) add(i, hub_b + i % 5, recent_days[c]);
  }
  for (std::size_t h = 0; h < 5; ++h)
    for (std::size_t k = h + 1; k < 5; ++k) add(hub_b + h, hub_b + k, 358);
  for (std::size_t i = 7; i + 7 < n; i += 7) add(i, i + 7, 360);

  return ingest(records);
}

// Log whose probabilistic view at `eval_day` has roughly the requested node
// and support-edge counts, for timing runs.
inline TransactionLog performance_log(std::mt19937_64& rng, std::size_t n, std::size_t edge_count,
                                      std::int64_t eval_day = 365) {
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  std::uniform_int_distribution<std::size_t> node(0, n - 1);
  while (pairs.size() < edge_count) {
    std::size_t u = node(rng), v = node(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    pairs.emplace(u, v);
  }
  std::uniform_int_distribution<std::int64_t> day(eval_day - 30, eval_day);
  std::vector<RawTransaction> records;
  for (const auto& [u, v] : pairs) {
    const int copies = 1 + static_cast<int>(rng() % 3);
    for (int c = 0; c < copies; ++c)
      records.push_back({"n" + std::to_string(u), "n" + std::to_string(v), day(rng) * kDay});
  }
  return ingest(records);
}

}  // namespace probnet::testing
