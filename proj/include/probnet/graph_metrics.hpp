#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "probnet/graph.hpp"
#include "probnet/parallel.hpp"

namespace probnet {

namespace detail {
inline constexpr std::size_t kSourceBlock = 16;
}

struct AvgPathResult {
  std::optional<double> value;  // mean hop count over reachable ordered pairs
  double reachable_fraction = 0.0;
};

// Mean BFS distance over all ordered reachable pairs (i != j). Unreachable
// pairs are excluded from the mean; reachable_fraction reports how much of
// |V|(|V|-1) survived, so nothing is silently lost on disconnected graphs.
inline AvgPathResult avg_shortest_path(const DiscreteGraph& g, unsigned threads = 0) {
  const std::size_t n = g.node_count();
  if (n < 2) throw std::invalid_argument("average shortest path needs at least two nodes");

  struct Partial {
    std::uint64_t total = 0;
    std::uint64_t pairs = 0;
  };
  std::vector<Partial> partials(block_count(n, detail::kSourceBlock));
  for_each_block(n, detail::kSourceBlock, threads, [&](std::size_t b, std::size_t first, std::size_t last) {
    std::vector<std::int32_t> dist(n);
    std::vector<NodeId> queue(n);
    Partial acc;
    for (std::size_t s = first; s < last; ++s) {
      std::fill(dist.begin(), dist.end(), -1);
      dist[s] = 0;
      std::size_t head = 0, tail = 0;
      queue[tail++] = static_cast<NodeId>(s);
      while (head < tail) {
        const NodeId u = queue[head++];
        for (NodeId v : g.neighbors(u)) {
          if (dist[v] >= 0) continue;
          dist[v] = dist[u] + 1;
          acc.total += static_cast<std::uint64_t>(dist[v]);
          ++acc.pairs;
          queue[tail++] = v;
        }
      }
    }
    partials[b] = acc;
  });

  std::uint64_t total = 0, pairs = 0;
  for (const Partial& p : partials) {
    total += p.total;
    pairs += p.pairs;
  }
  AvgPathResult result;
  result.reachable_fraction =
      static_cast<double>(pairs) / (static_cast<double>(n) * static_cast<double>(n - 1));
  if (pairs > 0) result.value = static_cast<double>(total) / static_cast<double>(pairs);
  return result;
}

// Brandes betweenness over ordered pairs: each ordered pair (s, t) distributes
// one unit of credit over the interior nodes of its shortest paths, split by
// shortest-path counts. Endpoints are excluded. No undirected halving, so a
// path a-b-c scores b = 2.
inline std::vector<double> betweenness(const DiscreteGraph& g, unsigned threads = 0) {
  const std::size_t n = g.node_count();
  std::vector<double> scores(n, 0.0);
  if (n == 0) return scores;

  std::vector<std::vector<double>> partials(block_count(n, detail::kSourceBlock));
  for_each_block(n, detail::kSourceBlock, threads, [&](std::size_t b, std::size_t first, std::size_t last) {
    std::vector<double> acc(n, 0.0);
    std::vector<std::int32_t> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<NodeId> order(n);
    for (std::size_t s = first; s < last; ++s) {
      std::fill(dist.begin(), dist.end(), -1);
      std::fill(sigma.begin(), sigma.end(), 0.0);
      std::fill(delta.begin(), delta.end(), 0.0);
      dist[s] = 0;
      sigma[s] = 1.0;
      std::size_t head = 0, tail = 0;
      order[tail++] = static_cast<NodeId>(s);
      while (head < tail) {
        const NodeId u = order[head++];
        for (NodeId v : g.neighbors(u)) {
          if (dist[v] < 0) {
            dist[v] = dist[u] + 1;
            order[tail++] = v;
          }
          if (dist[v] == dist[u] + 1) sigma[v] += sigma[u];
        }
      }
      for (std::size_t i = tail; i-- > 0;) {
        const NodeId w = order[i];
        for (NodeId u : g.neighbors(w))
          if (dist[u] + 1 == dist[w]) delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w]);
        if (w != s) acc[w] += delta[w];
      }
    }
    partials[b] = std::move(acc);
  });

  for (const auto& partial : partials)
    for (std::size_t i = 0; i < n; ++i) scores[i] += partial[i];
  return scores;
}

/// Fraction of ordered neighbor pairs of i that are themselves connected;
/// undefined (nullopt) when i has fewer than two neighbors.
inline std::optional<double> clustering_coefficient(const DiscreteGraph& g, NodeId i) {
  if (i >= g.node_count()) throw std::invalid_argument("unknown node");
  const auto nbrs = g.neighbors(i);
  const std::size_t d = nbrs.size();
  if (d < 2) return std::nullopt;
  std::size_t linked = 0;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b)
      if (g.has_edge(nbrs[a], nbrs[b])) ++linked;
  return static_cast<double>(2 * linked) / (static_cast<double>(d) * static_cast<double>(d - 1));
}

inline std::vector<std::optional<double>> clustering_coefficients(const DiscreteGraph& g) {
  std::vector<std::optional<double>> out(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) out[i] = clustering_coefficient(g, i);
  return out;
}

// Descending ranks: the highest score gets rank 1; tied scores share the mean
// of the ranks they span, so ranks stay comparable across methods.
inline std::vector<double> rank(std::span<const double> scores) {
  const std::size_t n = scores.size();
  std::vector<NodeId> idx(n);
  std::iota(idx.begin(), idx.end(), NodeId{0});
  std::sort(idx.begin(), idx.end(), [&](NodeId a, NodeId b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[idx[j]] == scores[idx[i]]) ++j;
    const double shared = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1 .. j
    for (std::size_t k = i; k < j; ++k) ranks[idx[k]] = shared;
    i = j;
  }
  return ranks;
}

}  // namespace probnet
