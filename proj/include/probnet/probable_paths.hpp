#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "probnet/graph.hpp"
#include "probnet/graph_metrics.hpp"
#include "probnet/parallel.hpp"

namespace probnet {

/// Per-hop transmission success probability. beta = 1 disables the prior and
/// recovers pure most-probable paths.
struct TransmissionPrior {
  double beta = 1.0;
};

// Two path likelihoods within this absolute log-domain distance count as the
// same optimum; products of identical edge probabilities must compare equal
// despite floating-point rounding.
inline constexpr double kLogLikelihoodTieTolerance = 1e-12;

namespace detail {

inline void check_prior(const TransmissionPrior& prior) {
  if (!(prior.beta > 0.0) || prior.beta > 1.0)
    throw std::invalid_argument("transmission prior beta must be in (0, 1]");
}

}  // namespace detail

/// Probability that transmission succeeds across every hop of a path of the
/// given length: beta^length.
inline double transmission_prior(std::int64_t length, TransmissionPrior prior) {
  detail::check_prior(prior);
  if (length < 0) throw std::invalid_argument("path length must be non-negative");
  return std::pow(prior.beta, static_cast<double>(length));
}

// Single-source result of a maximum-likelihood path search. Log-likelihoods
// include the transmission prior: ln P(path) + hops * ln(beta). Unreachable
// nodes carry hops = -1, log_likelihood = -inf, sigma = 0 and no
// predecessors, and do not appear in `settled`.
struct PathTree {
  NodeId source = 0;
  std::vector<double> log_likelihood;
  std::vector<std::int32_t> hops;
  std::vector<std::vector<NodeId>> predecessors;  // co-optimal predecessors
  std::vector<double> sigma;                      // number of co-optimal paths
  std::vector<NodeId> settled;                    // decreasing log-likelihood

  bool reachable(NodeId v) const { return hops[v] >= 0; }
};

namespace detail {

inline constexpr std::uint32_t kUnsettled = 0xffffffffu;

// Adjacency with precomputed weights ln p(u,v) + ln beta, shared across the
// per-source searches of one betweenness run.
struct LogWeightedGraph {
  std::size_t n = 0;
  std::vector<std::uint32_t> offsets;
  std::vector<NodeId> nodes;
  std::vector<double> weights;

  LogWeightedGraph(const ProbabilisticGraph& pg, double beta) : n(pg.node_count()) {
    const double log_beta = std::log(beta);
    offsets.assign(n + 1, 0);
    for (NodeId u = 0; u < n; ++u) offsets[u + 1] = offsets[u] + static_cast<std::uint32_t>(pg.degree(u));
    nodes.resize(pg.edge_count() * 2);
    weights.resize(pg.edge_count() * 2);
    for (NodeId u = 0; u < n; ++u) {
      const auto nbrs = pg.neighbors(u);
      const auto probs = pg.neighbor_probabilities(u);
      for (std::size_t k = 0; k < nbrs.size(); ++k) {
        nodes[offsets[u] + k] = nbrs[k];
        weights[offsets[u] + k] = std::log(probs[k]) + log_beta;
      }
    }
  }
};

struct TreeScratch {
  std::vector<double> loglik;
  std::vector<std::int32_t> hops;
  std::vector<double> sigma;
  std::vector<std::uint32_t> settle_index;
  std::vector<NodeId> order;

  void reset(std::size_t n) {
    loglik.assign(n, -std::numeric_limits<double>::infinity());
    hops.assign(n, -1);
    sigma.assign(n, 0.0);
    settle_index.assign(n, kUnsettled);
    order.clear();
    order.reserve(n);
  }
};

// Best-first expansion in likelihood order. Every edge weight is <= 0, so the
// node with the highest tentative log-likelihood is final when popped
// (Dijkstra with negated costs); settled nodes are never relaxed again, which
// keeps paths simple even across p * beta == 1 edges. Co-optimal predecessors
// (ties within tolerance) accumulate sigma the way shortest-path counts do in
// the discrete algorithm. Among co-optimal paths hops records the smallest
// hop count. Heap ties break on node id, so the settle order is reproducible.
inline void most_likely_tree(const LogWeightedGraph& g, NodeId source, TreeScratch& s) {
  s.reset(g.n);
  s.loglik[source] = 0.0;
  s.hops[source] = 0;
  s.sigma[source] = 1.0;
  std::priority_queue<std::pair<double, NodeId>> frontier;
  frontier.push({0.0, source});
  while (!frontier.empty()) {
    const auto [ll, u] = frontier.top();
    frontier.pop();
    if (s.settle_index[u] != kUnsettled) continue;
    s.settle_index[u] = static_cast<std::uint32_t>(s.order.size());
    s.order.push_back(u);
    for (std::uint32_t k = g.offsets[u]; k < g.offsets[u + 1]; ++k) {
      const NodeId v = g.nodes[k];
      if (s.settle_index[v] != kUnsettled) continue;
      const double cand = s.loglik[u] + g.weights[k];
      if (cand > s.loglik[v] + kLogLikelihoodTieTolerance) {
        s.loglik[v] = cand;
        s.hops[v] = s.hops[u] + 1;
        s.sigma[v] = s.sigma[u];
        frontier.push({cand, v});
      } else if (cand >= s.loglik[v] - kLogLikelihoodTieTolerance) {
        s.sigma[v] += s.sigma[u];
        if (s.hops[u] + 1 < s.hops[v]) s.hops[v] = s.hops[u] + 1;
      }
    }
  }
}

// u is a co-optimal predecessor of w iff it settled earlier and its edge
// extends an optimal path; checked against the final likelihoods, this
// matches exactly the set whose sigmas were folded into sigma[w].
inline bool is_predecessor(const TreeScratch& s, NodeId u, double weight, NodeId w) {
  if (s.settle_index[u] >= s.settle_index[w]) return false;
  return std::abs(s.loglik[u] + weight - s.loglik[w]) <= kLogLikelihoodTieTolerance;
}

}  // namespace detail

// Maximum-likelihood handicapped path tree: maximizes P(path) * beta^hops
// for every reachable target.
inline PathTree mlh_path_tree(const ProbabilisticGraph& pg, NodeId source,
                              TransmissionPrior prior) {
  detail::check_prior(prior);
  if (source >= pg.node_count()) throw std::invalid_argument("unknown source node");
  const detail::LogWeightedGraph g(pg, prior.beta);
  detail::TreeScratch s;
  detail::most_likely_tree(g, source, s);

  PathTree tree;
  tree.source = source;
  tree.predecessors.resize(g.n);
  for (NodeId v = 0; v < g.n; ++v) {
    if (s.settle_index[v] == detail::kUnsettled || v == source) continue;
    for (std::uint32_t k = g.offsets[v]; k < g.offsets[v + 1]; ++k) {
      const NodeId u = g.nodes[k];
      if (detail::is_predecessor(s, u, g.weights[k], v)) tree.predecessors[v].push_back(u);
    }
  }
  tree.log_likelihood = std::move(s.loglik);
  tree.hops = std::move(s.hops);
  tree.sigma = std::move(s.sigma);
  tree.settled = std::move(s.order);
  return tree;
}

/// Most probable path tree: the beta = 1 special case.
inline PathTree ml_path_tree(const ProbabilisticGraph& pg, NodeId source) {
  return mlh_path_tree(pg, source, TransmissionPrior{1.0});
}

// Betweenness centrality over maximum-likelihood handicapped paths. Per
// source, dependencies are accumulated backwards over the settled nodes,
// starting from the least probable path, with credit split by co-optimal
// path counts; this degenerates to the discrete algorithm when every edge
// probability is 0 or 1.
inline std::vector<double> mlh_betweenness(const ProbabilisticGraph& pg, TransmissionPrior prior,
                                           unsigned threads = 0) {
  detail::check_prior(prior);
  const std::size_t n = pg.node_count();
  std::vector<double> scores(n, 0.0);
  if (n == 0) return scores;
  const detail::LogWeightedGraph g(pg, prior.beta);

  std::vector<std::vector<double>> partials(block_count(n, detail::kSourceBlock));
  for_each_block(n, detail::kSourceBlock, threads, [&](std::size_t b, std::size_t first, std::size_t last) {
    std::vector<double> acc(n, 0.0);
    std::vector<double> delta(n);
    detail::TreeScratch s;
    for (std::size_t src = first; src < last; ++src) {
      const NodeId source = static_cast<NodeId>(src);
      detail::most_likely_tree(g, source, s);
      std::fill(delta.begin(), delta.end(), 0.0);
      for (std::size_t i = s.order.size(); i-- > 0;) {
        const NodeId w = s.order[i];
        for (std::uint32_t k = g.offsets[w]; k < g.offsets[w + 1]; ++k) {
          const NodeId u = g.nodes[k];
          if (detail::is_predecessor(s, u, g.weights[k], w))
            delta[u] += s.sigma[u] / s.sigma[w] * (1.0 + delta[w]);
        }
        if (w != source) acc[w] += delta[w];
      }
    }
    partials[b] = std::move(acc);
  });

  for (const auto& partial : partials)
    for (std::size_t i = 0; i < n; ++i) scores[i] += partial[i];
  return scores;
}

/// Betweenness centrality ranking over MLH paths (rank 1 = most central).
inline std::vector<double> mlh_bcr(const ProbabilisticGraph& pg, TransmissionPrior prior,
                                   unsigned threads = 0) {
  return rank(mlh_betweenness(pg, prior, threads));
}

/// Mean hop count of the maximum-likelihood handicapped paths over reachable
/// ordered pairs; the path-length analogue of avg_shortest_path.
inline AvgPathResult mlh_avg_path_length(const ProbabilisticGraph& pg, TransmissionPrior prior,
                                         unsigned threads = 0) {
  detail::check_prior(prior);
  const std::size_t n = pg.node_count();
  if (n < 2) throw std::invalid_argument("average path length needs at least two nodes");
  const detail::LogWeightedGraph g(pg, prior.beta);

  struct Partial {
    std::uint64_t total = 0;
    std::uint64_t pairs = 0;
  };
  std::vector<Partial> partials(block_count(n, detail::kSourceBlock));
  for_each_block(n, detail::kSourceBlock, threads, [&](std::size_t b, std::size_t first, std::size_t last) {
    detail::TreeScratch s;
    Partial acc;
    for (std::size_t src = first; src < last; ++src) {
      detail::most_likely_tree(g, static_cast<NodeId>(src), s);
      for (NodeId v = 0; v < n; ++v) {
        if (v == src || s.hops[v] < 0) continue;
        acc.total += static_cast<std::uint64_t>(s.hops[v]);
        ++acc.pairs;
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

}  // namespace probnet
