#pragma once

// Reference implementations used only by tests. They are deliberately naive
// (matrix relaxation, exhaustive path enumeration) and share no algorithm
// code with the library: only graph accessors are used.

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "probnet/graph.hpp"

namespace probnet::testing {

// All-pairs hop distances by Floyd-Warshall; -1 where unreachable.
inline std::vector<std::vector<int>> floyd_warshall(const DiscreteGraph& g) {
  const std::size_t n = g.node_count();
  constexpr int kInf = 1 << 28;
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) dist[i][i] = 0;
  for (const Edge& e : g.edges()) {
    dist[e.u][e.v] = 1;
    dist[e.v][e.u] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (dist[i][k] + dist[k][j] < dist[i][j]) dist[i][j] = dist[i][k] + dist[k][j];
  for (auto& row : dist)
    for (int& d : row)
      if (d >= kInf) d = -1;
  return dist;
}

namespace detail {

template <class Visit>
inline void enumerate_simple_paths(const DiscreteGraph& g, NodeId current, NodeId target,
                                   std::vector<NodeId>& path, std::vector<bool>& on_path,
                                   Visit&& visit) {
  if (current == target) {
    visit(path);
    return;
  }
  for (NodeId next : g.neighbors(current)) {
    if (on_path[next]) continue;
    on_path[next] = true;
    path.push_back(next);
    enumerate_simple_paths(g, next, target, path, on_path, visit);
    path.pop_back();
    on_path[next] = false;
  }
}

}  // namespace detail

// Betweenness by enumerating every simple path of every ordered pair, keeping
// the shortest ones, and crediting interior nodes 1/count each.
inline std::vector<double> exhaustive_betweenness(const DiscreteGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> scores(n, 0.0);
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = 0; t < n; ++t) {
      if (s == t) continue;
      std::vector<std::vector<NodeId>> best;
      std::size_t best_len = static_cast<std::size_t>(-1);
      std::vector<NodeId> path{s};
      std::vector<bool> on_path(n, false);
      on_path[s] = true;
      detail::enumerate_simple_paths(g, s, t, path, on_path, [&](const std::vector<NodeId>& p) {
        const std::size_t len = p.size() - 1;
        if (len < best_len) {
          best_len = len;
          best.clear();
        }
        if (len == best_len) best.push_back(p);
      });
      if (best.empty()) continue;
      const double credit = 1.0 / static_cast<double>(best.size());
      for (const auto& p : best)
        for (std::size_t i = 1; i + 1 < p.size(); ++i) scores[p[i]] += credit;
    }
  }
  return scores;
}

namespace detail {

template <class Visit>
inline void enumerate_weighted_paths(const ProbabilisticGraph& pg, NodeId current, NodeId target,
                                     double loglik, std::size_t hops, std::vector<bool>& on_path,
                                     std::vector<NodeId>* interior, double log_beta,
                                     Visit&& visit) {
  if (current == target) {
    visit(loglik + static_cast<double>(hops) * log_beta, hops, interior);
    return;
  }
  const auto nbrs = pg.neighbors(current);
  const auto probs = pg.neighbor_probabilities(current);
  for (std::size_t k = 0; k < nbrs.size(); ++k) {
    const NodeId next = nbrs[k];
    if (on_path[next]) continue;
    on_path[next] = true;
    if (interior && next != target) interior->push_back(next);
    enumerate_weighted_paths(pg, next, target, loglik + std::log(probs[k]), hops + 1, on_path,
                             interior, log_beta, visit);
    if (interior && next != target) interior->pop_back();
    on_path[next] = false;
  }
}

}  // namespace detail

// Best achievable ln(P(path) * beta^hops) over every simple path from s to t;
// -inf when unreachable.
inline double exhaustive_best_loglik(const ProbabilisticGraph& pg, NodeId s, NodeId t,
                                     double beta) {
  double best = -std::numeric_limits<double>::infinity();
  std::vector<bool> on_path(pg.node_count(), false);
  on_path[s] = true;
  detail::enumerate_weighted_paths(pg, s, t, 0.0, 0, on_path, nullptr, std::log(beta),
                                   [&](double ll, std::size_t, std::vector<NodeId>*) {
                                     if (ll > best) best = ll;
                                   });
  return best;
}

// Betweenness over maximum-likelihood handicapped paths by full enumeration:
// for each ordered pair, every co-optimal path (log-likelihood within tol of
// the best) credits its interior nodes 1/count.
inline std::vector<double> exhaustive_mlh_betweenness(const ProbabilisticGraph& pg, double beta,
                                                      double tol) {
  const std::size_t n = pg.node_count();
  std::vector<double> scores(n, 0.0);
  const double log_beta = std::log(beta);
  for (NodeId s = 0; s < n; ++s) {
    for (NodeId t = 0; t < n; ++t) {
      if (s == t) continue;
      double best = -std::numeric_limits<double>::infinity();
      std::vector<std::vector<NodeId>> interiors;
      std::vector<NodeId> interior;
      std::vector<bool> on_path(n, false);
      on_path[s] = true;
      detail::enumerate_weighted_paths(
          pg, s, t, 0.0, 0, on_path, &interior, log_beta,
          [&](double ll, std::size_t, std::vector<NodeId>* nodes) {
            if (ll > best + tol) {
              best = ll;
              interiors.clear();
            }
            if (ll >= best - tol) interiors.push_back(*nodes);
          });
      if (interiors.empty()) continue;
      const double credit = 1.0 / static_cast<double>(interiors.size());
      for (const auto& nodes : interiors)
        for (NodeId v : nodes) scores[v] += credit;
    }
  }
  return scores;
}

}  // namespace probnet::testing
