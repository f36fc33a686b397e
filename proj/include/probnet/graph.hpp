#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace probnet {

using NodeId = std::uint32_t;

/// Undirected node pair, canonical form u < v.
struct Edge {
  NodeId u;
  NodeId v;
  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected node pair with an existence probability in (0, 1].
struct ProbEdge {
  NodeId u;
  NodeId v;
  double p;
};

namespace detail {

inline void check_edge_endpoints(NodeId u, NodeId v, std::size_t n) {
  if (u == v) throw std::invalid_argument("graph edge is a self-loop");
  if (u >= n || v >= n) throw std::invalid_argument("graph edge endpoint out of range");
}

}  // namespace detail

// Unweighted undirected graph over dense node ids 0..n-1. Immutable after
// construction. The edge list is kept sorted, which gives every edge a stable
// rank (used as the random-stream counter when sampling), and makes each
// neighbor list ascending.
class DiscreteGraph {
 public:
  DiscreteGraph() = default;

  explicit DiscreteGraph(std::size_t n, std::vector<std::string> labels = {})
      : DiscreteGraph(n, std::span<const Edge>{}, std::move(labels)) {}

  DiscreteGraph(std::size_t n, std::span<const Edge> edges, std::vector<std::string> labels = {})
      : node_count_(n) {
    if (!labels.empty() && labels.size() != n)
      throw std::invalid_argument("label count does not match node count");
    labels_ = std::move(labels);
    edges_.reserve(edges.size());
    for (Edge e : edges) {
      if (e.u > e.v) std::swap(e.u, e.v);
      detail::check_edge_endpoints(e.u, e.v, n);
      edges_.push_back(e);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
      throw std::invalid_argument("duplicate graph edge");
    build_adjacency();
  }

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }

  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }

  bool has_edge(NodeId a, NodeId b) const {
    if (a >= node_count_ || b >= node_count_ || a == b) return false;
    if (degree(a) > degree(b)) std::swap(a, b);
    const auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
  }

  bool labeled() const noexcept { return !labels_.empty(); }
  std::span<const std::string> labels() const noexcept { return labels_; }
  std::string label(NodeId v) const { return labels_.empty() ? std::to_string(v) : labels_[v]; }

 private:
  void build_adjacency() {
    offsets_.assign(node_count_ + 1, 0);
    for (const Edge& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t i = 1; i <= node_count_; ++i) offsets_[i] += offsets_[i - 1];
    adjacency_.resize(edges_.size() * 2);
    std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
    // Filling in lexicographic edge order leaves each neighbor list ascending:
    // a node first receives its smaller partners (as the v endpoint), then its
    // larger ones (as the u endpoint), both in increasing order.
    for (const Edge& e : edges_) {
      adjacency_[cursor[e.u]++] = e.v;
      adjacency_[cursor[e.v]++] = e.u;
    }
  }

  std::size_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::vector<std::string> labels_;
};

// Node set plus per-pair existence probabilities; defines a distribution over
// discrete graphs under edge independence. Pairs with probability zero are
// simply absent. Immutable after construction; edge order is canonical.
class ProbabilisticGraph {
 public:
  ProbabilisticGraph() = default;

  ProbabilisticGraph(std::size_t n, std::span<const ProbEdge> edges, std::int64_t build_time = 0,
                     std::vector<std::string> labels = {})
      : node_count_(n), build_time_(build_time) {
    if (!labels.empty() && labels.size() != n)
      throw std::invalid_argument("label count does not match node count");
    labels_ = std::move(labels);
    edges_.reserve(edges.size());
    for (ProbEdge e : edges) {
      if (e.u > e.v) std::swap(e.u, e.v);
      detail::check_edge_endpoints(e.u, e.v, n);
      if (!(e.p > 0.0) || e.p > 1.0)
        throw std::invalid_argument("edge probability outside (0, 1]");
      edges_.push_back(e);
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const ProbEdge& a, const ProbEdge& b) { return Edge{a.u, a.v} < Edge{b.u, b.v}; });
    const auto dup = std::adjacent_find(
        edges_.begin(), edges_.end(),
        [](const ProbEdge& a, const ProbEdge& b) { return a.u == b.u && a.v == b.v; });
    if (dup != edges_.end()) throw std::invalid_argument("duplicate graph edge");
    build_adjacency();
  }

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const ProbEdge> edges() const noexcept { return edges_; }
  std::int64_t build_time() const noexcept { return build_time_; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {adj_nodes_.data() + offsets_[u], adj_nodes_.data() + offsets_[u + 1]};
  }

  std::span<const double> neighbor_probabilities(NodeId u) const {
    return {adj_probs_.data() + offsets_[u], adj_probs_.data() + offsets_[u + 1]};
  }

  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }

  /// Probability of the pair, or nullopt when outside the support.
  std::optional<double> probability(NodeId a, NodeId b) const {
    if (a >= node_count_ || b >= node_count_ || a == b) return std::nullopt;
    if (degree(a) > degree(b)) std::swap(a, b);
    const auto nb = neighbors(a);
    const auto it = std::lower_bound(nb.begin(), nb.end(), b);
    if (it == nb.end() || *it != b) return std::nullopt;
    return adj_probs_[offsets_[a] + static_cast<std::size_t>(it - nb.begin())];
  }

  bool labeled() const noexcept { return !labels_.empty(); }
  std::span<const std::string> labels() const noexcept { return labels_; }
  std::string label(NodeId v) const { return labels_.empty() ? std::to_string(v) : labels_[v]; }

 private:
  void build_adjacency() {
    offsets_.assign(node_count_ + 1, 0);
    for (const ProbEdge& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (std::size_t i = 1; i <= node_count_; ++i) offsets_[i] += offsets_[i - 1];
    adj_nodes_.resize(edges_.size() * 2);
    adj_probs_.resize(edges_.size() * 2);
    std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const ProbEdge& e : edges_) {
      adj_nodes_[cursor[e.u]] = e.v;
      adj_probs_[cursor[e.u]++] = e.p;
      adj_nodes_[cursor[e.v]] = e.u;
      adj_probs_[cursor[e.v]++] = e.p;
    }
  }

  std::size_t node_count_ = 0;
  std::vector<ProbEdge> edges_;
  std::vector<std::uint32_t> offsets_{0};
  std::vector<NodeId> adj_nodes_;
  std::vector<double> adj_probs_;
  std::int64_t build_time_ = 0;
  std::vector<std::string> labels_;
};

}  // namespace probnet
