#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "probnet/graph.hpp"
#include "probnet/temporal_log.hpp"

namespace probnet {

/// Exponential decay time constant, in seconds. The rate parameter is fixed
/// at 1 so a message observed right now carries probability exactly 1.
struct DecayParams {
  double lambda;
};

// Pairs whose combined probability falls below this are left out of the
// graph: they are sampled essentially never and cannot carry path likelihood.
inline constexpr double kMinEdgeProbability = 1e-12;

namespace detail {

inline void check_decay(const DecayParams& params) {
  if (!(params.lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
}

}  // namespace detail

/// Probability that a single message observed at t_msg still indicates an
/// active relationship at t_now: exp(-(t_now - t_msg) / lambda).
inline double message_activation(std::int64_t t_msg, std::int64_t t_now, DecayParams params) {
  detail::check_decay(params);
  if (t_msg > t_now) throw std::invalid_argument("message is in the future");
  return std::exp(-static_cast<double>(t_now - t_msg) / params.lambda);
}

/// Combined edge probability from a message history: one minus the
/// probability that no message contributes. Empty history gives 0.
inline double edge_probability(std::span<const std::int64_t> message_times, std::int64_t t_now,
                               DecayParams params) {
  double none_contribute = 1.0;
  for (std::int64_t t : message_times) none_contribute *= 1.0 - message_activation(t, t_now, params);
  double p = 1.0 - none_contribute;
  if (p > 1.0) p = 1.0;
  if (p < 0.0) p = 0.0;
  return p;
}

namespace detail {

inline std::uint64_t pair_key(NodeId u, NodeId v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// Dense-id mapping for a filtered log: graph node i corresponds to
// log.nodes()[i], labelled with that node's name.
struct DenseIndex {
  std::vector<NodeId> ids;
  std::vector<std::string> labels;

  explicit DenseIndex(const TransactionLog& log) {
    ids.assign(log.nodes().begin(), log.nodes().end());
    labels.reserve(ids.size());
    for (NodeId id : ids) labels.emplace_back(log.name(id));
  }

  NodeId dense(NodeId registry_id) const {
    const auto it = std::lower_bound(ids.begin(), ids.end(), registry_id);
    return static_cast<NodeId>(it - ids.begin());
  }
};

}  // namespace detail

// Builds the probabilistic view at t_now: every pair with at least one
// message up to t_now gets an edge, with the combined decayed probability.
// The node set is every node active up to t_now, so long-quiet nodes remain
// present even after their edges decay away.
inline ProbabilisticGraph build_probabilistic_graph(const TransactionLog& log, std::int64_t t_now,
                                                    DecayParams params) {
  detail::check_decay(params);
  const TransactionLog active = log.up_to(t_now);
  detail::DenseIndex index(active);
  // Accumulate the per-pair product of (1 - activation) in time order.
  std::unordered_map<std::uint64_t, double> none_contribute;
  none_contribute.reserve(active.size());
  for (const Transaction& tx : active.transactions()) {
    const double a = message_activation(tx.timestamp, t_now, params);
    auto [it, inserted] = none_contribute.try_emplace(detail::pair_key(tx.u, tx.v), 1.0);
    it->second *= 1.0 - a;
  }
  std::vector<ProbEdge> edges;
  edges.reserve(none_contribute.size());
  for (const auto& [key, none] : none_contribute) {
    double p = 1.0 - none;
    if (p > 1.0) p = 1.0;
    if (p < kMinEdgeProbability) continue;
    const NodeId u = index.dense(static_cast<NodeId>(key >> 32));
    const NodeId v = index.dense(static_cast<NodeId>(key & 0xffffffffu));
    edges.push_back({u, v, p});
  }
  return ProbabilisticGraph(index.ids.size(), edges, t_now, std::move(index.labels));
}

/// Union baseline: an edge for every pair with any transaction up to t.
inline DiscreteGraph build_aggregate_graph(const TransactionLog& log, std::int64_t t) {
  const TransactionLog active = log.up_to(t);
  detail::DenseIndex index(active);
  std::vector<Edge> edges;
  edges.reserve(active.size());
  for (const Transaction& tx : active.transactions())
    edges.push_back({index.dense(tx.u), index.dense(tx.v)});
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return DiscreteGraph(index.ids.size(), edges, std::move(index.labels));
}

/// Slice baseline: an edge for every pair with a transaction in [t - delta, t].
/// Nodes quiet over the whole window are absent.
inline DiscreteGraph build_slice_graph(const TransactionLog& log, std::int64_t t,
                                       std::int64_t delta) {
  const TransactionLog active = log.window(t, delta);
  detail::DenseIndex index(active);
  std::vector<Edge> edges;
  edges.reserve(active.size());
  for (const Transaction& tx : active.transactions())
    edges.push_back({index.dense(tx.u), index.dense(tx.v)});
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return DiscreteGraph(index.ids.size(), edges, std::move(index.labels));
}

// Log of the probability that the distribution realizes exactly g: the sum of
// ln p over present edges plus ln(1 - p) over absent support edges. Returns
// -infinity when a certain edge (p = 1) is missing from g. Throws if g uses a
// pair outside the support, where the realization probability is zero by
// construction rather than a modelled event.
inline double graph_log_probability(const ProbabilisticGraph& pg, const DiscreteGraph& g) {
  if (pg.node_count() != g.node_count())
    throw std::invalid_argument("graph node sets differ");
  const auto support = pg.edges();
  const auto present = g.edges();
  std::size_t j = 0;
  double sum = 0.0;
  for (const ProbEdge& e : support) {
    const Edge cur{e.u, e.v};
    if (j < present.size() && present[j] < cur)
      throw std::invalid_argument("graph contains an edge outside the probabilistic support");
    if (j < present.size() && present[j] == cur) {
      sum += std::log(e.p);
      ++j;
    } else {
      sum += std::log1p(-e.p);  // -inf when p == 1
    }
  }
  if (j != present.size())
    throw std::invalid_argument("graph contains an edge outside the probabilistic support");
  return sum;
}

// Snapshot format `src,dst,probability`, rows sorted by endpoint labels.
// Probabilities are written with enough digits to round-trip exactly.
inline void write_probabilistic_graph_csv(const ProbabilisticGraph& pg, std::ostream& out) {
  struct Row {
    std::string lo, hi;
    double p;
  };
  std::vector<Row> rows;
  rows.reserve(pg.edge_count());
  for (const ProbEdge& e : pg.edges()) {
    Row r{pg.label(e.u), pg.label(e.v), e.p};
    if (r.hi < r.lo) std::swap(r.lo, r.hi);
    rows.push_back(std::move(r));
  }
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return std::tie(a.lo, a.hi) < std::tie(b.lo, b.hi); });
  out << "src,dst,probability\n";
  char buf[64];
  for (const Row& r : rows) {
    const auto res = std::to_chars(buf, buf + sizeof buf, r.p);
    out << r.lo << ',' << r.hi << ',' << std::string_view(buf, res.ptr - buf) << '\n';
  }
  if (!out) throw std::runtime_error("probabilistic graph write failed");
}

inline void write_probabilistic_graph_csv(const ProbabilisticGraph& pg,
                                          const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_probabilistic_graph_csv(pg, out);
}

}  // namespace probnet
