#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "probnet/edge_model.hpp"
#include "probnet/graph.hpp"
#include "probnet/graph_metrics.hpp"
#include "probnet/parallel.hpp"
#include "probnet/random.hpp"

namespace probnet {

struct SampleConfig {
  std::uint64_t samples = 10'000;  // m
  std::uint64_t seed = 0;
};

/// Monte Carlo estimate of one quantity. mean is nullopt when every sample
/// was undefined (m_used == 0).
struct Estimate {
  std::optional<double> mean;
  double std_error = 0.0;
  std::uint64_t m_used = 0;
  std::uint64_t undefined_count = 0;
};

enum class Metric { avg_path, bcr, cc };

namespace detail {

inline constexpr std::size_t kSampleBlock = 32;

inline void check_sample_config(const SampleConfig& cfg) {
  if (cfg.samples < 1) throw std::invalid_argument("sample count must be at least 1");
}

// Running moments plus the value range. Tracking min == max lets a constant
// stream report its exact value with a std error of exactly zero, instead of
// accumulating rounding noise through sum-of-squares cancellation.
struct MomentAccum {
  std::uint64_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  void add(double x) {
    ++count;
    sum += x;
    sum_sq += x * x;
    if (x < min) min = x;
    if (x > max) max = x;
  }

  void merge(const MomentAccum& o) {
    count += o.count;
    sum += o.sum;
    sum_sq += o.sum_sq;
    if (o.min < min) min = o.min;
    if (o.max > max) max = o.max;
  }

  Estimate finish(std::uint64_t total_samples) const {
    Estimate e;
    e.m_used = count;
    e.undefined_count = total_samples - count;
    if (count == 0) return e;
    if (min == max) {
      e.mean = min;
      return e;
    }
    e.mean = sum / static_cast<double>(count);
    if (count >= 2) {
      const double nf = static_cast<double>(count);
      double var = (sum_sq - sum * sum / nf) / (nf - 1.0);
      if (var < 0.0) var = 0.0;
      e.std_error = std::sqrt(var / nf);
    }
    return e;
  }
};

}  // namespace detail

// Draws sample `sample_index` from the distribution: every support edge is an
// independent Bernoulli trial. Each draw is a pure function of (seed,
// sample_index, edge rank in canonical order), so sample k is the same graph
// no matter which thread produces it or in what order.
inline DiscreteGraph sample_graph(const ProbabilisticGraph& pg, std::uint64_t sample_index,
                                  const SampleConfig& cfg) {
  const auto support = pg.edges();
  std::vector<Edge> kept;
  kept.reserve(support.size());
  for (std::size_t r = 0; r < support.size(); ++r)
    if (counter_uniform(cfg.seed, sample_index, r) < support[r].p)
      kept.push_back({support[r].u, support[r].v});
  return DiscreteGraph(pg.node_count(), kept);
}

// Expected average shortest path length, estimated over m samples. Samples
// with no reachable pair carry no path information and are skipped (counted
// in undefined_count).
inline Estimate expected_avg_shortest_path(const ProbabilisticGraph& pg, const SampleConfig& cfg,
                                           unsigned threads = 0) {
  detail::check_sample_config(cfg);
  if (pg.node_count() < 2)
    throw std::invalid_argument("average shortest path needs at least two nodes");
  std::vector<detail::MomentAccum> partials(block_count(cfg.samples, detail::kSampleBlock));
  for_each_block(cfg.samples, detail::kSampleBlock, threads,
                 [&](std::size_t b, std::size_t first, std::size_t last) {
                   detail::MomentAccum acc;
                   for (std::size_t k = first; k < last; ++k) {
                     const DiscreteGraph g = sample_graph(pg, k, cfg);
                     const AvgPathResult r = avg_shortest_path(g, 1);
                     if (r.value) acc.add(*r.value);
                   }
                   partials[b] = acc;
                 });
  detail::MomentAccum total;
  for (const auto& p : partials) total.merge(p);
  return total.finish(cfg.samples);
}

/// Expected betweenness centrality rank per node: each sample is ranked and
/// the per-node ranks are averaged. Ranks are defined in every sample.
inline std::vector<Estimate> expected_bcr(const ProbabilisticGraph& pg, const SampleConfig& cfg,
                                          unsigned threads = 0) {
  detail::check_sample_config(cfg);
  const std::size_t n = pg.node_count();
  if (n == 0) return {};
  std::vector<std::vector<detail::MomentAccum>> partials(
      block_count(cfg.samples, detail::kSampleBlock));
  for_each_block(cfg.samples, detail::kSampleBlock, threads,
                 [&](std::size_t b, std::size_t first, std::size_t last) {
                   std::vector<detail::MomentAccum> acc(n);
                   for (std::size_t k = first; k < last; ++k) {
                     const DiscreteGraph g = sample_graph(pg, k, cfg);
                     const std::vector<double> ranks = rank(betweenness(g, 1));
                     for (std::size_t i = 0; i < n; ++i) acc[i].add(ranks[i]);
                   }
                   partials[b] = std::move(acc);
                 });
  std::vector<detail::MomentAccum> total(n);
  for (const auto& block : partials)
    for (std::size_t i = 0; i < n; ++i) total[i].merge(block[i]);
  std::vector<Estimate> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = total[i].finish(cfg.samples);
  return out;
}

/// Expected clustering coefficient per node, averaged over the samples where
/// the node has at least two neighbors; other samples count as undefined.
inline std::vector<Estimate> expected_cc(const ProbabilisticGraph& pg, const SampleConfig& cfg,
                                         unsigned threads = 0) {
  detail::check_sample_config(cfg);
  const std::size_t n = pg.node_count();
  if (n == 0) return {};
  std::vector<std::vector<detail::MomentAccum>> partials(
      block_count(cfg.samples, detail::kSampleBlock));
  for_each_block(cfg.samples, detail::kSampleBlock, threads,
                 [&](std::size_t b, std::size_t first, std::size_t last) {
                   std::vector<detail::MomentAccum> acc(n);
                   for (std::size_t k = first; k < last; ++k) {
                     const DiscreteGraph g = sample_graph(pg, k, cfg);
                     for (NodeId i = 0; i < n; ++i)
                       if (const auto cc = clustering_coefficient(g, i)) acc[i].add(*cc);
                   }
                   partials[b] = std::move(acc);
                 });
  std::vector<detail::MomentAccum> total(n);
  for (const auto& block : partials)
    for (std::size_t i = 0; i < n; ++i) total[i].merge(block[i]);
  std::vector<Estimate> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = total[i].finish(cfg.samples);
  return out;
}

/// Exact expectation from enumerating every realizable graph of a small
/// support. global is set for avg_path; per_node for bcr and cc.
struct ExactExpectation {
  std::optional<double> global;
  std::vector<std::optional<double>> per_node;
};

// Exact reference for the estimators above: enumerates all 2^|E| graphs,
// weights each metric value by exp(graph_log_probability), and conditions on
// definedness exactly the way the estimators skip undefined samples.
inline ExactExpectation brute_force_expectation(const ProbabilisticGraph& pg, Metric metric) {
  const std::size_t m = pg.edge_count();
  if (m > 20) throw std::invalid_argument("brute force enumeration supports at most 20 edges");
  const std::size_t n = pg.node_count();
  if (metric == Metric::avg_path && n < 2)
    throw std::invalid_argument("average shortest path needs at least two nodes");

  double global_num = 0.0, global_den = 0.0;
  std::vector<double> num(n, 0.0), den(n, 0.0);

  const auto support = pg.edges();
  std::vector<Edge> selected;
  selected.reserve(m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    selected.clear();
    for (std::size_t r = 0; r < m; ++r)
      if (mask & (std::uint64_t{1} << r)) selected.push_back({support[r].u, support[r].v});
    const DiscreteGraph g(n, selected);
    const double w = std::exp(graph_log_probability(pg, g));
    if (w == 0.0) continue;
    switch (metric) {
      case Metric::avg_path: {
        const AvgPathResult r = avg_shortest_path(g, 1);
        if (r.value) {
          global_num += w * *r.value;
          global_den += w;
        }
        break;
      }
      case Metric::bcr: {
        const std::vector<double> ranks = rank(betweenness(g, 1));
        for (std::size_t i = 0; i < n; ++i) {
          num[i] += w * ranks[i];
          den[i] += w;
        }
        break;
      }
      case Metric::cc: {
        for (NodeId i = 0; i < n; ++i)
          if (const auto cc = clustering_coefficient(g, i)) {
            num[i] += w * *cc;
            den[i] += w;
          }
        break;
      }
    }
  }

  ExactExpectation out;
  if (metric == Metric::avg_path) {
    if (global_den > 0.0) out.global = global_num / global_den;
  } else {
    out.per_node.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      if (den[i] > 0.0) out.per_node[i] = num[i] / den[i];
  }
  return out;
}

}  // namespace probnet
