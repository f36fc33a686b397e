#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "probnet/edge_model.hpp"
#include "probnet/graph_metrics.hpp"
#include "probnet/prob_clustering.hpp"
#include "probnet/probable_paths.hpp"
#include "probnet/sampling.hpp"
#include "probnet/temporal_log.hpp"

namespace probnet {

enum class Method { aggregate, slice, sampled, mlh };

constexpr std::string_view to_string(Method m) {
  switch (m) {
    case Method::aggregate: return "aggregate";
    case Method::slice: return "slice";
    case Method::sampled: return "sampled";
    case Method::mlh: return "mlh";
  }
  return "?";
}

inline std::optional<Method> parse_method(std::string_view s) {
  if (s == "aggregate") return Method::aggregate;
  if (s == "slice") return Method::slice;
  if (s == "sampled") return Method::sampled;
  if (s == "mlh") return Method::mlh;
  return std::nullopt;
}

constexpr std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::avg_path: return "avg-path";
    case Metric::bcr: return "bcr";
    case Metric::cc: return "cc";
  }
  return "?";
}

inline std::optional<Metric> parse_metric(std::string_view s) {
  if (s == "avg-path") return Metric::avg_path;
  if (s == "bcr") return Metric::bcr;
  if (s == "cc") return Metric::cc;
  return std::nullopt;
}

struct SweepConfig {
  std::vector<std::int64_t> timestamps;
  std::vector<Method> methods{Method::aggregate, Method::slice, Method::sampled, Method::mlh};
  std::vector<Metric> metrics{Metric::avg_path, Metric::bcr, Metric::cc};
  double lambda_seconds = 28.0 * 86400.0;
  double beta = 0.3;
  std::int64_t delta_seconds = 14 * 86400;
  std::uint64_t samples = 0;  // 0: 10,000 up to 200 nodes, 200 beyond
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct MetricRow {
  std::int64_t timestamp = 0;
  std::string method;
  std::string metric;
  std::string node;  // empty for graph-level rows
  std::optional<double> value;
  std::optional<double> std_error;
  std::optional<double> aux;  // reachable fraction, m_used or shared-node count
};

using MetricTimeSeries = std::vector<MetricRow>;

namespace detail {

inline void validate_sweep_config(const SweepConfig& cfg) {
  if (cfg.timestamps.empty()) throw std::invalid_argument("no timestamps requested");
  if (cfg.methods.empty()) throw std::invalid_argument("no methods requested");
  if (cfg.metrics.empty()) throw std::invalid_argument("no metrics requested");
  if (!(cfg.lambda_seconds > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (!(cfg.beta > 0.0) || cfg.beta > 1.0)
    throw std::invalid_argument("beta must be in (0, 1]");
  if (cfg.delta_seconds < 0) throw std::invalid_argument("delta must be non-negative");
}

inline std::uint64_t resolve_samples(const SweepConfig& cfg, const ProbabilisticGraph& pg) {
  if (cfg.samples != 0) return cfg.samples;
  return pg.node_count() <= 200 ? 10'000 : 200;
}

inline bool wants(const SweepConfig& cfg, Method m) {
  return std::find(cfg.methods.begin(), cfg.methods.end(), m) != cfg.methods.end();
}

// The graph views of one timestamp. aggregate/slice are the discrete
// baselines; prob backs both the sampled and mlh methods.
struct GraphViews {
  std::optional<DiscreteGraph> aggregate;
  std::optional<DiscreteGraph> slice;
  std::optional<ProbabilisticGraph> prob;
};

inline GraphViews build_views(const TransactionLog& log, std::int64_t t, const SweepConfig& cfg,
                              bool need_aggregate, bool need_slice, bool need_prob) {
  GraphViews views;
  if (need_aggregate) views.aggregate = build_aggregate_graph(log, t);
  if (need_slice) views.slice = build_slice_graph(log, t, cfg.delta_seconds);
  if (need_prob) views.prob = build_probabilistic_graph(log, t, DecayParams{cfg.lambda_seconds});
  return views;
}

inline MetricRow base_row(std::int64_t t, Method method, Metric metric) {
  MetricRow row;
  row.timestamp = t;
  row.method = std::string(to_string(method));
  row.metric = std::string(to_string(metric));
  return row;
}

// A row whose value stays empty: emitted when a timestamp has no usable
// graph for the requested quantity, so the gap is visible in the report.
inline void push_marker(MetricTimeSeries& rows, std::int64_t t, Method method, Metric metric) {
  rows.push_back(base_row(t, method, metric));
}

inline void append_discrete_rows(MetricTimeSeries& rows, std::int64_t t, Method method,
                                 Metric metric, const DiscreteGraph& g, unsigned threads) {
  switch (metric) {
    case Metric::avg_path: {
      if (g.node_count() < 2) {
        push_marker(rows, t, method, metric);
        return;
      }
      const AvgPathResult r = avg_shortest_path(g, threads);
      MetricRow row = base_row(t, method, metric);
      row.value = r.value;
      row.aux = r.reachable_fraction;
      rows.push_back(std::move(row));
      return;
    }
    case Metric::bcr: {
      if (g.node_count() == 0) {
        push_marker(rows, t, method, metric);
        return;
      }
      const std::vector<double> ranks = rank(betweenness(g, threads));
      for (NodeId i = 0; i < g.node_count(); ++i) {
        MetricRow row = base_row(t, method, metric);
        row.node = g.label(i);
        row.value = ranks[i];
        rows.push_back(std::move(row));
      }
      return;
    }
    case Metric::cc: {
      if (g.node_count() == 0) {
        push_marker(rows, t, method, metric);
        return;
      }
      for (NodeId i = 0; i < g.node_count(); ++i) {
        MetricRow row = base_row(t, method, metric);
        row.node = g.label(i);
        row.value = clustering_coefficient(g, i);
        rows.push_back(std::move(row));
      }
      return;
    }
  }
}

inline void append_sampled_rows(MetricTimeSeries& rows, std::int64_t t, Metric metric,
                                const ProbabilisticGraph& pg, const SampleConfig& sample_cfg,
                                unsigned threads) {
  switch (metric) {
    case Metric::avg_path: {
      if (pg.node_count() < 2) {
        push_marker(rows, t, Method::sampled, metric);
        return;
      }
      const Estimate est = expected_avg_shortest_path(pg, sample_cfg, threads);
      MetricRow row = base_row(t, Method::sampled, metric);
      row.value = est.mean;
      if (est.mean) row.std_error = est.std_error;
      row.aux = static_cast<double>(est.m_used);
      rows.push_back(std::move(row));
      return;
    }
    case Metric::bcr: {
      if (pg.node_count() == 0) {
        push_marker(rows, t, Method::sampled, metric);
        return;
      }
      const std::vector<Estimate> ests = expected_bcr(pg, sample_cfg, threads);
      for (NodeId i = 0; i < pg.node_count(); ++i) {
        MetricRow row = base_row(t, Method::sampled, metric);
        row.node = pg.label(i);
        row.value = ests[i].mean;
        if (ests[i].mean) row.std_error = ests[i].std_error;
        row.aux = static_cast<double>(ests[i].m_used);
        rows.push_back(std::move(row));
      }
      return;
    }
    case Metric::cc: {
      if (pg.node_count() == 0) {
        push_marker(rows, t, Method::sampled, metric);
        return;
      }
      const std::vector<Estimate> ests = expected_cc(pg, sample_cfg, threads);
      for (NodeId i = 0; i < pg.node_count(); ++i) {
        MetricRow row = base_row(t, Method::sampled, metric);
        row.node = pg.label(i);
        row.value = ests[i].mean;
        if (ests[i].mean) row.std_error = ests[i].std_error;
        row.aux = static_cast<double>(ests[i].m_used);
        rows.push_back(std::move(row));
      }
      return;
    }
  }
}

inline void append_mlh_rows(MetricTimeSeries& rows, std::int64_t t, Metric metric,
                            const ProbabilisticGraph& pg, TransmissionPrior prior,
                            unsigned threads) {
  switch (metric) {
    case Metric::avg_path: {
      if (pg.node_count() < 2) {
        push_marker(rows, t, Method::mlh, metric);
        return;
      }
      const AvgPathResult r = mlh_avg_path_length(pg, prior, threads);
      MetricRow row = base_row(t, Method::mlh, metric);
      row.value = r.value;
      row.aux = r.reachable_fraction;
      rows.push_back(std::move(row));
      return;
    }
    case Metric::bcr: {
      if (pg.node_count() == 0) {
        push_marker(rows, t, Method::mlh, metric);
        return;
      }
      const std::vector<double> ranks = mlh_bcr(pg, prior, threads);
      for (NodeId i = 0; i < pg.node_count(); ++i) {
        MetricRow row = base_row(t, Method::mlh, metric);
        row.node = pg.label(i);
        row.value = ranks[i];
        rows.push_back(std::move(row));
      }
      return;
    }
    case Metric::cc: {
      if (pg.node_count() == 0) {
        push_marker(rows, t, Method::mlh, metric);
        return;
      }
      const std::vector<ClusteringReport> reports = clustering_reports(pg);
      for (NodeId i = 0; i < pg.node_count(); ++i) {
        MetricRow row = base_row(t, Method::mlh, metric);
        row.node = pg.label(i);
        row.value = reports[i].coefficient;
        rows.push_back(std::move(row));
      }
      return;
    }
  }
}

inline void append_method_rows(MetricTimeSeries& rows, std::int64_t t, Method method,
                               const SweepConfig& cfg, const GraphViews& views) {
  for (Metric metric : cfg.metrics) {
    switch (method) {
      case Method::aggregate:
        append_discrete_rows(rows, t, method, metric, *views.aggregate, cfg.threads);
        break;
      case Method::slice:
        append_discrete_rows(rows, t, method, metric, *views.slice, cfg.threads);
        break;
      case Method::sampled:
        append_sampled_rows(rows, t, metric, *views.prob,
                            SampleConfig{resolve_samples(cfg, *views.prob), cfg.seed},
                            cfg.threads);
        break;
      case Method::mlh:
        append_mlh_rows(rows, t, metric, *views.prob, TransmissionPrior{cfg.beta}, cfg.threads);
        break;
    }
  }
}

inline auto row_order_key(const MetricRow& r) {
  return std::tie(r.timestamp, r.method, r.metric, r.node);
}

// Betweenness ranking of one method at one timestamp, keyed by node label;
// the common currency for cross-method comparisons.
inline std::map<std::string, double> bcr_ranking(Method method, const GraphViews& views,
                                                 const SweepConfig& cfg) {
  std::map<std::string, double> out;
  switch (method) {
    case Method::aggregate:
    case Method::slice: {
      const DiscreteGraph& g = method == Method::aggregate ? *views.aggregate : *views.slice;
      const std::vector<double> ranks = rank(betweenness(g, cfg.threads));
      for (NodeId i = 0; i < g.node_count(); ++i) out[g.label(i)] = ranks[i];
      return out;
    }
    case Method::sampled: {
      const ProbabilisticGraph& pg = *views.prob;
      const std::vector<Estimate> ests =
          expected_bcr(pg, SampleConfig{resolve_samples(cfg, pg), cfg.seed}, cfg.threads);
      for (NodeId i = 0; i < pg.node_count(); ++i)
        if (ests[i].mean) out[pg.label(i)] = *ests[i].mean;
      return out;
    }
    case Method::mlh: {
      const ProbabilisticGraph& pg = *views.prob;
      const std::vector<double> ranks = mlh_bcr(pg, TransmissionPrior{cfg.beta}, cfg.threads);
      for (NodeId i = 0; i < pg.node_count(); ++i) out[pg.label(i)] = ranks[i];
      return out;
    }
  }
  return out;
}

}  // namespace detail

// Evaluates every requested (method, metric) pair at every timestamp. Graph
// views are built from the transactions up to each timestamp; rows come back
// sorted by (timestamp, method, metric, node). Timestamps with no usable
// graph produce marker rows with empty values rather than aborting the run.
inline MetricTimeSeries sweep(const TransactionLog& log, const SweepConfig& cfg) {
  detail::validate_sweep_config(cfg);
  const bool need_aggregate = detail::wants(cfg, Method::aggregate);
  const bool need_slice = detail::wants(cfg, Method::slice);
  const bool need_prob = detail::wants(cfg, Method::sampled) || detail::wants(cfg, Method::mlh);

  MetricTimeSeries rows;
  for (std::int64_t t : cfg.timestamps) {
    const detail::GraphViews views =
        detail::build_views(log, t, cfg, need_aggregate, need_slice, need_prob);
    for (Method method : cfg.methods) detail::append_method_rows(rows, t, method, cfg, views);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const MetricRow& a, const MetricRow& b) {
    return detail::row_order_key(a) < detail::row_order_key(b);
  });
  return rows;
}

// Spearman rank correlation with average-rank ties, computed on the node
// intersection of the two rankings (each side re-ranked within the
// intersection). Returns nullopt when either side is constant there; throws
// when fewer than two nodes are shared.
inline std::optional<double> rank_correlation(const std::map<std::string, double>& a,
                                              const std::map<std::string, double>& b) {
  std::vector<double> va, vb;
  for (const auto& [node, value] : a) {
    const auto it = b.find(node);
    if (it == b.end()) continue;
    va.push_back(value);
    vb.push_back(it->second);
  }
  const std::size_t n = va.size();
  if (n < 2) throw std::invalid_argument("rank correlation needs at least two shared nodes");

  auto ascending_ranks = [](const std::vector<double>& v) {
    std::vector<double> negated(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) negated[i] = -v[i];
    return rank(negated);
  };
  const std::vector<double> ra = ascending_ranks(va);
  const std::vector<double> rb = ascending_ranks(vb);

  double mean_a = 0.0, mean_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_a += ra[i];
    mean_b += rb[i];
  }
  mean_a /= static_cast<double>(n);
  mean_b /= static_cast<double>(n);
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = ra[i] - mean_a;
    const double db = rb[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a <= 0.0 || var_b <= 0.0) return std::nullopt;
  return std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
}

// Per-timestamp Spearman correlation between the BCR rankings of two methods.
// Timestamps where the correlation is undefined (fewer than two shared nodes,
// or a constant ranking) yield rows with an empty value; aux reports the
// shared node count either way.
inline MetricTimeSeries correlate_methods(const TransactionLog& log, const SweepConfig& cfg,
                                          std::pair<Method, Method> methods) {
  detail::validate_sweep_config(cfg);
  MetricTimeSeries rows;
  for (std::int64_t t : cfg.timestamps) {
    const bool need_aggregate =
        methods.first == Method::aggregate || methods.second == Method::aggregate;
    const bool need_slice = methods.first == Method::slice || methods.second == Method::slice;
    const bool need_prob = methods.first == Method::sampled || methods.second == Method::sampled ||
                           methods.first == Method::mlh || methods.second == Method::mlh;
    const detail::GraphViews views =
        detail::build_views(log, t, cfg, need_aggregate, need_slice, need_prob);
    const auto ranking_a = detail::bcr_ranking(methods.first, views, cfg);
    const auto ranking_b = detail::bcr_ranking(methods.second, views, cfg);

    std::size_t shared = 0;
    for (const auto& [node, value] : ranking_a) shared += ranking_b.count(node);

    MetricRow row;
    row.timestamp = t;
    row.method = std::string(to_string(methods.first)) + "~" + std::string(to_string(methods.second));
    row.metric = "spearman-bcr";
    row.aux = static_cast<double>(shared);
    if (shared >= 2) row.value = rank_correlation(ranking_a, ranking_b);
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const MetricRow& a, const MetricRow& b) {
    return detail::row_order_key(a) < detail::row_order_key(b);
  });
  return rows;
}

namespace detail {

inline void format_value(std::string& out, std::optional<double> v) {
  if (!v) return;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, *v, std::chars_format::general, 9);
  out.append(buf, res.ptr);
}

}  // namespace detail

// Report CSV: `timestamp,method,metric,node,value,stderr,aux`, rows sorted by
// (timestamp, method, metric, node), floats at 9 significant digits, empty
// fields for undefined values. Same input and seed, same bytes.
inline void emit_report(const MetricTimeSeries& series, std::ostream& out) {
  MetricTimeSeries rows = series;
  std::stable_sort(rows.begin(), rows.end(), [](const MetricRow& a, const MetricRow& b) {
    return detail::row_order_key(a) < detail::row_order_key(b);
  });
  std::string line;
  out << "timestamp,method,metric,node,value,stderr,aux\n";
  for (const MetricRow& row : rows) {
    line.clear();
    line += std::to_string(row.timestamp);
    line += ',';
    line += row.method;
    line += ',';
    line += row.metric;
    line += ',';
    line += row.node;
    line += ',';
    detail::format_value(line, row.value);
    line += ',';
    detail::format_value(line, row.std_error);
    line += ',';
    detail::format_value(line, row.aux);
    line += '\n';
    out << line;
  }
  if (!out) throw std::runtime_error("report write failed");
}

inline void emit_report(const MetricTimeSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  emit_report(series, out);
}

}  // namespace probnet
