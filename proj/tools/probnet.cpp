// Command-line front end: temporal sweeps, method correlations, single-time
// snapshots and brute-force checks over transaction logs.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "probnet.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitConfigError = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "3600", "90m", "36h", "14d", "2w" -> seconds.
double parse_duration_seconds(const std::string& text) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse duration '" + text + "'");
  }
  const std::string unit = text.substr(pos);
  double scale = 1.0;
  if (unit.empty() || unit == "s")
    scale = 1.0;
  else if (unit == "m")
    scale = 60.0;
  else if (unit == "h")
    scale = 3600.0;
  else if (unit == "d")
    scale = 86'400.0;
  else if (unit == "w")
    scale = 7.0 * 86'400.0;
  else
    throw ConfigError("unknown duration unit '" + unit + "' in '" + text + "'");
  return value * scale;
}

struct Options {
  std::string input;
  std::string output;  // empty: stdout
  std::vector<std::int64_t> at;
  std::optional<std::int64_t> from;
  std::optional<std::int64_t> to;
  std::string step;
  std::vector<std::string> methods{"aggregate", "slice", "sampled", "mlh"};
  std::vector<std::string> metrics{"avg-path", "bcr", "cc"};
  std::string lambda = "28d";
  std::string delta = "14d";
  double beta = 0.3;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string graph_output;  // snapshot only
};

void add_common_options(CLI::App* cmd, Options& opt, bool with_methods) {
  cmd->add_option("-i,--input", opt.input, "transaction log CSV (src,dst,timestamp)")
      ->required();
  cmd->add_option("-o,--output", opt.output, "report CSV path (default: stdout)");
  cmd->add_option("--at", opt.at, "evaluation timestamp, repeatable (epoch seconds)");
  cmd->add_option("--from", opt.from, "first timestamp of a range (epoch seconds)");
  cmd->add_option("--to", opt.to, "last timestamp of a range (epoch seconds)");
  cmd->add_option("--step", opt.step, "range step, e.g. 14d (seconds/m/h/d/w)");
  if (with_methods)
    cmd->add_option("--methods", opt.methods,
                    "methods: aggregate, slice, sampled, mlh (comma separated)")
        ->delimiter(',');
  cmd->add_option("--metrics", opt.metrics, "metrics: avg-path, bcr, cc (comma separated)")
      ->delimiter(',');
  cmd->add_option("--lambda", opt.lambda, "decay time constant, e.g. 28d");
  cmd->add_option("--delta", opt.delta, "slice window length, e.g. 14d");
  cmd->add_option("--beta", opt.beta, "per-hop transmission probability in (0,1]");
  cmd->add_option("--samples", opt.samples,
                  "Monte Carlo samples (0: 10000 up to 200 nodes, 200 beyond)");
  cmd->add_option("--seed", opt.seed, "random seed");
  cmd->add_option("--threads", opt.threads, "worker threads (0: all hardware threads)");
}

std::vector<std::int64_t> resolve_timestamps(const Options& opt,
                                             const probnet::TransactionLog& log,
                                             bool default_to_latest) {
  if (!opt.at.empty()) {
    if (opt.from || opt.to || !opt.step.empty())
      throw ConfigError("--at cannot be combined with --from/--to/--step");
    return opt.at;
  }
  if (opt.from && opt.to) {
    if (opt.step.empty()) throw ConfigError("--from/--to requires --step");
    const double step_s = parse_duration_seconds(opt.step);
    if (!(step_s >= 1.0)) throw ConfigError("--step must be at least one second");
    if (*opt.to < *opt.from) throw ConfigError("--to must not precede --from");
    std::vector<std::int64_t> out;
    const auto step = static_cast<std::int64_t>(step_s);
    for (std::int64_t t = *opt.from; t <= *opt.to; t += step) out.push_back(t);
    return out;
  }
  if (opt.from || opt.to || !opt.step.empty())
    throw ConfigError("a range needs both --from and --to");
  if (default_to_latest) {
    if (log.empty()) throw ConfigError("empty log and no --at timestamp");
    return {log.latest_timestamp()};
  }
  throw ConfigError("no timestamps: use --at or --from/--to/--step");
}

probnet::SweepConfig to_sweep_config(const Options& opt, const probnet::TransactionLog& log,
                                     bool default_to_latest) {
  probnet::SweepConfig cfg;
  cfg.timestamps = resolve_timestamps(opt, log, default_to_latest);
  cfg.methods.clear();
  for (const std::string& name : opt.methods) {
    const auto method = probnet::parse_method(name);
    if (!method) throw ConfigError("unknown method '" + name + "'");
    cfg.methods.push_back(*method);
  }
  cfg.metrics.clear();
  for (const std::string& name : opt.metrics) {
    const auto metric = probnet::parse_metric(name);
    if (!metric) throw ConfigError("unknown metric '" + name + "'");
    cfg.metrics.push_back(*metric);
  }
  cfg.lambda_seconds = parse_duration_seconds(opt.lambda);
  cfg.delta_seconds = static_cast<std::int64_t>(parse_duration_seconds(opt.delta));
  cfg.beta = opt.beta;
  cfg.samples = opt.samples;
  cfg.seed = opt.seed;
  cfg.threads = opt.threads;
  return cfg;
}

void write_rows(const probnet::MetricTimeSeries& rows, const std::string& output) {
  if (output.empty())
    probnet::emit_report(rows, std::cout);
  else
    probnet::emit_report(rows, std::filesystem::path(output));
}

int run_sweep(const Options& opt) {
  const probnet::TransactionLog log = probnet::read_transaction_csv(opt.input);
  const probnet::SweepConfig cfg = to_sweep_config(opt, log, false);
  write_rows(probnet::sweep(log, cfg), opt.output);
  return kExitOk;
}

int run_correlate(const Options& opt) {
  const probnet::TransactionLog log = probnet::read_transaction_csv(opt.input);
  if (opt.methods.size() != 2) throw ConfigError("correlate needs exactly two --methods");
  const probnet::SweepConfig cfg = to_sweep_config(opt, log, false);
  write_rows(probnet::correlate_methods(log, cfg, {cfg.methods[0], cfg.methods[1]}), opt.output);
  return kExitOk;
}

int run_snapshot(const Options& opt) {
  const probnet::TransactionLog log = probnet::read_transaction_csv(opt.input);
  const probnet::SweepConfig cfg = to_sweep_config(opt, log, true);
  if (cfg.timestamps.size() != 1) throw ConfigError("snapshot takes exactly one timestamp");
  if (!opt.graph_output.empty()) {
    const probnet::ProbabilisticGraph pg = probnet::build_probabilistic_graph(
        log, cfg.timestamps[0], probnet::DecayParams{cfg.lambda_seconds});
    probnet::write_probabilistic_graph_csv(pg, std::filesystem::path(opt.graph_output));
  }
  write_rows(probnet::sweep(log, cfg), opt.output);
  return kExitOk;
}

int run_oracle(const Options& opt) {
  const probnet::TransactionLog log = probnet::read_transaction_csv(opt.input);
  const probnet::SweepConfig cfg = to_sweep_config(opt, log, true);
  if (cfg.timestamps.size() != 1) throw ConfigError("oracle takes exactly one timestamp");
  const std::int64_t t = cfg.timestamps[0];
  const probnet::ProbabilisticGraph pg =
      probnet::build_probabilistic_graph(log, t, probnet::DecayParams{cfg.lambda_seconds});
  if (pg.edge_count() > 20)
    throw std::runtime_error("support has " + std::to_string(pg.edge_count()) +
                             " edges at this timestamp; oracle enumerates at most 20");

  probnet::MetricTimeSeries rows;
  for (probnet::Metric metric : cfg.metrics) {
    if (metric == probnet::Metric::avg_path && pg.node_count() < 2) continue;
    const probnet::ExactExpectation exact = probnet::brute_force_expectation(pg, metric);
    probnet::MetricRow base;
    base.timestamp = t;
    base.method = "oracle";
    base.metric = std::string(probnet::to_string(metric));
    if (metric == probnet::Metric::avg_path) {
      probnet::MetricRow row = base;
      row.value = exact.global;
      rows.push_back(std::move(row));
    } else {
      for (probnet::NodeId i = 0; i < pg.node_count(); ++i) {
        probnet::MetricRow row = base;
        row.node = pg.label(i);
        row.value = exact.per_node[i];
        rows.push_back(std::move(row));
      }
    }
  }
  write_rows(rows, opt.output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probabilistic analysis of temporal interaction networks"};
  app.require_subcommand(1);

  Options sweep_opt, correlate_opt, snapshot_opt, oracle_opt;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "evaluate methods and metrics over a series of timestamps");
  add_common_options(sweep_cmd, sweep_opt, true);
  CLI::App* correlate_cmd = app.add_subcommand(
      "correlate", "Spearman correlation of two methods' centrality rankings over time");
  add_common_options(correlate_cmd, correlate_opt, true);
  CLI::App* snapshot_cmd =
      app.add_subcommand("snapshot", "metrics at a single timestamp (defaults to the latest)");
  add_common_options(snapshot_cmd, snapshot_opt, true);
  snapshot_cmd->add_option("--graph-output", snapshot_opt.graph_output,
                           "also write the probabilistic graph as src,dst,probability CSV");
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "exact expectations by enumeration (supports at most 20 uncertain edges)");
  add_common_options(oracle_cmd, oracle_opt, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (sweep_cmd->parsed()) return run_sweep(sweep_opt);
    if (correlate_cmd->parsed()) return run_correlate(correlate_opt);
    if (snapshot_cmd->parsed()) return run_snapshot(snapshot_opt);
    if (oracle_cmd->parsed()) return run_oracle(oracle_opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitOk;
}
